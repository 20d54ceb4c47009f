"""Type isomorphism for Curry-style System F.

Types denote games, games unfold into hyperforests, and isomorphism is a
structural bijection between hyperforests.  Witness terms are untyped
lambda terms, checked by interpreting them as copycat strategies and
composing to the identity within bounds.
"""

from .formula import Arrow, Bot, Forall, Formula, Prod, Var, alpha_eq, ftv, parse, pos_neg, subst, to_str
from .game import (
    Game,
    aux_polarity,
    enables,
    erasure,
    game_arrow,
    game_atom_bot,
    game_atom_var,
    game_forall,
    game_of_formula,
    game_prod,
    game_subst,
    is_prefix,
    leaf_of,
    occ_subst,
    validate_game,
)
from .hyperforest import (
    Hyperforest,
    Node,
    hyperforest_of_game,
    node_polarity,
    origin,
    paths_of,
    ref_fr,
    validate_hyperforest,
)
from .iso import (
    church_iso,
    curry_iso,
    decide_iso,
    find_trace,
    normalize,
    replay_trace,
    witness,
)
from .moves import Move, parse_move, polarity
from .strategies import (
    Bounds,
    DEFAULT_BOUNDS,
    Strategy,
    compose,
    interpret,
    strat_eval,
    strat_id,
    strat_pi_l,
    strat_pi_r,
)
from .checks import (
    cc_extension,
    check_hyperuniform,
    check_total_arrow,
    equal_bounded,
    game_probes,
)

__version__ = "0.1.0"
