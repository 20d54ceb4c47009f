import pytest
from hypothesis import given, settings

from curryiso.formula import Arrow, Bot, Forall, Prod, Var, alpha_eq, parse, subst
from curryiso.game import (
    Game,
    aux_polarity,
    fold_formula,
    game_arrow,
    game_atom_bot,
    game_atom_var,
    game_forall,
    game_of_formula,
    game_prod,
    game_subst,
    game_to_json,
    validate_game,
)
from curryiso.moves import Move, parse_move

from conftest import formula_strategy

M = parse_move


def game_of(text: str) -> Game:
    return game_of_formula(parse(text))


def test_atoms():
    assert game_atom_bot() == Game({M("0"): None})
    assert game_atom_var(3) == Game({M("3"): None})
    assert game_of_formula(Bot()) == game_atom_bot()


def test_worked_example():
    g = game_of("forall X1. X1 -> ((forall X2. X2) -> X3 * bot)")
    assert set(map(str, g.occurrences)) == {"*v0", "*^v*0", "*^^l3", "*^^r0"}
    assert g.link(M("*v0")) == M("*0")
    assert g.link(M("*^v*0")) == M("*^v*0")
    assert g.link(M("*^^l3")) is None
    assert g.link(M("*^^r0")) is None
    assert validate_game(g) == []


def test_simple_arrow():
    g = game_of("X1 -> X2")
    assert g == Game({M("v1"): None, M("^2"): None})


def test_constructors():
    assert game_atom_var(3) == Game({M("3"): None})
    g = game_forall(game_arrow(game_atom_bot(), game_atom_var(1)), 1)
    assert g == Game({M("*v0"): None, M("*^0"): M("*0")})
    assert game_prod(game_atom_var(1), game_atom_bot()) == Game(
        {M("l1"): None, M("r0"): None}
    )


def test_game_subst():
    g = game_subst(game_of("X1 * X2"), game_of("bot"), 1)
    assert g == Game({M("l0"): None, M("r2"): None})
    assert game_subst(game_of("X2"), game_of("X1 -> X1"), 1) == game_of("X2")
    assert game_subst(game_of("X1"), game_of("X3"), 1) == Game({M("3"): None})


def test_game_subst_with_quantifier():
    # substituting into a bound-free occurrence keeps linkage shifted
    a = game_of("forall X1. X1 -> X2")
    out = game_subst(a, game_of("bot -> X3"), 2)
    manual = game_of_formula(subst(parse("forall X1. X1 -> X2"), parse("bot -> X3"), 2))
    assert out == manual


def test_validate_game():
    assert validate_game(game_of("forall X1. X1 -> ((forall X2. X2) -> X3 * bot)")) == []
    assert "occurrence set is empty" in " ".join(validate_game(Game({})))
    bad = Game({M("v1"): None})
    assert any("coherence" in v for v in validate_game(bad))
    ambiguous = Game({M("^1"): None, M("^v1"): None})
    assert any("ambiguity" in v for v in validate_game(ambiguous))
    bad_link = Game({M("1"): M("*0")})
    assert any("nonzero leaf" in v for v in validate_game(bad_link))


def test_aux_polarity():
    g = game_of("forall X1. X1 -> ((forall X2. X2) -> X3 * bot)")
    assert aux_polarity(g, M("*v0")) == "O"
    assert aux_polarity(g, M("*^v*0")) == "P"
    assert aux_polarity(g, M("*^^l3")) is None
    with pytest.raises(KeyError):
        aux_polarity(g, M("^9"))


def test_game_json_sorted():
    data = game_to_json(game_of("forall X1. X1 -> ((forall X2. X2) -> X3 * bot)"))
    occs = [e["occ"] for e in data["occurrences"]]
    assert occs == sorted(occs)


@settings(max_examples=150, derandomize=True, deadline=None)
@given(formula_strategy())
def test_game_of_formula_always_valid(f):
    assert validate_game(game_of_formula(f)) == []


@settings(max_examples=150, derandomize=True, deadline=None)
@given(formula_strategy())
def test_tree_route_equals_inductive_route(f):
    assert game_of_formula(f) == fold_formula(f)


@settings(max_examples=150, derandomize=True, deadline=None)
@given(formula_strategy(), formula_strategy())
def test_alpha_invariance(a, b):
    if alpha_eq(a, b):
        assert game_of_formula(a) == game_of_formula(b)
    elif game_of_formula(a) == game_of_formula(b):
        assert alpha_eq(a, b)


def _freshen(f, start):
    """Rename every binder to a fresh index above ``start``."""
    counter = [start]

    def go(g):
        match g:
            case Var(_) | Bot():
                return g
            case Prod(a, b):
                return Prod(go(a), go(b))
            case Arrow(a, b):
                return Arrow(go(a), go(b))
            case Forall(i, body):
                counter[0] += 1
                k = counter[0]
                return Forall(k, go(subst(body, Var(k), i)))
        raise TypeError(g)

    return go(f)


@settings(max_examples=120, derandomize=True, deadline=None)
@given(formula_strategy(), formula_strategy())
def test_substitution_coherence(a, b):
    for j in (1, 2):
        fresh_a = _freshen(a, 10)
        lhs = game_of_formula(subst(fresh_a, b, j))
        rhs = game_subst(game_of_formula(fresh_a), game_of_formula(b), j)
        assert lhs == rhs


@settings(max_examples=150, derandomize=True, deadline=None)
@given(formula_strategy())
def test_linked_occurrences_are_zero_leaf_prefixed(f):
    from curryiso.moves import is_prefix

    g = game_of_formula(f)
    for occ in g.occurrences:
        link = g.link(occ)
        if link is not None:
            assert occ.leaf == 0
            assert is_prefix(link, occ)
            assert link.tokens.endswith("*")
