import pytest

from curryiso.formula import parse
from curryiso.game import game_of_formula
from curryiso.moves import Move, parse_move
from curryiso.typedmoves import (
    ExtractionUndefined,
    Star,
    TypedMove,
    anonymize,
    erase,
    formula_extract,
    is_move_of,
    is_play_on,
    is_typed_play,
    parse_typed_move,
    typed_subst,
)

M = parse_move


def game_of(text: str):
    return game_of_formula(parse(text))


B = game_of("bot * X3")


def test_anonymize():
    m = TypedMove((Star(B), "^", "v", "r"), 3)
    assert anonymize(m) == M("*^vr3")
    assert anonymize(TypedMove((), 3)) == M("3")
    assert anonymize(TypedMove(("^", Star(B)), 0)) == M("^*0")


def test_erase():
    assert erase(TypedMove((Star(B), "^", "v", "r"), 3)) == M("^vr3")
    assert erase(TypedMove((), 0)) == M("0")
    assert erase(TypedMove(("l", Star(B)), 1)) == M("l1")


def test_formula_extract():
    m1 = TypedMove((Star(B), "v"), 0)
    assert formula_extract(m1, M("*0")) == B
    with pytest.raises(ExtractionUndefined):
        formula_extract(m1, M("*v0"))
    deep = TypedMove(("^", Star(B), "r"), 0)
    assert formula_extract(deep, M("^*0")) == B


def test_membership_worked_example():
    g = game_of("forall X1. X1 -> ((forall X2. X2) -> (X3 * bot))")
    m = parse_typed_move("*{bot * X3}vr3")
    assert is_move_of(m, g)
    # the two derivation steps, separately
    m1 = TypedMove(m.tokens[:2], 0)
    assert formula_extract(m1, M("*0")) == B
    assert is_move_of(TypedMove(("r",), 3), B)
    # and a non-member with a mismatched annotation
    assert not is_move_of(parse_typed_move("*{bot}v1"), g)


def test_membership_atoms():
    assert is_move_of(TypedMove((), 3), game_of("X3"))
    assert not is_move_of(TypedMove((), 2), game_of("X3"))


def test_membership_unlinked_needs_no_annotation():
    g = game_of("forall X1. X1 -> ((forall X2. X2) -> (X3 * bot))")
    assert is_move_of(TypedMove((Star(game_of("bot")), "^", "^", "l"), 3), g)


def test_typed_subst():
    m1 = TypedMove((Star(B), "v"), 0)
    m2 = TypedMove(("r",), 3)
    assert typed_subst(m1, m2) == TypedMove((Star(B), "v", "r"), 3)


def test_typed_play_laws():
    g = game_of("forall X1. X1 -> ((forall X2. X2) -> (X3 * bot))")
    init = parse_typed_move("*{bot * X3}^^l3")
    answer = parse_typed_move("*{bot * X3}v r 3".replace(" ", ""))
    s = ((init, None), (answer, 0))
    assert is_typed_play(s)
    assert is_play_on(s, g)
    assert is_play_on((), g)
    # a non-member move breaks membership even when the play laws hold
    bad = ((parse_typed_move("*{bot}l1"), None),)
    assert is_typed_play(bad)
    assert not is_play_on(bad, g)


def test_parse_typed_move_errors():
    with pytest.raises(ValueError):
        parse_typed_move("*vr3")  # star without annotation
    with pytest.raises(ValueError):
        parse_typed_move("^v")  # no leaf


def test_erase_is_star_stripping_after_anonymizing():
    import random

    from curryiso.moves import erasure

    r = random.Random(99)
    games = [B, game_of("bot"), game_of("forall X1. X1")]
    for _ in range(200):
        tokens = tuple(
            r.choice(["^", "v", "r", "l", Star(r.choice(games))]) for _ in range(r.randint(0, 5))
        )
        m = TypedMove(tokens, r.randint(0, 4))
        assert erase(m) == erasure(anonymize(m))


def test_instantiated_members_match_substituted_game():
    """Planting a move of the instantiating game under the quantifier gives
    a member whose anonymization matches the substituted game's move."""
    import random

    from curryiso.formula import subst, parse as fparse
    from curryiso.game import game_forall, game_of_formula

    r = random.Random(7)
    quantifier_free = [
        "X1 -> X2", "X1 * bot", "(X1 * X2) -> X3", "bot", "X2 -> X2 -> X1",
    ]
    for _ in range(40):
        a = fparse(r.choice(quantifier_free))
        b = fparse(r.choice(quantifier_free))
        i = r.choice((1, 2, 3))
        ga = game_of_formula(a)
        gq = game_forall(ga, i)
        gb = game_of_formula(b)
        gsub = game_of_formula(subst(a, b, i))
        for occ in gq.occurrences:
            if gq.link(occ) != M("*0"):
                continue
            m1 = TypedMove((Star(gb),) + tuple(occ.tokens[1:]), occ.leaf)
            for bocc in gb.occurrences:
                m = typed_subst(m1, TypedMove(tuple(bocc.tokens), bocc.leaf))
                assert is_move_of(m, gq)
                plain = TypedMove(tuple(occ.tokens[1:]) + tuple(bocc.tokens), bocc.leaf)
                assert is_move_of(plain, gsub)
