import pytest
from hypothesis import given, settings

from curryiso.formula import (
    Arrow,
    Bot,
    Forall,
    ParseError,
    Prod,
    Var,
    alpha_eq,
    ftv,
    parse,
    pos_neg,
    subst,
    to_str,
)

from conftest import debruijn, formula_strategy, pos_neg_oracle


def test_parse_basics():
    assert parse("bot") == Bot()
    assert parse("forall X1. X1 -> X2") == Forall(1, Arrow(Var(1), Var(2)))
    assert parse("X1 * X2 -> X3") == Arrow(Prod(Var(1), Var(2)), Var(3))


def test_parse_associativity_and_parens():
    assert parse("X1 -> X2 -> X3") == Arrow(Var(1), Arrow(Var(2), Var(3)))
    assert parse("X1 * X2 * X3") == Prod(Var(1), Prod(Var(2), Var(3)))
    assert parse("(X1 -> X2) -> X3") == Arrow(Arrow(Var(1), Var(2)), Var(3))
    assert parse("X1 -> forall X2. X2") == Arrow(Var(1), Forall(2, Var(2)))


def test_parse_errors():
    with pytest.raises(ParseError):
        parse("X0")
    with pytest.raises(ParseError):
        parse("forall X1 X1")
    with pytest.raises(ParseError):
        parse("X1 ->")
    with pytest.raises(ParseError):
        parse("X1 X2")


def test_print_examples():
    assert to_str(Bot()) == "bot"
    assert to_str(Arrow(Prod(Var(1), Var(2)), Var(3))) == "X1 * X2 -> X3"
    assert to_str(Forall(1, Var(1))) == "forall X1. X1"
    assert to_str(Arrow(Forall(1, Var(1)), Var(2))) == "(forall X1. X1) -> X2"
    assert to_str(Arrow(Bot(), Forall(1, Var(1)))) == "bot -> forall X1. X1"


@settings(max_examples=300, derandomize=True)
@given(formula_strategy())
def test_print_parse_roundtrip(f):
    assert parse(to_str(f)) == f


def test_pos_neg_examples():
    assert pos_neg(Var(1)) == (frozenset({1}), frozenset())
    assert pos_neg(Arrow(Var(1), Var(2))) == (frozenset({2}), frozenset({1}))
    assert pos_neg(Forall(1, Arrow(Bot(), Var(1)))) == (frozenset(), frozenset())


@settings(max_examples=300, derandomize=True)
@given(formula_strategy())
def test_pos_neg_against_polarity_walk(f):
    assert pos_neg(f) == pos_neg_oracle(f)


def test_ftv_examples():
    assert ftv(Var(3)) == frozenset({3})
    assert ftv(Forall(1, Var(1))) == frozenset()
    assert ftv(Arrow(Var(1), Forall(2, Prod(Var(2), Var(3))))) == frozenset({1, 3})


def test_subst_examples():
    assert subst(Arrow(Var(1), Var(2)), Bot(), 2) == Arrow(Var(1), Bot())
    assert subst(Forall(1, Var(1)), Bot(), 1) == Forall(1, Var(1))
    # binder capture forces a rename to the smallest unused index
    out = subst(Forall(2, Var(1)), Var(2), 1)
    assert out == Forall(3, Var(2))
    assert alpha_eq(out, Forall(3, Var(2)))
    assert debruijn(out) == debruijn(Forall(3, Var(2)))


@settings(max_examples=200, derandomize=True)
@given(formula_strategy(), formula_strategy())
def test_subst_ftv_law(a, b):
    for j in (1, 2, 3):
        out = subst(a, b, j)
        expected = ftv(a) - {j} | (ftv(b) if j in ftv(a) else frozenset())
        assert ftv(out) == expected


def test_alpha_eq_examples():
    assert alpha_eq(Forall(1, Var(1)), Forall(2, Var(2)))
    assert not alpha_eq(Var(1), Var(2))
    assert alpha_eq(
        Forall(1, Arrow(Var(1), Var(2))), Forall(3, Arrow(Var(3), Var(2)))
    )
    # bound versus free with the same index
    assert not alpha_eq(Forall(1, Var(1)), Forall(2, Var(1)))


@settings(max_examples=300, derandomize=True)
@given(formula_strategy(), formula_strategy())
def test_alpha_eq_against_debruijn(a, b):
    assert alpha_eq(a, b) == (debruijn(a) == debruijn(b))
