import pytest

from curryiso.terms import (
    App,
    Lam,
    Pair,
    Proj1,
    Proj2,
    TermSyntaxError,
    Var,
    alpha_eq_term,
    compose_terms,
    free_vars,
    identity_term,
    normalize_term,
    parse_term,
    subst_term,
    to_str,
)


def test_parse_basics():
    assert parse_term("\\x. x") == Lam("x", Var("x"))
    assert parse_term("f a b") == App(App(Var("f"), Var("a")), Var("b"))
    assert parse_term("<a, b>") == Pair(Var("a"), Var("b"))
    assert parse_term("p1 <a, b>") == Proj1(Pair(Var("a"), Var("b")))
    assert parse_term("p1 p2 x") == Proj1(Proj2(Var("x")))
    assert parse_term("\\x. x x") == Lam("x", App(Var("x"), Var("x")))


def test_parse_errors():
    with pytest.raises(TermSyntaxError):
        parse_term("\\x x")
    with pytest.raises(TermSyntaxError):
        parse_term("<a b>")
    with pytest.raises(TermSyntaxError):
        parse_term("p1")


def test_print_roundtrip():
    for text in (
        "\\x. x",
        "\\f. \\p. f (p1 p) (p2 p)",
        "<\\a. a, p2 b>",
        "f (g x) <a, b>",
        "p1 (f x)",
    ):
        t = parse_term(text)
        assert parse_term(to_str(t)) == t


def test_free_vars_and_subst():
    t = parse_term("\\x. x y")
    assert free_vars(t) == {"y"}
    assert subst_term(t, "y", Var("z")) == parse_term("\\x. x z")
    # capture avoidance renames the binder
    out = subst_term(parse_term("\\x. y"), "y", Var("x"))
    assert alpha_eq_term(out, parse_term("\\w. x"))


def test_normalize_beta_and_projections():
    assert normalize_term(parse_term("(\\x. x) a")) == Var("a")
    assert normalize_term(parse_term("p1 <a, b>")) == Var("a")
    assert normalize_term(parse_term("p2 <a, b>")) == Var("b")
    got = normalize_term(parse_term("(\\f. \\x. f x) (\\y. y)"))
    assert alpha_eq_term(got, parse_term("\\x. (\\y. y) x")) or alpha_eq_term(
        got, parse_term("\\x. x")
    )


def test_no_eta_or_surjective_pairing():
    # these rewrites are not sound on arbitrary untyped strategies
    t = parse_term("\\x. f x")
    assert normalize_term(t) == t
    sp = parse_term("<p1 t, p2 t>")
    assert normalize_term(sp) == sp


def test_compose_terms():
    ident = identity_term()
    assert compose_terms(ident, ident) == ident
    swap = parse_term("\\p. <p2 p, p1 p>")
    assert alpha_eq_term(
        compose_terms(swap, swap), parse_term("\\x. <p1 x, p2 x>")
    )
