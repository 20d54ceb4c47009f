import pytest
from hypothesis import given, settings

from curryiso.formula import parse
from curryiso.game import aux_polarity, game_of_formula
from curryiso.hyperforest import (
    Hyperforest,
    Node,
    hyperforest_of_game,
    node_polarity,
    origin,
    paths_of,
    ref_fr,
    validate_hyperforest,
)
from curryiso.moves import parse_move, polarity

from conftest import formula_strategy

M = parse_move


def hf(text: str) -> Hyperforest:
    return hyperforest_of_game(game_of_formula(parse(text)))


def node(*occs: str) -> Node:
    return Node(tuple(M(o) for o in occs))


def test_paths_simple():
    g = game_of_formula(parse("X1 -> X2"))
    assert set(paths_of(g)) == {node("^2"), node("^2", "v1")}
    g2 = game_of_formula(parse("bot"))
    assert set(paths_of(g2)) == {node("0")}


def test_origin():
    assert origin(node("^2", "v1")) == M("v1")
    assert origin(node("0")) == M("0")


def test_worked_example():
    h = hf("forall X1. (X1 * X2) -> (X1 * bot)")
    a = node("*^l0")
    b = node("*^l0", "*vl0")
    c = node("*^l0", "*vr2")
    d = node("*^r0")
    e = node("*^r0", "*vl0")
    f = node("*^r0", "*vr2")
    assert set(h.nodes) == {a, b, c, d, e, f}
    assert set(h.hyperedges) == {(a, frozenset({a, b})), (d, frozenset({e}))}
    assert h.decoration == {c: 2, f: 2}
    assert validate_hyperforest(h) == []
    # the paths listed one by one
    assert origin(b) == M("*vl0")


def test_ref_fr():
    h = hf("forall X1. (X1 * X2) -> (X1 * bot)")
    a = node("*^l0")
    b = node("*^l0", "*vl0")
    c = node("*^l0", "*vr2")
    d = node("*^r0")
    e = node("*^r0", "*vl0")
    assert ref_fr(h, b) == (a, frozenset({a}))
    assert ref_fr(h, e) == (d, frozenset())
    assert ref_fr(h, c) is None
    with pytest.raises(KeyError):
        ref_fr(h, node("9"))


def test_small_quantified_examples():
    h = hf("forall X1. bot -> X1")
    a = node("*^0")
    b = node("*^0", "*v0")
    assert set(h.nodes) == {a, b}
    assert set(h.hyperedges) == {(a, frozenset({a}))}
    assert h.decoration == {}

    h2 = hf("bot")
    assert h2.hyperedges == ()
    assert h2.decoration == {}


def test_node_polarity():
    assert node_polarity(node("^2")) == "O"
    assert node_polarity(node("^2", "v1")) == "P"
    assert node_polarity(node("*^l0", "*vl0")) == "P"


def test_validate_catches_bad_hyperedges():
    h = hf("forall X1. (X1 * X2) -> (X1 * bot)")
    a = node("*^l0")
    b = node("*^l0", "*vl0")
    d = node("*^r0")
    bad_anchor = Hyperforest(h.nodes, [(b, frozenset({a}))], {})
    assert any("not above anchor" in v for v in validate_hyperforest(bad_anchor))
    overlapping = Hyperforest(
        h.nodes, [(a, frozenset({b})), (a, frozenset({b, a}))], {}
    )
    assert any("overlapping" in v for v in validate_hyperforest(overlapping))
    decorated_span = Hyperforest(h.nodes, [(a, frozenset({b}))], {b: 2})
    assert any("decorated" in v for v in validate_hyperforest(decorated_span))


@settings(max_examples=120, derandomize=True, deadline=None)
@given(formula_strategy())
def test_extraction_always_valid(f):
    h = hyperforest_of_game(game_of_formula(f))
    assert validate_hyperforest(h) == []


@settings(max_examples=120, derandomize=True, deadline=None)
@given(formula_strategy())
def test_polarity_coincidence(f):
    h = hyperforest_of_game(game_of_formula(f))
    for n in h.nodes:
        assert node_polarity(n) == polarity(origin(n))


@settings(max_examples=120, derandomize=True, deadline=None)
@given(formula_strategy())
def test_reference_polarity_matches_auxiliary(f):
    g = game_of_formula(f)
    h = hyperforest_of_game(g)
    for n in h.nodes:
        rf = ref_fr(h, n)
        if rf is not None:
            assert aux_polarity(g, origin(n)) == node_polarity(rf[0])


@settings(max_examples=120, derandomize=True, deadline=None)
@given(formula_strategy())
def test_span_and_decoration_disciplines(f):
    g = game_of_formula(f)
    h = hyperforest_of_game(g)
    for _, span in h.hyperedges:
        for s in span:
            assert g.link(origin(s)) is not None
    for n, idx in h.decoration.items():
        assert g.link(origin(n)) is None
        assert origin(n).leaf == idx > 0
