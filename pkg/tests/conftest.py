"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from curryiso import formula
from curryiso.formula import Arrow, Bot, Forall, Prod, Var
from curryiso import terms

SEED = 77003


@pytest.fixture
def rng():
    r = random.Random(SEED)
    print(f"[seed={SEED}]")
    return r


# ---------------------------------------------------------------------------
# random formulas (seeded random module, for the bulk suites)


def random_formula(r: random.Random, depth: int, vars_: tuple[int, ...] = (1, 2, 3)):
    if depth <= 0 or r.random() < 0.25:
        return Var(r.choice(vars_)) if r.random() < 0.7 else Bot()
    roll = r.random()
    if roll < 0.35:
        return Arrow(random_formula(r, depth - 1, vars_), random_formula(r, depth - 1, vars_))
    if roll < 0.65:
        return Prod(random_formula(r, depth - 1, vars_), random_formula(r, depth - 1, vars_))
    return Forall(r.choice(vars_), random_formula(r, depth - 1, vars_))


# ---------------------------------------------------------------------------
# hypothesis strategy for formulas


def formula_strategy(max_depth: int = 4, vars_: tuple[int, ...] = (1, 2, 3)):
    base = st.one_of(
        st.sampled_from([Var(i) for i in vars_]),
        st.just(Bot()),
    )

    def extend(children):
        return st.one_of(
            st.builds(Prod, children, children),
            st.builds(Arrow, children, children),
            st.builds(Forall, st.sampled_from(vars_), children),
        )

    return st.recursive(base, extend, max_leaves=2 ** max_depth)


# ---------------------------------------------------------------------------
# independent oracles


def debruijn(f, env: tuple[int, ...] = ()):
    """Independent alpha-invariant form used to cross-check alpha_eq."""
    match f:
        case Var(i):
            for depth, b in enumerate(reversed(env)):
                if b == i:
                    return ("b", depth)
            return ("f", i)
        case Bot():
            return ("bot",)
        case Prod(a, b):
            return ("p", debruijn(a, env), debruijn(b, env))
        case Arrow(a, b):
            return ("a", debruijn(a, env), debruijn(b, env))
        case Forall(i, body):
            return ("all", debruijn(body, env + (i,)))
    raise TypeError(f)


def pos_neg_oracle(f):
    """Second implementation of the signed-variable sets: a polarity walk."""
    pos: set[int] = set()
    neg: set[int] = set()

    def walk(g, sign: int, bound: frozenset[int]) -> None:
        match g:
            case Var(i):
                if i not in bound:
                    (pos if sign > 0 else neg).add(i)
            case Bot():
                pass
            case Prod(a, b):
                walk(a, sign, bound)
                walk(b, sign, bound)
            case Arrow(a, b):
                walk(a, -sign, bound)
                walk(b, sign, bound)
            case Forall(i, body):
                walk(body, sign, bound | {i})

    walk(f, 1, frozenset())
    return frozenset(pos), frozenset(neg)


# ---------------------------------------------------------------------------
# random closed terms


def random_closed_term(r: random.Random, size: int, ctx: tuple[str, ...] = ()):
    if size <= 1:
        if ctx and r.random() < 0.8:
            return terms.Var(r.choice(ctx))
        return terms.Lam("x", terms.Var("x"))
    roll = r.random()
    if not ctx or roll < 0.45:
        v = f"v{len(ctx)}"
        return terms.Lam(v, random_closed_term(r, size - 1, ctx + (v,)))
    if roll < 0.6:
        k = r.randint(1, size - 2) if size > 2 else 1
        return terms.App(
            random_closed_term(r, k, ctx), random_closed_term(r, size - 1 - k, ctx)
        )
    if roll < 0.8:
        k = r.randint(1, size - 2) if size > 2 else 1
        return terms.Pair(
            random_closed_term(r, k, ctx), random_closed_term(r, size - 1 - k, ctx)
        )
    ctor = terms.Proj1 if r.random() < 0.5 else terms.Proj2
    return ctor(random_closed_term(r, size - 1, ctx))


def parse(text: str):
    return formula.parse(text)
