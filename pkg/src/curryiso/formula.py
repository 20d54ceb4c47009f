"""System F type expressions: parsing, printing, variable analysis, substitution.

Type variables are identified globally with positive integers, so ``X3``
is the same variable wherever it occurs free.  Index 0 is reserved and
rejected by the parser.

Concrete syntax::

    type  := "forall" VAR "." type | arrow
    arrow := prod ["->" type]
    prod  := atom ["*" prod]
    atom  := VAR | "bot" | "(" type ")"
    VAR   := "X" digits          (digits >= 1)

``*`` binds tighter than ``->``; both are right-associative; a quantifier
scopes maximally rightward.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Prod:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Arrow:
    domain: "Formula"
    codomain: "Formula"


@dataclass(frozen=True)
class Forall:
    binder: int
    body: "Formula"


Formula = Union[Var, Bot, Prod, Arrow, Forall]


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# ---------------------------------------------------------------------------
# parsing


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, literal: str) -> bool:
        self.skip_ws()
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal: str) -> None:
        if not self.eat(literal):
            raise ParseError(f"expected {literal!r}", self.pos)

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalnum():
            self.pos += 1
        return self.text[start : self.pos]


def parse(text: str) -> Formula:
    sc = _Scanner(text)
    f = _parse_type(sc)
    sc.skip_ws()
    if sc.pos != len(sc.text):
        raise ParseError("trailing input", sc.pos)
    return f


def _parse_type(sc: _Scanner) -> Formula:
    sc.skip_ws()
    start = sc.pos
    w = sc.word()
    if w == "forall":
        idx = _parse_var_index(sc)
        sc.expect(".")
        return Forall(idx, _parse_type(sc))
    sc.pos = start
    return _parse_arrow(sc)


def _parse_arrow(sc: _Scanner) -> Formula:
    left = _parse_prod(sc)
    if sc.eat("->"):
        # full types (quantifiers included) are allowed to the right of an
        # arrow, so printed output always re-parses
        return Arrow(left, _parse_type(sc))
    return left


def _parse_prod(sc: _Scanner) -> Formula:
    left = _parse_atom(sc)
    if sc.eat("*"):
        return Prod(left, _parse_prod(sc))
    return left


def _parse_atom(sc: _Scanner) -> Formula:
    sc.skip_ws()
    start = sc.pos
    if sc.eat("("):
        inner = _parse_type(sc)
        sc.expect(")")
        return inner
    w = sc.word()
    if w == "bot":
        return Bot()
    if w.startswith("X"):
        sc.pos = start
        return Var(_parse_var_index(sc))
    raise ParseError("expected a variable, 'bot' or '('", start)


def _parse_var_index(sc: _Scanner) -> int:
    sc.skip_ws()
    start = sc.pos
    w = sc.word()
    if not w.startswith("X") or not w[1:].isdigit():
        raise ParseError("expected a variable like X1", start)
    idx = int(w[1:])
    if idx == 0:
        raise ParseError("variable index 0 is reserved", start)
    return idx


# ---------------------------------------------------------------------------
# printing

_LEVEL_TYPE, _LEVEL_ARROW, _LEVEL_PROD, _LEVEL_ATOM = 0, 1, 2, 3


def to_str(f: Formula) -> str:
    """Minimal-parentheses rendering; ``parse(to_str(f)) == f``."""
    return _render(f, _LEVEL_TYPE)


def _render(f: Formula, level: int) -> str:
    match f:
        case Bot():
            return "bot"
        case Var(i):
            return f"X{i}"
        case Forall(i, body):
            s = f"forall X{i}. {_render(body, _LEVEL_TYPE)}"
            return s if level <= _LEVEL_TYPE else f"({s})"
        case Arrow(dom, cod):
            s = f"{_render(dom, _LEVEL_PROD)} -> {_render(cod, _LEVEL_TYPE)}"
            return s if level <= _LEVEL_ARROW else f"({s})"
        case Prod(a, b):
            s = f"{_render(a, _LEVEL_ATOM)} * {_render(b, _LEVEL_PROD)}"
            return s if level <= _LEVEL_PROD else f"({s})"
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# variable analysis


def pos_neg(f: Formula) -> tuple[frozenset[int], frozenset[int]]:
    """Positive and negative free variables; an arrow domain swaps the sides."""
    match f:
        case Var(i):
            return frozenset({i}), frozenset()
        case Bot():
            return frozenset(), frozenset()
        case Prod(a, b):
            pa, na = pos_neg(a)
            pb, nb = pos_neg(b)
            return pa | pb, na | nb
        case Arrow(a, b):
            pa, na = pos_neg(a)
            pb, nb = pos_neg(b)
            return na | pb, pa | nb
        case Forall(i, body):
            p, n = pos_neg(body)
            return p - {i}, n - {i}
    raise TypeError(f"not a formula: {f!r}")


def ftv(f: Formula) -> frozenset[int]:
    p, n = pos_neg(f)
    return p | n


def all_indices(f: Formula) -> frozenset[int]:
    """Every variable index occurring in ``f``, free or bound."""
    match f:
        case Var(i):
            return frozenset({i})
        case Bot():
            return frozenset()
        case Prod(a, b) | Arrow(a, b):
            return all_indices(a) | all_indices(b)
        case Forall(i, body):
            return all_indices(body) | {i}
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# substitution and alpha-equivalence


def subst(a: Formula, b: Formula, j: int) -> Formula:
    """Capture-avoiding substitution of ``b`` for every free ``Var(j)`` in ``a``.

    A binder of ``a`` that would capture a free variable of ``b`` is renamed
    to the smallest index occurring nowhere in either operand.
    """
    fv_b = ftv(b)
    forbidden = all_indices(a) | all_indices(b) | {j}

    def go(f: Formula) -> Formula:
        match f:
            case Var(i):
                return b if i == j else f
            case Bot():
                return f
            case Prod(left, right):
                return Prod(go(left), go(right))
            case Arrow(dom, cod):
                return Arrow(go(dom), go(cod))
            case Forall(i, body):
                if i == j:
                    return f  # j is bound here, nothing free below
                if i in fv_b and j in ftv(body):
                    k = _fresh(forbidden)
                    body = subst(body, Var(k), i)
                    return Forall(k, go(body))
                return Forall(i, go(body))
        raise TypeError(f"not a formula: {f!r}")

    return go(a)


def _fresh(forbidden: frozenset[int]) -> int:
    k = 1
    while k in forbidden:
        k += 1
    return k


def alpha_eq(a: Formula, b: Formula) -> bool:
    """Equality up to renaming of bound variables."""

    def go(x: Formula, y: Formula, env_x: dict, env_y: dict, depth: int) -> bool:
        match x, y:
            case Var(i), Var(k):
                return env_x.get(i, ("free", i)) == env_y.get(k, ("free", k))
            case Bot(), Bot():
                return True
            case Prod(a1, a2), Prod(b1, b2):
                return go(a1, b1, env_x, env_y, depth) and go(a2, b2, env_x, env_y, depth)
            case Arrow(a1, a2), Arrow(b1, b2):
                return go(a1, b1, env_x, env_y, depth) and go(a2, b2, env_x, env_y, depth)
            case Forall(i, bx), Forall(k, by):
                ex = dict(env_x)
                ey = dict(env_y)
                ex[i] = ("bound", depth)
                ey[k] = ("bound", depth)
                return go(bx, by, ex, ey, depth + 1)
        return False

    return go(a, b, {}, {}, 0)
