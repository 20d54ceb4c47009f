"""Untyped lambda terms with pairs and projections.

Concrete syntax::

    term   := "\\" VAR "." term | app
    app    := factor factor*          (left-associative application)
    factor := "p1" factor | "p2" factor | atom
    atom   := VAR | "<" term "," term ">" | "(" term ")"
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Lam:
    var: str
    body: "Term"


@dataclass(frozen=True)
class App:
    fn: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Pair:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Proj1:
    arg: "Term"


@dataclass(frozen=True)
class Proj2:
    arg: "Term"


Term = Union[Var, Lam, App, Pair, Proj1, Proj2]

_KEYWORDS = {"p1", "p2"}


class TermSyntaxError(ValueError):
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
            raise TermSyntaxError(f"expected {literal!r}", self.pos)

    def ident(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        if self.pos == start:
            raise TermSyntaxError("expected an identifier", start)
        return self.text[start : self.pos]


def parse_term(text: str) -> Term:
    sc = _Scanner(text)
    t = _parse(sc)
    sc.skip_ws()
    if sc.pos != len(sc.text):
        raise TermSyntaxError("trailing input", sc.pos)
    return t


def _parse(sc: _Scanner) -> Term:
    if sc.eat("\\"):
        name = sc.ident()
        sc.expect(".")
        return Lam(name, _parse(sc))
    t = _parse_factor(sc)
    while True:
        c = sc.peek()
        if c in ("", ")", ",", ">"):
            return t
        t = App(t, _parse_factor(sc))


def _parse_factor(sc: _Scanner) -> Term:
    sc.skip_ws()
    start = sc.pos
    if sc.eat("<"):
        left = _parse(sc)
        sc.expect(",")
        right = _parse(sc)
        sc.expect(">")
        return Pair(left, right)
    if sc.eat("("):
        inner = _parse(sc)
        sc.expect(")")
        return inner
    word = sc.ident()
    if word == "p1":
        return Proj1(_parse_factor(sc))
    if word == "p2":
        return Proj2(_parse_factor(sc))
    if word in _KEYWORDS:
        raise TermSyntaxError(f"{word} needs an argument", start)
    return Var(word)


# ---------------------------------------------------------------------------
# printing

_LEVEL_TERM, _LEVEL_APP, _LEVEL_ATOM = 0, 1, 2


def to_str(t: Term) -> str:
    return _render(t, _LEVEL_TERM)


def _render(t: Term, level: int) -> str:
    match t:
        case Var(name):
            return name
        case Lam(x, body):
            s = f"\\{x}. {_render(body, _LEVEL_TERM)}"
            return s if level <= _LEVEL_TERM else f"({s})"
        case App(fn, arg):
            s = f"{_render(fn, _LEVEL_APP)} {_render(arg, _LEVEL_ATOM)}"
            return s if level <= _LEVEL_APP else f"({s})"
        case Proj1(arg):
            s = f"p1 {_render(arg, _LEVEL_ATOM)}"
            return s if level <= _LEVEL_APP else f"({s})"
        case Proj2(arg):
            s = f"p2 {_render(arg, _LEVEL_ATOM)}"
            return s if level <= _LEVEL_APP else f"({s})"
        case Pair(a, b):
            return f"<{_render(a, _LEVEL_TERM)}, {_render(b, _LEVEL_TERM)}>"
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# variables and substitution


def free_vars(t: Term) -> frozenset[str]:
    match t:
        case Var(name):
            return frozenset({name})
        case Lam(x, body):
            return free_vars(body) - {x}
        case App(a, b) | Pair(a, b):
            return free_vars(a) | free_vars(b)
        case Proj1(a) | Proj2(a):
            return free_vars(a)
    raise TypeError(f"not a term: {t!r}")


def _all_names(t: Term) -> frozenset[str]:
    match t:
        case Var(name):
            return frozenset({name})
        case Lam(x, body):
            return _all_names(body) | {x}
        case App(a, b) | Pair(a, b):
            return _all_names(a) | _all_names(b)
        case Proj1(a) | Proj2(a):
            return _all_names(a)
    raise TypeError(f"not a term: {t!r}")


def _fresh_name(base: str, avoid: frozenset[str]) -> str:
    k = 1
    while f"{base}_{k}" in avoid:
        k += 1
    return f"{base}_{k}"


def subst_term(t: Term, name: str, value: Term) -> Term:
    """Capture-avoiding substitution of ``value`` for free ``name`` in ``t``."""
    fv_value = free_vars(value)

    def go(u: Term) -> Term:
        match u:
            case Var(n):
                return value if n == name else u
            case Lam(x, body):
                if x == name:
                    return u
                if x in fv_value and name in free_vars(body):
                    x2 = _fresh_name(x, _all_names(body) | fv_value | {name})
                    body = subst_term(body, x, Var(x2))
                    return Lam(x2, go(body))
                return Lam(x, go(body))
            case App(a, b):
                return App(go(a), go(b))
            case Pair(a, b):
                return Pair(go(a), go(b))
            case Proj1(a):
                return Proj1(go(a))
            case Proj2(a):
                return Proj2(go(a))
        raise TypeError(f"not a term: {u!r}")

    return go(t)


def alpha_eq_term(a: Term, b: Term) -> bool:
    def go(x: Term, y: Term, ex: dict, ey: dict, depth: int) -> bool:
        match x, y:
            case Var(n), Var(m):
                return ex.get(n, ("free", n)) == ey.get(m, ("free", m))
            case Lam(n, bx), Lam(m, by):
                ex2 = dict(ex)
                ey2 = dict(ey)
                ex2[n] = ("bound", depth)
                ey2[m] = ("bound", depth)
                return go(bx, by, ex2, ey2, depth + 1)
            case App(a1, a2), App(b1, b2):
                return go(a1, b1, ex, ey, depth) and go(a2, b2, ex, ey, depth)
            case Pair(a1, a2), Pair(b1, b2):
                return go(a1, b1, ex, ey, depth) and go(a2, b2, ex, ey, depth)
            case Proj1(a1), Proj1(b1):
                return go(a1, b1, ex, ey, depth)
            case Proj2(a1), Proj2(b1):
                return go(a1, b1, ex, ey, depth)
        return False

    return go(a, b, {}, {}, 0)


# ---------------------------------------------------------------------------
# reduction

# beta and projection steps only: eta and surjective pairing are not valid
# on arbitrary untyped terms in the strategy model, so the simplifier never
# applies them


def _step(t: Term):
    match t:
        case App(Lam(x, body), arg):
            return subst_term(body, x, arg)
        case Proj1(Pair(a, _)):
            return a
        case Proj2(Pair(_, b)):
            return b
        case Lam(x, body):
            s = _step(body)
            return None if s is None else Lam(x, s)
        case App(a, b):
            s = _step(a)
            if s is not None:
                return App(s, b)
            s = _step(b)
            return None if s is None else App(a, s)
        case Pair(a, b):
            s = _step(a)
            if s is not None:
                return Pair(s, b)
            s = _step(b)
            return None if s is None else Pair(a, s)
        case Proj1(a):
            s = _step(a)
            return None if s is None else Proj1(s)
        case Proj2(a):
            s = _step(a)
            return None if s is None else Proj2(s)
    return None


def normalize_term(t: Term, fuel: int = 1000) -> Term:
    for _ in range(fuel):
        s = _step(t)
        if s is None:
            return t
        t = s
    return t


def identity_term() -> Term:
    return Lam("x", Var("x"))


def compose_terms(outer: Term, inner: Term) -> Term:
    """The term ``\\x. outer (inner x)``, beta-reduced.

    Witness terms are closed, so the fixed bound name cannot be captured.
    """
    return normalize_term(Lam("x", App(outer, App(inner, Var("x")))))
