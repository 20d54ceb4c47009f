"""Typed moves: occurrence tokens whose quantifiers carry a game annotation.

A typed move is written like an occurrence except that each ``*`` is
annotated with the game instantiating that quantifier, e.g.
``*{bot * X3}vr3``.  Anonymizing drops the annotations; erasing further
drops the stars, landing in the untyped move grammar.
"""

from __future__ import annotations

from typing import NamedTuple, Optional, Union

from . import formula
from .game import Game, game_of_formula
from .moves import Move, erasure

__all__ = [
    "Star",
    "TypedMove",
    "anonymize",
    "erase",
    "typed_subst",
    "formula_extract",
    "ExtractionUndefined",
    "is_move_of",
    "is_typed_play",
    "is_play_on",
    "parse_typed_move",
    "typed_move_to_str",
]


class Star(NamedTuple):
    game: Game


TypedToken = Union[str, Star]


class TypedMove(NamedTuple):
    tokens: tuple[TypedToken, ...]
    leaf: int


class ExtractionUndefined(ValueError):
    pass


def anonymize(m: TypedMove) -> Move:
    return Move(
        "".join("*" if isinstance(t, Star) else t for t in m.tokens), m.leaf
    )


def erase(m: TypedMove) -> Move:
    return erasure(anonymize(m))


def typed_subst(m1: TypedMove, m2: TypedMove) -> TypedMove:
    return TypedMove(m1.tokens + m2.tokens, m2.leaf)


def formula_extract(m: TypedMove, a: Move) -> Game:
    """The game annotated on the star that sits exactly at the quantifier
    spot ``a`` (a star-terminated prefix with leaf 0)."""
    ti, ai = 0, 0
    while True:
        if ai >= len(a.tokens):
            raise ExtractionUndefined(f"no star spot left in {a}")
        at = a.tokens[ai]
        if ti >= len(m.tokens):
            raise ExtractionUndefined("typed move is too short")
        mt = m.tokens[ti]
        if at == "*":
            if not isinstance(mt, Star):
                raise ExtractionUndefined("token mismatch at a quantifier")
            if ai == len(a.tokens) - 1 and a.leaf == 0:
                return mt.game
        else:
            if mt != at:
                raise ExtractionUndefined(f"token mismatch: {mt!r} vs {at!r}")
        ti += 1
        ai += 1


def is_move_of(m: TypedMove, g: Game) -> bool:
    """Membership in the move set of a game.

    Either the anonymized move is an unlinked occurrence, or the move
    splits as an occurrence prefix whose linked quantifier was annotated
    with a game the remainder belongs to.  Shortest prefixes are tried
    first; non-ambiguity makes the split unique anyway.
    """
    anon = anonymize(m)
    for occ in g.occurrences:
        if occ == anon and g.link(occ) is None:
            return True
    for k in range(1, len(m.tokens) + 1):
        head = "".join("*" if isinstance(t, Star) else t for t in m.tokens[:k])
        for occ in g.occurrences:
            if occ.tokens != head:
                continue
            link = g.link(occ)
            if link is None:
                continue
            m1 = TypedMove(m.tokens[:k], occ.leaf)
            try:
                inner = formula_extract(m1, link)
            except ExtractionUndefined:
                continue
            m2 = TypedMove(m.tokens[k:], m.leaf)
            if is_move_of(m2, inner):
                return True
    return False


# ---------------------------------------------------------------------------
# typed plays

TypedPlay = tuple[tuple[TypedMove, Optional[int]], ...]


def _typed_polarity(m: TypedMove) -> str:
    flips = sum(1 for t in m.tokens if t == "v")
    return "P" if flips % 2 else "O"


def _typed_initial(m: TypedMove) -> bool:
    return all(t != "v" for t in m.tokens)


def _typed_enables(parent: TypedMove, child: TypedMove) -> bool:
    tp, tc = parent.tokens, child.tokens
    i = 0
    n = min(len(tp), len(tc))
    while i < n and tp[i] == tc[i]:
        i += 1
    if i >= len(tp) or i >= len(tc):
        return False
    return (
        tp[i] == "^"
        and tc[i] == "v"
        and all(t != "v" for t in tp[i + 1 :])
        and all(t != "v" for t in tc[i + 1 :])
    )


def is_typed_play(s: TypedPlay) -> bool:
    for i, (m, ptr) in enumerate(s):
        if ptr is None:
            if not _typed_initial(m):
                return False
        elif not (0 <= ptr < i) or not _typed_enables(s[ptr][0], m):
            return False
    for i in range(len(s) - 1):
        pi = _typed_polarity(s[i][0])
        if pi == _typed_polarity(s[i + 1][0]):
            return False
        if pi == "O" and s[i][0].leaf != s[i + 1][0].leaf:
            return False
    return len(s) == 0 or _typed_polarity(s[0][0]) == "O"


def is_play_on(s: TypedPlay, g: Game) -> bool:
    """A play over typed moves all of which belong to the game."""
    return is_typed_play(s) and all(is_move_of(m, g) for m, _ in s)


# ---------------------------------------------------------------------------
# textual format


def parse_typed_move(text: str) -> TypedMove:
    tokens: list[TypedToken] = []
    i = 0
    text = text.strip()
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            digits = text[i:].strip()
            if not digits.isdigit():
                raise ValueError(f"trailing input after leaf: {text!r}")
            return TypedMove(tuple(tokens), int(digits))
        if c in "^vrl":
            tokens.append(c)
            i += 1
            continue
        if c == "*":
            if i + 1 >= len(text) or text[i + 1] != "{":
                raise ValueError("a star must carry a {type} annotation")
            depth = 0
            j = i + 1
            while j < len(text):
                if text[j] == "{":
                    depth += 1
                elif text[j] == "}":
                    depth -= 1
                    if depth == 0:
                        break
                j += 1
            if depth != 0:
                raise ValueError("unbalanced braces in star annotation")
            ann = text[i + 2 : j]
            tokens.append(Star(game_of_formula(formula.parse(ann))))
            i = j + 1
            continue
        raise ValueError(f"unexpected character {c!r} in typed move")
    raise ValueError(f"typed move must end in a decimal leaf: {text!r}")


def typed_move_to_str(m: TypedMove, annotations: Optional[dict] = None) -> str:
    parts = []
    for t in m.tokens:
        if isinstance(t, Star):
            parts.append("*{...}")
        else:
            parts.append(t)
    return "".join(parts) + str(m.leaf)
