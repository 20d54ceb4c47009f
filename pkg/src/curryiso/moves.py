"""Token-string moves shared by the untyped and occurrence grammars.

A move is a finite string of tokens followed by a natural-number leaf.
The ASCII token alphabet is:

    ``^``  right side of an arrow
    ``v``  left side of an arrow (the only polarity-flipping token)
    ``r``  right side of a product
    ``l``  left side of a product
    ``*``  a quantifier (occurrences only)

``^v2`` denotes the move with tokens ``^``, ``v`` and leaf ``2``.  Untyped
moves draw tokens from ``^vrl``; occurrences additionally use ``*``.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

O = "O"
P = "P"

UNTYPED_ALPHABET = "^vrl"
OCCURRENCE_ALPHABET = "^vrl*"


class Move(NamedTuple):
    tokens: str
    leaf: int

    def __str__(self) -> str:
        return self.tokens + str(self.leaf)


class MoveSyntaxError(ValueError):
    pass


def parse_move(text: str, alphabet: str = OCCURRENCE_ALPHABET) -> Move:
    """Parse ``<tokens><decimal leaf>``, e.g. ``*^v*0``."""
    text = text.strip()
    i = 0
    while i < len(text) and text[i] in alphabet:
        i += 1
    digits = text[i:]
    if not digits or not digits.isdigit():
        raise MoveSyntaxError(f"move must end in a decimal leaf: {text!r}")
    return Move(text[:i], int(digits))


def polarity(m: Move) -> str:
    """O for an even number of ``v`` tokens, P for an odd number."""
    return P if m.tokens.count("v") % 2 else O


def flip_polarity(p: str) -> str:
    return O if p == P else P


def is_initial(m: Move) -> bool:
    """A move is initial exactly when it contains no ``v`` token."""
    return "v" not in m.tokens


def leaf_of(m: Move) -> int:
    return m.leaf


def move_subst(m1: Move, m2: Move) -> Move:
    """Replace the leaf of ``m1`` by the whole of ``m2``."""
    return Move(m1.tokens + m2.tokens, m2.leaf)


def is_prefix(m1: Move, m2: Move) -> bool:
    """True iff ``m2 == move_subst(m1, m')`` for some move ``m'``.

    Only the token string of ``m1`` matters: its leaf is replaced by the
    witness, so ``5`` is a prefix of ``3``.
    """
    return m2.tokens.startswith(m1.tokens)


def enables(parent: Optional[Move], child: Move) -> bool:
    """The enabling relation; ``parent=None`` asks whether ``child`` is initial.

    After stripping the longest common token prefix, the parent must
    continue with ``^`` and the child with ``v``, both remainders initial.
    """
    if parent is None:
        return is_initial(child)
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
        and "v" not in tp[i + 1 :]
        and "v" not in tc[i + 1 :]
    )


def has_shape(m: Move, zeta: str) -> bool:
    """A move is of shape ``zeta`` when its tokens start with ``zeta``."""
    return m.tokens.startswith(zeta)


def erasure(a: Move) -> Move:
    """Drop every ``*`` token; the leaf is preserved."""
    return Move(a.tokens.replace("*", ""), a.leaf)
