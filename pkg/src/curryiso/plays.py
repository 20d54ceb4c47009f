"""Justified sequences, plays, views, shape restrictions, zig-zag plays.

A play is a tuple of ``(move, pointer)`` entries.  Pointers are absolute
0-based indices of the justifying move, or ``None`` for initial moves.
Plays alternate O/P starting with O, and whenever a P-move immediately
follows an O-move the two leafs agree.
"""

from __future__ import annotations

from typing import Optional

from .moves import Move, O, P, enables, has_shape, is_initial, polarity

PlayEntry = tuple[Move, Optional[int]]
Play = tuple[PlayEntry, ...]

EMPTY: Play = ()


def is_justified_sequence(s: Play) -> bool:
    for i, (m, ptr) in enumerate(s):
        if ptr is None:
            if not is_initial(m):
                return False
        else:
            if not (0 <= ptr < i) or not enables(s[ptr][0], m):
                return False
    return True


def is_play(s: Play) -> bool:
    """Alternation plus the leaf-match law on every O-to-P succession."""
    if not is_justified_sequence(s):
        return False
    for i in range(len(s) - 1):
        pi, pj = polarity(s[i][0]), polarity(s[i + 1][0])
        if pi == pj:
            return False
        if pi == O and s[i][0].leaf != s[i + 1][0].leaf:
            return False
    return len(s) == 0 or polarity(s[0][0]) == O


def view(s: Play) -> Play:
    """The pruned history a strategy may consult, pointers remapped.

    Raises ValueError when a P-move's justifier falls outside its view.
    """
    if not s:
        return ()
    kept: list[int] = []
    i = len(s) - 1
    while i >= 0:
        kept.append(i)
        m, ptr = s[i]
        if polarity(m) == P:
            i -= 1
        elif ptr is None:
            break
        else:
            kept.append(ptr)
            i = ptr - 1
    kept.reverse()
    index = {orig: new for new, orig in enumerate(kept)}
    out: list[PlayEntry] = []
    for orig in kept:
        m, ptr = s[orig]
        if ptr is None:
            out.append((m, None))
        elif ptr in index:
            out.append((m, index[ptr]))
        elif polarity(m) == O:
            raise AssertionError("O-move justifier must be in the view")
        else:
            raise ValueError("play is not P-visible: justifier outside the view")
    return tuple(out)


def is_biview(s: Play) -> bool:
    """Nonempty, first move initial, every move justified by its predecessor."""
    if not s:
        return False
    if s[0][1] is not None or not is_initial(s[0][0]):
        return False
    for i in range(1, len(s)):
        if s[i][1] != i - 1 or not enables(s[i - 1][0], s[i][0]):
            return False
    return True


def play_of_shape(s: Play, shapes: tuple[str, ...]) -> bool:
    return all(any(has_shape(m, z) for z in shapes) for m, _ in s)


def is_arrow_shape(s: Play) -> bool:
    return play_of_shape(s, ("^", "v"))


# ---------------------------------------------------------------------------
# restrictions


def restrict_one(s: Play, zeta: str) -> tuple[Play, list[int]]:
    """Keep the moves of shape ``zeta`` with the prefix stripped.

    Returns the restricted play and the list of original indices.  A kept
    move whose justifier was dropped becomes unpointed.
    """
    kept = [i for i, (m, _) in enumerate(s) if has_shape(m, zeta)]
    index = {orig: new for new, orig in enumerate(kept)}
    out: list[PlayEntry] = []
    for orig in kept:
        m, ptr = s[orig]
        stripped = Move(m.tokens[len(zeta) :], m.leaf)
        out.append((stripped, index[ptr] if ptr in index else None))
    return tuple(out), kept


def restrict_two(s: Play, zeta: str, xi: str) -> tuple[Play, list[int]]:
    """Project onto two components: ``zeta`` becomes the ``^`` side and
    ``xi`` the ``v`` side.

    Kept moves are those of shape ``zeta`` plus those of shape ``xi``
    hereditarily justified by a ``zeta`` move.  Pointers within one
    component are transported; an ``xi`` move whose direct justifier was
    dropped points at the first ``zeta`` move up its justification chain
    when both stripped moves are initial.
    """
    if zeta.startswith(xi) or xi.startswith(zeta):
        raise ValueError("shapes must not be prefixes of each other")

    def first_zeta_ancestor(i: int) -> Optional[int]:
        j = s[i][1]
        while j is not None:
            if has_shape(s[j][0], zeta):
                return j
            j = s[j][1]
        return None

    kept: list[int] = []
    for i, (m, _) in enumerate(s):
        if has_shape(m, zeta):
            kept.append(i)
        elif has_shape(m, xi) and first_zeta_ancestor(i) is not None:
            kept.append(i)
    index = {orig: new for new, orig in enumerate(kept)}

    out: list[PlayEntry] = []
    for orig in kept:
        m, ptr = s[orig]
        if has_shape(m, zeta):
            stripped = Move("^" + m.tokens[len(zeta) :], m.leaf)
            out.append((stripped, index[ptr] if ptr in index else None))
        else:
            stripped = Move("v" + m.tokens[len(xi) :], m.leaf)
            if ptr in index and has_shape(s[ptr][0], xi):
                out.append((stripped, index[ptr]))
            else:
                anc = first_zeta_ancestor(orig)
                bare = Move(m.tokens[len(xi) :], m.leaf)
                if anc is not None and anc in index:
                    bare_anc = Move(
                        s[anc][0].tokens[len(zeta) :], s[anc][0].leaf
                    )
                    if is_initial(bare) and is_initial(bare_anc):
                        out.append((stripped, index[anc]))
                        continue
                out.append((stripped, None))
    return tuple(out), kept


# ---------------------------------------------------------------------------
# zig-zag plays


def _side(m: Move) -> str:
    return m.tokens[0] if m.tokens else ""


def is_zigzag(s: Play) -> bool:
    """Arrow-shaped plays whose P-moves mirror the preceding O-move's side,
    answer initial O-moves directly, and whose two restrictions share one
    pointer structure."""
    if not is_arrow_shape(s):
        return False
    for i in range(1, len(s), 2):
        om, _ = s[i - 1]
        pm, pptr = s[i]
        if _side(om) == _side(pm):
            return False
        if is_initial(om) and pptr != i - 1:
            return False
    up, _ = restrict_one(s, "^")
    down, _ = restrict_one(s, "v")
    return [p for _, p in up] == [p for _, p in down]


def flip(s: Play) -> Play:
    """Swap the two arrow sides of an even zig-zag play."""
    if len(s) % 2:
        raise ValueError("flip needs an even-length play")
    if not is_zigzag(s):
        raise ValueError("flip needs a zig-zag play")

    def swap(m: Move) -> Move:
        other = "v" if m.tokens[0] == "^" else "^"
        return Move(other + m.tokens[1:], m.leaf)

    def partner(i: int) -> int:
        return i + 1 if i % 2 == 0 else i - 1

    out: list[PlayEntry] = []
    for pos in range(len(s)):
        j = partner(pos)
        m, ptr = s[j]
        if ptr is None:
            # the old initial O-move becomes the P-answer to the new O-move
            out.append((swap(m), pos - 1))
        elif j % 2 == 1 and ptr == j - 1:
            # the old P-answer to an initial becomes the new initial O-move
            out.append((swap(m), None))
        else:
            out.append((swap(m), partner(ptr)))
    return tuple(out)


def play_to_lines(s: Play) -> list[str]:
    return [
        f"{i}: {m} ({'initial' if ptr is None else f'ptr -> {ptr}'})"
        for i, (m, ptr) in enumerate(s)
    ]
