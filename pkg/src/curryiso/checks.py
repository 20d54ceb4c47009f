"""Bounded exploration of strategies: equality, hyperuniformity, totality.

All strategies produced by this engine are innocent, so two of them are
equal exactly when their view functions agree.  Exploration therefore
walks view-shaped plays only: an O-move either starts a fresh thread
(an initial probe) or continues from the last P-move.  Every verdict is
relative to the bounds and to the probe set, which is clamped to keep
the walk at desk scale; the bounds fields are hard caps, never exceeded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .game import Game, erasure
from .moves import Move, O, enables, is_initial, move_subst, polarity
from .plays import Play, is_biview, is_play, is_zigzag
from .strategies import Bounds, DEFAULT_BOUNDS, Response, Strategy, strat_id

__all__ = [
    "default_probes",
    "game_probes",
    "children_of",
    "equal_bounded",
    "EqualityResult",
    "plays_of",
    "strategy_accepts",
    "cc_extension",
    "CcExtensionError",
    "bounded_biviews",
    "check_hyperuniform",
    "check_total_arrow",
    "identity_report",
    "IdentityReport",
]

# probe shaping: initial probes list every token string up to this length,
# plus pure arrow spines up to _PROBE_SPINE_LEN; continuations grow one
# enabling step with at most one extra token
_PROBE_INIT_LEN = 2
_PROBE_SPINE_LEN = 4
_CHILD_SUFFIXES = ("", "^", "r", "l")
_HU_PLAY_CAP = 250
_HU_COUNTEREXAMPLE_CAP = 20
_TOTALITY_MISS_CAP = 50


def default_probes(bounds: Bounds = DEFAULT_BOUNDS) -> list[Move]:
    """Generic initial O-moves used when no game guides the exploration."""
    strings: list[str] = []
    for k in range(0, min(_PROBE_INIT_LEN, bounds.max_token_len) + 1):
        strings.extend("".join(p) for p in itertools.product("^rl", repeat=k))
    for k in range(_PROBE_INIT_LEN + 1, min(_PROBE_SPINE_LEN, bounds.max_token_len) + 1):
        strings.append("^" * k)
    return [
        Move(s, leaf)
        for s in sorted(set(strings), key=lambda s: (len(s), s))
        for leaf in range(bounds.max_leaf + 1)
    ]


def game_probes(g: Game, bounds: Bounds = DEFAULT_BOUNDS) -> list[Move]:
    """O-moves derived from a game: erased occurrences with leaf variants,
    and small continuations planted under quantified leafs."""
    out: set[Move] = set()
    plants = [Move("", j) for j in range(bounds.max_leaf + 1)]
    plants += [Move(t, j) for t in ("^", "r", "l") for j in (0, 1)]
    for a in g.occurrences:
        e = erasure(a)
        if len(e.tokens) > bounds.max_token_len:
            continue
        out.add(e)
        if g.link(a) is None:
            for leaf in range(bounds.max_leaf + 1):
                out.add(Move(e.tokens, leaf))
        else:
            for x in plants:
                m = move_subst(e, x)
                if len(m.tokens) <= bounds.max_token_len:
                    out.add(m)
    return sorted(out, key=lambda m: (len(m.tokens), m.tokens, m.leaf))


def _child_leafs(bounds: Bounds) -> tuple[int, ...]:
    return (0, 1) if bounds.max_leaf >= 1 else (0,)


def children_of(parent: Move, bounds: Bounds) -> list[Move]:
    """One enabling step below ``parent``, growing at most one extra token."""
    out: list[Move] = []
    toks = parent.tokens
    for i, t in enumerate(toks):
        if t == "^" and "v" not in toks[i + 1 :]:
            base = toks[:i] + "v"
            for suffix in _CHILD_SUFFIXES:
                nt = base + suffix
                if len(nt) <= bounds.max_token_len:
                    out.extend(Move(nt, leaf) for leaf in _child_leafs(bounds))
    return out


def _candidates(
    play: Play, probes: list[Move], bounds: Bounds, probes_only: bool = False
) -> list[tuple[Move, Optional[int]]]:
    if not play:
        return [
            (m, None)
            for m in probes
            if is_initial(m) and len(m.tokens) <= bounds.max_token_len
        ]
    last = play[-1][0]
    moves = [] if probes_only else children_of(last, bounds)
    moves += [
        q
        for q in probes
        if not is_initial(q)
        and len(q.tokens) <= bounds.max_token_len
        and enables(last, q)
    ]
    ptr = len(play) - 1
    seen: set[Move] = set()
    out = []
    for m in moves:
        if m not in seen and polarity(m) == O:
            seen.add(m)
            out.append((m, ptr))
    return out


# ---------------------------------------------------------------------------
# bounded equality


@dataclass
class EqualityResult:
    equal: bool
    play: Optional[Play] = None
    move: Optional[Move] = None
    ptr: Optional[int] = None
    left: Response = None
    right: Response = None
    explored: int = 0

    def __bool__(self) -> bool:
        return self.equal


def equal_bounded(
    sigma: Strategy,
    tau: Strategy,
    bounds: Bounds = DEFAULT_BOUNDS,
    probes: Optional[list[Move]] = None,
    probes_only: bool = False,
) -> EqualityResult:
    """Breadth of view-shaped O-extensions within bounds; equal iff the two
    responses (move and pointer) agree at every reachable even prefix.

    With ``probes_only`` the continuations are drawn from the probe set
    alone, which restricts the comparison to a game's own move universe."""
    if probes is None:
        probes = default_probes(bounds)
    explored = 0
    stack: list[Play] = [()]
    while stack:
        play = stack.pop()
        for m, p in _candidates(play, probes, bounds, probes_only):
            explored += 1
            r1 = sigma.respond(play, m, p)
            r2 = tau.respond(play, m, p)
            if r1 != r2:
                return EqualityResult(False, play, m, p, r1, r2, explored)
            if r1 is not None and len(play) + 4 <= bounds.max_play_len:
                stack.append(play + ((m, p), r1))
    return EqualityResult(True, explored=explored)


# ---------------------------------------------------------------------------
# play sets and replay


def plays_of(
    sigma: Strategy,
    bounds: Bounds = DEFAULT_BOUNDS,
    probes: Optional[list[Move]] = None,
    cap: int = _HU_PLAY_CAP,
    probes_only: bool = False,
) -> list[Play]:
    """Even view-shaped plays of the strategy, up to the bounds and cap."""
    if probes is None:
        probes = default_probes(bounds)
    out: list[Play] = [()]
    stack: list[Play] = [()]
    while stack and len(out) < cap:
        play = stack.pop()
        for m, p in _candidates(play, probes, bounds, probes_only):
            r = sigma.respond(play, m, p)
            if r is None:
                continue
            ext = play + ((m, p), r)
            out.append(ext)
            if len(out) >= cap:
                break
            if len(ext) + 2 <= bounds.max_play_len:
                stack.append(ext)
    return out


def strategy_accepts(sigma: Strategy, play: Play) -> bool:
    """Replay an even play: every P-move must equal the oracle's response."""
    for k in range(1, len(play), 2):
        om, op = play[k - 1]
        if sigma.respond(play[: k - 1], om, op) != play[k]:
            return False
    return True


# ---------------------------------------------------------------------------
# copycat extensions and hyperuniformity


class CcExtensionError(ValueError):
    pass


def cc_extension(s: Play, i: int, v: Play) -> Play:
    """Extend the exchange at O-position ``i`` by copycatting the bi-view
    ``v`` into both leafs.  Raises when the result breaks the play laws."""
    if not (0 <= i < len(s)) or polarity(s[i][0]) != O:
        raise CcExtensionError(f"position {i} is not an O-move")
    if i + 1 >= len(s):
        raise CcExtensionError(f"O-move at {i} has no immediate successor")
    if not is_biview(v):
        raise CcExtensionError("parameter is not a bi-view")
    xi, xi_ptr = s[i]
    xj, xj_ptr = s[i + 1]
    p = len(v)
    if p == 1:
        y = v[0][0]
        entries = list(s)
        entries[i] = (move_subst(xi, y), xi_ptr)
        entries[i + 1] = (move_subst(xj, y), xj_ptr)
        out = tuple(entries)
    else:
        acc: list[tuple[Move, Optional[int]]] = list(s[:i])
        acc.append((move_subst(xi, v[0][0]), xi_ptr))
        acc.append((move_subst(xj, v[0][0]), xj_ptr))
        pos_i, pos_j = i, i + 1
        for k0 in range(1, p):
            yk = v[k0][0]
            if (k0 + 1) % 2 == 0:
                acc.append((move_subst(xj, yk), pos_j))
                new_j = len(acc) - 1
                acc.append((move_subst(xi, yk), pos_i))
                new_i = len(acc) - 1
            else:
                acc.append((move_subst(xi, yk), pos_i))
                new_i = len(acc) - 1
                acc.append((move_subst(xj, yk), pos_j))
                new_j = len(acc) - 1
            pos_i, pos_j = new_i, new_j
        out = tuple(acc)
    if not is_play(out):
        raise CcExtensionError("extension violates the play laws")
    return out


def bounded_biviews(bounds: Bounds = DEFAULT_BOUNDS, max_len: int = 3) -> list[Play]:
    """Small bi-views: enabling chains of bounded length and token growth."""
    roots = [Move("", j) for j in _child_leafs(bounds)]
    roots += [Move(t, j) for t in ("^", "r", "l") for j in _child_leafs(bounds)]
    out: list[Play] = []
    frontier: list[Play] = [((m, None),) for m in roots]
    for _ in range(max_len):
        out.extend(frontier)
        nxt: list[Play] = []
        for bv in frontier:
            last = bv[-1][0]
            for c in children_of(last, bounds):
                nxt.append(bv + ((c, len(bv) - 1),))
        frontier = nxt
    return out


def check_hyperuniform(
    sigma: Strategy,
    bounds: Bounds = DEFAULT_BOUNDS,
    probes: Optional[list[Move]] = None,
) -> list[dict]:
    """Copycat extensions of explored plays must be plays of the strategy.

    Returns the counterexamples found; empty means none at these bounds.
    """
    if probes is None:
        # copycat extensions themselves vary the leafs, so probing two leaf
        # values keeps the replay budget small without losing coverage
        probes = [m for m in default_probes(bounds) if m.leaf <= 1]
    out: list[dict] = []
    bvs = bounded_biviews(bounds)
    for s in plays_of(sigma, bounds, probes):
        for i in range(0, len(s), 2):
            for v in bvs:
                try:
                    ext = cc_extension(s, i, v)
                except CcExtensionError:
                    continue
                if not strategy_accepts(sigma, ext):
                    out.append(
                        {"play": s, "position": i, "biview": v, "extension": ext}
                    )
                    if len(out) >= _HU_COUNTEREXAMPLE_CAP:
                        return out
    return out


# ---------------------------------------------------------------------------
# totality and identity verification


def check_total_arrow(
    sigma: Strategy,
    bounds: Bounds = DEFAULT_BOUNDS,
    probes: Optional[list[Move]] = None,
    probes_only: bool = False,
) -> list[tuple[Play, Move, Optional[int]]]:
    """Arrow-shaped O-extensions left unanswered within bounds."""
    if probes is None:
        probes = default_probes(bounds)
    arrow_probes = [m for m in probes if m.tokens[:1] in ("^", "v")]
    misses: list[tuple[Play, Move, Optional[int]]] = []
    stack: list[Play] = [()]
    while stack:
        play = stack.pop()
        for m, p in _candidates(play, arrow_probes, bounds, probes_only):
            if m.tokens[:1] not in ("^", "v"):
                continue
            r = sigma.respond(play, m, p)
            if r is None:
                misses.append((play, m, p))
                if len(misses) >= _TOTALITY_MISS_CAP:
                    return misses
            elif len(play) + 4 <= bounds.max_play_len:
                stack.append(play + ((m, p), r))
    return misses


@dataclass
class IdentityReport:
    equal: bool
    equality: EqualityResult
    zigzag_ok: bool
    non_zigzag: list[Play] = field(default_factory=list)
    totality_misses: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.equal and self.zigzag_ok and not self.totality_misses


def identity_report(
    candidate: Strategy,
    bounds: Bounds = DEFAULT_BOUNDS,
    probes: Optional[list[Move]] = None,
    probes_only: bool = True,
) -> IdentityReport:
    """Compare a strategy against the identity copycat on the probe set,
    checking zig-zag of every agreed play and totality along the way.

    Meant for game-derived probe sets, so continuations stay on the game's
    moves by default."""
    ident = strat_id()
    if probes is None:
        probes = default_probes(bounds)
        probes_only = False
    eq = equal_bounded(candidate, ident, bounds, probes, probes_only)
    non_zigzag: list[Play] = []
    misses: list = []
    stack: list[Play] = [()]
    while stack:
        play = stack.pop()
        for m, p in _candidates(play, probes, bounds, probes_only):
            if m.tokens[:1] not in ("^", "v"):
                continue  # totality and zig-zag concern the arrow shape only
            r = candidate.respond(play, m, p)
            if r is None:
                misses.append((play, m, p))
                if len(misses) >= _TOTALITY_MISS_CAP:
                    stack.clear()
                    break
                continue
            ext = play + ((m, p), r)
            if not is_zigzag(ext):
                non_zigzag.append(ext)
            if len(ext) + 2 <= bounds.max_play_len:
                stack.append(ext)
    return IdentityReport(
        equal=eq.equal,
        equality=eq,
        zigzag_ok=not non_zigzag,
        non_zigzag=non_zigzag,
        totality_misses=misses,
    )
