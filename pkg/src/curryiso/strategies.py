"""Strategy oracles: copycats, pairing, abstraction, composition, interpretation.

A strategy is a deterministic next-move function: given an even-length
play and a legal O-move with pointer, it returns the P-response with its
pointer, or None.  All strategies built here are innocent: the response
depends only on the view of the extended play.

Composition runs the usual interaction.  For two arrow-shaped strategies
the interaction has three token classes: ``^`` (outer output), ``v^``
(the hidden middle) and ``vv`` (outer input).  A closed term's denotation
is composed with an arrow-shaped strategy by plugging it wholesale under
the ``v`` side instead.
"""

from __future__ import annotations

from typing import NamedTuple, Optional, Sequence

from . import terms
from .moves import Move, O, P, is_initial, polarity
from .plays import Play, PlayEntry

Response = Optional[tuple[Move, Optional[int]]]


class Bounds(NamedTuple):
    max_play_len: int = 8
    max_token_len: int = 6
    max_leaf: int = 3
    interaction_fuel: int = 200


DEFAULT_BOUNDS = Bounds()


class FuelExhausted(RuntimeError):
    """The hidden interaction kept chattering past the fuel limit."""


class UnboundVariable(ValueError):
    pass


class Strategy:
    name: str = "strategy"

    def respond(self, play: Play, move: Move, ptr: Optional[int]) -> Response:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<strategy {self.name}>"


class EmptyStrategy(Strategy):
    """Never answers; its play set is just the empty play."""

    name = "empty"

    def respond(self, play: Play, move: Move, ptr: Optional[int]) -> Response:
        return None


class CopycatStrategy(Strategy):
    """Relabelling copycat: prefixes are swapped pairwise, the rest of the
    move and its leaf are copied verbatim.

    The response to an initial O-move points at that move; otherwise the
    response points at the pair-partner of the O-move's justifier.
    """

    def __init__(self, name: str, pairs: Sequence[tuple[str, str]]):
        self.name = name
        self.pairs = tuple(pairs)

    def _map(self, m: Move) -> Optional[Move]:
        for a, b in self.pairs:
            if m.tokens.startswith(a):
                return Move(b + m.tokens[len(a) :], m.leaf)
            if m.tokens.startswith(b):
                return Move(a + m.tokens[len(b) :], m.leaf)
        return None

    def respond(self, play: Play, move: Move, ptr: Optional[int]) -> Response:
        mapped = self._map(move)
        if mapped is None:
            return None
        if ptr is None:
            return mapped, len(play)
        return mapped, ptr + 1 if ptr % 2 == 0 else ptr - 1


def strat_id() -> Strategy:
    return CopycatStrategy("id", [("^", "v")])


def strat_pi_l() -> Strategy:
    return CopycatStrategy("pi_l", [("^", "vl")])


def strat_pi_r() -> Strategy:
    return CopycatStrategy("pi_r", [("^", "vr")])


def strat_eval() -> Strategy:
    return CopycatStrategy("eval", [("^", "vl^"), ("vr", "vlv")])


# ---------------------------------------------------------------------------
# pairing and abstraction


def _pullback(kept: list[int], abs_len: int, sub_ptr: Optional[int]) -> Optional[int]:
    """Translate a component-play index back to an absolute index.  Index
    ``len(kept)`` names the O-move being answered, which sits at ``abs_len``."""
    if sub_ptr is None:
        return None
    return kept[sub_ptr] if sub_ptr < len(kept) else abs_len


class PairA(Strategy):
    """Pairing without context: ``l`` moves go to the left component and
    ``r`` moves to the right one."""

    def __init__(self, left: Strategy, right: Strategy):
        self.left = left
        self.right = right
        self.name = f"<{left.name}, {right.name}>a"

    def respond(self, play: Play, move: Move, ptr: Optional[int]) -> Response:
        if not move.tokens or move.tokens[0] not in "lr":
            return None
        side = move.tokens[0]
        comp = self.left if side == "l" else self.right
        kept = [i for i, (m, _) in enumerate(play) if m.tokens.startswith(side)]
        index = {orig: new for new, orig in enumerate(kept)}
        sub: list[PlayEntry] = []
        for orig in kept:
            m, p = play[orig]
            sub.append((Move(m.tokens[1:], m.leaf), index.get(p) if p is not None else None))
        sub_move = Move(move.tokens[1:], move.leaf)
        sub_ptr = index[ptr] if ptr is not None else None
        r = comp.respond(tuple(sub), sub_move, sub_ptr)
        if r is None:
            return None
        y, p = r
        return Move(side + y.tokens, y.leaf), _pullback(kept, len(play), p)


class PairB(Strategy):
    """Pairing with a shared context: ``^l``/``^r`` moves select the
    component, ``v`` moves are routed by the component of the ``^`` move
    they hang under."""

    def __init__(self, left: Strategy, right: Strategy):
        self.left = left
        self.right = right
        self.name = f"<{left.name}, {right.name}>b"

    def _side_of(self, play: Play, move: Move, ptr: Optional[int]) -> Optional[str]:
        if move.tokens.startswith("^"):
            return move.tokens[1] if len(move.tokens) > 1 and move.tokens[1] in "lr" else None
        if move.tokens.startswith("v"):
            j = ptr
            while j is not None:
                m, p = play[j]
                if m.tokens.startswith("^"):
                    return m.tokens[1] if len(m.tokens) > 1 and m.tokens[1] in "lr" else None
                j = p
        return None

    def respond(self, play: Play, move: Move, ptr: Optional[int]) -> Response:
        side = self._side_of(play, move, ptr)
        if side is None:
            return None
        comp = self.left if side == "l" else self.right
        zeta = "^" + side

        def belongs(i: int) -> bool:
            m, p = play[i]
            if m.tokens.startswith(zeta):
                return True
            if m.tokens.startswith("v"):
                j: Optional[int] = i
                while j is not None:
                    mm, pp = play[j]
                    if mm.tokens.startswith("^"):
                        return mm.tokens.startswith(zeta)
                    j = pp
            return False

        kept = [i for i in range(len(play)) if belongs(i)]
        index = {orig: new for new, orig in enumerate(kept)}
        sub: list[PlayEntry] = []
        for orig in kept:
            m, p = play[orig]
            stripped = (
                Move("^" + m.tokens[len(zeta) :], m.leaf)
                if m.tokens.startswith(zeta)
                else m
            )
            sub.append((stripped, index.get(p) if p is not None else None))
        sub_move = (
            Move("^" + move.tokens[len(zeta) :], move.leaf)
            if move.tokens.startswith(zeta)
            else move
        )
        sub_ptr = index[ptr] if ptr is not None else None
        r = comp.respond(tuple(sub), sub_move, sub_ptr)
        if r is None:
            return None
        y, p = r
        mapped = (
            Move(zeta + y.tokens[1:], y.leaf) if y.tokens.startswith("^") else y
        )
        return mapped, _pullback(kept, len(play), p)


class LambdaAbs(Strategy):
    """Abstraction: the context's ``r`` component becomes the argument side
    of a new output arrow.  Positions are unchanged, so pointers carry over."""

    def __init__(self, inner: Strategy):
        self.inner = inner
        self.name = f"lam({inner.name})"

    @staticmethod
    def _back(m: Move) -> Optional[Move]:
        t = m.tokens
        if t.startswith("^^"):
            return Move("^" + t[2:], m.leaf)
        if t.startswith("^v"):
            return Move("vr" + t[2:], m.leaf)
        if t.startswith("v"):
            return Move("vl" + t[1:], m.leaf)
        return None

    @staticmethod
    def _fwd(m: Move) -> Move:
        t = m.tokens
        if t.startswith("^"):
            return Move("^^" + t[1:], m.leaf)
        if t.startswith("vr"):
            return Move("^v" + t[2:], m.leaf)
        if t.startswith("vl"):
            return Move("v" + t[2:], m.leaf)
        raise AssertionError(f"inner strategy escaped its shape: {m}")

    def respond(self, play: Play, move: Move, ptr: Optional[int]) -> Response:
        back_move = self._back(move)
        if back_move is None:
            return None
        sub: list[PlayEntry] = []
        for m, p in play:
            bm = self._back(m)
            if bm is None:
                return None
            sub.append((bm, p))
        r = self.inner.respond(tuple(sub), back_move, ptr)
        if r is None:
            return None
        y, p = r
        return self._fwd(y), p


# ---------------------------------------------------------------------------
# composition


class _InteractionState:
    __slots__ = (
        "entries",  # (move, int_ptr, tag)
        "vis2int",
        "int2vis",
        "tau_play",
        "tau2int",
        "int2tau",
        "sig_play",
        "sig2int",
        "int2sig",
    )

    def __init__(self) -> None:
        self.entries: list[tuple[Move, Optional[int], str]] = []
        self.vis2int: list[int] = []
        self.int2vis: dict[int, int] = {}
        self.tau_play: list[PlayEntry] = []
        self.tau2int: list[int] = []
        self.int2tau: dict[int, int] = {}
        self.sig_play: list[PlayEntry] = []
        self.sig2int: list[int] = []
        self.int2sig: dict[int, int] = {}

    def copy(self) -> "_InteractionState":
        st = _InteractionState.__new__(_InteractionState)
        st.entries = list(self.entries)
        st.vis2int = list(self.vis2int)
        st.int2vis = dict(self.int2vis)
        st.tau_play = list(self.tau_play)
        st.tau2int = list(self.tau2int)
        st.int2tau = dict(self.int2tau)
        st.sig_play = list(self.sig_play)
        st.sig2int = list(self.sig2int)
        st.int2sig = dict(self.int2sig)
        return st


class _ComposedBase(Strategy):
    def __init__(self, sigma: Strategy, tau: Strategy, fuel: int):
        self.sigma = sigma
        self.tau = tau
        self.fuel = fuel
        self._memo: dict[Play, _InteractionState] = {}

    def _state(self, play: Play) -> _InteractionState:
        cached = self._memo.get(play)
        if cached is not None:
            return cached
        if not play:
            st = _InteractionState()
        else:
            st = self._state(play[:-2]).copy()
            (omove, optr), expected = play[-2], play[-1]
            r = self._advance(st, omove, optr)
            if r != expected:
                raise AssertionError(
                    f"{self.name}: play replays to {r}, recorded {expected}"
                )
        self._memo[play] = st
        return st

    def respond(self, play: Play, move: Move, ptr: Optional[int]) -> Response:
        st = self._state(play).copy()
        r = self._advance(st, move, ptr)
        if r is not None:
            self._memo[play + ((move, ptr), r)] = st
        return r

    def _advance(self, st: _InteractionState, move: Move, ptr: Optional[int]) -> Response:
        raise NotImplementedError

    def interaction_of(self, play: Play) -> Play:
        """The underlying interaction as a justified sequence (testing aid)."""
        st = self._state(play)
        return tuple((m, p) for m, p, _ in st.entries)


def _chain_to_tag(st: _InteractionState, idx: int, tag: str) -> int:
    j: Optional[int] = idx
    while j is not None:
        if st.entries[j][2] == tag:
            return j
        j = st.entries[j][1]
    raise AssertionError("justification chain never reaches the outer side")


class ComposeArrow(_ComposedBase):
    """Composition of two arrow-shaped strategies.  ``sigma`` answers on
    the input side, ``tau`` on the output side, and they exchange moves
    through the hidden middle."""

    def __init__(self, sigma: Strategy, tau: Strategy, fuel: int = DEFAULT_BOUNDS.interaction_fuel):
        super().__init__(sigma, tau, fuel)
        self.name = f"({sigma.name} ; {tau.name})"

    def _append(self, st: _InteractionState, move: Move, iptr: Optional[int], tag: str) -> None:
        idx = len(st.entries)
        st.entries.append((move, iptr, tag))
        if tag in ("C", "A"):
            st.int2vis[idx] = len(st.vis2int)
            st.vis2int.append(idx)
        if tag == "C":
            st.int2tau[idx] = len(st.tau_play)
            st.tau2int.append(idx)
            st.tau_play.append((move, st.int2tau.get(iptr) if iptr is not None else None))
        elif tag == "B":
            st.int2tau[idx] = len(st.tau_play)
            st.tau2int.append(idx)
            st.tau_play.append(
                (Move("v" + move.tokens[2:], move.leaf),
                 st.int2tau.get(iptr) if iptr is not None else None)
            )
            st.int2sig[idx] = len(st.sig_play)
            st.sig2int.append(idx)
            st.sig_play.append(
                (Move("^" + move.tokens[2:], move.leaf),
                 st.int2sig.get(iptr) if iptr is not None else None)
            )
        elif tag == "A":
            st.int2sig[idx] = len(st.sig_play)
            st.sig2int.append(idx)
            st.sig_play.append(
                (Move("v" + move.tokens[2:], move.leaf),
                 st.int2sig.get(iptr) if iptr is not None else None)
            )

    def _advance(self, st: _InteractionState, move: Move, ptr: Optional[int]) -> Response:
        if move.tokens.startswith("^"):
            tag, imove, turn = "C", move, "tau"
        elif move.tokens.startswith("v"):
            if ptr is None:
                return None
            tag, imove, turn = "A", Move("v" + move.tokens, move.leaf), "sig"
        else:
            return None
        iptr = st.vis2int[ptr] if ptr is not None else None
        self._append(st, imove, iptr, tag)

        for _ in range(self.fuel):
            if turn == "tau":
                q, qp = st.tau_play[-1]
                r = self.tau.respond(tuple(st.tau_play[:-1]), q, qp)
                if r is None:
                    return None
                y, p = r
                ip = st.tau2int[p] if p is not None else None
                if y.tokens.startswith("^"):
                    self._append(st, y, ip, "C")
                    return y, st.int2vis[ip] if ip is not None else None
                if y.tokens.startswith("v"):
                    self._append(st, Move("v^" + y.tokens[1:], y.leaf), ip, "B")
                    turn = "sig"
                    continue
                raise AssertionError(f"{self.tau.name} escaped the arrow shape: {y}")
            else:
                q, qp = st.sig_play[-1]
                r = self.sigma.respond(tuple(st.sig_play[:-1]), q, qp)
                if r is None:
                    return None
                y, p = r
                ip = st.sig2int[p] if p is not None else None
                if y.tokens.startswith("^"):
                    self._append(st, Move("v^" + y.tokens[1:], y.leaf), ip, "B")
                    turn = "tau"
                    continue
                if y.tokens.startswith("v"):
                    imove2 = Move("vv" + y.tokens[1:], y.leaf)
                    self._append(st, imove2, ip, "A")
                    if ip is None:
                        raise AssertionError("input-side response must be justified")
                    anchor = _chain_to_tag(st, ip, "C") if st.entries[ip][2] == "B" else ip
                    return Move(imove2.tokens[1:], imove2.leaf), st.int2vis[anchor]
                raise AssertionError(f"{self.sigma.name} escaped the arrow shape: {y}")
        raise FuelExhausted(f"{self.name}: interaction exceeded {self.fuel} internal moves")


class ComposeGround(_ComposedBase):
    """Composition of a closed denotation with an arrow-shaped strategy:
    ``sigma`` is plugged wholesale under the ``v`` side of ``tau``."""

    def __init__(self, sigma: Strategy, tau: Strategy, fuel: int = DEFAULT_BOUNDS.interaction_fuel):
        super().__init__(sigma, tau, fuel)
        self.name = f"({sigma.name} ;. {tau.name})"

    def _append(self, st: _InteractionState, move: Move, iptr: Optional[int], tag: str) -> None:
        idx = len(st.entries)
        st.entries.append((move, iptr, tag))
        # tau sees the whole interaction; indices coincide
        st.int2tau[idx] = idx
        st.tau2int.append(idx)
        st.tau_play.append((move, iptr))
        if tag == "C":
            st.int2vis[idx] = len(st.vis2int)
            st.vis2int.append(idx)
        else:
            st.int2sig[idx] = len(st.sig_play)
            st.sig2int.append(idx)
            st.sig_play.append(
                (Move(move.tokens[1:], move.leaf),
                 st.int2sig.get(iptr) if iptr is not None else None)
            )

    def _advance(self, st: _InteractionState, move: Move, ptr: Optional[int]) -> Response:
        imove = Move("^" + move.tokens, move.leaf)
        iptr = st.vis2int[ptr] if ptr is not None else None
        self._append(st, imove, iptr, "C")
        turn = "tau"
        for _ in range(self.fuel):
            if turn == "tau":
                q, qp = st.tau_play[-1]
                r = self.tau.respond(tuple(st.tau_play[:-1]), q, qp)
                if r is None:
                    return None
                y, ip = r
                if y.tokens.startswith("^"):
                    self._append(st, y, ip, "C")
                    return (
                        Move(y.tokens[1:], y.leaf),
                        st.int2vis[ip] if ip is not None else None,
                    )
                if y.tokens.startswith("v"):
                    self._append(st, y, ip, "A")
                    turn = "sig"
                    continue
                raise AssertionError(f"{self.tau.name} escaped the arrow shape: {y}")
            else:
                q, qp = st.sig_play[-1]
                r = self.sigma.respond(tuple(st.sig_play[:-1]), q, qp)
                if r is None:
                    return None
                y, p = r
                if p is None:
                    raise AssertionError("ground response must be justified")
                self._append(st, Move("v" + y.tokens, y.leaf), st.sig2int[p], "A")
                turn = "tau"
        raise FuelExhausted(f"{self.name}: interaction exceeded {self.fuel} internal moves")


def compose(sigma: Strategy, tau: Strategy, bounds: Bounds = DEFAULT_BOUNDS) -> Strategy:
    """Diagrammatic composition: first ``sigma``, then ``tau``."""
    return ComposeArrow(sigma, tau, bounds.interaction_fuel)


def pair_a(sigma: Strategy, tau: Strategy) -> Strategy:
    return PairA(sigma, tau)


def pair_b(sigma: Strategy, tau: Strategy) -> Strategy:
    return PairB(sigma, tau)


def lambda_abs(sigma: Strategy) -> Strategy:
    return LambdaAbs(sigma)


# ---------------------------------------------------------------------------
# interpretation of terms


def interpret(names: Sequence[str], t: terms.Term, bounds: Bounds = DEFAULT_BOUNDS) -> Strategy:
    """Denotation of a term in the given variable context.

    A one-variable context is an arrow shape directly, so abstraction over
    the last variable of such a context changes nothing; longer contexts
    associate as nested products with the newest variable on the right.
    """
    missing = terms.free_vars(t) - set(names)
    if missing:
        raise UnboundVariable(f"unbound variables: {sorted(missing)}")
    fuel = bounds.interaction_fuel
    return _interp(list(names), t, fuel)


def _interp(ctx: list[str], t: terms.Term, fuel: int) -> Strategy:
    match t:
        case terms.Var(x):
            if x not in ctx:
                raise UnboundVariable(x)
            if ctx[-1] == x:
                return strat_id() if len(ctx) == 1 else strat_pi_r()
            return ComposeArrow(strat_pi_l(), _interp(ctx[:-1], t, fuel), fuel)
        case terms.Lam(x, body):
            inner = _interp(ctx + [x], body, fuel)
            return inner if not ctx else LambdaAbs(inner)
        case terms.App(fn, arg):
            sf = _interp(ctx, fn, fuel)
            sa = _interp(ctx, arg, fuel)
            if ctx:
                return ComposeArrow(PairB(sf, sa), strat_eval(), fuel)
            return ComposeGround(PairA(sf, sa), strat_eval(), fuel)
        case terms.Pair(a, b):
            sa = _interp(ctx, a, fuel)
            sb = _interp(ctx, b, fuel)
            return PairB(sa, sb) if ctx else PairA(sa, sb)
        case terms.Proj1(u):
            s = _interp(ctx, u, fuel)
            cls = ComposeArrow if ctx else ComposeGround
            return cls(s, strat_pi_l(), fuel)
        case terms.Proj2(u):
            s = _interp(ctx, u, fuel)
            cls = ComposeArrow if ctx else ComposeGround
            return cls(s, strat_pi_r(), fuel)
    raise TypeError(f"not a term: {t!r}")
