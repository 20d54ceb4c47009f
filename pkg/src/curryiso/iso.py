"""Deciding type isomorphism on hyperforests, plus traces and witness terms.

Two decision routes are provided on purpose.  The primary route compares
the hyperforests of the two types directly under the weaker bijection
(span membership preserved, only polarity-mixed hyperedges transported).
The oracle route first normalizes both types by eliminating quantifiers
that bind no negative occurrence, then requires an exact hyperedge-
preserving bijection.  The two must always agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from . import terms
from .formula import (
    Arrow,
    Bot,
    Forall,
    Formula,
    Prod,
    Var,
    alpha_eq,
    all_indices,
    ftv,
    pos_neg,
    subst,
)
from .game import game_of_formula
from .hyperforest import Hyperforest, Node, hyperforest_of_game, node_polarity
from .terms import Term

__all__ = [
    "church_iso",
    "curry_iso",
    "normalize",
    "decide_iso",
    "TraceStep",
    "Trace",
    "find_trace",
    "apply_step",
    "replay_trace",
    "witness",
    "AXIOM_COUNT",
    "axiom_witness_pair",
]

Bijection = dict[Node, Node]

AXIOM_COUNT = 8


# ---------------------------------------------------------------------------
# hyperforest bijections


def _node_key(n: Node) -> tuple:
    return tuple((m.tokens, m.leaf) for m in n.path)


def _subtree_keys(h: Hyperforest) -> dict[Node, tuple]:
    """Canonical subtree shape: decoration, span membership, child multiset.

    Both bijection notions must preserve all three pointwise, so nodes may
    only ever be matched within equal keys.
    """
    keys: dict[Node, tuple] = {}

    def key(n: Node) -> tuple:
        if n in keys:
            return keys[n]
        k = (
            h.decoration.get(n, 0),
            n in h.span_members,
            tuple(sorted(key(c) for c in h.children(n))),
        )
        keys[n] = k
        return k

    for n in h.nodes:
        key(n)
    return keys


def _order_isos(h1: Hyperforest, h2: Hyperforest) -> Iterator[Bijection]:
    """All forest order-isomorphisms respecting subtree keys, in a fixed order.

    The first bijection yielded is the lexicographically least one over the
    node orderings.
    """
    k1 = _subtree_keys(h1)
    k2 = _subtree_keys(h2)

    def match_siblings(ns1: list[Node], ns2: list[Node]) -> Iterator[Bijection]:
        if len(ns1) != len(ns2):
            return
        groups1: dict[tuple, list[Node]] = {}
        groups2: dict[tuple, list[Node]] = {}
        for n in sorted(ns1, key=_node_key):
            groups1.setdefault(k1[n], []).append(n)
        for n in sorted(ns2, key=_node_key):
            groups2.setdefault(k2[n], []).append(n)
        if set(groups1) != set(groups2):
            return
        if any(len(groups1[k]) != len(groups2[k]) for k in groups1):
            return
        keys = sorted(groups1)

        def per_group(idx: int) -> Iterator[list[tuple[Node, Node]]]:
            if idx == len(keys):
                yield []
                return
            g1 = groups1[keys[idx]]
            g2 = groups2[keys[idx]]
            for perm in itertools.permutations(g2):
                for rest in per_group(idx + 1):
                    yield list(zip(g1, perm)) + rest

        for pairing in per_group(0):
            for m in descend(pairing):
                yield m

    def descend(pairs: list[tuple[Node, Node]]) -> Iterator[Bijection]:
        if not pairs:
            yield {}
            return
        (a, b), rest = pairs[0], pairs[1:]
        for sub in match_siblings(h1.children(a), h2.children(b)):
            for tail in descend(rest):
                m = {a: b}
                m.update(sub)
                m.update(tail)
                yield m

    yield from match_siblings(h1.roots(), h2.roots())


def _search(
    h1: Hyperforest, h2: Hyperforest, accept: Callable[[Bijection], bool]
) -> Optional[Bijection]:
    for m in _order_isos(h1, h2):
        if accept(m):
            return m
    return None


def church_iso(h1: Hyperforest, h2: Hyperforest) -> Optional[Bijection]:
    """A bijection transporting the hyperedge set exactly, or None."""
    r2 = set(h2.hyperedges)

    def accept(m: Bijection) -> bool:
        transported = {
            (m[t], frozenset(m[s] for s in span)) for t, span in h1.hyperedges
        }
        return transported == r2

    return _search(h1, h2, accept)


def curry_iso(h1: Hyperforest, h2: Hyperforest) -> Optional[Bijection]:
    """A bijection transporting only the polarity-mixed hyperedges, both
    ways, while preserving span membership pointwise; or None."""
    r1 = set(h1.hyperedges)
    r2 = set(h2.hyperedges)

    def mixed(t: Node, span: frozenset[Node]) -> bool:
        pt = node_polarity(t)
        return any(node_polarity(s) != pt for s in span)

    def accept(m: Bijection) -> bool:
        inv = {v: k for k, v in m.items()}
        for t, span in r1:
            if mixed(t, span):
                if (m[t], frozenset(m[s] for s in span)) not in r2:
                    return False
        for t, span in r2:
            if mixed(t, span):
                if (inv[t], frozenset(inv[s] for s in span)) not in r1:
                    return False
        return True

    return _search(h1, h2, accept)


# ---------------------------------------------------------------------------
# quantifier-elimination normal form


def _closed_identity() -> Formula:
    return Forall(1, Var(1))


def _rewrite_once(f: Formula) -> tuple[Formula, bool]:
    match f:
        case Forall(i, body):
            _, neg = pos_neg(body)
            if i not in neg and body != Var(i):
                return subst(body, _closed_identity(), i), True
            body2, changed = _rewrite_once(body)
            return Forall(i, body2), changed
        case Prod(a, b):
            a2, changed = _rewrite_once(a)
            if changed:
                return Prod(a2, b), True
            b2, changed = _rewrite_once(b)
            return Prod(a, b2), changed
        case Arrow(a, b):
            a2, changed = _rewrite_once(a)
            if changed:
                return Arrow(a2, b), True
            b2, changed = _rewrite_once(b)
            return Arrow(a, b2), changed
    return f, False


def normalize(f: Formula) -> Formula:
    """Eliminate every quantifier whose variable occurs only positively,
    replacing it by instantiation at the closed identity type."""
    changed = True
    while changed:
        f, changed = _rewrite_once(f)
    return f


# ---------------------------------------------------------------------------
# the decision procedure


def hyperforest_of(f: Formula) -> Hyperforest:
    return hyperforest_of_game(game_of_formula(f))


def decide_iso(a: Formula, b: Formula) -> bool:
    return curry_iso(hyperforest_of(a), hyperforest_of(b)) is not None


def decide_iso_church_route(a: Formula, b: Formula) -> bool:
    """Independent oracle: normalize first, then exact bijection."""
    return (
        church_iso(hyperforest_of(normalize(a)), hyperforest_of(normalize(b)))
        is not None
    )


# ---------------------------------------------------------------------------
# equational traces

Path = tuple[str, ...]  # elements: "left", "right", "dom", "cod", "body"


@dataclass(frozen=True)
class TraceStep:
    axiom: int
    direction: str  # "lr" or "rl"
    path: Path
    meta: tuple = ()


Trace = tuple[TraceStep, ...]


class TraceError(ValueError):
    pass


def _subterm(f: Formula, path: Path) -> Formula:
    for d in path:
        match f, d:
            case Prod(a, _), "left":
                f = a
            case Prod(_, b), "right":
                f = b
            case Arrow(a, _), "dom":
                f = a
            case Arrow(_, b), "cod":
                f = b
            case Forall(_, body), "body":
                f = body
            case _:
                raise TraceError(f"path {path} does not exist")
    return f


def _replace(f: Formula, path: Path, new: Formula) -> Formula:
    if not path:
        return new
    d, rest = path[0], path[1:]
    match f, d:
        case Prod(a, b), "left":
            return Prod(_replace(a, rest, new), b)
        case Prod(a, b), "right":
            return Prod(a, _replace(b, rest, new))
        case Arrow(a, b), "dom":
            return Arrow(_replace(a, rest, new), b)
        case Arrow(a, b), "cod":
            return Arrow(a, _replace(b, rest, new))
        case Forall(i, body), "body":
            return Forall(i, _replace(body, rest, new))
    raise TraceError(f"path {path} does not exist")


def _fresh_index(*fs: Formula) -> int:
    used = frozenset().union(*(all_indices(f) for f in fs))
    k = 1
    while k in used:
        k += 1
    return k


def _identity_positions(f: Formula) -> list[Path]:
    """Paths of subterms alpha-equal to the closed identity type."""
    out: list[Path] = []

    def walk(g: Formula, path: Path) -> None:
        if alpha_eq(g, _closed_identity()):
            out.append(path)
            return
        match g:
            case Prod(a, b):
                walk(a, path + ("left",))
                walk(b, path + ("right",))
            case Arrow(a, b):
                walk(a, path + ("dom",))
                walk(b, path + ("cod",))
            case Forall(_, body):
                walk(body, path + ("body",))

    walk(f, ())
    return out


def _root_applications(f: Formula, axiom: int, direction: str) -> list[tuple[Formula, tuple]]:
    """All results of applying one equation at the root, with replay metadata."""
    lr = direction == "lr"
    match axiom:
        case 1:
            if isinstance(f, Prod):
                return [(Prod(f.right, f.left), ())]
        case 2:
            if lr:
                if isinstance(f, Prod) and isinstance(f.right, Prod):
                    return [(Prod(Prod(f.left, f.right.left), f.right.right), ())]
            else:
                if isinstance(f, Prod) and isinstance(f.left, Prod):
                    return [(Prod(f.left.left, Prod(f.left.right, f.right)), ())]
        case 3:
            if lr:
                if isinstance(f, Arrow) and isinstance(f.codomain, Arrow):
                    return [
                        (
                            Arrow(
                                Prod(f.domain, f.codomain.domain),
                                f.codomain.codomain,
                            ),
                            (),
                        )
                    ]
            else:
                if isinstance(f, Arrow) and isinstance(f.domain, Prod):
                    return [
                        (
                            Arrow(f.domain.left, Arrow(f.domain.right, f.codomain)),
                            (),
                        )
                    ]
        case 4:
            if lr:
                if isinstance(f, Arrow) and isinstance(f.codomain, Prod):
                    a, b, c = f.domain, f.codomain.left, f.codomain.right
                    return [(Prod(Arrow(a, b), Arrow(a, c)), ())]
            else:
                if (
                    isinstance(f, Prod)
                    and isinstance(f.left, Arrow)
                    and isinstance(f.right, Arrow)
                    and alpha_eq(f.left.domain, f.right.domain)
                ):
                    return [
                        (
                            Arrow(
                                f.left.domain,
                                Prod(f.left.codomain, f.right.codomain),
                            ),
                            (),
                        )
                    ]
        case 5:
            if isinstance(f, Forall) and isinstance(f.body, Forall):
                return [(Forall(f.body.binder, Forall(f.binder, f.body.body)), ())]
        case 6:
            if lr:
                if isinstance(f, Arrow) and isinstance(f.codomain, Forall):
                    a, i, b = f.domain, f.codomain.binder, f.codomain.body
                    if i in ftv(a):
                        k = _fresh_index(a, b)
                        b = subst(b, Var(k), i)
                        i = k
                    return [(Forall(i, Arrow(a, b)), ())]
            else:
                if isinstance(f, Forall) and isinstance(f.body, Arrow):
                    i, a, b = f.binder, f.body.domain, f.body.codomain
                    if i not in ftv(a):
                        return [(Arrow(a, Forall(i, b)), ())]
        case 7:
            if lr:
                if isinstance(f, Forall) and isinstance(f.body, Prod):
                    i, a, b = f.binder, f.body.left, f.body.right
                    return [(Prod(Forall(i, a), Forall(i, b)), ())]
            else:
                if (
                    isinstance(f, Prod)
                    and isinstance(f.left, Forall)
                    and isinstance(f.right, Forall)
                ):
                    i, a = f.left.binder, f.left.body
                    j, b = f.right.binder, f.right.body
                    k = _fresh_index(a, b)
                    return [
                        (Forall(k, Prod(subst(a, Var(k), i), subst(b, Var(k), j))), ())
                    ]
        case 8:
            if lr:
                if isinstance(f, Forall):
                    _, neg = pos_neg(f.body)
                    if f.binder not in neg:
                        return [(subst(f.body, _closed_identity(), f.binder), ())]
            else:
                # abstract a subset of closed-identity subterms into a new
                # quantifier; the subset is the replay metadata
                positions = _identity_positions(f)
                if not positions:
                    return []
                out = []
                if len(positions) <= 6:
                    subsets: list[tuple[Path, ...]] = []
                    for r in range(1, len(positions) + 1):
                        subsets.extend(itertools.combinations(positions, r))
                else:
                    subsets = [(p,) for p in positions] + [tuple(positions)]
                for chosen in subsets:
                    k = _fresh_index(f)
                    body = f
                    for p in chosen:
                        body = _replace(body, p, Var(k))
                    _, neg = pos_neg(body)
                    if k not in neg:
                        out.append((Forall(k, body), (chosen,)))
                return out
    return []


def apply_step(f: Formula, step: TraceStep) -> Formula:
    sub = _subterm(f, step.path)
    if step.axiom == 8 and step.direction == "rl" and step.meta:
        (chosen,) = step.meta
        k = _fresh_index(sub)
        body = sub
        for p in chosen:
            if not alpha_eq(_subterm(sub, p), _closed_identity()):
                raise TraceError("metadata does not select identity subterms")
            body = _replace(body, p, Var(k))
        _, neg = pos_neg(body)
        if k in neg:
            raise TraceError("abstracted variable occurs negatively")
        return _replace(f, step.path, Forall(k, body))
    results = _root_applications(sub, step.axiom, step.direction)
    if not results:
        raise TraceError(
            f"axiom {step.axiom} ({step.direction}) does not apply at {step.path}"
        )
    return _replace(f, step.path, results[0][0])


def replay_trace(f: Formula, trace: Trace) -> Formula:
    for step in trace:
        f = apply_step(f, step)
    return f


def _all_steps(f: Formula) -> Iterator[tuple[TraceStep, Formula]]:
    def walk(g: Formula, path: Path) -> Iterator[tuple[TraceStep, Formula]]:
        for axiom in range(1, AXIOM_COUNT + 1):
            for direction in ("lr", "rl"):
                for result, meta in _root_applications(g, axiom, direction):
                    step = TraceStep(axiom, direction, path, meta)
                    yield step, result
        match g:
            case Prod(a, b):
                for step, res in walk(a, path + ("left",)):
                    yield step, res
                for step, res in walk(b, path + ("right",)):
                    yield step, res
            case Arrow(a, b):
                for step, res in walk(a, path + ("dom",)):
                    yield step, res
                for step, res in walk(b, path + ("cod",)):
                    yield step, res
            case Forall(_, body):
                for step, res in walk(body, path + ("body",)):
                    yield step, res

    for step, res in walk(f, ()):
        yield step, _replace(f, step.path, res)


def _alpha_key(f: Formula) -> tuple:
    def go(g: Formula, env: dict, depth: int) -> tuple:
        match g:
            case Var(i):
                return ("b", env[i]) if i in env else ("f", i)
            case Bot():
                return ("bot",)
            case Prod(a, b):
                return ("prod", go(a, env, depth), go(b, env, depth))
            case Arrow(a, b):
                return ("arrow", go(a, env, depth), go(b, env, depth))
            case Forall(i, body):
                env2 = dict(env)
                env2[i] = depth
                return ("all", go(body, env2, depth + 1))
        raise TypeError(f"not a formula: {g!r}")

    return go(f, {}, 0)


_SEARCH_STATE_CAP = 20000


def find_trace(a: Formula, b: Formula, max_depth: int) -> Optional[Trace]:
    """Bounded breadth-first search over the eight equations, applied at any
    position.  None means the bound was exhausted, not that no trace exists."""
    target = _alpha_key(b)
    if _alpha_key(a) == target:
        return ()
    frontier: list[tuple[Formula, Trace]] = [(a, ())]
    visited = {_alpha_key(a)}
    for _ in range(max_depth):
        nxt: list[tuple[Formula, Trace]] = []
        for g, trace in frontier:
            for step, result in _all_steps(g):
                key = _alpha_key(result)
                if key == target:
                    return trace + (step,)
                if key not in visited:
                    visited.add(key)
                    nxt.append((result, trace + (step,)))
                    if len(visited) > _SEARCH_STATE_CAP:
                        return None
        frontier = nxt
    return None


# ---------------------------------------------------------------------------
# witness terms


def _t(text: str) -> Term:
    return terms.parse_term(text)


def axiom_witness_pair(axiom: int) -> tuple[Term, Term]:
    """Untyped witnesses (forward, backward) for one equation."""
    table = {
        1: ("\\p. <p2 p, p1 p>", "\\p. <p2 p, p1 p>"),
        2: (
            "\\p. <<p1 p, p1 (p2 p)>, p2 (p2 p)>",
            "\\p. <p1 (p1 p), <p2 (p1 p), p2 p>>",
        ),
        3: ("\\f. \\p. f (p1 p) (p2 p)", "\\g. \\a. \\b. g <a, b>"),
        4: (
            "\\f. <\\a. p1 (f a), \\a. p2 (f a)>",
            "\\p. \\a. <p1 p a, p2 p a>",
        ),
        5: ("\\x. x", "\\x. x"),
        6: ("\\x. x", "\\x. x"),
        # distributing a quantifier over a product erases to the pair
        # eta-expansion in both directions
        7: ("\\x. <p1 x, p2 x>", "\\p. <p1 p, p2 p>"),
        8: ("\\x. x", "\\x. x"),
    }
    fwd, bwd = table[axiom]
    return _t(fwd), _t(bwd)


def _wrap(elem: str, fwd: Term, bwd: Term) -> tuple[Term, Term]:
    f = terms.to_str(fwd)
    b = terms.to_str(bwd)
    match elem:
        case "cod":
            return _t(f"\\h. \\x. ({f}) (h x)"), _t(f"\\h. \\x. ({b}) (h x)")
        case "dom":
            # contravariant: the backward witness transforms the argument
            return _t(f"\\h. \\x. h (({b}) x)"), _t(f"\\h. \\x. h (({f}) x)")
        case "left":
            return (
                _t(f"\\p. <({f}) (p1 p), p2 p>"),
                _t(f"\\p. <({b}) (p1 p), p2 p>"),
            )
        case "right":
            return (
                _t(f"\\p. <p1 p, ({f}) (p2 p)>"),
                _t(f"\\p. <p1 p, ({b}) (p2 p)>"),
            )
        case "body":
            # quantifier congruence leaves the untyped witness unchanged
            return fwd, bwd
    raise TraceError(f"unknown path element {elem!r}")


def witness(trace: Trace) -> tuple[Term, Term]:
    """Compose per-step witnesses along the trace; both terms beta-normal."""
    fwd_total = terms.identity_term()
    bwd_total = terms.identity_term()
    for step in trace:
        fwd, bwd = axiom_witness_pair(step.axiom)
        if step.direction == "rl":
            fwd, bwd = bwd, fwd
        for elem in reversed(step.path):
            fwd, bwd = _wrap(elem, fwd, bwd)
        fwd_total = terms.compose_terms(fwd, fwd_total)
        bwd_total = terms.compose_terms(bwd_total, bwd)
    return terms.normalize_term(fwd_total), terms.normalize_term(bwd_total)
