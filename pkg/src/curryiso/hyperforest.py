"""Hyperforests extracted from games.

A node is a concrete path of occurrences from an initial occurrence down
the enabling relation; the forest order is path prefixing.  Hyperedges
group the nodes bound by one quantifier occurrence under an anchor node,
and the decoration records free-variable leafs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .game import Game
from .moves import Move, O, P, enables, is_initial, is_prefix, polarity

__all__ = [
    "Node",
    "Hyperforest",
    "paths_of",
    "origin",
    "hyperforest_of_game",
    "validate_hyperforest",
    "ref_fr",
    "node_polarity",
    "forest_to_json",
]


@dataclass(frozen=True)
class Node:
    path: tuple[Move, ...]

    def origin(self) -> Move:
        return self.path[-1]

    def parent(self) -> Optional["Node"]:
        return Node(self.path[:-1]) if len(self.path) > 1 else None

    def __le__(self, other: "Node") -> bool:
        n = len(self.path)
        return n <= len(other.path) and other.path[:n] == self.path

    def __str__(self) -> str:
        return " . ".join(str(m) for m in self.path)


def origin(n: Node) -> Move:
    return n.origin()


def _node_key(n: Node) -> tuple:
    return tuple((m.tokens, m.leaf) for m in n.path)


Hyperedge = tuple[Node, frozenset[Node]]


class Hyperforest:
    __slots__ = ("nodes", "hyperedges", "decoration", "_span_members")

    def __init__(
        self,
        nodes: Iterable[Node],
        hyperedges: Iterable[Hyperedge],
        decoration: Mapping[Node, int],
    ):
        self.nodes: tuple[Node, ...] = tuple(sorted(set(nodes), key=_node_key))
        self.hyperedges: tuple[Hyperedge, ...] = tuple(
            sorted(
                ((t, frozenset(s)) for t, s in hyperedges),
                key=lambda e: (_node_key(e[0]), sorted(map(_node_key, e[1]))),
            )
        )
        self.decoration: dict[Node, int] = dict(decoration)
        self._span_members: frozenset[Node] = frozenset(
            s for _, span in self.hyperedges for s in span
        )

    @property
    def span_members(self) -> frozenset[Node]:
        """Nodes belonging to the span of some hyperedge."""
        return self._span_members

    def roots(self) -> list[Node]:
        return [n for n in self.nodes if len(n.path) == 1]

    def children(self, n: Node) -> list[Node]:
        want = len(n.path) + 1
        return [
            c
            for c in self.nodes
            if len(c.path) == want and c.path[: len(n.path)] == n.path
        ]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Hyperforest)
            and self.nodes == other.nodes
            and set(self.hyperedges) == set(other.hyperedges)
            and self.decoration == other.decoration
        )

    def __hash__(self) -> int:
        return hash((self.nodes, frozenset(self.hyperedges)))


# ---------------------------------------------------------------------------
# paths


def paths_of(g: Game) -> list[Node]:
    """All enabling paths through the occurrence set, prefix-closed."""
    occs = g.occurrences
    roots = [a for a in occs if is_initial(a)]
    children = {a: [b for b in occs if enables(a, b)] for a in occs}
    out: list[Node] = []

    def walk(path: tuple[Move, ...]) -> None:
        out.append(Node(path))
        for b in children[path[-1]]:
            walk(path + (b,))

    for a in roots:
        walk((a,))
    out.sort(key=_node_key)
    return out


def node_polarity(n: Node) -> str:
    """O at odd depth, P at even depth; agrees with the origin's polarity."""
    return O if len(n.path) % 2 else P


# ---------------------------------------------------------------------------
# extraction


def hyperforest_of_game(g: Game) -> Hyperforest:
    nodes = paths_of(g)

    # group bound nodes by their quantifier spot and its minimal anchor;
    # the spot of a bound node is exactly its origin's linkage target
    hyperedges: dict[tuple[Move, Node], set[Node]] = {}
    for s in nodes:
        y = g.link(s.origin())
        if y is None:
            continue
        anchor = None
        for k in range(1, len(s.path) + 1):
            t = Node(s.path[:k])
            if is_prefix(y, t.origin()):
                anchor = t
                break
        if anchor is None:  # cannot happen for valid games
            raise ValueError(f"no anchor for {s} with linkage {y}")
        hyperedges.setdefault((y, anchor), set()).add(s)

    decoration = {
        n: n.origin().leaf for n in nodes if n.origin().leaf > 0
    }
    return Hyperforest(
        nodes,
        [(anchor, frozenset(span)) for (_, anchor), span in hyperedges.items()],
        decoration,
    )


# ---------------------------------------------------------------------------
# validation and reference lookup


def validate_hyperforest(h: Hyperforest) -> list[str]:
    violations: list[str] = []
    node_set = set(h.nodes)
    for n in h.nodes:
        p = n.parent()
        if p is not None and p not in node_set:
            violations.append(f"forest: {n} lacks its prefix {p}")
    seen_spans: list[tuple[Node, frozenset[Node]]] = []
    for t, span in h.hyperedges:
        if t not in node_set:
            violations.append(f"hyperedge anchor {t} is not a node")
        for s in span:
            if s not in node_set:
                violations.append(f"span member {s} is not a node")
            elif not (t <= s):
                violations.append(f"span member {s} is not above anchor {t}")
            if s in h.decoration:
                violations.append(f"span member {s} is decorated")
        for t2, span2 in seen_spans:
            if span & span2 and (t, span) != (t2, span2):
                violations.append(f"overlapping spans at {t} and {t2}")
        seen_spans.append((t, span))
    return violations


def ref_fr(h: Hyperforest, n: Node) -> Optional[tuple[Node, frozenset[Node]]]:
    """The anchor of the span containing ``n`` and the other span members."""
    if n not in set(h.nodes):
        raise KeyError(f"node {n} is not in the hyperforest")
    for t, span in h.hyperedges:
        if n in span:
            return t, span - {n}
    return None


# ---------------------------------------------------------------------------
# rendering


def forest_to_json(h: Hyperforest) -> dict:
    index = {n: i for i, n in enumerate(h.nodes)}
    nodes = [
        {
            "id": index[n],
            "parent": index[n.parent()] if n.parent() is not None else None,
            "origin": str(n.origin()),
            "decoration": h.decoration.get(n),
        }
        for n in h.nodes
    ]
    edges = [
        {"anchor": index[t], "span": sorted(index[s] for s in span)}
        for t, span in h.hyperedges
    ]
    return {"nodes": nodes, "hyperedges": edges}
