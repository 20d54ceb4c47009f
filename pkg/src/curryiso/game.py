"""Games denoting types: a finite occurrence set with a linkage function.

An occurrence is a move over the alphabet ``^ v r l *``.  The linkage maps
each occurrence either to ``None`` (rendered ``dag``: a free variable or
bottom leaf) or to the ``*``-terminated prefix locating the quantifier
that binds its leaf.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Optional

from .formula import Arrow, Bot, Forall, Formula, Prod, Var
from .moves import (
    Move,
    enables,
    erasure,
    is_initial,
    is_prefix,
    leaf_of,
    move_subst,
    polarity,
)

__all__ = [
    "Game",
    "erasure",
    "leaf_of",
    "occ_subst",
    "is_prefix",
    "enables",
    "game_atom_bot",
    "game_atom_var",
    "game_prod",
    "game_arrow",
    "game_forall",
    "game_of_formula",
    "game_subst",
    "validate_game",
    "aux_polarity",
    "game_to_json",
]

occ_subst = move_subst


def _occ_key(m: Move) -> tuple[str, int]:
    return (m.tokens, m.leaf)


class Game:
    """Immutable, hashable; equality is structural on the linkage map."""

    __slots__ = ("_pairs", "_links")

    def __init__(self, links: Mapping[Move, Optional[Move]] | Iterable[tuple[Move, Optional[Move]]]):
        items = links.items() if isinstance(links, Mapping) else links
        self._pairs: tuple[tuple[Move, Optional[Move]], ...] = tuple(
            sorted(items, key=lambda kv: _occ_key(kv[0]))
        )
        self._links = dict(self._pairs)

    @property
    def occurrences(self) -> tuple[Move, ...]:
        return tuple(occ for occ, _ in self._pairs)

    def link(self, occ: Move) -> Optional[Move]:
        return self._links[occ]

    def __contains__(self, occ: Move) -> bool:
        return occ in self._links

    def items(self) -> tuple[tuple[Move, Optional[Move]], ...]:
        return self._pairs

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Game) and self._pairs == other._pairs

    def __hash__(self) -> int:
        return hash(self._pairs)

    def __repr__(self) -> str:
        body = ", ".join(
            f"{occ}->{'dag' if link is None else link}" for occ, link in self._pairs
        )
        return f"Game({body})"


# ---------------------------------------------------------------------------
# inductive constructors


def game_atom_bot() -> Game:
    return Game({Move("", 0): None})


def game_atom_var(i: int) -> Game:
    if i < 1:
        raise ValueError("variable index must be >= 1")
    return Game({Move("", i): None})


def _prefixed(g: Game, tok: str) -> dict[Move, Optional[Move]]:
    out: dict[Move, Optional[Move]] = {}
    for occ, link in g.items():
        out[Move(tok + occ.tokens, occ.leaf)] = (
            None if link is None else Move(tok + link.tokens, link.leaf)
        )
    return out


def game_prod(a: Game, b: Game) -> Game:
    links = _prefixed(a, "l")
    links.update(_prefixed(b, "r"))
    return Game(links)


def game_arrow(a: Game, b: Game) -> Game:
    links = _prefixed(a, "v")
    links.update(_prefixed(b, "^"))
    return Game(links)


def game_forall(a: Game, i: int) -> Game:
    """Star-prefix every occurrence; leafs equal to ``i`` are rewritten to 0
    and linked to the new quantifier."""
    if i < 1:
        raise ValueError("variable index must be >= 1")
    links: dict[Move, Optional[Move]] = {}
    for occ, link in a.items():
        if occ.leaf == i:
            links[Move("*" + occ.tokens, 0)] = Move("*", 0)
        else:
            links[Move("*" + occ.tokens, occ.leaf)] = (
                None if link is None else Move("*" + link.tokens, link.leaf)
            )
    return Game(links)


def fold_formula(f: Formula) -> Game:
    """The inductive construction, one clause per type constructor."""
    match f:
        case Bot():
            return game_atom_bot()
        case Var(i):
            return game_atom_var(i)
        case Prod(a, b):
            return game_prod(fold_formula(a), fold_formula(b))
        case Arrow(a, b):
            return game_arrow(fold_formula(a), fold_formula(b))
        case Forall(i, body):
            return game_forall(fold_formula(body), i)
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# syntactic-tree construction


class _TreeNode:
    __slots__ = ("edges", "leaf", "target")

    def __init__(self, leaf: Optional[int] = None):
        self.edges: list[tuple[str, _TreeNode]] = []
        self.leaf = leaf
        self.target: Optional[_TreeNode] = None  # leafs only: the binder node


def _build_tree(f: Formula) -> _TreeNode:
    match f:
        case Bot():
            return _TreeNode(leaf=0)
        case Var(i):
            return _TreeNode(leaf=i)
        case Prod(a, b):
            node = _TreeNode()
            node.edges = [("l", _build_tree(a)), ("r", _build_tree(b))]
            return node
        case Arrow(a, b):
            node = _TreeNode()
            node.edges = [("v", _build_tree(a)), ("^", _build_tree(b))]
            return node
        case Forall(i, body):
            sub = _build_tree(body)
            _link_leafs(sub, i, sub)
            node = _TreeNode()
            node.edges = [("*", sub)]
            return node
    raise TypeError(f"not a formula: {f!r}")


def _link_leafs(node: _TreeNode, i: int, root: _TreeNode) -> None:
    if node.leaf == i and node.target is None:
        node.leaf = 0
        node.target = root
    for _, child in node.edges:
        _link_leafs(child, i, root)


def game_of_formula(f: Formula) -> Game:
    """Read the game off the syntactic tree: occurrences are the maximal
    branches; a linked leaf yields the path of its binder node plus ``0``."""
    root = _build_tree(f)
    paths: dict[int, str] = {}  # id(node) -> token path from the root

    def index(node: _TreeNode, path: str) -> None:
        paths[id(node)] = path
        for tok, child in node.edges:
            index(child, path + tok)

    index(root, "")

    links: dict[Move, Optional[Move]] = {}

    def branches(node: _TreeNode, path: str) -> None:
        if not node.edges:
            occ = Move(path, node.leaf if node.leaf is not None else 0)
            if node.target is not None:
                links[occ] = Move(paths[id(node.target)], 0)
            else:
                links[occ] = None
            return
        for tok, child in node.edges:
            branches(child, path + tok)

    branches(root, "")
    return Game(links)


# ---------------------------------------------------------------------------
# substitution on games


def game_subst(a: Game, b: Game, i: int) -> Game:
    """Replace every occurrence with leaf ``i`` by its fan-out over ``b``."""
    links: dict[Move, Optional[Move]] = {}
    for occ, link in a.items():
        if occ.leaf != i:
            links[occ] = link
            continue
        for bocc in b.occurrences:
            blink = b.link(bocc)
            links[occ_subst(occ, bocc)] = (
                None if blink is None else occ_subst(occ, blink)
            )
    return Game(links)


# ---------------------------------------------------------------------------
# validation and polarity


def validate_game(g: Game) -> list[str]:
    """All structural conditions; an empty list means the game is valid."""
    violations: list[str] = []
    occs = g.occurrences
    if not occs:
        violations.append("occurrence set is empty")
        return violations
    occ_set = set(occs)
    for a in occs:
        if not is_initial(a) and not any(enables(o, a) for o in occ_set if o != a):
            violations.append(f"coherence: {a} is neither initial nor enabled")
    # non-ambiguity: no erased occurrence is a prefix of another erased one
    for a in occs:
        for a2 in occs:
            if a is not a2 and is_prefix(erasure(a), erasure(a2)):
                violations.append(f"ambiguity: E({a}) is a prefix of E({a2})")
    for a in occs:
        link = g.link(a)
        if link is not None:
            if link.leaf != 0 or not link.tokens.endswith("*"):
                violations.append(f"linkage of {a} does not end in a quantifier: {link}")
            elif not is_prefix(link, a):
                violations.append(f"linkage of {a} is not a prefix of it: {link}")
        if a.leaf != 0 and link is not None:
            violations.append(f"nonzero leaf {a} must be unlinked")
    return violations


def aux_polarity(g: Game, a: Move) -> Optional[str]:
    """Polarity of the linkage target, or None for unlinked occurrences."""
    if a not in g:
        raise KeyError(f"occurrence {a} is not in the game")
    link = g.link(a)
    return None if link is None else polarity(link)


# ---------------------------------------------------------------------------
# rendering


def game_to_json(g: Game) -> dict:
    entries = [
        {"occ": str(occ), "link": "dag" if link is None else str(link)}
        for occ, link in g.items()
    ]
    entries.sort(key=lambda e: e["occ"])
    return {"occurrences": entries}
