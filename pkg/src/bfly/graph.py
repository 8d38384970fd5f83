"""Labeled bipartite graphs and their degree, butterfly and caterpillar statistics.

Left nodes are ``0..left_count-1`` and right nodes ``0..right_count-1``; an
edge is always written ``(left, right)``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DuplicateEdge, IdOutOfRange, ParseError, SameNode

Edge = tuple[int, int]


def choose2(k: int) -> int:
    # C(0,2) = C(1,2) = 0
    return k * (k - 1) // 2 if k >= 2 else 0


@dataclass(frozen=True)
class DegreePair:
    left_degrees: tuple[int, ...]
    right_degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "left_degrees", tuple(int(d) for d in self.left_degrees))
        object.__setattr__(self, "right_degrees", tuple(int(d) for d in self.right_degrees))
        if any(d < 0 for d in self.left_degrees + self.right_degrees):
            raise ValueError("degrees must be non-negative")

    @property
    def balanced(self) -> bool:
        return sum(self.left_degrees) == sum(self.right_degrees)

    def to_json(self) -> dict:
        return {"left": list(self.left_degrees), "right": list(self.right_degrees)}

    @classmethod
    def from_json(cls, obj: dict) -> "DegreePair":
        return cls(tuple(obj["left"]), tuple(obj["right"]))


@dataclass(frozen=True, eq=False)
class BipartiteGraph:
    """Immutable labeled bipartite graph.

    Equality and hashing use ``(left_count, right_count, edges)``. Use
    :func:`build_graph` for validated construction.
    """

    left_count: int
    right_count: int
    edges: frozenset
    left_adjacency: tuple = field(init=False, repr=False)
    right_adjacency: tuple = field(init=False, repr=False)
    _left_sets: tuple = field(init=False, repr=False)
    _right_sets: tuple = field(init=False, repr=False)

    def __post_init__(self):
        left = [[] for _ in range(self.left_count)]
        right = [[] for _ in range(self.right_count)]
        for u, a in self.edges:
            left[u].append(a)
            right[a].append(u)
        object.__setattr__(self, "left_adjacency", tuple(tuple(sorted(x)) for x in left))
        object.__setattr__(self, "right_adjacency", tuple(tuple(sorted(x)) for x in right))
        object.__setattr__(self, "_left_sets", tuple(frozenset(x) for x in left))
        object.__setattr__(self, "_right_sets", tuple(frozenset(x) for x in right))

    def __eq__(self, other):
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (
            self.left_count == other.left_count
            and self.right_count == other.right_count
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.left_count, self.right_count, self.edges))

    def __repr__(self):
        return f"BipartiteGraph(L={self.left_count}, R={self.right_count}, |E|={len(self.edges)})"

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def neighbors(self, node: int, side: str = "left") -> frozenset:
        return self._left_sets[node] if side == "left" else self._right_sets[node]

    def has_edge(self, u: int, a: int) -> bool:
        return (u, a) in self.edges

    def with_edges(self, edges: Iterable[Edge]) -> "BipartiteGraph":
        """Same node sets, new edge set (no validation)."""
        return BipartiteGraph(self.left_count, self.right_count, frozenset(edges))


def build_graph(left_count: int, right_count: int, edges: Iterable[Sequence[int]]) -> BipartiteGraph:
    if left_count < 0 or right_count < 0:
        raise IdOutOfRange("node counts must be non-negative")
    seen = set()
    for e in edges:
        u, a = int(e[0]), int(e[1])
        if not (0 <= u < left_count) or not (0 <= a < right_count):
            raise IdOutOfRange(f"edge ({u}, {a}) outside {left_count}x{right_count}")
        if (u, a) in seen:
            raise DuplicateEdge(f"edge ({u}, {a}) appears twice")
        seen.add((u, a))
    return BipartiteGraph(left_count, right_count, frozenset(seen))


def degree_sequences(g: BipartiteGraph) -> DegreePair:
    return DegreePair(
        tuple(len(x) for x in g.left_adjacency),
        tuple(len(x) for x in g.right_adjacency),
    )


def _side_sets(g: BipartiteGraph, side: str) -> tuple:
    if side == "left":
        return g._left_sets
    if side == "right":
        return g._right_sets
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def shared_neighbors(g: BipartiteGraph, u: int, v: int, side: str = "left") -> int:
    """Number of common neighbours of two distinct nodes on the same side."""
    if u == v:
        raise SameNode(f"node {u} given twice")
    sets = _side_sets(g, side)
    return len(sets[u] & sets[v])


def butterflies_pair(g: BipartiteGraph, u: int, v: int, side: str = "left") -> int:
    return choose2(shared_neighbors(g, u, v, side))


def butterflies_node(g: BipartiteGraph, u: int, side: str = "left") -> int:
    """Butterflies containing ``u``; only nodes at distance two contribute."""
    sets = _side_sets(g, side)
    other = g._right_sets if side == "left" else g._left_sets
    shared = Counter()
    for a in sets[u]:
        for v in other[a]:
            if v != u:
                shared[v] += 1
    return sum(choose2(c) for c in shared.values())


def pair_shared_counts(g: BipartiteGraph, side: str | None = None) -> Counter:
    """Map ``(u, v)`` with ``u < v`` on ``side`` to their shared-neighbour count.

    Pairs with no shared neighbour are absent. Wedges are counted through the
    opposite side. With ``side=None`` the side with fewer nodes is used.
    """
    if side is None:
        side = "left" if g.left_count <= g.right_count else "right"
    through = g.right_adjacency if side == "left" else g.left_adjacency
    counts = Counter()
    for nbrs in through:
        if len(nbrs) > 1:
            for pair in combinations(nbrs, 2):
                counts[pair] += 1
    return counts


def butterfly_count(g: BipartiteGraph, side: str | None = None) -> int:
    return sum(choose2(c) for c in pair_shared_counts(g, side).values())


def butterfly_count_oracle(g: BipartiteGraph) -> int:
    """Count butterflies by enumerating every {u, v} x {a, b} quadruple."""
    total = 0
    edges = g.edges
    for u, v in combinations(range(g.left_count), 2):
        for a, b in combinations(range(g.right_count), 2):
            if (u, a) in edges and (u, b) in edges and (v, a) in edges and (v, b) in edges:
                total += 1
    return total


def caterpillar_count(g: BipartiteGraph) -> int:
    """Number of paths with three edges (each counted once, by its middle edge)."""
    return sum(
        (len(g.left_adjacency[u]) - 1) * (len(g.right_adjacency[a]) - 1)
        for u, a in g.edges
    )


# -- "bip v1" text format ---------------------------------------------------

def format_bip(g: BipartiteGraph) -> str:
    lines = ["bip 1", f"L {g.left_count}", f"R {g.right_count}"]
    lines.extend(f"e {u} {a}" for u, a in g.sorted_edges())
    return "\n".join(lines) + "\n"


def _parse_int(tok: str, lineno: int) -> int:
    try:
        value = int(tok)
    except ValueError:
        raise ParseError(lineno, f"expected an integer, got {tok!r}") from None
    if value < 0:
        raise ParseError(lineno, f"negative value {value}")
    return value


def parse_bip(text: str, first_lineno: int = 1) -> BipartiteGraph:
    """Parse one "bip v1" document. Blank lines are ignored."""
    header_seen = False
    left = right = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    lineno = first_lineno - 1
    for lineno, raw in enumerate(text.splitlines(), start=first_lineno):
        toks = raw.split()
        if not toks:
            continue
        if not header_seen:
            if toks != ["bip", "1"]:
                raise ParseError(lineno, f"expected header 'bip 1', got {raw.strip()!r}")
            header_seen = True
            continue
        tag = toks[0]
        if tag in ("L", "R"):
            if len(toks) != 2:
                raise ParseError(lineno, f"'{tag}' takes one value")
            if edges:
                raise ParseError(lineno, f"'{tag}' after edge lines")
            if (left if tag == "L" else right) is not None:
                raise ParseError(lineno, f"repeated '{tag}' line")
            if tag == "L":
                left = _parse_int(toks[1], lineno)
            else:
                right = _parse_int(toks[1], lineno)
        elif tag == "e":
            if left is None or right is None:
                raise ParseError(lineno, "edge before 'L' and 'R' lines")
            if len(toks) != 3:
                raise ParseError(lineno, "'e' takes two values")
            u, a = _parse_int(toks[1], lineno), _parse_int(toks[2], lineno)
            if u >= left or a >= right:
                raise ParseError(lineno, f"edge ({u}, {a}) outside {left}x{right}")
            if (u, a) in seen:
                raise ParseError(lineno, f"duplicate edge ({u}, {a})")
            seen.add((u, a))
            edges.append((u, a))
        else:
            raise ParseError(lineno, f"unknown line tag {tag!r}")
    if not header_seen:
        raise ParseError(lineno, "missing 'bip 1' header")
    if left is None or right is None:
        raise ParseError(lineno, "missing 'L' or 'R' line")
    return BipartiteGraph(left, right, frozenset(edges))


def parse_bip_stream(text: str) -> list[BipartiteGraph]:
    """Parse consecutive "bip v1" blocks, each starting at a ``bip 1`` line."""
    graphs = []
    block: list[str] = []
    start = 1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.split() == ["bip", "1"] and any(line.strip() for line in block):
            graphs.append(parse_bip("\n".join(block), start))
            block, start = [], lineno
        if not block:
            start = lineno
        block.append(raw)
    if any(line.strip() for line in block):
        graphs.append(parse_bip("\n".join(block), start))
    return graphs


def read_bip(path) -> BipartiteGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_bip(fh.read())


def write_bip(g: BipartiteGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_bip(g))
