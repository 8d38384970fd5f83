"""Side-respecting canonical labeling of bipartite graphs.

Each connected component is labeled by colour refinement seeded with
``(side, degree)`` followed by individualisation/refinement search for the
lexicographically smallest relabeled edge list. The search skips branches
that are equivalent under twin transpositions or automorphisms discovered
along the way. Components are then ordered by their own certificates.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache

from .graph import BipartiteGraph, Edge


@dataclass(frozen=True, eq=False)
class CanonicalForm:
    left_count: int
    right_count: int
    canonical_edge_list: tuple[Edge, ...]
    # old id -> canonical id, per side
    left_relabeling: tuple[int, ...]
    right_relabeling: tuple[int, ...]

    @property
    def key(self) -> tuple:
        return (self.left_count, self.right_count, self.canonical_edge_list)

    def __eq__(self, other):
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def digest(self) -> str:
        h = hashlib.sha1(f"{self.left_count} {self.right_count}".encode())
        for u, a in self.canonical_edge_list:
            h.update(f";{u},{a}".encode())
        return h.hexdigest()

    def to_json(self) -> dict:
        return {
            "left_count": self.left_count,
            "right_count": self.right_count,
            "edges": [list(e) for e in self.canonical_edge_list],
            "digest": self.digest(),
        }


def _rank(signatures: list) -> list[int]:
    order = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
    return [order[sig] for sig in signatures]


def _refine(colors: list[int], adj: list[tuple[int, ...]]) -> list[int]:
    ncolors = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(len(adj))]
        new = _rank(sigs)
        k = len(set(new))
        if k == ncolors:
            return new
        colors, ncolors = new, k


def _individualize(colors: list[int], v: int, adj) -> list[int]:
    sigs = [(c, 0 if u == v else 1) for u, c in enumerate(colors)]
    return _refine(_rank(sigs), adj)


class _Search:
    def __init__(self, nl: int, adj: list[tuple[int, ...]]):
        self.nl = nl
        self.adj = adj
        n = len(adj)
        twin_of: dict = {}
        self.twin = [twin_of.setdefault((v < nl, adj[v]), v) for v in range(n)]
        self.first = None  # (cert, colors, prefix)
        self.best = None
        self.generators: list[list[int]] = []

    def _cert(self, colors):
        nl = self.nl
        return tuple(sorted((colors[u], colors[w] - nl) for u in range(nl) for w in self.adj[u]))

    def _automorphism(self, colors, ref_colors):
        inv = [0] * len(colors)
        for v, c in enumerate(ref_colors):
            inv[c] = v
        gamma = [inv[c] for c in colors]
        if any(g != v for v, g in enumerate(gamma)):
            self.generators.append(gamma)

    def _orbit_roots(self, prefix):
        n = len(self.adj)
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gamma in self.generators:
            if all(gamma[p] == p for p in prefix):
                for v, g in enumerate(gamma):
                    rv, rg = find(v), find(g)
                    if rv != rg:
                        parent[rv] = rg
        return find

    @staticmethod
    def _common(p1, p2) -> int:
        k = 0
        for a, b in zip(p1, p2):
            if a != b:
                break
            k += 1
        return k

    def visit(self, colors: list[int], prefix: list[int]):
        n = len(colors)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        if len(cells) == n:
            return self._leaf(colors, prefix)
        target = min((len(m), c) for c, m in cells.items() if len(m) > 1)[1]
        seen_twins = set()
        explored: list[int] = []
        for v in cells[target]:
            if self.twin[v] in seen_twins:
                continue
            seen_twins.add(self.twin[v])
            if explored and self.generators:
                find = self._orbit_roots(prefix)
                if any(find(v) == find(w) for w in explored):
                    continue
            explored.append(v)
            jump = self.visit(_individualize(colors, v, self.adj), prefix + [v])
            if jump is not None and jump < len(prefix):
                return jump
        return None

    def _leaf(self, colors, prefix):
        cert = self._cert(colors)
        if self.first is None:
            self.first = self.best = (cert, colors, prefix)
            return None
        if cert == self.first[0]:
            self._automorphism(colors, self.first[1])
            return self._common(prefix, self.first[2])
        if cert < self.best[0]:
            self.best = (cert, colors, prefix)
            return None
        if cert == self.best[0]:
            self._automorphism(colors, self.best[1])
            return self._common(prefix, self.best[2])
        return None


def _canonical_local(nl: int, adj: list[tuple[int, ...]]):
    """Return (certificate, colors) for a graph on local ids (left first)."""
    start = _refine(_rank([(v >= nl, len(adj[v])) for v in range(len(adj))]), adj)
    search = _Search(nl, adj)
    search.visit(start, [])
    cert, colors, _ = search.best
    return cert, colors


@lru_cache(maxsize=1 << 17)
def _component_form(edges: frozenset):
    lefts = sorted({u for u, _ in edges})
    rights = sorted({a for _, a in edges})
    nl = len(lefts)
    lidx = {u: i for i, u in enumerate(lefts)}
    ridx = {a: nl + i for i, a in enumerate(rights)}
    adj: list[list[int]] = [[] for _ in range(nl + len(rights))]
    for u, a in edges:
        adj[lidx[u]].append(ridx[a])
        adj[ridx[a]].append(lidx[u])
    cert, colors = _canonical_local(nl, [tuple(sorted(x)) for x in adj])
    left_order = [0] * nl
    right_order = [0] * len(rights)
    for i, u in enumerate(lefts):
        left_order[colors[i]] = u
    for i, a in enumerate(rights):
        right_order[colors[nl + i] - nl] = a
    return (nl, len(rights), cert), tuple(left_order), tuple(right_order)


def _components(g: BipartiteGraph) -> list[frozenset]:
    seen_left = [False] * g.left_count
    comps = []
    for s in range(g.left_count):
        if seen_left[s] or not g.left_adjacency[s]:
            continue
        seen_left[s] = True
        stack, comp = [s], []
        seen_right = set()
        while stack:
            u = stack.pop()
            for a in g.left_adjacency[u]:
                comp.append((u, a))
                if a in seen_right:
                    continue
                seen_right.add(a)
                for w in g.right_adjacency[a]:
                    if not seen_left[w]:
                        seen_left[w] = True
                        stack.append(w)
        comps.append(frozenset(comp))
    return comps


def canonical_form(g: BipartiteGraph) -> CanonicalForm:
    parts = [_component_form(c) for c in _components(g)]
    parts.sort(key=lambda p: p[0])
    left_map = [-1] * g.left_count
    right_map = [-1] * g.right_count
    edges: list[Edge] = []
    lo = ro = 0
    for (nl, nr, cert), left_order, right_order in parts:
        for i, u in enumerate(left_order):
            left_map[u] = lo + i
        for i, a in enumerate(right_order):
            right_map[a] = ro + i
        edges.extend((lo + u, ro + a) for u, a in cert)
        lo += nl
        ro += nr
    # isolated nodes go last, in id order
    for u in range(g.left_count):
        if left_map[u] < 0:
            left_map[u] = lo
            lo += 1
    for a in range(g.right_count):
        if right_map[a] < 0:
            right_map[a] = ro
            ro += 1
    return CanonicalForm(g.left_count, g.right_count, tuple(sorted(edges)), tuple(left_map), tuple(right_map))


def are_isomorphic(g: BipartiteGraph, h: BipartiteGraph) -> bool:
    return canonical_form(g) == canonical_form(h)


def relabel(g: BipartiteGraph, left_perm, right_perm) -> BipartiteGraph:
    """Apply ``u -> left_perm[u]``, ``a -> right_perm[a]``."""
    return g.with_edges((left_perm[u], right_perm[a]) for u, a in g.edges)
