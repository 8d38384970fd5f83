"""Reachability over ensembles under bounded-size q-BSO moves."""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .canon import CanonicalForm, canonical_form
from .ensemble import DEFAULT_LIMIT, EnsembleSpec, enumerate_ensemble
from .errors import BudgetExceeded, DegreeMismatch, IdenticalGraphs, InfeasibleSize
from .graph import BipartiteGraph, degree_sequences, pair_shared_counts
from .swaps import (
    DEFAULT_MAX_EDGES,
    DEFAULT_MAX_Q,
    QSwap,
    _delta,
    apply_qbso,
    iter_raw_moves,
)

DEFAULT_MAX_VISITED = 10**7
DEFAULT_MAX_MOVES = 10**8


@dataclass
class ExplorationReport:
    start: CanonicalForm
    q_max: int
    preserve_butterflies: bool
    iso_mode: bool
    visited_count: int = 1
    target_found: bool = False
    depth_reached: int = 0
    moves_expanded: int = 0
    closed: bool = False
    target_depth: int | None = None
    witness: list[QSwap] | None = None

    def to_json(self) -> dict:
        return {
            "schema": "bfly/1",
            "start": self.start.to_json(),
            "q_max": self.q_max,
            "preserve_butterflies": self.preserve_butterflies,
            "iso_mode": self.iso_mode,
            "visited_count": self.visited_count,
            "target_found": self.target_found,
            "target_depth": self.target_depth,
            "depth_reached": self.depth_reached,
            "moves_expanded": self.moves_expanded,
            "closed": self.closed,
            "witness": None if self.witness is None else [sw.to_json() for sw in self.witness],
        }


def iter_moves(g: BipartiteGraph, q_max: int, preserve_butterflies: bool):
    """Yield ``(edges, sigma, edges_after)`` for valid q-BSOs with 2 <= q <= q_max."""
    shared = pair_shared_counts(g, "left") if preserve_butterflies else None
    base = g.edges
    for q in range(2, min(q_max, g.edge_count) + 1):
        for combo, sigma, repl in iter_raw_moves(g, q):
            if preserve_butterflies and _delta(g, combo, repl, shared) != 0:
                continue
            yield combo, sigma, base.difference(combo).union(repl)


def allowed_moves(g: BipartiteGraph, q_max: int, preserve_butterflies: bool):
    """Yield ``(swap, graph_after)`` for every allowed move of size <= ``q_max``."""
    for combo, sigma, edges in iter_moves(g, q_max, preserve_butterflies):
        yield QSwap(combo, sigma), BipartiteGraph(g.left_count, g.right_count, edges)


def _state_key(g: BipartiteGraph, iso_mode: bool):
    return canonical_form(g).key if iso_mode else g.edges


def _expand(args):
    nl, nr, edges, q_max, preserve, iso_mode = args
    g = BipartiteGraph(nl, nr, frozenset(edges))
    moves = iter_moves(g, q_max, preserve)
    if not iso_mode:
        return [(after, combo, sigma, after) for combo, sigma, after in moves]
    return [(canonical_form(BipartiteGraph(nl, nr, after)).key, combo, sigma, after)
            for combo, sigma, after in moves]


def _check_caps(g: BipartiteGraph, q_max: int, allow_large: bool):
    if q_max < 2:
        raise InfeasibleSize(f"q_max must be >= 2, got {q_max}")
    if not allow_large and (q_max > DEFAULT_MAX_Q or g.edge_count > DEFAULT_MAX_EDGES):
        raise InfeasibleSize(
            f"exploration capped at q <= {DEFAULT_MAX_Q} and |E| <= {DEFAULT_MAX_EDGES}"
        )


def reachable_set(start: BipartiteGraph, q_max: int, preserve_butterflies: bool = True,
                  target: BipartiteGraph | None = None, iso_mode: bool = False, *,
                  max_visited: int = DEFAULT_MAX_VISITED, max_moves: int = DEFAULT_MAX_MOVES,
                  jobs: int = 1, allow_large: bool = False,
                  collect_states: bool = False):
    """Breadth-first closure of ``start`` under allowed moves of size <= ``q_max``.

    States are labeled graphs, or isomorphism classes when ``iso_mode`` is set
    (each class is represented by the first labeled graph that reached it, so
    the witness path replays from ``start`` exactly). Stops early when
    ``target`` is reached. With ``collect_states`` the visited representatives
    are returned alongside the report.
    """
    _check_caps(start, q_max, allow_large)
    report = ExplorationReport(canonical_form(start), q_max, preserve_butterflies, iso_mode)
    start_key = _state_key(start, iso_mode)
    target_key = None if target is None else _state_key(target, iso_mode)
    parent: dict = {start_key: None}
    reps = {start_key: start} if collect_states else None

    def finish(key, depth):
        path = []
        while parent[key] is not None:
            key, sw = parent[key]
            path.append(sw)
        report.target_found = True
        report.target_depth = depth
        report.witness = path[::-1]

    if target_key == start_key:
        finish(start_key, 0)
        return (report, reps) if collect_states else report

    frontier = [start]
    depth = 0
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        while frontier:
            tasks = [(g.left_count, g.right_count, g.edges, q_max,
                      preserve_butterflies, iso_mode) for g in frontier]
            results = pool.map(_expand, tasks, chunksize=max(1, len(tasks) // (4 * jobs))) \
                if pool else map(_expand, tasks)
            nxt = []
            for g, moves in zip(frontier, results):
                g_key = _state_key(g, iso_mode)
                for key, combo, sigma, edges in moves:
                    report.moves_expanded += 1
                    if report.moves_expanded > max_moves:
                        raise BudgetExceeded(f"more than {max_moves} moves expanded", report)
                    if key in parent:
                        continue
                    parent[key] = (g_key, QSwap(combo, sigma))
                    report.visited_count += 1
                    report.depth_reached = depth + 1
                    h = BipartiteGraph(g.left_count, g.right_count, edges)
                    if reps is not None:
                        reps[key] = h
                    if key == target_key:
                        finish(key, depth + 1)
                        return (report, reps) if collect_states else report
                    if report.visited_count > max_visited:
                        raise BudgetExceeded(f"more than {max_visited} states visited", report)
                    nxt.append(h)
            frontier = nxt
            depth += 1
    finally:
        if pool:
            pool.shutdown()
    report.closed = True
    return (report, reps) if collect_states else report


def replay(start: BipartiteGraph, path: list[QSwap]) -> BipartiteGraph:
    g = start
    for sw in path:
        g = apply_qbso(g, sw).graph_after
    return g


@dataclass
class ConnectivityResult:
    connected: bool
    member_count: int
    component_sizes: list[int] = field(default_factory=list)

    @property
    def size_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.component_sizes).items()))

    def to_json(self) -> dict:
        return {"connected": self.connected, "member_count": self.member_count,
                "component_sizes": self.component_sizes,
                "size_histogram": {str(k): v for k, v in self.size_histogram.items()}}


def is_connected_under(spec: EnsembleSpec, q_max: int, limit: int = DEFAULT_LIMIT,
                       allow_large: bool = False, catalog=None) -> ConnectivityResult:
    """Connectivity of the full ensemble when moves must stay inside it.

    For a butterfly-constrained spec a move stays inside exactly when it keeps
    the butterfly count; for a degree-only spec every valid move does.
    """
    if catalog is None:
        catalog = enumerate_ensemble(spec, limit)
    members = catalog.members
    if members:
        _check_caps(members[0], q_max, allow_large)
    index = catalog.index()
    parent = list(range(len(members)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, g in enumerate(members):
        for _, _, after in iter_moves(g, q_max, preserve_butterflies=False):
            j = index.get(after)
            if j is not None:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    sizes = sorted(Counter(find(i) for i in range(len(members))).values(), reverse=True)
    return ConnectivityResult(len(sizes) <= 1, len(members), sizes)


def _same_space(g_from: BipartiteGraph, g_to: BipartiteGraph) -> None:
    if (g_from.left_count, g_from.right_count) != (g_to.left_count, g_to.right_count):
        raise DegreeMismatch("graphs have different node sets")
    if degree_sequences(g_from) != degree_sequences(g_to):
        raise DegreeMismatch("graphs have different degree sequences")


def direct_qbso(g_from: BipartiteGraph, g_to: BipartiteGraph) -> QSwap:
    """Single q-BSO, q = |E_from \\ E_to|, turning ``g_from`` into ``g_to``.

    Each removed edge ``(u, v)`` is first paired with the lowest unused added
    edge ``(u, w)`` at the same left node; ``sigma`` then points it at the lowest
    unused removed edge whose right end is ``w``. Equal degree sequences make
    both choices always available.
    """
    _same_space(g_from, g_to)
    removed = sorted(g_from.edges - g_to.edges)
    added = sorted(g_to.edges - g_from.edges)
    if not removed:
        raise IdenticalGraphs("graphs are identical; no swap needed")
    used_added = [False] * len(added)
    partner = []
    for u, _ in removed:
        k = next(k for k, (w, _) in enumerate(added) if w == u and not used_added[k])
        used_added[k] = True
        partner.append(added[k])
    used = [False] * len(removed)
    sigma = []
    for _, w in partner:
        k = next(k for k, (_, b) in enumerate(removed) if b == w and not used[k])
        used[k] = True
        sigma.append(k)
    sw = QSwap(tuple(removed), tuple(sigma))
    assert sw.is_derangement()
    return sw


def min_single_swap_size(g_from: BipartiteGraph, g_to: BipartiteGraph, q_cap: int, *,
                         iso_mode: bool = False, preserve_butterflies: bool = False,
                         allow_large: bool = False) -> int | None:
    """Smallest q <= q_cap such that one valid q-BSO maps ``g_from`` to ``g_to``.

    Exhaustive over all valid q-BSOs; ``None`` when no such q exists. With
    ``iso_mode`` reaching any graph isomorphic to ``g_to`` counts.
    """
    _same_space(g_from, g_to)
    _check_caps(g_from, q_cap, allow_large)
    target = _state_key(g_to, iso_mode)
    nl, nr = g_from.left_count, g_from.right_count
    for combo, _, after in iter_moves(g_from, q_cap, preserve_butterflies):
        if _state_key(BipartiteGraph(nl, nr, after), iso_mode) == target:
            return len(combo)
    return None


__all__ = [
    "ExplorationReport", "ConnectivityResult", "allowed_moves", "reachable_set", "replay",
    "is_connected_under", "direct_qbso", "min_single_swap_size",
]
