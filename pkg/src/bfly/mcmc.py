"""Seeded stay-put Markov chains over q-BSO moves, with uniformity diagnostics."""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from .canon import canonical_form
from .ensemble import EnsembleCatalog
from .errors import EmptyCatalog, InvalidConfig
from .graph import BipartiteGraph, butterfly_count, degree_sequences, format_bip, pair_shared_counts
from .swaps import _check, _delta, random_derangement

BUTTERFLY_CHANGE = "ButterflyChange"


@dataclass(frozen=True)
class ChainConfig:
    start: BipartiteGraph
    move_size_q: int = 2
    preserve_butterflies: bool = False
    steps: int = 10_000
    burn_in: int | None = None  # defaults to steps // 10
    thinning: int = 1
    seed: int = 0
    # draw q uniformly from 2..move_size_q at every step
    mixed_sizes: bool = False

    def __post_init__(self):
        if self.burn_in is None:
            object.__setattr__(self, "burn_in", self.steps // 10)
        if self.move_size_q < 2:
            raise InvalidConfig(f"move_size_q must be >= 2, got {self.move_size_q}")
        if self.move_size_q > self.start.edge_count:
            raise InvalidConfig(f"move_size_q={self.move_size_q} exceeds |E|={self.start.edge_count}")
        if not (self.steps > self.burn_in >= 0):
            raise InvalidConfig(f"need steps > burn_in >= 0, got {self.steps}, {self.burn_in}")
        if self.thinning < 1:
            raise InvalidConfig(f"thinning must be >= 1, got {self.thinning}")


@dataclass
class ChainStats:
    steps: int = 0
    accepted: int = 0
    rejected_by_reason: Counter = field(default_factory=Counter)
    visited_canonical_count: int = 0
    # state key (frozenset of edges) -> number of recorded samples
    state_visit_histogram: Counter = field(default_factory=Counter)
    target_hits: int = 0

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.steps if self.steps else 0.0

    @property
    def samples(self) -> int:
        return sum(self.state_visit_histogram.values())

    def to_json(self) -> dict:
        return {
            "schema": "bfly/1",
            "steps": self.steps,
            "accepted": self.accepted,
            "rejected_by_reason": {str(k): v for k, v in sorted(self.rejected_by_reason.items())},
            "acceptance_rate": self.acceptance_rate,
            "samples": self.samples,
            "distinct_labeled_states": len(self.state_visit_histogram),
            "visited_canonical_count": self.visited_canonical_count,
            "target_hits": self.target_hits,
        }


@dataclass
class ChainResult:
    stats: ChainStats
    trace: list = field(default_factory=list)
    final_state: BipartiteGraph | None = None


class _ClassWatcher:
    """Tests membership in one isomorphism class, caching per labeled state."""

    def __init__(self, target: BipartiteGraph):
        self.key = canonical_form(target).key
        self.cache: dict[frozenset, bool] = {}

    def __call__(self, g: BipartiteGraph) -> bool:
        hit = self.cache.get(g.edges)
        if hit is None:
            hit = self.cache[g.edges] = canonical_form(g).key == self.key
        return hit


def run_chain(cfg: ChainConfig, *, watch: BipartiteGraph | None = None,
              trace_mode: str | None = None, check: bool = False) -> ChainResult:
    """Run the chain for ``cfg.steps`` steps.

    Invalid proposals, and proposals that change the butterfly count when
    ``preserve_butterflies`` is set, leave the state unchanged. After burn-in
    every ``thinning``-th state is recorded. ``watch`` counts recorded states
    isomorphic to the given graph. ``trace_mode`` is ``"canonical"`` (digest
    per sample), ``"bip"`` (snapshot per sample) or ``None``. ``check``
    recomputes degrees and butterflies of every recorded state.
    """
    if trace_mode not in (None, "canonical", "bip"):
        raise InvalidConfig(f"unknown trace mode {trace_mode!r}")
    rng = random.Random(cfg.seed)
    g = cfg.start
    edge_list = g.sorted_edges()
    shared = pair_shared_counts(g, "left") if cfg.preserve_butterflies else None
    stats = ChainStats()
    trace = []
    watcher = _ClassWatcher(watch) if watch is not None else None
    digests: dict[frozenset, str] = {}
    start_degrees = degree_sequences(g)
    start_beta = butterfly_count(g)

    for step in range(1, cfg.steps + 1):
        q = rng.randint(2, cfg.move_size_q) if cfg.mixed_sizes else cfg.move_size_q
        combo = rng.sample(edge_list, q)
        sigma = random_derangement(q, rng)
        reason = _check(g.edges, combo, sigma)
        if reason is None:
            repl = [(combo[j][0], combo[k][1]) for j, k in enumerate(sigma)]
            if cfg.preserve_butterflies and _delta(g, combo, repl, shared) != 0:
                reason = BUTTERFLY_CHANGE
            else:
                g = g.with_edges(g.edges.difference(combo).union(repl))
                edge_list = g.sorted_edges()
                if shared is not None:
                    shared = pair_shared_counts(g, "left")
        if reason is None:
            stats.accepted += 1
        else:
            stats.rejected_by_reason[str(reason)] += 1
        stats.steps += 1

        if step > cfg.burn_in and (step - cfg.burn_in) % cfg.thinning == 0:
            stats.state_visit_histogram[g.edges] += 1
            if check:
                assert degree_sequences(g) == start_degrees
                if cfg.preserve_butterflies:
                    assert butterfly_count(g) == start_beta
            if watcher is not None and watcher(g):
                stats.target_hits += 1
            if trace_mode == "canonical":
                d = digests.get(g.edges)
                if d is None:
                    d = digests[g.edges] = canonical_form(g).digest()
                trace.append(d)
            elif trace_mode == "bip":
                trace.append(format_bip(g))

    nl, nr = cfg.start.left_count, cfg.start.right_count
    stats.visited_canonical_count = len({
        canonical_form(BipartiteGraph(nl, nr, e)).key for e in stats.state_visit_histogram
    })
    return ChainResult(stats, trace, g)


def uniformity_distance(stats: ChainStats, catalog: EnsembleCatalog) -> float:
    """Total-variation distance between recorded states and uniform on ``catalog``.

    Mass on states outside the catalog counts fully towards the distance.
    """
    m = len(catalog.members)
    if m == 0:
        raise EmptyCatalog("catalog has no members")
    total = stats.samples
    if total == 0:
        return 1.0
    hist = stats.state_visit_histogram
    inside = {g.edges for g in catalog.members}
    tv = sum(abs(hist.get(e, 0) / total - 1.0 / m) for e in inside)
    tv += sum(c / total for e, c in hist.items() if e not in inside)
    return tv / 2
