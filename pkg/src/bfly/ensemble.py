"""Exhaustive enumeration of labeled bipartite graphs with fixed degrees.

Optionally filtered to a target butterfly count; this materialises the exact
state space that the explorer and the Markov chains move around in.
"""
from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .errors import InfeasibleDegrees, LimitExceeded
from .graph import (
    BipartiteGraph,
    DegreePair,
    butterfly_count,
    format_bip,
    parse_bip_stream,
)

DEFAULT_LIMIT = 10**7


@dataclass(frozen=True)
class EnsembleSpec:
    degrees: DegreePair
    butterfly_target: int | None = None

    def __post_init__(self):
        if not self.degrees.balanced:
            raise InfeasibleDegrees("left and right degree sums differ")
        if self.butterfly_target is not None and self.butterfly_target < 0:
            raise ValueError("butterfly_target must be >= 0")

    @classmethod
    def of(cls, left, right, butterflies=None) -> "EnsembleSpec":
        return cls(DegreePair(tuple(left), tuple(right)), butterflies)

    def to_json(self) -> dict:
        return {"degrees": self.degrees.to_json(), "butterfly_target": self.butterfly_target}

    @classmethod
    def from_json(cls, obj) -> "EnsembleSpec":
        return cls(DegreePair.from_json(obj["degrees"]), obj.get("butterfly_target"))


@dataclass
class EnsembleCatalog:
    spec: EnsembleSpec
    members: list[BipartiteGraph] = field(default_factory=list)
    butterflies: list[int] = field(default_factory=list)

    def __len__(self):
        return len(self.members)

    def index(self) -> dict[frozenset, int]:
        return {g.edges: i for i, g in enumerate(self.members)}

    def butterfly_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.butterflies).items()))


def realization_exists(degrees: DegreePair) -> bool:
    """Gale-Ryser test for a simple bipartite realisation."""
    left, right = list(degrees.left_degrees), list(degrees.right_degrees)
    if sum(left) != sum(right):
        return False
    if any(d < 0 for d in left + right):
        return False
    left.sort(reverse=True)
    total = 0
    for k, d in enumerate(left, start=1):
        total += d
        if total > sum(min(b, k) for b in right):
            return False
    return True


def _feasible(rem_left: list[int], caps: list[int]) -> bool:
    return realization_exists(DegreePair(tuple(rem_left), tuple(caps)))


def iter_realizations(degrees: DegreePair):
    """Yield every labeled realisation (as a frozenset of edges).

    Left nodes are filled in decreasing-degree order; each branch is pruned by
    a Gale-Ryser check on the remaining degrees and right capacities.
    """
    left = degrees.left_degrees
    nr = len(degrees.right_degrees)
    order = sorted(range(len(left)), key=lambda u: (-left[u], u))
    caps = list(degrees.right_degrees)
    chosen: list[tuple[int, tuple[int, ...]]] = []

    def rec(pos):
        if pos == len(order):
            yield frozenset((u, a) for u, row in chosen for a in row)
            return
        u = order[pos]
        rest = [left[w] for w in order[pos + 1:]]
        for row in combinations([a for a in range(nr) if caps[a] > 0], left[u]):
            for a in row:
                caps[a] -= 1
            if _feasible(rest, caps):
                chosen.append((u, row))
                yield from rec(pos + 1)
                chosen.pop()
            for a in row:
                caps[a] += 1

    if not realization_exists(degrees):
        return
    yield from rec(0)


def enumerate_ensemble(spec: EnsembleSpec, limit: int = DEFAULT_LIMIT,
                       callback: Callable[[BipartiteGraph, int], None] | None = None) -> EnsembleCatalog:
    """All labeled graphs of ``spec`` in sorted-edge-list order.

    With ``callback`` members are streamed (``callback(graph, butterflies)``)
    in generation order and not stored. Raises :class:`LimitExceeded` once more
    than ``limit`` members are found.
    """
    degrees = spec.degrees
    if not realization_exists(degrees):
        raise InfeasibleDegrees(f"no bipartite graph realises {degrees.to_json()}")
    nl, nr = len(degrees.left_degrees), len(degrees.right_degrees)
    found = []
    count = 0
    for edges in iter_realizations(degrees):
        g = BipartiteGraph(nl, nr, edges)
        beta = butterfly_count(g)
        if spec.butterfly_target is not None and beta != spec.butterfly_target:
            continue
        count += 1
        if count > limit:
            partial = EnsembleCatalog(spec, [m for m, _ in found], [b for _, b in found])
            raise LimitExceeded(count - 1, partial)
        if callback is not None:
            callback(g, beta)
        else:
            found.append((g, beta))
    found.sort(key=lambda p: p[0].sorted_edges())
    return EnsembleCatalog(spec, [g for g, _ in found], [b for _, b in found])


def write_catalog(catalog: EnsembleCatalog, directory) -> None:
    os.makedirs(directory, exist_ok=True)
    with open(os.path.join(directory, "members.bip"), "w", encoding="utf-8") as fh:
        for g in catalog.members:
            fh.write(format_bip(g))
    index = {
        "schema": "bfly/1",
        "spec": catalog.spec.to_json(),
        "count": len(catalog),
        "butterfly_histogram": {str(k): v for k, v in catalog.butterfly_histogram().items()},
    }
    with open(os.path.join(directory, "index.json"), "w", encoding="utf-8") as fh:
        json.dump(index, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_catalog(directory) -> EnsembleCatalog:
    with open(os.path.join(directory, "index.json"), encoding="utf-8") as fh:
        index = json.load(fh)
    with open(os.path.join(directory, "members.bip"), encoding="utf-8") as fh:
        members = parse_bip_stream(fh.read())
    if len(members) != index["count"]:
        raise ValueError(f"index says {index['count']} members, file has {len(members)}")
    return EnsembleCatalog(EnsembleSpec.from_json(index["spec"]), members,
                           [butterfly_count(g) for g in members])
