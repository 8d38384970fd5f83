"""q-edge bipartite swap operations (q-BSOs).

A q-BSO takes ``q`` distinct edges ``(u_j, a_j)`` and a derangement ``sigma``
and replaces every ``(u_j, a_j)`` by ``(u_j, a_sigma(j))``. The classic double
edge swap is the case ``q = 2`` with ``sigma = (1, 0)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterator

from .errors import InfeasibleSize, InvalidSwap, MalformedSwap
from .graph import BipartiteGraph, Edge, butterfly_count, choose2

DEFAULT_MAX_Q = 6
DEFAULT_MAX_EDGES = 64


class Reason(str, Enum):
    EDGE_NOT_PRESENT = "EdgeNotPresent"
    REPLACEMENT_EXISTS = "ReplacementExists"
    NOT_DERANGEMENT = "NotDerangement"
    DUPLICATE_REPLACEMENT = "DuplicateReplacement"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class QSwap:
    edges: tuple[Edge, ...]
    sigma: tuple[int, ...]

    def __post_init__(self):
        edges = tuple((int(u), int(a)) for u, a in self.edges)
        sigma = tuple(int(i) for i in self.sigma)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "sigma", sigma)
        q = len(edges)
        if q < 2:
            raise MalformedSwap(f"a q-BSO needs q >= 2 edges, got {q}")
        if len(set(edges)) != q:
            raise MalformedSwap("swap edges must be distinct")
        if sorted(sigma) != list(range(q)):
            raise MalformedSwap(f"sigma {sigma} is not a permutation of 0..{q - 1}")

    @property
    def q(self) -> int:
        return len(self.edges)

    @property
    def replacements(self) -> tuple[Edge, ...]:
        return tuple((u, self.edges[k][1]) for (u, _), k in zip(self.edges, self.sigma))

    def is_derangement(self) -> bool:
        return all(k != j for j, k in enumerate(self.sigma))

    def outcome_key(self) -> tuple[frozenset, frozenset]:
        """Identifies the rewiring independently of how it is encoded."""
        return frozenset(self.edges), frozenset(self.replacements)

    def inverse(self) -> "QSwap":
        """The swap that undoes this one on the resulting graph."""
        inv = [0] * self.q
        for j, k in enumerate(self.sigma):
            inv[k] = j
        # new edge j is (u_j, a_sigma(j)); sigma^-1 sends its right end back to a_j
        return QSwap(self.replacements, tuple(inv))

    def to_json(self) -> dict:
        return {"edges": [list(e) for e in self.edges], "sigma": list(self.sigma)}

    @classmethod
    def from_json(cls, obj: dict) -> "QSwap":
        return cls(tuple(tuple(e) for e in obj["edges"]), tuple(obj["sigma"]))


@dataclass(frozen=True)
class Validation:
    ok: bool
    reason: Reason | None = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class Rejection:
    reason: Reason
    swap: QSwap

    def to_json(self) -> dict:
        return {"rejected": True, "reason": str(self.reason), **self.swap.to_json()}


@dataclass(frozen=True)
class SwapOutcome:
    graph_after: BipartiteGraph
    butterfly_delta: int


def _check(edges: frozenset, swap_edges, sigma) -> Reason | None:
    if any(k == j for j, k in enumerate(sigma)):
        return Reason.NOT_DERANGEMENT
    for e in swap_edges:
        if e not in edges:
            return Reason.EDGE_NOT_PRESENT
    repl = [(swap_edges[j][0], swap_edges[k][1]) for j, k in enumerate(sigma)]
    for r in repl:
        if r in edges:
            return Reason.REPLACEMENT_EXISTS
    if len(set(repl)) != len(repl):
        return Reason.DUPLICATE_REPLACEMENT
    return None


def validate_qbso(g: BipartiteGraph, sw: QSwap) -> Validation:
    reason = _check(g.edges, sw.edges, sw.sigma)
    return Validation(reason is None, reason)


def as_qbso(u: int, a: int, v: int, b: int) -> QSwap:
    """The double edge swap removing (u, a), (v, b) and adding (u, b), (v, a)."""
    return QSwap(((u, a), (v, b)), (1, 0))


def _delta(g: BipartiteGraph, removed, added, shared=None) -> int:
    """Butterfly change from removing then adding edges.

    Only left pairs meeting at a touched right node can change their shared
    count. ``shared`` may carry precomputed left-pair counts.
    """
    rs = g._right_sets
    right: dict[int, set] = {}
    change: dict[tuple[int, int], int] = {}
    for u, a in removed:
        cur = right.get(a)
        if cur is None:
            cur = right[a] = set(rs[a])
        cur.discard(u)
        for w in cur:
            p = (u, w) if u < w else (w, u)
            change[p] = change.get(p, 0) - 1
    for u, a in added:
        cur = right.get(a)
        if cur is None:
            cur = right[a] = set(rs[a])
        for w in cur:
            p = (u, w) if u < w else (w, u)
            change[p] = change.get(p, 0) + 1
        cur.add(u)
    delta = 0
    left = g._left_sets
    for (u, w), c in change.items():
        if c:
            k = shared.get((u, w), 0) if shared is not None else len(left[u] & left[w])
            # k(k-1)/2 is already 0 for k in {0, 1}
            delta += ((k + c) * (k + c - 1) - k * (k - 1)) // 2
    return delta


def butterfly_delta(g: BipartiteGraph, sw: QSwap) -> int:
    """Change in butterfly count caused by ``sw``, recounting only affected pairs."""
    v = validate_qbso(g, sw)
    if not v:
        raise InvalidSwap(v.reason)
    return _delta(g, sw.edges, sw.replacements)


def apply_qbso(g: BipartiteGraph, sw: QSwap) -> SwapOutcome:
    v = validate_qbso(g, sw)
    if not v:
        raise InvalidSwap(v.reason)
    delta = _delta(g, sw.edges, sw.replacements)
    after = g.with_edges((g.edges - set(sw.edges)) | set(sw.replacements))
    return SwapOutcome(after, delta)


def apply_qbso_full(g: BipartiteGraph, sw: QSwap) -> SwapOutcome:
    """Like :func:`apply_qbso` but the delta comes from two full recounts."""
    v = validate_qbso(g, sw)
    if not v:
        raise InvalidSwap(v.reason)
    after = g.with_edges((g.edges - set(sw.edges)) | set(sw.replacements))
    return SwapOutcome(after, butterfly_count(after) - butterfly_count(g))


@lru_cache(maxsize=None)
def derangements(q: int) -> tuple[tuple[int, ...], ...]:
    """All derangements of ``range(q)`` in lexicographic order."""
    return tuple(p for p in permutations(range(q)) if all(p[i] != i for i in range(q)))


def iter_raw_moves(g: BipartiteGraph, q: int, dedupe: bool = True):
    """Yield ``(edges, sigma, replacements)`` for valid q-BSOs without wrapping them."""
    edges = g.edges
    for combo in combinations(g.sorted_edges(), q):
        # the removed set is fixed by combo, so the added set identifies the outcome
        seen = set()
        for sigma in derangements(q):
            repl = tuple([(combo[j][0], combo[k][1]) for j, k in enumerate(sigma)])
            if any(r in edges for r in repl):
                continue
            frepl = frozenset(repl)
            if len(frepl) != q:
                continue
            if dedupe:
                if frepl in seen:
                    continue
                seen.add(frepl)
            yield combo, sigma, repl


def iter_valid_qbsos(g: BipartiteGraph, q: int, dedupe: bool = True) -> Iterator[QSwap]:
    """Yield valid q-BSOs in deterministic order (sorted edge combos, lex derangements)."""
    for combo, sigma, _ in iter_raw_moves(g, q, dedupe):
        yield QSwap(combo, sigma)


def _check_size(g: BipartiteGraph, q: int, allow_large: bool) -> None:
    if q < 2:
        raise InfeasibleSize(f"q must be >= 2, got {q}")
    if q > g.edge_count:
        raise InfeasibleSize(f"q={q} exceeds |E|={g.edge_count}")
    if not allow_large and (q > DEFAULT_MAX_Q or g.edge_count > DEFAULT_MAX_EDGES):
        raise InfeasibleSize(
            f"enumeration capped at q <= {DEFAULT_MAX_Q} and |E| <= {DEFAULT_MAX_EDGES}; "
            "pass allow_large=True to override"
        )


def enumerate_qbsos(g: BipartiteGraph, q: int, *, dedupe: bool = True,
                    allow_large: bool = False) -> list[QSwap]:
    """All valid q-BSOs of ``g``; with ``dedupe`` one encoding per distinct rewiring."""
    _check_size(g, q, allow_large)
    return list(iter_valid_qbsos(g, q, dedupe=dedupe))


def enumerate_bsos(g: BipartiteGraph) -> list[QSwap]:
    """All valid double edge swaps, as 2-BSOs over sorted edge pairs."""
    out = []
    edges = g.edges
    for e1, e2 in combinations(g.sorted_edges(), 2):
        (u, a), (v, b) = e1, e2
        if u != v and a != b and (u, b) not in edges and (v, a) not in edges:
            out.append(QSwap((e1, e2), (1, 0)))
    return out


def random_derangement(q: int, rng: random.Random) -> tuple[int, ...]:
    perm = list(range(q))
    while True:
        rng.shuffle(perm)
        if all(perm[i] != i for i in range(q)):
            return tuple(perm)


def sample_qbso_attempt(g: BipartiteGraph, q: int, rng: random.Random | int,
                        edge_list: list[Edge] | None = None) -> QSwap | Rejection:
    """Draw q distinct edges and a derangement uniformly; validate against ``g``.

    ``edge_list`` may pass a pre-sorted edge list to avoid re-sorting.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    if q < 2 or q > g.edge_count:
        raise InfeasibleSize(f"need 2 <= q <= |E|={g.edge_count}, got {q}")
    pool = edge_list if edge_list is not None else g.sorted_edges()
    chosen = tuple(rng.sample(pool, q))
    sigma = random_derangement(q, rng)
    sw = QSwap(chosen, sigma)
    reason = _check(g.edges, chosen, sigma)
    return sw if reason is None else Rejection(reason, sw)
