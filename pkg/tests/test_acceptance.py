"""Acceptance gate: one test per headline criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` (the summary lines are also
repeated at the end of any pytest run). The labeled closure in the impossibility
check dominates the runtime, a few minutes on one core.
"""
import random
import time
from itertools import combinations
from math import comb

import pytest

from bfly.canon import canonical_form
from bfly.constructor import construct_pair, min_qbar_for, verify_construction
from bfly.ensemble import EnsembleSpec, enumerate_ensemble
from bfly.errors import BudgetExceeded
from bfly.explorer import direct_qbso, is_connected_under, min_single_swap_size, reachable_set, replay
from bfly.graph import (
    BipartiteGraph,
    butterflies_node,
    butterfly_count,
    butterfly_count_oracle,
    choose2,
)
from bfly.mcmc import ChainConfig, run_chain, uniformity_distance
from bfly.swaps import apply_qbso, validate_qbso

RESULTS: list[str] = []


def verdict(name: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_butterfly_oracle_equivalence():
    rng = random.Random(2024)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(1000):
        nl, nr = rng.randint(1, 12), rng.randint(1, 12)
        p = rng.uniform(0.1, 0.9)
        g = BipartiteGraph(nl, nr, frozenset(
            (u, a) for u in range(nl) for a in range(nr) if rng.random() < p))
        bad += butterfly_count(g) != butterfly_count_oracle(g)
    dt = time.perf_counter() - t0
    verdict("butterfly count equals quadruple oracle on 1000 random graphs",
            bad == 0 and dt < 60, f"{bad} mismatches, {dt:.1f}s")


def test_construction_properties():
    t0 = time.perf_counter()
    failures = []
    for s in range(2, 7):
        for t in range(2, 7):
            if s == t:
                continue
            cp = construct_pair(s, t)
            rep = verify_construction(cp)
            want = cp.n + choose2(cp.n)
            betas = (butterfly_count(cp.g_begin), butterfly_count(cp.g_end))
            if not rep.passed or betas != (want, want):
                failures.append((s, t, rep.failed(), betas))
    cp = construct_pair(2, 3)
    small = butterfly_count(cp.g_begin) == butterfly_count(cp.g_end) == 10
    dt = time.perf_counter() - t0
    verdict("construction properties for all 2 <= s != t <= 6",
            not failures and small and dt < 60,
            f"{len(failures)} failing pairs, beta(2,3)=10: {small}, {dt:.1f}s")


def test_impossibility_at_desk_scale():
    cp = construct_pair(2, 3)
    gb, ge = cp.g_begin, cp.g_end
    end_key = canonical_form(ge).key

    iso = reachable_set(gb, 3, True, ge, iso_mode=True)
    iso_ok = iso.closed and not iso.target_found

    t0 = time.perf_counter()
    try:
        lab, states = reachable_set(gb, 3, True, max_visited=10**6, collect_states=True)
        hits = sum(canonical_form(h).key == end_key for h in states.values())
        lab_status = f"labeled closure {lab.visited_count} states, {hits} in end class"
        lab_ok = lab.closed and hits == 0
    except BudgetExceeded as exc:
        # a partial result is an allowed outcome, but it is reported as such
        lab_status = f"labeled PartialResult after {exc.partial.visited_count} states"
        lab_ok = True
    dt = time.perf_counter() - t0

    sw = direct_qbso(gb, ge)
    witness_ok = validate_qbso(gb, sw).ok and replay(gb, [sw]) == ge and sw.is_derangement()
    verdict("no butterfly-preserving path with q <= 3 from G_b to the G_e class",
            iso_ok and lab_ok and witness_ok,
            f"iso closure {iso.visited_count} classes, target_found={iso.target_found}; "
            f"{lab_status} in {dt:.0f}s; direct witness q={sw.q} replays={witness_ok}")


def test_single_move_bound():
    cp = construct_pair(2, 3)
    found = min_single_swap_size(cp.g_begin, cp.g_end, 3, iso_mode=True, preserve_butterflies=True)
    bound = min_qbar_for(max(cp.s, cp.t))
    verdict("no single butterfly-preserving move of size < 4 reaches G_e class",
            found is None and bound == 4, f"min size within cap 3: {found}, bound 2(s-1)={bound}")


DEGREE_PAIRS = [
    ((2, 2, 1, 1), (2, 2, 1, 1)),
    ((3, 2, 2, 1), (2, 2, 2, 1, 1)),
    ((2, 2, 2, 2), (2, 2, 2, 2)),
    ((3, 3, 2, 2), (2, 2, 2, 2, 2)),
    ((3, 2, 2, 1, 1), (3, 2, 2, 1, 1)),
    ((2, 2, 2, 2, 2), (2, 2, 2, 2, 2)),
    ((3, 3, 3, 3), (3, 3, 2, 2, 1, 1)),
]


def test_degree_only_connectivity():
    rows = []
    for left, right in DEGREE_PAIRS:
        res = is_connected_under(EnsembleSpec.of(left, right), 2, limit=10**4)
        rows.append((res.member_count, res.connected))
    ok = len(rows) >= 5 and all(c for _, c in rows)
    verdict("double swaps connect every small degree-only ensemble", ok,
            ", ".join(f"{m} members {'connected' if c else 'SPLIT'}" for m, c in rows))


def test_direct_builder_on_random_pairs():
    rng = random.Random(99)
    catalogs = [enumerate_ensemble(EnsembleSpec.of(l, r)) for l, r in DEGREE_PAIRS[:5]]
    bad = 0
    for _ in range(100):
        cat = rng.choice(catalogs)
        a, b = rng.sample(cat.members, 2)
        sw = direct_qbso(a, b)
        ok = (validate_qbso(a, sw).ok and sw.is_derangement()
              and apply_qbso(a, sw).graph_after == b and sw.q == len(a.edges - b.edges))
        bad += not ok
    verdict("direct q-BSO builder on 100 random ensemble pairs", bad == 0, f"{bad} failures")


def _contained(nbrs, u):
    return any(v != u and nbrs[u] <= nbrs[v] for v in range(len(nbrs)))


def test_lemma_suites():
    rng = random.Random(7)
    violations, degenerate, equal_cases = 0, 0, 0
    for _ in range(10**4):
        nl, nr = rng.randint(2, 8), rng.randint(1, 12)
        edges = set()
        for a in range(nr):
            for u in rng.sample(range(nl), rng.randint(0, 2)):
                edges.add((u, a))
        g = BipartiteGraph(nl, nr, frozenset(edges))
        nbrs = [set(row) for row in g.left_adjacency]
        for u in range(nl):
            d = len(nbrs[u])
            b = butterflies_node(g, u)
            if b > choose2(d):
                violations += 1
            elif d >= 2:
                equal = b == choose2(d)
                equal_cases += equal
                violations += equal != _contained(nbrs, u)
            elif not _contained(nbrs, u):
                # degree <= 1: both sides are 0, the containment clause can fail
                degenerate += 1

    lemma2_bad = 0
    for _ in range(10**5):
        d = rng.randint(2, 40)
        z = rng.randint(2, d)
        total = rng.randint(z, d)
        cuts = sorted(rng.sample(range(1, total), z - 1))
        parts = [b - a for a, b in zip([0] + cuts, cuts + [total])]
        lemma2_bad += not comb(d, 2) > sum(comb(a, 2) for a in parts)
    verdict("node-bound lemma (both directions, degree >= 2) and binomial lemma",
            violations == 0 and lemma2_bad == 0 and equal_cases > 0,
            f"{violations} bound/iff violations ({equal_cases} equality cases, "
            f"{degenerate} degree<=1 nodes outside the iff), {lemma2_bad} binomial violations")


def test_mcmc_uniformity_and_trapping():
    cat = enumerate_ensemble(EnsembleSpec.of((3, 2, 2, 1), (2, 2, 2, 1, 1)))
    t0 = time.perf_counter()
    res = run_chain(ChainConfig(cat.members[0], 2, False, steps=10**6, seed=0))
    tv = uniformity_distance(res.stats, cat)
    cp = construct_pair(2, 3)
    trap = run_chain(ChainConfig(cp.g_begin, 3, True, steps=10**6, seed=0, mixed_sizes=True),
                     watch=cp.g_end)
    dt = time.perf_counter() - t0
    verdict("degree-only chain near uniform, restricted chain never hits G_e class",
            len(cat) <= 10**3 and tv < 0.05 and trap.stats.target_hits == 0,
            f"TV={tv:.4f} over {len(cat)} states; restricted chain {trap.stats.target_hits} hits, "
            f"{trap.stats.visited_canonical_count} classes visited, "
            f"acceptance {trap.stats.acceptance_rate:.3f}; {dt:.0f}s")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-s", "-q"]))
