"""Acceptance rate of naive q-BSO proposals as q grows, on random graphs.

Example: python scripts/acceptance_rate.py --nodes 20 --density 0.2 --attempts 100000
"""
import argparse
import json
import random
from collections import Counter

from bfly.graph import BipartiteGraph
from bfly.swaps import Rejection, sample_qbso_attempt


def run(nodes, density, qs, attempts, graphs, seed):
    rng = random.Random(seed)
    rows = []
    for gi in range(graphs):
        g = BipartiteGraph(nodes, nodes, frozenset(
            (u, a) for u in range(nodes) for a in range(nodes) if rng.random() < density))
        edges = g.sorted_edges()
        for q in qs:
            if q > len(edges):
                continue
            reasons = Counter()
            for _ in range(attempts):
                r = sample_qbso_attempt(g, q, rng, edges)
                reasons[str(r.reason) if isinstance(r, Rejection) else "accepted"] += 1
            row = {"graph": gi, "edges": len(edges), "q": q,
                   "acceptance": reasons["accepted"] / attempts, "reasons": dict(reasons)}
            rows.append(row)
            print(row, flush=True)
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, default=20)
    ap.add_argument("--density", type=float, default=0.2)
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3, 4, 5, 6])
    ap.add_argument("--attempts", type=int, default=20_000)
    ap.add_argument("--graphs", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    rows = run(a.nodes, a.density, a.q, a.attempts, a.graphs, a.seed)
    print(json.dumps(rows, indent=2))
