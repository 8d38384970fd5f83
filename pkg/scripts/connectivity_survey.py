"""Survey small butterfly-constrained ensembles for splits under bounded-size moves.

For each degree pair up to the given size and each butterfly value with at least
two members, report the components under moves of size <= 2 and <= 3.
"""
import argparse
import json
from itertools import combinations_with_replacement

from bfly.ensemble import EnsembleSpec, enumerate_ensemble
from bfly.errors import InfeasibleDegrees, LimitExceeded
from bfly.explorer import is_connected_under


def degree_pairs(max_side):
    for nl in range(2, max_side + 1):
        for nr in range(2, max_side + 1):
            for left in combinations_with_replacement(range(nr, 0, -1), nl):
                for right in combinations_with_replacement(range(nl, 0, -1), nr):
                    if sum(left) == sum(right):
                        yield left, right


def run(max_side, limit):
    rows = []
    for left, right in degree_pairs(max_side):
        try:
            cat = enumerate_ensemble(EnsembleSpec.of(left, right), limit=limit)
        except (InfeasibleDegrees, LimitExceeded):
            continue
        for beta, count in cat.butterfly_histogram().items():
            if count < 2:
                continue
            spec = EnsembleSpec.of(left, right, beta)
            sub = enumerate_ensemble(spec)
            r2 = is_connected_under(spec, 2, catalog=sub)
            r3 = r2 if r2.connected else is_connected_under(spec, 3, catalog=sub)
            rows.append({"left": left, "right": right, "butterflies": beta, "members": len(sub),
                         "components_q2": len(r2.component_sizes),
                         "components_q3": len(r3.component_sizes)})
    split2 = [r for r in rows if r["components_q2"] > 1]
    split3 = [r for r in rows if r["components_q3"] > 1]
    return {"ensembles": len(rows), "split_under_q2": len(split2), "split_under_q3": len(split3),
            "rows": rows}


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-side", type=int, default=4)
    ap.add_argument("--limit", type=int, default=3000)
    a = ap.parse_args()
    out = run(a.max_side, a.limit)
    print(json.dumps({k: v for k, v in out.items() if k != "rows"}, indent=2))
