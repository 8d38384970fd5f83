"""Reachability from G_b under butterfly-preserving moves, for several q_max.

Example: python scripts/impossibility_bfs.py --s 2 --t 3 --q-max 2 3 4 --labeled
"""
import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from bfly.canon import canonical_form
from bfly.constructor import construct_pair, min_qbar_for
from bfly.errors import BudgetExceeded
from bfly.explorer import direct_qbso, reachable_set, replay


@dataclass
class Config:
    s: int = 2
    t: int = 3
    q_max: list = field(default_factory=lambda: [2, 3])
    labeled: bool = False
    max_visited: int = 10**6


def run(cfg: Config) -> dict:
    cp = construct_pair(cfg.s, cfg.t)
    gb, ge = cp.g_begin, cp.g_end
    end_key = canonical_form(ge).key
    rows = []
    for q in cfg.q_max:
        t0 = time.perf_counter()
        rep = reachable_set(gb, q, True, ge, iso_mode=True, max_visited=cfg.max_visited)
        row = {"q_max": q, "mode": "iso", "classes": rep.visited_count, "closed": rep.closed,
               "target_found": rep.target_found, "seconds": round(time.perf_counter() - t0, 2)}
        rows.append(row)
        print(row, flush=True)
        if cfg.labeled:
            t0 = time.perf_counter()
            try:
                lab, states = reachable_set(gb, q, True, max_visited=cfg.max_visited, collect_states=True)
                hits = sum(canonical_form(h).key == end_key for h in states.values())
                row = {"q_max": q, "mode": "labeled", "states": lab.visited_count,
                       "moves": lab.moves_expanded, "closed": True, "end_class_hits": hits}
            except BudgetExceeded as exc:
                row = {"q_max": q, "mode": "labeled", "states": exc.partial.visited_count,
                       "closed": False, "status": "PartialResult"}
            row["seconds"] = round(time.perf_counter() - t0, 2)
            rows.append(row)
            print(row, flush=True)
    sw = direct_qbso(gb, ge)
    return {"config": asdict(cfg), "n": cp.n, "butterflies": cp.butterflies,
            "bound_2s_minus_2": min_qbar_for(max(cfg.s, cfg.t)), "runs": rows,
            "direct_swap_q": sw.q, "direct_swap_replays": replay(gb, [sw]) == ge}


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--s", type=int, default=2)
    ap.add_argument("--t", type=int, default=3)
    ap.add_argument("--q-max", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--labeled", action="store_true", help="also run the labeled closure (slow)")
    ap.add_argument("--max-visited", type=int, default=10**6)
    ap.add_argument("--out")
    a = ap.parse_args()
    result = run(Config(a.s, a.t, a.q_max, a.labeled, a.max_visited))
    text = json.dumps(result, indent=2, sort_keys=True)
    if a.out:
        with open(a.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
