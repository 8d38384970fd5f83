"""TV distance to uniform of the degree-only stay-put chain, as a function of steps.

Example: python scripts/uniformity.py --left 3 2 2 1 --right 2 2 2 1 1 --q 2 3
"""
import argparse
import json
from dataclasses import asdict, dataclass, field

from bfly.ensemble import EnsembleSpec, enumerate_ensemble
from bfly.mcmc import ChainConfig, run_chain, uniformity_distance


@dataclass
class Config:
    left: tuple = (3, 2, 2, 1)
    right: tuple = (2, 2, 2, 1, 1)
    q: list = field(default_factory=lambda: [2])
    steps: list = field(default_factory=lambda: [10**3, 10**4, 10**5, 10**6])
    seeds: int = 3


def run(cfg: Config) -> dict:
    cat = enumerate_ensemble(EnsembleSpec.of(cfg.left, cfg.right))
    rows = []
    for q in cfg.q:
        for steps in cfg.steps:
            tvs = []
            for seed in range(cfg.seeds):
                res = run_chain(ChainConfig(cat.members[0], q, False, steps, seed=seed))
                tvs.append(uniformity_distance(res.stats, cat))
            row = {"q": q, "steps": steps, "tv_mean": sum(tvs) / len(tvs), "tv_max": max(tvs),
                   "acceptance": res.stats.acceptance_rate}
            rows.append(row)
            print(row, flush=True)
    return {"config": asdict(cfg), "ensemble_size": len(cat), "runs": rows}


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--left", type=int, nargs="+", default=[3, 2, 2, 1])
    ap.add_argument("--right", type=int, nargs="+", default=[2, 2, 2, 1, 1])
    ap.add_argument("--q", type=int, nargs="+", default=[2])
    ap.add_argument("--steps", type=int, nargs="+", default=[10**3, 10**4, 10**5, 10**6])
    ap.add_argument("--seeds", type=int, default=3)
    a = ap.parse_args()
    print(json.dumps(run(Config(tuple(a.left), tuple(a.right), a.q, a.steps, a.seeds)),
                     indent=2, sort_keys=True))
