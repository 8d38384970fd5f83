"""Command-line front end.

Exit codes: 0 success, 1 a requested check failed, 2 usage error or invalid
construction parameters, 3 graph parse error, 4 exploration budget exceeded,
5 degree mismatch, 6 invalid chain configuration.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .canon import are_isomorphic
from .constructor import construct_pair, verify_construction
from .ensemble import EnsembleSpec, enumerate_ensemble, read_catalog, write_catalog
from .errors import (
    BudgetExceeded,
    DegreeMismatch,
    IdenticalGraphs,
    InfeasibleDegrees,
    InvalidConfig,
    InvalidParams,
    LimitExceeded,
    ParseError,
)
from .explorer import direct_qbso, is_connected_under, reachable_set, replay
from .graph import butterfly_count, caterpillar_count, degree_sequences, read_bip, write_bip
from .mcmc import ChainConfig, run_chain, uniformity_distance

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_BUDGET = 4
EXIT_DEGREES = 5
EXIT_CONFIG = 6

SCHEMA = "bfly/1"


def _dump(obj) -> str:
    return json.dumps({"schema": SCHEMA, **obj}, indent=2, sort_keys=True) + "\n"


def _write(path, text: str) -> None:
    d = os.path.dirname(path)
    if d:
        os.makedirs(d, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _emit(obj, out_path=None, summary=None) -> None:
    text = _dump(obj)
    if out_path:
        _write(out_path, text)
    sys.stdout.write(text)
    if summary:
        print(summary, file=sys.stderr)


def _load(path):
    try:
        return read_bip(path)
    except OSError as exc:
        raise ParseError(0, f"cannot read {path}: {exc.strerror}") from None


def _q_arg(text: str) -> int:
    q = int(text)
    if q < 2:
        raise argparse.ArgumentTypeError("swap size must be >= 2")
    return q


def _degrees_arg(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip())


def cmd_generate(args) -> int:
    try:
        cp = construct_pair(args.s, args.t)
    except InvalidParams as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    os.makedirs(args.out_dir, exist_ok=True)
    write_bip(cp.g_begin, os.path.join(args.out_dir, "g_begin.bip"))
    write_bip(cp.g_end, os.path.join(args.out_dir, "g_end.bip"))
    report = verify_construction(cp)
    _emit(report.to_json(), os.path.join(args.out_dir, "report.json"),
          f"generated s={cp.s} t={cp.t}: butterflies "
          f"{report.checks['P3_butterflies']['begin']}/{report.checks['P3_butterflies']['end']}, "
          f"{'all properties pass' if report.passed else 'FAILED: ' + ', '.join(report.failed())}")
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_count(args) -> int:
    g = _load(args.graph)
    deg = degree_sequences(g)
    out = {
        "left_count": g.left_count,
        "right_count": g.right_count,
        "edge_count": g.edge_count,
        "left_degrees": list(deg.left_degrees),
        "right_degrees": list(deg.right_degrees),
        "butterflies": butterfly_count(g),
        "caterpillars": caterpillar_count(g),
    }
    _emit(out, args.out, f"butterflies={out['butterflies']} caterpillars={out['caterpillars']}")
    return EXIT_OK


def cmd_explore(args) -> int:
    start = _load(args.start)
    target = _load(args.target) if args.target else None
    try:
        report = reachable_set(start, args.q_max, args.preserve_butterflies, target, args.iso,
                               max_visited=args.max_visited, max_moves=args.max_moves,
                               jobs=args.jobs, allow_large=args.allow_large)
    except BudgetExceeded as exc:
        out = exc.partial.to_json() | {"status": "PartialResult", "error": str(exc)}
        _emit(out, args.out, f"budget exceeded: {exc}")
        return EXIT_BUDGET
    out = report.to_json() | {"status": "complete"}
    verdict = "found" if report.target_found else "absent"
    code = EXIT_OK
    if args.expect and target is not None and args.expect != verdict:
        code = EXIT_CHECK_FAILED
    _emit(out, args.out, f"visited={report.visited_count} closed={report.closed} target={verdict}")
    return code


def cmd_connect(args) -> int:
    g_from, g_to = _load(args.from_graph), _load(args.to_graph)
    try:
        sw = direct_qbso(g_from, g_to)
    except IdenticalGraphs:
        _emit({"identical": True, "swap": None, "replay_ok": True}, args.out, "identical, no swap")
        return EXIT_OK
    except DegreeMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGREES
    ok = replay(g_from, [sw]) == g_to
    out = {"identical": False, "q": sw.q, "swap": sw.to_json(), "replay_ok": ok,
           "butterflies": [butterfly_count(g_from), butterfly_count(g_to)]}
    _emit(out, args.out, f"direct swap of size {sw.q}; replay {'ok' if ok else 'FAILED'}")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_mcmc(args) -> int:
    start = _load(args.start)
    watch = _load(args.watch) if args.watch else None
    try:
        cfg = ChainConfig(start, args.q, args.preserve_butterflies, args.steps, args.burn_in,
                          args.thinning, args.seed, args.mixed_sizes)
        result = run_chain(cfg, watch=watch, trace_mode=args.trace_mode if args.trace_out else None)
    except InvalidConfig as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out = result.stats.to_json()
    out["config"] = {"q": cfg.move_size_q, "preserve_butterflies": cfg.preserve_butterflies,
                     "steps": cfg.steps, "burn_in": cfg.burn_in, "thinning": cfg.thinning,
                     "seed": cfg.seed, "mixed_sizes": cfg.mixed_sizes}
    code = EXIT_OK
    if args.catalog:
        tv = uniformity_distance(result.stats, read_catalog(args.catalog))
        out["tv_distance"] = tv
        if args.max_tv is not None and tv >= args.max_tv:
            code = EXIT_CHECK_FAILED
    if args.max_watch_hits is not None and result.stats.target_hits > args.max_watch_hits:
        code = EXIT_CHECK_FAILED
    if args.trace_out:
        sep = "\n" if args.trace_mode == "canonical" else ""
        _write(args.trace_out, sep.join(result.trace) + ("\n" if result.trace and sep else ""))
    summary = f"accepted {result.stats.accepted}/{result.stats.steps}"
    if "tv_distance" in out:
        summary += f", TV={out['tv_distance']:.4f}"
    if watch is not None:
        summary += f", watch hits={result.stats.target_hits}"
    _emit(out, args.out, summary)
    return code


def cmd_enumerate(args) -> int:
    try:
        spec = EnsembleSpec.of(args.left, args.right, args.butterflies)
        catalog = enumerate_ensemble(spec, args.limit)
    except InfeasibleDegrees as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGREES
    except LimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    write_catalog(catalog, args.out_dir)
    out = {"count": len(catalog), "spec": spec.to_json(),
           "butterfly_histogram": {str(k): v for k, v in catalog.butterfly_histogram().items()}}
    _emit(out, None, f"{len(catalog)} members written to {args.out_dir}")
    return EXIT_OK


def cmd_connected(args) -> int:
    try:
        spec = EnsembleSpec.of(args.left, args.right, args.butterflies)
        res = is_connected_under(spec, args.q_max, args.limit)
    except InfeasibleDegrees as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGREES
    except LimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    code = EXIT_OK
    if args.expect and args.expect != ("connected" if res.connected else "disconnected"):
        code = EXIT_CHECK_FAILED
    _emit(res.to_json(), args.out,
          f"{res.member_count} members, {len(res.component_sizes)} component(s)")
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bfly", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--seed", type=int, default=0, help="RNG seed for every random choice")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for exploration")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="build the begin/end graph pair")
    g.add_argument("--s", type=int, required=True)
    g.add_argument("--t", type=int, required=True)
    g.add_argument("--out-dir", default=".")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("count", help="degree, butterfly and caterpillar statistics")
    c.add_argument("graph")
    c.add_argument("--out")
    c.set_defaults(func=cmd_count)

    e = sub.add_parser("explore", help="bounded-q breadth-first reachability")
    e.add_argument("start")
    e.add_argument("--q-max", type=_q_arg, required=True)
    e.add_argument("--preserve-butterflies", action="store_true")
    e.add_argument("--target")
    e.add_argument("--iso", action="store_true", help="identify isomorphic states")
    e.add_argument("--expect", choices=["found", "absent"])
    e.add_argument("--max-visited", type=int, default=10**7)
    e.add_argument("--max-moves", type=int, default=10**8)
    e.add_argument("--allow-large", action="store_true")
    e.add_argument("--out")
    e.set_defaults(func=cmd_explore)

    k = sub.add_parser("connect", help="single direct q-BSO between two graphs")
    k.add_argument("from_graph")
    k.add_argument("to_graph")
    k.add_argument("--out")
    k.set_defaults(func=cmd_connect)

    m = sub.add_parser("mcmc", help="run a stay-put q-BSO chain")
    m.add_argument("start")
    m.add_argument("--q", type=_q_arg, default=2)
    m.add_argument("--mixed-sizes", action="store_true", help="draw q uniformly from 2..--q")
    m.add_argument("--preserve-butterflies", action="store_true")
    m.add_argument("--steps", type=int, default=10_000)
    m.add_argument("--burn-in", type=int)
    m.add_argument("--thinning", type=int, default=1)
    m.add_argument("--catalog", help="catalog directory for the uniformity diagnostic")
    m.add_argument("--max-tv", type=float)
    m.add_argument("--watch", help="count samples isomorphic to this graph")
    m.add_argument("--max-watch-hits", type=int)
    m.add_argument("--trace-mode", choices=["canonical", "bip"], default="canonical")
    m.add_argument("--trace-out")
    m.add_argument("--out")
    m.set_defaults(func=cmd_mcmc)

    n = sub.add_parser("enumerate", help="write the full ensemble catalog")
    n.add_argument("--left", type=_degrees_arg, required=True)
    n.add_argument("--right", type=_degrees_arg, required=True)
    n.add_argument("--butterflies", type=int)
    n.add_argument("--limit", type=int, default=10**7)
    n.add_argument("--out-dir", required=True)
    n.set_defaults(func=cmd_enumerate)

    w = sub.add_parser("connected", help="connectivity of an enumerated ensemble")
    w.add_argument("--left", type=_degrees_arg, required=True)
    w.add_argument("--right", type=_degrees_arg, required=True)
    w.add_argument("--butterflies", type=int)
    w.add_argument("--q-max", type=_q_arg, default=2)
    w.add_argument("--limit", type=int, default=10**7)
    w.add_argument("--expect", choices=["connected", "disconnected"])
    w.add_argument("--out")
    w.set_defaults(func=cmd_connected)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
