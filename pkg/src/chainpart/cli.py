"""Command-line front end.

One executable with subcommands wired to the library modules.  Output is
deterministic: identical argv (and seed) produce byte-identical stdout, all
counts are decimal strings, and anything order-dependent is sorted.  Exit
status is 0 on success, 1 on a domain or usage error, 2 when an invariant or
acceptance check fails.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys as _sys
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Optional

from . import acceptance, analytics, codec, core, counting, enumeration, graph23, shortest
from .core import (
    ChainPartError,
    DEFAULT_ENUMERATION_CEILING,
    InvariantViolationError,
    Partition,
    PQSystem,
    make_system,
)

_SCAN_MODES = ("w", "maxw", "monotonicity", "theorem4", "smallw", "bound")


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as domain errors (exit 1)."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(_sys.stderr)
        print(f"error: {message}", file=_sys.stderr)
        raise SystemExit(1)


def _read_config(path: str) -> dict[str, str]:
    """Simple key=value file; blank lines and # comments ignored."""
    values: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as handle:
        for raw in handle:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"config line without '=': {line!r}")
            key, _, val = line.partition("=")
            values[key.strip().replace("-", "_")] = val.strip()
    return values


def _base_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--p", type=int, default=2, help="first base (default 2)")
    sub.add_argument("--q", type=int, default=3, help="second base (default 3)")
    sub.add_argument("--seed", type=int, default=0, help="PRNG seed (default 0)")
    sub.add_argument("--config", default=None, help="key=value defaults file")
    sub.add_argument(
        "--ceiling",
        type=int,
        default=None,
        help="brute-force ceiling (default env CHAINPART_CEILING or 10^7)",
    )
    sub.add_argument(
        "--budget",
        type=int,
        default=enumeration.DEFAULT_PARTITION_BUDGET,
        help="max partitions held by enumeration memo tables",
    )
    sub.add_argument(
        "--threads", type=int, default=1,
        help="worker processes for multi-q scans (default 1)",
    )


def _ceiling(args: argparse.Namespace) -> int:
    if args.ceiling is not None:
        return args.ceiling
    env = os.environ.get("CHAINPART_CEILING")
    return int(env) if env else DEFAULT_ENUMERATION_CEILING


def _system(args: argparse.Namespace) -> PQSystem:
    return make_system(args.p, args.q)


def _emit_partition(pt: Partition, sys_: PQSystem, fmt: str) -> str:
    if fmt == "json":
        return core.to_json(pt, sys_, include_values=True)
    if fmt == "csv":
        values = " ".join(str(core.part_value(pair, sys_)) for pair in pt.parts)
        return f"{core.value(pt, sys_)},{values}"
    if fmt == "words":
        return codec.lattice_encode(pt)
    if fmt == "tree":
        return codec.tree_encode(pt, sys_).render(sys_)
    raise ValueError(f"unknown format {fmt!r}")


def _cmd_enumerate(args: argparse.Namespace) -> int:
    sys_ = _system(args)
    ceiling = _ceiling(args)
    if args.u > ceiling:
        raise core.BudgetError(f"u={args.u} exceeds the enumeration ceiling {ceiling}")
    members = enumeration.ResidueEnumerator(sys_, args.budget).omega_set(args.u)
    if args.format == "csv":
        print("u,values")
    for pt in members.sorted_by_value(sys_):
        print(_emit_partition(pt, sys_, args.format))
    return 0


def _cmd_count(args: argparse.Namespace) -> int:
    sys_ = _system(args)
    if args.method == "all":
        engines = counting.all_counters(sys_)
        doc: dict = {"u": args.u}
        values = set()
        for engine in engines:
            name = {
                "CaseTableCounter": "cases",
                "HalvingCounter": "halving",
                "DirectSumCounter": "direct",
            }[type(engine).__name__]
            w = engine.w(args.u)
            doc[name] = str(w)
            values.add(w)
        doc["agree"] = len(values) == 1
        print(json.dumps(doc, separators=(",", ":")))
        return 0 if doc["agree"] else 2
    counter = counting.make_counter(sys_, args.method)
    print(counter.w(args.u))
    return 0


def _monotonicity_worker(task: tuple[int, int]) -> tuple[int, int]:
    q, limit = task
    report = analytics.check_local_monotonicity(limit, make_system(2, q))
    return q, len(report.violations)


def _cmd_scan(args: argparse.Namespace) -> int:
    sys_ = _system(args)
    mode = "monotonicity" if args.mode == "theorem4" else args.mode
    if mode == "w":
        counter = counting.make_counter(sys_)
        arr = counter.scan(args.limit)
        if args.emit == "csv":
            print("u,w")
            for u, w in enumerate(arr):
                print(f"{u},{w}")
        else:
            for u, w in enumerate(arr):
                print(json.dumps({"u": u, "w": str(w)}, separators=(",", ":")))
        return 0
    if mode == "maxw":
        report = analytics.max_count_jumps(args.limit, sys_)
        if args.emit == "csv":
            print("u,maxw,class")
            for rec in report.records:
                klass = "q-odd" if rec.odd_multiple else "2q2-exception"
                print(f"{rec.u},{rec.value},{klass}")
        else:
            for rec in report.records:
                print(json.dumps(
                    {"u": rec.u, "maxw": str(rec.value),
                     "class": "q-odd" if rec.odd_multiple else "2q2-exception"},
                    separators=(",", ":")))
        return 0
    if mode == "monotonicity":
        qs = args.scan_q or [sys_.q]
        if args.threads > 1 and len(qs) > 1:
            with ProcessPoolExecutor(max_workers=args.threads) as pool:
                results = list(pool.map(_monotonicity_worker,
                                        [(q, args.limit) for q in qs]))
        else:
            results = [_monotonicity_worker((q, args.limit)) for q in qs]
        bad = 0
        for q, violations in results:
            print(json.dumps({"q": q, "limit": args.limit,
                              "violations": violations}, separators=(",", ":")))
            bad += violations
        return 0 if bad == 0 else 2
    if mode == "smallw":
        report = analytics.classify_small_counts(args.limit, sys_)
        if args.emit == "csv":
            print("u,w")
            for u in report.ones:
                print(f"{u},1")
            for u in report.twos:
                print(f"{u},2")
        else:
            print(json.dumps(
                {"limit": report.limit, "ones": list(report.ones),
                 "twos": list(report.twos)}, separators=(",", ":")))
        return 0
    if mode == "bound":
        report = analytics.check_growth_bound(args.limit, sys_)
        print(json.dumps(
            {"limit": report.limit, "beta": repr(report.beta),
             "max_ratio": repr(report.max_ratio),
             "violations": len(report.violations)}, separators=(",", ":")))
        return 0 if not report.violations else 2
    raise ValueError(f"unknown scan mode {mode!r}")


def _cmd_sample(args: argparse.Namespace) -> int:
    sys_ = _system(args)
    rng = random.Random(args.seed)
    counter = counting.make_counter(sys_)
    for _ in range(args.n):
        pt = enumeration.sample_uniform(args.u, sys_, rng, counter)
        print(core.to_json(pt, sys_))
    return 0


def _iter_stdin() -> Iterable[str]:
    for line in _sys.stdin:
        line = line.strip()
        if line:
            yield line


def _parse_partition_line(line: str, sys_: PQSystem) -> Partition:
    if line.startswith("{"):
        pt, _ = core.from_json(line, sys_)
        return pt
    if line.startswith("["):
        return Partition.from_pairs((int(a), int(b)) for a, b in json.loads(line))
    return core.validate((int(tok) for tok in line.split()), sys_)


def _cmd_encode(args: argparse.Namespace) -> int:
    sys_ = _system(args)
    for line in _iter_stdin():
        pt = _parse_partition_line(line, sys_)
        if args.codec == "tree":
            print(codec.tree_encode(pt, sys_).render(sys_))
        else:
            print(codec.lattice_encode(pt))
    return 0


def _cmd_decode(args: argparse.Namespace) -> int:
    sys_ = _system(args)
    for line in _iter_stdin():
        if args.codec == "tree":
            _, pt = codec.tree_decode(codec.TreeWord.parse(line, sys_), sys_)
        else:
            pt = codec.lattice_decode(line)
        if args.format == "values":
            print(" ".join(str(core.part_value(pair, sys_)) for pair in pt.parts))
        else:
            print(core.to_json(pt, sys_, include_values=True))
    return 0


def _cmd_sigma(args: argparse.Namespace) -> int:
    sys_ = _system(args)
    table = shortest.ShortestTable(sys_)
    if not args.witness:
        print(table.sigma(args.u))
        return 0
    res = table.witness(args.u)
    cost = shortest.chain_cost(res.witness)
    print(json.dumps(
        {"u": args.u, "sigma": res.sigma,
         "witness": [[a, b] for a, b in res.witness.parts],
         "values": [str(core.part_value(pair, sys_)) for pair in res.witness.parts],
         "cost": {"p_ops": cost.p_ops, "q_ops": cost.q_ops, "adds": cost.adds}},
        separators=(",", ":")))
    return 0


def _cmd_sigma_stats(args: argparse.Namespace) -> int:
    sys_ = _system(args)
    stats = shortest.ShortestTable(sys_).stats(args.limit)
    if args.emit == "csv":
        print("sigma,count")
        for s, n in stats.histogram.items():
            print(f"{s},{n}")
    else:
        print(json.dumps(
            {"limit": stats.limit, "mean_ratio": repr(stats.mean_ratio),
             "histogram": {str(k): v for k, v in stats.histogram.items()}},
            separators=(",", ":")))
    return 0


def _cmd_chainpow(args: argparse.Namespace) -> int:
    sys_ = _system(args)
    table = shortest.ShortestTable(sys_)
    witness = table.witness(args.u).witness if args.u >= 1 else Partition()
    result = shortest.chain_pow(args.g, args.u, args.mod, sys_, witness or None)
    if args.cost:
        cost = shortest.chain_cost(witness)
        print(json.dumps(
            {"result": str(result),
             "witness": [[a, b] for a, b in witness.parts],
             "cost": {"p_ops": cost.p_ops, "q_ops": cost.q_ops, "adds": cost.adds}},
            separators=(",", ":")))
    else:
        print(result)
    return 0


def _cmd_graph(args: argparse.Namespace) -> int:
    sys_ = _system(args)
    graph = graph23.build_graph(args.u, sys_)
    if args.dot:
        print(f'graph "omega{args.u}" {{')
        labels = {v: codec.lattice_encode(v) for v in graph.vertices}
        for v in graph.vertices:
            print(f'  "{labels[v]}";')
        seen = set()
        for v in graph.vertices:
            for w in sorted(graph.adjacency[v], key=lambda x: x.parts):
                key = tuple(sorted((labels[v], labels[w])))
                if key not in seen:
                    seen.add(key)
                    print(f'  "{key[0]}" -- "{key[1]}";')
        print("}")
        return 0
    connected = graph.is_connected()
    print(json.dumps(
        {"u": args.u, "vertices": len(graph.vertices),
         "edges": len(graph.edges), "connected": connected,
         "diameter": graph.diameter() if connected else -1},
        separators=(",", ":")))
    return 0


def _cmd_walk(args: argparse.Namespace) -> int:
    sys_ = _system(args)
    pt = graph23.random_walk(args.u, args.steps, sys_, args.seed)
    print(json.dumps(
        {"u": args.u, "steps": args.steps, "seed": args.seed,
         "word": codec.lattice_encode(pt),
         "partition": [[a, b] for a, b in pt.parts]},
        separators=(",", ":")))
    return 0


def _cmd_alpha(args: argparse.Namespace) -> int:
    sys_ = _system(args)
    roots = analytics.solve_exponents(sys_)
    print(json.dumps(
        {"p": sys_.p, "q": sys_.q,
         "alpha": repr(roots.alpha), "beta": repr(roots.beta),
         "alpha_residual": repr(roots.alpha_residual),
         "beta_residual": repr(roots.beta_residual),
         "c_upper": repr(analytics.constant_upper_bound(sys_, roots.alpha))},
        separators=(",", ":")))
    return 0


def _cmd_sumfn(args: argparse.Namespace) -> int:
    sys_ = _system(args)
    estimate = analytics.estimate_growth_constant(sys_, args.xmax)
    if args.emit == "csv":
        print("x,s,ratio,c_upper")
        for x, s, ratio in estimate.samples:
            print(f"{x},{s},{ratio!r},{estimate.upper_bound!r}")
    else:
        for x, s, ratio in estimate.samples:
            print(json.dumps(
                {"x": x, "s": str(s), "ratio": repr(ratio),
                 "c_upper": repr(estimate.upper_bound)}, separators=(",", ":")))
    return 0


def _cmd_selftest(args: argparse.Namespace) -> int:
    profile = "full" if args.full else "quick"
    return acceptance.run_selftest(profile, corrupt=args.inject_corruption)


def build_parser(config: Optional[dict] = None) -> argparse.ArgumentParser:
    parser = _Parser(
        prog="chainpart",
        description="Generate, encode, count, sample and analyze strictly "
                    "chained two-base partitions.",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    built: list[argparse.ArgumentParser] = []
    original_add = subs.add_parser

    def add_parser(*args, **kwargs):
        sub = original_add(*args, **kwargs)
        built.append(sub)
        return sub

    subs.add_parser = add_parser  # type: ignore[method-assign]

    sub = subs.add_parser("enumerate", help="list all partitions of a sum")
    _base_options(sub)
    sub.add_argument("--u", type=int, required=True)
    sub.add_argument("--format", choices=("json", "csv", "words", "tree"),
                     default="json")
    sub.set_defaults(fn=_cmd_enumerate)

    sub = subs.add_parser("count", help="W(u) by one or all engines")
    _base_options(sub)
    sub.add_argument("--u", type=int, required=True)
    sub.add_argument(
        "--method",
        choices=("auto", "cases", "halving", "direct", "all",
                 "general", "p2", "theorem2"),
        default="auto",
    )
    sub.set_defaults(fn=_cmd_count)

    sub = subs.add_parser("scan", help="bulk scans and structure checks")
    _base_options(sub)
    sub.add_argument("mode", nargs="?", choices=_SCAN_MODES, default="w")
    sub.add_argument("--limit", type=int, required=True)
    sub.add_argument("--emit", choices=("json", "csv"), default="json")
    sub.add_argument("--scan-q", type=int, action="append", default=None,
                     help="extra q values for the monotonicity scan")
    sub.set_defaults(fn=_cmd_scan)

    sub = subs.add_parser("sample", help="uniform random partitions of a sum")
    _base_options(sub)
    sub.add_argument("--u", type=int, required=True)
    sub.add_argument("--n", type=int, default=1)
    sub.set_defaults(fn=_cmd_sample)

    sub = subs.add_parser("encode", help="partitions on stdin -> words")
    _base_options(sub)
    sub.add_argument("--codec", choices=("lattice", "tree"), default="lattice")
    sub.set_defaults(fn=_cmd_encode)

    sub = subs.add_parser("decode", help="words on stdin -> partitions")
    _base_options(sub)
    sub.add_argument("--codec", choices=("lattice", "tree"), default="lattice")
    sub.add_argument("--format", choices=("json", "values"), default="json")
    sub.set_defaults(fn=_cmd_decode)

    sub = subs.add_parser("sigma", help="least number of parts")
    _base_options(sub)
    sub.add_argument("--u", type=int, required=True)
    sub.add_argument("--witness", action="store_true")
    sub.set_defaults(fn=_cmd_sigma)

    sub = subs.add_parser("sigma-stats", help="shortest-length statistics")
    _base_options(sub)
    sub.add_argument("--limit", type=int, required=True)
    sub.add_argument("--emit", choices=("json", "csv"), default="json")
    sub.set_defaults(fn=_cmd_sigma_stats)

    sub = subs.add_parser("chainpow", help="modular power along a chain")
    _base_options(sub)
    sub.add_argument("--g", type=int, required=True)
    sub.add_argument("--u", type=int, required=True)
    sub.add_argument("--mod", type=int, required=True)
    sub.add_argument("--cost", action="store_true")
    sub.set_defaults(fn=_cmd_chainpow)

    sub = subs.add_parser("graph", help="transition graph for (2,3)")
    _base_options(sub)
    sub.add_argument("--u", type=int, required=True)
    sub.add_argument("--dot", action="store_true")
    sub.set_defaults(fn=_cmd_graph)

    sub = subs.add_parser("walk", help="lazy random walk on the graph")
    _base_options(sub)
    sub.add_argument("--u", type=int, required=True)
    sub.add_argument("--steps", type=int, required=True)
    sub.set_defaults(fn=_cmd_walk)

    sub = subs.add_parser("alpha", help="growth exponents and the C ceiling")
    _base_options(sub)
    sub.set_defaults(fn=_cmd_alpha)

    sub = subs.add_parser("sumfn", help="partial-sum ratios at dyadic points")
    _base_options(sub)
    sub.add_argument("--xmax", type=int, required=True)
    sub.add_argument("--emit", choices=("json", "csv"), default="json")
    sub.set_defaults(fn=_cmd_sumfn)

    sub = subs.add_parser("selftest", help="run the acceptance criteria")
    _base_options(sub)
    mode = sub.add_mutually_exclusive_group()
    mode.add_argument("--quick", action="store_true", default=True)
    mode.add_argument("--full", action="store_true", default=False)
    sub.add_argument("--inject-corruption", action="store_true",
                     help=argparse.SUPPRESS)
    sub.set_defaults(fn=_cmd_selftest)

    if config:
        # config values become per-subcommand defaults; flags still override
        for sub in built:
            dests = {action.dest for action in sub._actions}
            sub.set_defaults(**{k: v for k, v in config.items() if k in dests})
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(_sys.argv[1:] if argv is None else argv)
    config: dict[str, object] = {}
    # first pass only to honor --config before real parsing
    if "--config" in argv:
        try:
            path = argv[argv.index("--config") + 1]
            raw = _read_config(path)
        except (IndexError, OSError, ValueError) as exc:
            print(f"error: bad config: {exc}", file=_sys.stderr)
            return 1
        for key, val in raw.items():
            config[key] = int(val) if val.lstrip("-").isdigit() else val
    parser = build_parser(config)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # raised by _Parser.error with code 1
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except InvariantViolationError as exc:
        print(f"invariant violation: {exc}", file=_sys.stderr)
        return 2
    except (ChainPartError, ValueError) as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
