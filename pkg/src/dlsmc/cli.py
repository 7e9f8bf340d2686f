"""Command-line interface: ``dlsmc solve|bench|sweep|oracle|rank``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .bench import (
    Dominance,
    aggregate_instrumentation,
    exponential_fit,
    pd_sweep,
    rank_algorithms,
    run_experiment,
    rtd_cdf,
    summarize,
    summary_from_csv,
    write_cdf,
    write_records,
)
from .bench.experiment import DEFAULT_MAX_STEPS
from .graph import load_graph
from .oracle import enumerate_maximum_cliques, max_clique_exact
from .solver import SolverConfig, solve

ENGINES = ("auto", "python", "compiled")


def _ids(vertices) -> str:
    return " ".join(str(v + 1) for v in sorted(vertices))


def _fmt(x, spec=".1f") -> str:
    return "-" if x is None else format(x, spec)


def _add_search_args(p: argparse.ArgumentParser, runs: bool = False) -> None:
    p.add_argument("file", type=Path, help="DIMACS instance (.clq, or .clq.b with --binary)")
    p.add_argument("--tcs", type=int, required=True, help="target clique size")
    p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--binary", action="store_true", help="force the binary DIMACS reader")
    p.add_argument("--engine", choices=ENGINES, default="auto")
    if runs:
        p.add_argument("--runs", type=int, required=True)
        p.add_argument("--workers", type=int, default=1, help="parallel processes")


def _load(args):
    return load_graph(args.file, binary=True if args.binary else None)


def cmd_solve(args) -> int:
    g = _load(args)
    cfg = SolverConfig(tcs=args.tcs, pd=args.pd, max_steps=args.max_steps, seed=args.seed)
    res = solve(g, cfg, engine=args.engine)
    print(f"instance   {g.name}  (n={g.n}, m={g.m})")
    print(f"status     {res.status}")
    print(f"size       {res.best_size}  (target {cfg.tcs})")
    print(f"steps      {res.steps}")
    print(f"time_s     {res.elapsed:.6f}")
    print(f"clique     {_ids(res.clique)}")
    return 0 if res.found else 1


def cmd_bench(args) -> int:
    g = _load(args)
    cfg = SolverConfig(tcs=args.tcs, pd=args.pd, max_steps=args.max_steps, seed=args.seed)
    records = run_experiment(g, g.name, cfg, args.runs, workers=args.workers,
                             instrument=args.instrument, engine=args.engine)
    s = summarize(records)
    print(f"instance     {g.name}  (n={g.n}, m={g.m})  tcs={cfg.tcs} pd={cfg.pd} "
          f"max_steps={cfg.max_steps}")
    print(f"success      {s.successes}/{s.runs}")
    print(f"clique size  {s.clique_triple()}")
    print(f"steps        mean {_fmt(s.mean_steps)}  median {_fmt(s.median_steps)}  "
          f"sd {_fmt(s.sd_steps)}  cv {_fmt(s.cv_steps, '.3f')}")
    print(f"time_s       mean {_fmt(s.mean_seconds, '.6f')}  "
          f"median {_fmt(s.median_seconds, '.6f')}")
    print(f"throughput   {_fmt(s.steps_per_second, '.0f')} steps/s")
    print(f"solutions    {s.distinct_solutions} distinct")
    if s.steps and min(s.steps) > 0:
        m, ks = exponential_fit(s.steps)
        print(f"exp. fit     median {m:.1f} steps  KS distance {ks:.4f}")
    if args.csv:
        write_records(records, args.csv, graph=g, fmt="csv")
    if args.jsonl:
        write_records(records, args.jsonl, graph=g, fmt="jsonl")
    if args.rtd and s.steps:
        write_cdf(rtd_cdf(s.steps), args.rtd)
    if args.instrument:
        traces = [r.trace for r in records]
        if any(traces):
            out = Path(args.cdf_dir)
            out.mkdir(parents=True, exist_ok=True)
            for name, points in aggregate_instrumentation(traces).items():
                write_cdf(points, out / f"{g.name}_{name}_cdf.csv")
            print(f"instrument   CDF exports written to {out}/")
        else:
            print("instrument   no perturbations occurred")
    return 0


def cmd_sweep(args) -> int:
    g = _load(args)
    pds = [int(x) for x in args.pd_list.split(",") if x.strip()]
    rows = pd_sweep(g, args.tcs, pds, args.runs, max_steps=args.max_steps, seed=args.seed,
                    instance=g.name, workers=args.workers, engine=args.engine)
    lines = ["pd,runs,success_rate,median_steps,median_seconds"]
    for r in rows:
        lines.append(f"{r.pd},{r.runs},{r.success_rate:.4f},"
                     f"{'' if r.median_steps is None else r.median_steps},"
                     f"{'' if r.median_seconds is None else format(r.median_seconds, '.6f')}")
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.csv:
        Path(args.csv).write_text(text, encoding="utf-8")
    return 0


def cmd_oracle(args) -> int:
    g = load_graph(args.file, binary=True if args.binary else None)
    size, witness = max_clique_exact(g)
    print(f"omega    {size}")
    print(f"witness  {_ids(witness)}")
    if args.enumerate:
        cliques = enumerate_maximum_cliques(g)
        print(f"maximum cliques: {len(cliques)}")
        for c in cliques:
            print(f"  {_ids(c)}")
    return 0


def _parse_best_known(spec: Optional[str]) -> dict:
    out = {}
    if spec:
        for item in spec.split(","):
            inst, _, size = item.partition("=")
            out[inst.strip()] = int(size)
    return out


def cmd_rank(args) -> int:
    a = summary_from_csv(Path(args.a).read_text(encoding="utf-8"), name=Path(args.a).stem)
    b = summary_from_csv(Path(args.b).read_text(encoding="utf-8"), name=Path(args.b).stem)
    best = _parse_best_known(args.best_known)
    shared = sorted(set(a.results) & set(b.results))
    if not shared:
        print("no instances in common", file=sys.stderr)
        return 2
    print("instance,dominant")
    for inst in shared:
        verdict = rank_algorithms(a, b, inst, best.get(inst))
        name = {Dominance.A: a.name, Dominance.B: b.name}.get(verdict, "inconclusive")
        print(f"{inst},{name}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dlsmc", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="one run; exit code 0 if the target was reached")
    _add_search_args(p)
    p.add_argument("--pd", type=int, default=1, help="penalty delay")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="multi-run campaign with RTD summary and exports")
    _add_search_args(p, runs=True)
    p.add_argument("--pd", type=int, default=1, help="penalty delay")
    p.add_argument("--csv", help="write run records as CSV")
    p.add_argument("--jsonl", help="write run records as JSON lines")
    p.add_argument("--rtd", help="write the steps RTD as value,cum_prob CSV")
    p.add_argument("--instrument", action="store_true",
                   help="record perturbation events (python engine) and export CDFs")
    p.add_argument("--cdf-dir", default=".", help="directory for --instrument CDF exports")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("sweep", help="success rate and medians across penalty delays")
    _add_search_args(p, runs=True)
    p.add_argument("--pd-list", required=True, help="comma-separated penalty delays")
    p.add_argument("--csv", help="also write the table to this file")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle", help="exact maximum clique of a small graph")
    p.add_argument("file", type=Path)
    p.add_argument("--binary", action="store_true")
    p.add_argument("--enumerate", action="store_true", help="list all maximum cliques")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("rank", help="dominance verdict per shared instance")
    p.add_argument("--a", required=True, help="run-record or summary CSV")
    p.add_argument("--b", required=True, help="run-record or summary CSV")
    p.add_argument("--best-known", help="inst=size,... (default: larger observed max)")
    p.set_defaults(func=cmd_rank)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"dlsmc: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
