"""Multi-run campaigns and penalty-delay sweeps."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence

from ..graph import Graph
from ..solver import SolverConfig, solve, solve_instrumented
from .records import RunRecord, check_record
from .stats import median

DEFAULT_MAX_STEPS = 100_000_000


def run_seed(base_seed: int, run_index: int) -> int:
    return base_seed ^ run_index


def _one_run(g: Graph, instance: str, cfg: SolverConfig, run_index: int,
             instrument: bool, engine: str) -> RunRecord:
    run_cfg = replace(cfg, seed=run_seed(cfg.seed, run_index))
    if instrument:
        res = solve_instrumented(g, run_cfg)
    else:
        res = solve(g, run_cfg, engine=engine)
    rec = RunRecord(
        instance=instance, run=run_index, seed=run_cfg.seed, pd=cfg.pd, tcs=cfg.tcs,
        max_steps=cfg.max_steps, success=res.found, steps=res.steps,
        time_s=res.elapsed, clique_size=res.best_size,
        clique=tuple(v + 1 for v in res.clique), trace=res.trace,
    )
    check_record(rec, g)
    return rec


def run_experiment(g: Graph, instance: str, cfg: SolverConfig, runs: int,
                   workers: int = 1, instrument: bool = False,
                   engine: str = "auto") -> List[RunRecord]:
    """``runs`` independent solves; run ``i`` uses seed ``cfg.seed ^ i``.

    Records come back ordered by run index whatever ``workers`` is. With
    ``instrument`` each record carries its perturbation trace.
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    if workers <= 1:
        return [_one_run(g, instance, cfg, i, instrument, engine) for i in range(runs)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_one_run, g, instance, cfg, i, instrument, engine)
                   for i in range(runs)]
        return [f.result() for f in futures]


@dataclass
class SweepRow:
    pd: int
    runs: int
    success_rate: float
    median_steps: Optional[float]    # None when no run succeeded
    median_seconds: Optional[float]


def pd_sweep(g: Graph, tcs: int, pd_values: Sequence[int], runs: int,
             max_steps: int = DEFAULT_MAX_STEPS, seed: int = 0, instance: str = "",
             workers: int = 1, engine: str = "auto") -> List[SweepRow]:
    if not pd_values:
        raise ValueError("pd_values must not be empty")
    rows = []
    for pd in pd_values:
        cfg = SolverConfig(tcs=tcs, pd=pd, max_steps=max_steps, seed=seed)
        recs = run_experiment(g, instance or g.name, cfg, runs, workers=workers, engine=engine)
        ok = [r for r in recs if r.success]
        rows.append(SweepRow(
            pd=pd,
            runs=len(recs),
            success_rate=len(ok) / len(recs),
            median_steps=median([r.steps for r in ok]) if ok else None,
            median_seconds=median([r.time_s for r in ok]) if ok else None,
        ))
    return rows
