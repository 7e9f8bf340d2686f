"""Run-time distribution statistics."""
from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .records import RunRecord

CdfPoints = List[Tuple[float, float]]


def median(values: Sequence[float]) -> float:
    """Sample median; even counts use the midpoint of the central pair."""
    return statistics.median(values)


@dataclass
class RtdSummary:
    runs: int
    successes: int
    success_rate: float
    steps: Tuple[int, ...]      # sorted, successful runs only
    seconds: Tuple[float, ...]  # sorted, successful runs only
    mean_steps: Optional[float]
    median_steps: Optional[float]
    sd_steps: Optional[float]
    cv_steps: Optional[float]
    mean_seconds: Optional[float]
    median_seconds: Optional[float]
    distinct_solutions: int
    max_clique: int
    avg_clique: float
    min_clique: int
    steps_per_second: Optional[float]

    def clique_triple(self) -> str:
        """``max(avg,min)`` as printed for runs that missed the target."""
        if self.max_clique == self.min_clique:
            return str(self.max_clique)
        return f"{self.max_clique}({self.avg_clique:.2f},{self.min_clique})"


def summarize(records: Sequence[RunRecord]) -> RtdSummary:
    """Aggregate a campaign. Time statistics cover successful runs only."""
    if not records:
        raise ValueError("summarize needs at least one record")
    ok = [r for r in records if r.success]
    steps = tuple(sorted(r.steps for r in ok))
    seconds = tuple(sorted(r.time_s for r in ok))
    sizes = [r.clique_size for r in records]
    total_time = sum(r.time_s for r in records)
    mean_steps = median_steps = sd = cv = mean_s = median_s = None
    if ok:
        mean_steps = statistics.fmean(steps)
        median_steps = median(steps)
        sd = statistics.stdev(steps) if len(steps) > 1 else 0.0
        cv = sd / mean_steps if mean_steps > 0 else 0.0
        mean_s = statistics.fmean(seconds)
        median_s = median(seconds)
    solutions = {frozenset(r.clique) for r in ok if r.clique_size >= r.tcs}
    return RtdSummary(
        runs=len(records),
        successes=len(ok),
        success_rate=len(ok) / len(records),
        steps=steps,
        seconds=seconds,
        mean_steps=mean_steps,
        median_steps=median_steps,
        sd_steps=sd,
        cv_steps=cv,
        mean_seconds=mean_s,
        median_seconds=median_s,
        distinct_solutions=len(solutions),
        max_clique=max(sizes),
        avg_clique=statistics.fmean(sizes),
        min_clique=min(sizes),
        steps_per_second=(sum(r.steps for r in records) / total_time) if total_time > 0 else None,
    )


def rtd_cdf(samples: Sequence[float]) -> CdfPoints:
    """Empirical CDF points ``(x_(i), i/k)``."""
    if not samples:
        raise ValueError("rtd_cdf needs at least one sample")
    xs = sorted(samples)
    k = len(xs)
    return [(x, (i + 1) / k) for i, x in enumerate(xs)]


def exponential_cdf(x: float, m: float) -> float:
    """Exponential distribution with median ``m``: ``1 - 2**(-x/m)``."""
    return 1.0 - 2.0 ** (-x / m)


def ks_distance(samples: Sequence[float], cdf) -> float:
    """Two-sided Kolmogorov-Smirnov distance between the sample and ``cdf``."""
    xs = sorted(samples)
    k = len(xs)
    d = 0.0
    for i, x in enumerate(xs):
        f = cdf(x)
        d = max(d, (i + 1) / k - f, f - i / k)
    return d


def exponential_fit(samples: Sequence[float]) -> Tuple[float, float]:
    """Fit an exponential RTD by its median; returns ``(median, KS distance)``."""
    if not samples:
        raise ValueError("exponential_fit needs at least one sample")
    if min(samples) <= 0:
        raise ValueError("exponential_fit needs positive samples")
    m = median(samples)
    return m, ks_distance(samples, lambda x: exponential_cdf(x, m))


MEASURES = ("improving_steps", "plateau_swaps", "penalized_count", "relative_mobility")


def aggregate_instrumentation(traces: Sequence[Sequence]) -> Dict[str, CdfPoints]:
    """Pool perturbation events from several runs into one CDF per measure."""
    events = [e for trace in traces for e in trace]
    if not events:
        raise ValueError("no perturbation events to aggregate")
    out = {}
    for name in MEASURES:
        values = [getattr(e, name) for e in events]
        values = [v for v in values if v is not None]
        out[name] = rtd_cdf(values) if values else []
    return out
