"""Pairwise dominance between algorithms from published-style summaries.

Criteria, applied in order for one instance:

1. only one algorithm reaches the largest known clique size -> it dominates;
2. both have a 100% success rate -> the lower average (scaled) CPU time;
3. exactly one has a 100% success rate -> that one;
4. neither has 100% -> the one with the largest maximum, the highest average
   clique size and the lowest average time, all at once;
5. otherwise no conclusion.
"""
from __future__ import annotations

import csv
import enum
import io
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence

from .records import FIELDS, RunRecord, records_from_csv


class Dominance(enum.Enum):
    A = "A"
    B = "B"
    INCONCLUSIVE = "inconclusive"

    def swapped(self) -> "Dominance":
        if self is Dominance.A:
            return Dominance.B
        if self is Dominance.B:
            return Dominance.A
        return self


@dataclass(frozen=True)
class InstanceResult:
    max_size: int
    avg_size: float
    min_size: int
    success_rate: float
    avg_time: float  # already scaled to a common machine

    def __post_init__(self):
        if not self.min_size <= self.avg_size <= self.max_size:
            raise ValueError(f"need min <= avg <= max, got {self.min_size}, "
                             f"{self.avg_size}, {self.max_size}")
        if not 0.0 <= self.success_rate <= 1.0:
            raise ValueError(f"success rate {self.success_rate} outside [0, 1]")


@dataclass
class AlgorithmSummary:
    name: str
    results: Dict[str, InstanceResult] = field(default_factory=dict)


def _better_all_round(x: InstanceResult, y: InstanceResult) -> bool:
    at_least = (x.max_size >= y.max_size and x.avg_size >= y.avg_size
                and x.avg_time <= y.avg_time)
    strictly = (x.max_size > y.max_size or x.avg_size > y.avg_size
                or x.avg_time < y.avg_time)
    return at_least and strictly


def rank_algorithms(a: AlgorithmSummary, b: AlgorithmSummary, instance: str,
                    best_known: Optional[int] = None) -> Dominance:
    """Decide which of ``a`` and ``b`` dominates on ``instance``.

    ``best_known`` is the largest known clique size; it defaults to the larger
    of the two observed maxima.
    """
    try:
        ra, rb = a.results[instance], b.results[instance]
    except KeyError:
        raise ValueError(f"missing results for instance {instance!r}") from None
    target = max(ra.max_size, rb.max_size) if best_known is None else best_known

    a_hit, b_hit = ra.max_size >= target, rb.max_size >= target
    if a_hit != b_hit:
        return Dominance.A if a_hit else Dominance.B

    a_full, b_full = ra.success_rate >= 1.0, rb.success_rate >= 1.0
    if a_full and b_full:
        if ra.avg_time < rb.avg_time:
            return Dominance.A
        if rb.avg_time < ra.avg_time:
            return Dominance.B
    elif a_full != b_full:
        return Dominance.A if a_full else Dominance.B
    else:
        if _better_all_round(ra, rb):
            return Dominance.A
        if _better_all_round(rb, ra):
            return Dominance.B
    return Dominance.INCONCLUSIVE


SUMMARY_FIELDS = ("algorithm", "instance", "max_size", "avg_size", "min_size",
                  "success_rate", "avg_time")


def summary_from_records(name: str, records: Sequence[RunRecord]) -> AlgorithmSummary:
    """Collapse run records per instance; times average successful runs only."""
    by_instance = defaultdict(list)
    for r in records:
        by_instance[r.instance].append(r)
    out = AlgorithmSummary(name)
    for inst, recs in by_instance.items():
        sizes = [r.clique_size for r in recs]
        ok = [r.time_s for r in recs if r.success]
        times = ok or [r.time_s for r in recs]
        out.results[inst] = InstanceResult(
            max_size=max(sizes),
            avg_size=sum(sizes) / len(sizes),
            min_size=min(sizes),
            success_rate=len(ok) / len(recs),
            avg_time=sum(times) / len(times),
        )
    return out


def summary_from_csv(text: str, name: str = "") -> AlgorithmSummary:
    """Read either run records or a summary table (``SUMMARY_FIELDS`` header)."""
    header = next(csv.reader(io.StringIO(text)), None)
    if header is not None and tuple(header) == FIELDS:
        return summary_from_records(name, records_from_csv(text))
    if header is None or tuple(header) != SUMMARY_FIELDS:
        raise ValueError(f"unrecognised summary header {header!r}")
    out = AlgorithmSummary(name)
    for row in csv.DictReader(io.StringIO(text)):
        out.name = out.name or row["algorithm"]
        out.results[row["instance"]] = InstanceResult(
            max_size=int(row["max_size"]),
            avg_size=float(row["avg_size"]),
            min_size=int(row["min_size"]),
            success_rate=float(row["success_rate"]),
            avg_time=float(row["avg_time"]),
        )
    return out
