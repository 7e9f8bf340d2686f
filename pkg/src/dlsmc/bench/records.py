"""Run records and their CSV / JSON-lines serialisation."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from ..graph import Graph
from ..oracle import verify_clique

FIELDS = ("instance", "run", "seed", "pd", "tcs", "max_steps", "success",
          "steps", "time_s", "clique_size", "clique")


@dataclass
class RunRecord:
    instance: str
    run: int
    seed: int
    pd: int
    tcs: int
    max_steps: int
    success: bool
    steps: int
    time_s: float
    clique_size: int
    clique: Tuple[int, ...]  # sorted, 1-based
    trace: Optional[list] = field(default=None, repr=False, compare=False)

    def as_dict(self) -> dict:
        return {
            "instance": self.instance, "run": self.run, "seed": self.seed,
            "pd": self.pd, "tcs": self.tcs, "max_steps": self.max_steps,
            "success": self.success, "steps": self.steps,
            "time_s": round(self.time_s, 6), "clique_size": self.clique_size,
            "clique": list(self.clique),
        }


class RecordError(ValueError):
    pass


def check_record(rec: RunRecord, g: Graph) -> None:
    """Re-verify a record against its graph."""
    if rec.steps > rec.max_steps:
        raise RecordError(f"run {rec.run}: steps {rec.steps} exceed budget {rec.max_steps}")
    if rec.clique_size != len(rec.clique):
        raise RecordError(f"run {rec.run}: clique_size disagrees with clique")
    if rec.success:
        if rec.clique_size < rec.tcs:
            raise RecordError(f"run {rec.run}: success with clique smaller than target")
        if not verify_clique(g, [v - 1 for v in rec.clique]):
            raise RecordError(f"run {rec.run}: reported clique does not verify")


def _quote(text: str) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="").writerow([text])
    return buf.getvalue()


def format_csv_row(rec: RunRecord) -> str:
    clique = " ".join(str(v) for v in rec.clique)
    return ",".join([
        _quote(rec.instance), str(rec.run), str(rec.seed), str(rec.pd), str(rec.tcs),
        str(rec.max_steps), "1" if rec.success else "0", str(rec.steps),
        f"{rec.time_s:.6f}", str(rec.clique_size), f'"{clique}"',
    ])


def records_to_csv(records: Iterable[RunRecord]) -> str:
    lines = [",".join(FIELDS)]
    lines.extend(format_csv_row(r) for r in records)
    return "\n".join(lines) + "\n"


def records_from_csv(text: str) -> List[RunRecord]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(header) != FIELDS:
        raise RecordError(f"unexpected run-record header {header!r}")
    out = []
    for row in reader:
        if not row:
            continue
        if len(row) != len(FIELDS):
            raise RecordError(f"malformed record row {row!r}")
        out.append(RunRecord(
            instance=row[0], run=int(row[1]), seed=int(row[2]), pd=int(row[3]),
            tcs=int(row[4]), max_steps=int(row[5]), success=row[6] == "1",
            steps=int(row[7]), time_s=float(row[8]), clique_size=int(row[9]),
            clique=tuple(int(v) for v in row[10].split()),
        ))
    return out


def records_to_jsonl(records: Iterable[RunRecord]) -> str:
    return "".join(json.dumps(r.as_dict()) + "\n" for r in records)


def records_from_jsonl(text: str) -> List[RunRecord]:
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        d = json.loads(line)
        d["clique"] = tuple(d["clique"])
        out.append(RunRecord(**d))
    return out


def write_records(records: Sequence[RunRecord], path: Union[str, Path],
                  graph: Optional[Graph] = None, fmt: Optional[str] = None) -> None:
    """Write records as CSV (default) or JSON lines (``.jsonl`` or ``fmt="jsonl"``).

    With ``graph`` given, every record is re-verified first.
    """
    path = Path(path)
    if graph is not None:
        for rec in records:
            check_record(rec, graph)
    if fmt is None:
        fmt = "jsonl" if path.suffix == ".jsonl" else "csv"
    text = records_to_jsonl(records) if fmt == "jsonl" else records_to_csv(records)
    path.write_text(text, encoding="utf-8", newline="")


def read_records(path: Union[str, Path]) -> List[RunRecord]:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".jsonl":
        return records_from_jsonl(text)
    return records_from_csv(text)


def write_cdf(points: Sequence[Tuple[float, float]], path: Union[str, Path]) -> None:
    lines = ["value,cum_prob"]
    lines.extend(f"{x!r},{p!r}" for x, p in points)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
