"""Shared on-disk formats: instance files, trace CSV, summary JSON.

Instance format (text): line 1 is ``n m`` or ``n m weighted``; then m
lines, one arc per line in insertion order.  Unweighted lines are
``tail head`` with an optional third column holding the arrival value
(17 significant digits); weighted lines are ``tail head weight`` with a
nonnegative integer weight.  Weighted instances designate vertex 0 as
the arborescence root.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

from .arrivals import ArcSequence
from .engine import RecourseTrace, StepRecord

SUMMARY_SCHEMA_VERSION = 1

TRACE_FIELDS = ["step", "tail", "head", "rho", "updated", "path_len",
                "deletions", "forest_size", "num_roots",
                "vanishing_arb_size"]


class InstanceFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Instance:
    """Parsed instance file."""

    n: int
    entries: list[tuple[int, int]]
    rhos: list[float] | None = None
    weights: list[int] | None = None

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    def engine_entries(self):
        if self.rhos is None:
            return list(self.entries)
        return [(t, h, r) for (t, h), r in zip(self.entries, self.rhos)]

    @classmethod
    def from_sequence(cls, seq: ArcSequence) -> "Instance":
        return cls(n=seq.n, entries=list(seq.entries),
                   rhos=list(seq.rhos) if seq.rhos is not None else None)


def write_instance(path, instance: Instance, force: bool = False) -> None:
    path = Path(path)
    if path.exists() and not force:
        raise FileExistsError(f"{path} exists; pass force to overwrite")
    lines = []
    if instance.weighted:
        lines.append(f"{instance.n} {instance.m} weighted")
        for (t, h), w in zip(instance.entries, instance.weights):
            lines.append(f"{t} {h} {w}")
    else:
        lines.append(f"{instance.n} {instance.m}")
        if instance.rhos is None:
            for t, h in instance.entries:
                lines.append(f"{t} {h}")
        else:
            for (t, h), r in zip(instance.entries, instance.rhos):
                lines.append(f"{t} {h} {r:.17g}")
    path.write_text("\n".join(lines) + "\n")


def read_instance(path) -> Instance:
    path = Path(path)
    with path.open() as fh:
        raw = fh.read().splitlines()
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(raw)
             if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise InstanceFormatError("empty instance file", 1)
    lineno, header = lines[0]
    fields = header.split()
    weighted = False
    if len(fields) == 3 and fields[2] == "weighted":
        weighted = True
    elif len(fields) != 2:
        raise InstanceFormatError(
            f"header must be 'n m' or 'n m weighted', got {header!r}", lineno)
    try:
        n, m = int(fields[0]), int(fields[1])
    except ValueError:
        raise InstanceFormatError(f"non-integer header {header!r}", lineno)
    if n < 0 or m < 0:
        raise InstanceFormatError("n and m must be nonnegative", lineno)
    if len(lines) - 1 != m:
        raise InstanceFormatError(
            f"expected {m} arc lines, found {len(lines) - 1}", lineno)

    entries: list[tuple[int, int]] = []
    rhos: list[float] = []
    weights: list[int] = []
    saw_rho = False
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) not in (2, 3):
            raise InstanceFormatError(f"malformed arc line {line!r}", lineno)
        try:
            t, h = int(parts[0]), int(parts[1])
        except ValueError:
            raise InstanceFormatError(f"non-integer endpoints {line!r}", lineno)
        if not (0 <= t < n and 0 <= h < n):
            raise InstanceFormatError(
                f"endpoint out of range [0, {n}) in {line!r}", lineno)
        if t == h:
            raise InstanceFormatError(f"self-loop {line!r}", lineno)
        entries.append((t, h))
        if weighted:
            if len(parts) != 3:
                raise InstanceFormatError(
                    f"weighted instance line missing weight: {line!r}", lineno)
            try:
                w = int(parts[2])
            except ValueError:
                raise InstanceFormatError(
                    f"weight must be an integer in {line!r}", lineno)
            if w < 0:
                raise InstanceFormatError(
                    f"negative weight in {line!r}", lineno)
            weights.append(w)
        elif len(parts) == 3:
            saw_rho = True
            try:
                rhos.append(float(parts[2]))
            except ValueError:
                raise InstanceFormatError(
                    f"arrival value must be a float in {line!r}", lineno)
        else:
            rhos.append(float("nan"))
    if saw_rho and any(r != r for r in rhos):
        raise InstanceFormatError(
            "arrival values must be present on every line or none", 1)
    return Instance(
        n=n, entries=entries,
        rhos=rhos if saw_rho else None,
        weights=weights if weighted else None)


def write_trace_csv(path, trace: RecourseTrace) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRACE_FIELDS)
        for r in trace.records:
            writer.writerow([
                r.step, r.arc[0], r.arc[1],
                "" if r.rho is None else f"{r.rho:.17g}",
                int(r.updated), r.path_length, r.deletions,
                r.forest_size, r.num_roots, r.vanishing_arb_size,
            ])


def read_trace_csv(path) -> list[StepRecord]:
    records = []
    with Path(path).open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != TRACE_FIELDS:
            raise ValueError(f"unexpected trace header {header}")
        for row in reader:
            records.append(StepRecord(
                step=int(row[0]), arc=(int(row[1]), int(row[2])),
                rho=None if row[3] == "" else float(row[3]),
                updated=bool(int(row[4])), path_length=int(row[5]),
                deletions=int(row[6]), forest_size=int(row[7]),
                num_roots=int(row[8]), vanishing_arb_size=int(row[9])))
    return records


def trace_summary_dict(trace: RecourseTrace) -> dict:
    return {
        "schema_version": SUMMARY_SCHEMA_VERSION,
        "n": trace.n,
        "m": trace.m,
        "total_recourse": trace.total_recourse,
        "phase1_recourse": trace.phase1_recourse,
        "phase2_recourse": trace.phase2_recourse,
        "final_forest_size": trace.records[-1].forest_size if trace.records else 0,
        "final_num_roots": trace.records[-1].num_roots if trace.records else trace.n,
        "updates": sum(1 for r in trace.records if r.updated),
    }


def write_json(path, payload: dict) -> None:
    with Path(path).open("w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_json(path) -> dict:
    with Path(path).open() as fh:
        return json.load(fh)
