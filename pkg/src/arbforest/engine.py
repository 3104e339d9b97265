"""Incremental driver: maintain a maximum forest under arc insertions.

Each insertion triggers at most one path update.  The engine records a
per-step telemetry row (deletions, forest size, roots, vanishing
arborescence size, optional arrival value) and can re-check structural
invariants against the oracles at three verification levels.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from . import oracle
from .forest import ArborescenceForest, find_feasible_path, path_update
from .graph import Digraph

PHASE_THRESHOLD_NUMERATOR = 2.0  # phase boundary at value 2/n


class VerifyLevel(enum.Enum):
    OFF = "off"
    SAMPLED = "sampled"
    FULL = "full"


class EngineInvariantError(RuntimeError):
    """A maintained-solution invariant failed after an insertion."""

    def __init__(self, step: int, invariant: str, detail: str):
        super().__init__(f"step {step}: invariant '{invariant}' violated: {detail}")
        self.step = step
        self.invariant = invariant
        self.detail = detail


@dataclass(frozen=True)
class StepRecord:
    """Telemetry for one insertion (1-based step index).

    ``vanishing_arb_size`` is the vertex count of the arborescence whose
    root disappeared (0 when no update happened).
    """

    step: int
    arc: tuple[int, int]
    rho: float | None
    updated: bool
    path_length: int
    deletions: int
    forest_size: int
    num_roots: int
    vanishing_arb_size: int


@dataclass
class RecourseTrace:
    """Full run record plus the recourse ledger."""

    n: int
    records: list[StepRecord] = field(default_factory=list)

    @property
    def m(self) -> int:
        return len(self.records)

    @property
    def total_recourse(self) -> int:
        return sum(r.deletions for r in self.records)

    def _has_rho(self) -> bool:
        return all(r.rho is not None for r in self.records)

    @property
    def phase1_recourse(self) -> int | None:
        """Deletions on steps with value <= 2/n (None without values)."""
        if not self._has_rho():
            return None
        cut = PHASE_THRESHOLD_NUMERATOR / self.n
        return sum(r.deletions for r in self.records if r.rho <= cut)

    @property
    def phase2_recourse(self) -> int | None:
        if not self._has_rho():
            return None
        return self.total_recourse - self.phase1_recourse


@dataclass(frozen=True)
class StepStats:
    root_in_component_sizes: dict[int, int]
    isolated_vertices: int
    max_arborescence_size: int


class IncrementalForest:
    """Engine state: growing digraph plus its maximum arborescence forest."""

    def __init__(self, n: int, verify: VerifyLevel = VerifyLevel.OFF,
                 oracle_every: int = 32):
        if oracle_every < 1:
            raise ValueError("oracle_every must be >= 1")
        self.graph = Digraph(n)
        self.forest = ArborescenceForest(n)
        self.verify = verify
        self.oracle_every = oracle_every
        self.records: list[StepRecord] = []

    @property
    def n(self) -> int:
        return self.graph.n

    def insert_arc(self, tail: int, head: int,
                   rho: float | None = None) -> StepRecord:
        """Insert one arc, update the forest if it created a merge path."""
        step = len(self.records) + 1
        duplicate = self.graph.add_arc(tail, head)
        path = None
        if not duplicate:
            path = find_feasible_path(self.forest, self.graph, tail, head)
        if path is not None:
            vanish_size = self.forest.member_count(path.target_root)
            deleted = path_update(self.forest, path, self.graph)
            record = StepRecord(
                step=step, arc=(tail, head), rho=rho, updated=True,
                path_length=len(path), deletions=len(deleted),
                forest_size=self.forest.size,
                num_roots=self.forest.num_roots,
                vanishing_arb_size=vanish_size)
            if record.deletions > max(vanish_size - 1, 0):
                raise EngineInvariantError(
                    step, "recourse-bound",
                    f"{record.deletions} deletions exceed the vanishing "
                    f"arborescence's {vanish_size - 1} arcs")
        else:
            record = StepRecord(
                step=step, arc=(tail, head), rho=rho, updated=False,
                path_length=0, deletions=0, forest_size=self.forest.size,
                num_roots=self.forest.num_roots, vanishing_arb_size=0)
        self.records.append(record)
        if self.verify is VerifyLevel.FULL:
            self._verify_step(record, path)
        elif self.verify is VerifyLevel.SAMPLED and step % self.oracle_every == 0:
            self._check_cardinality(record.step)
        return record

    def trace(self) -> RecourseTrace:
        return RecourseTrace(n=self.n, records=list(self.records))

    def step_stats(self) -> StepStats:
        """Root in-component sizes, isolated count, largest arborescence."""
        sizes = {r: self.graph.in_component_size(r)
                 for r in self.forest.roots()}
        max_arb = max((self.forest.member_count(r)
                       for r in self.forest.roots()), default=0)
        return StepStats(
            root_in_component_sizes=sizes,
            isolated_vertices=self.graph.degree_isolated(),
            max_arborescence_size=max_arb)

    # -- invariant checking -------------------------------------------------

    def _check_cardinality(self, step: int) -> None:
        want = oracle.max_forest_cardinality(self.graph)
        if self.forest.size != want:
            raise EngineInvariantError(
                step, "maximality",
                f"forest size {self.forest.size}, oracle says {want}")

    def _verify_step(self, record: StepRecord, path) -> None:
        step = record.step
        self._check_cardinality(step)
        problems = self.forest.validate(self.graph)
        if problems:
            raise EngineInvariantError(
                step, "forest-validity", "; ".join(problems))
        if oracle.has_root_to_root_path(self.graph, self.forest.roots()):
            raise EngineInvariantError(
                step, "root-to-root",
                "a root reaches another root, forest not maximum")
        for r in self.forest.roots():
            in_comp = self.graph.in_component(r)
            if not in_comp <= self.forest._members[r]:
                raise EngineInvariantError(
                    step, "root-containment",
                    f"in-component of root {r} leaves its arborescence: "
                    f"{sorted(in_comp - self.forest._members[r])}")
        if path is not None:
            r = path.source_root
            aid = self.graph.arc_id(*record.arc)
            before = self.graph.in_component(r, skip_arc=aid)
            after = self.graph.in_component(r)
            if before != after:
                raise EngineInvariantError(
                    step, "in-component-preservation",
                    f"in-component of surviving root {r} changed: "
                    f"{sorted(after ^ before)}")


def run_sequence(n: int, entries, verify: VerifyLevel = VerifyLevel.OFF,
                 oracle_every: int = 32, hook=None) -> RecourseTrace:
    """Feed an arc sequence through a fresh engine and return the trace.

    ``entries`` yields (tail, head) or (tail, head, rho).  ``hook``, when
    given, is called as hook(graph, forest, record) after every step; it
    must treat both objects as read-only (copy what it keeps).
    """
    state = IncrementalForest(n, verify=verify, oracle_every=oracle_every)
    for i, entry in enumerate(entries, start=1):
        if len(entry) == 2:
            tail, head = entry
            rho = None
        else:
            tail, head, rho = entry
        try:
            record = state.insert_arc(tail, head, rho)
        except ValueError as exc:
            raise ValueError(f"step {i}: {exc}") from exc
        if hook is not None:
            hook(state.graph, state.forest, record)
    return state.trace()
