"""Scaling experiments: seeded trials, ratios, structure checks.

A trial runs one seeded random arrival sequence through the engine and
reports recourse totals, normalized ratios, the step at which the graph
first became strongly connected, and counts for the forbidden
in-component size band.  Trials are independent and seeded as
``base_seed + trial_index``, so parallel and serial execution produce
identical rows.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .arrivals import phase_split_index, uniform_random_sequence
from .engine import VerifyLevel, run_sequence
from .graph import Digraph
from .files import SUMMARY_SCHEMA_VERSION

GAP_ALPHA = 0.018          # min over c >= 1.6 of 1 - 1.1/c - ln(c)/c
GAP_RHO_NUMERATOR = 1.6    # band applies to steps with value > 1.6/n
STRONG_CONN_NUMERATOR = 2.0  # connectivity threshold value 2*log2(n)/n


def default_m(n: int) -> int:
    return math.ceil(n * math.log2(n))


def component_size_band(n: int) -> tuple[float, float]:
    """Forbidden root in-component size band [10*log2(n), alpha*n].

    The band is empty below roughly n = 5500; callers skip the scan then.
    """
    return 10 * math.log2(n), GAP_ALPHA * n


def check_component_gap(n: int, size_snapshots) -> int:
    """Count in-component sizes inside the forbidden band.

    ``size_snapshots`` is an iterable of per-step root size collections
    (one size per root).  Hard failure policy is left to the caller; the
    claim is a high-probability one.
    """
    lo, hi = component_size_band(n)
    violations = 0
    for sizes in size_snapshots:
        for s in sizes:
            if lo <= s <= hi:
                violations += 1
    return violations


@dataclass(frozen=True)
class ExperimentConfig:
    n_list: list[int]
    trials: int
    base_seed: int = 0
    m_multiplier: float = 1.0
    verify: str = "off"
    oracle_every: int = 32
    jobs: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not self.n_list:
            raise ValueError("n_list must not be empty")
        for n in self.n_list:
            if n < 2:
                raise ValueError(f"every n must be >= 2, got {n}")
        if self.m_multiplier <= 0:
            raise ValueError("m_multiplier must be positive")
        VerifyLevel(self.verify)

    def m_for(self, n: int) -> int:
        return min(math.ceil(default_m(n) * self.m_multiplier), n * (n - 1))


@dataclass(frozen=True)
class TrialResult:
    n: int
    seed: int
    m: int
    total_recourse: int
    phase1_recourse: int
    phase2_recourse: int
    ratio_total: float        # total / (m * log2(n)^2)
    ratio_phase1: float       # phase1 / (n * log2(n))
    strong_conn_step: int | None
    sc_threshold_step: int    # last step with value <= 2*log2(n)/n
    sc_within_threshold: bool
    gap_qualifying_steps: int
    gap_violations: int


def strong_connectivity_step(n: int, entries) -> int | None:
    """First 1-based prefix length whose graph is strongly connected.

    Strong connectivity is monotone under insertions, so binary search
    over prefixes suffices.  None when even the full sequence is not
    strongly connected.
    """
    def connected(k: int) -> bool:
        g = Digraph(n)
        for t, h in entries[:k]:
            g.add_arc(t, h)
        return g.is_strongly_connected()

    m = len(entries)
    if m == 0 or not connected(m):
        return None
    lo, hi = 1, m
    while lo < hi:
        mid = (lo + hi) // 2
        if connected(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def run_trial(n: int, m: int, seed: int, verify: str = "off",
              oracle_every: int = 32) -> TrialResult:
    seq = uniform_random_sequence(n, m, seed)
    lo, hi = component_size_band(n)
    band_nonempty = lo <= hi
    rho_cut = GAP_RHO_NUMERATOR / n
    qualifying = 0
    violations = 0

    def hook(graph, forest, record):
        nonlocal qualifying, violations
        if record.rho is not None and record.rho > rho_cut:
            qualifying += 1
            if band_nonempty:
                for r in forest.roots():
                    if lo <= graph.in_component_size(r) <= hi:
                        violations += 1

    trace = run_sequence(n, seq.engine_entries(),
                         verify=VerifyLevel(verify),
                         oracle_every=oracle_every, hook=hook)
    log2n = math.log2(n)
    total = trace.total_recourse
    phase1 = trace.phase1_recourse
    sc_step = strong_connectivity_step(n, seq.entries)
    threshold = STRONG_CONN_NUMERATOR * log2n / n
    sc_threshold_step = phase_split_index(seq, threshold)
    # Deadline: the step of the first arc with value above the threshold,
    # or the end of the sequence when no arrival value exceeds it.
    deadline = min(sc_threshold_step + 1, seq.m)
    return TrialResult(
        n=n, seed=seed, m=seq.m,
        total_recourse=total,
        phase1_recourse=phase1,
        phase2_recourse=trace.phase2_recourse,
        ratio_total=total / (seq.m * log2n ** 2) if seq.m else 0.0,
        ratio_phase1=phase1 / (n * log2n),
        strong_conn_step=sc_step,
        sc_threshold_step=sc_threshold_step,
        sc_within_threshold=sc_step is not None and sc_step <= deadline,
        gap_qualifying_steps=qualifying,
        gap_violations=violations)


def _trial_task(args) -> TrialResult:
    return run_trial(*args)


@dataclass
class ExperimentSummary:
    config: ExperimentConfig
    trials: list[TrialResult] = field(default_factory=list)

    def rows_for(self, n: int) -> list[TrialResult]:
        return [t for t in self.trials if t.n == n]

    def aggregate(self) -> dict[int, dict[str, float]]:
        out = {}
        for n in self.config.n_list:
            rows = self.rows_for(n)
            out[n] = {
                "trials": len(rows),
                "mean_total_recourse": _mean([t.total_recourse for t in rows]),
                "mean_ratio_total": _mean([t.ratio_total for t in rows]),
                "std_ratio_total": _std([t.ratio_total for t in rows]),
                "mean_ratio_phase1": _mean([t.ratio_phase1 for t in rows]),
                "std_ratio_phase1": _std([t.ratio_phase1 for t in rows]),
                "strongly_connected_within_threshold":
                    sum(t.sc_within_threshold for t in rows),
                "gap_qualifying_steps": sum(t.gap_qualifying_steps for t in rows),
                "gap_violations": sum(t.gap_violations for t in rows),
            }
        return out

    def to_json_dict(self) -> dict:
        return {
            "schema_version": SUMMARY_SCHEMA_VERSION,
            "log_base": 2,
            "config": asdict(self.config),
            "trials": [asdict(t) for t in self.trials],
            "aggregates": {str(n): agg for n, agg in self.aggregate().items()},
        }


def _mean(xs):
    return sum(xs) / len(xs) if xs else 0.0


def _std(xs):
    if len(xs) < 2:
        return 0.0
    mu = _mean(xs)
    return math.sqrt(sum((x - mu) ** 2 for x in xs) / (len(xs) - 1))


def run_experiment(config: ExperimentConfig) -> ExperimentSummary:
    """All (n, trial) pairs, optionally across worker processes.

    Results are ordered by (n, trial) regardless of scheduling.
    """
    tasks = [(n, config.m_for(n), config.base_seed + t,
              config.verify, config.oracle_every)
             for n in config.n_list for t in range(config.trials)]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_trial_task, tasks))
    else:
        results = [_trial_task(t) for t in tasks]
    return ExperimentSummary(config=config, trials=results)
