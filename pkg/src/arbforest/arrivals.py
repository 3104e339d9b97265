"""Arc-arrival sequence generators.

Uniformly random arrivals are realized by assigning an independent
uniform [0, 1) value to every ordered pair and emitting the m smallest
in ascending value order; the values double as thresholds for comparing
prefixes against the independent-arcs random digraph model.  The
adversarial generator builds the bidirected path that forces quadratic
recourse.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

import numpy as np

_CHUNK = 1 << 22  # pairs drawn per batch; fixed so streams are reproducible


@dataclass(frozen=True)
class ArcSequence:
    """Ordered arc arrivals, optionally carrying their arrival values."""

    n: int
    entries: list[tuple[int, int]]
    rhos: list[float] | None = None
    seed: int | None = None

    @property
    def m(self) -> int:
        return len(self.entries)

    def engine_entries(self):
        """Rows suitable for ``engine.run_sequence``."""
        if self.rhos is None:
            return list(self.entries)
        return [(t, h, r) for (t, h), r in zip(self.entries, self.rhos)]


def _pair_from_index(idx, n):
    """Bijection from 0..n(n-1)-1 to ordered pairs without self-loops."""
    u = idx // (n - 1)
    j = idx % (n - 1)
    v = j + (j >= u)
    return u, v


def uniform_random_sequence(n: int, m: int, seed: int) -> ArcSequence:
    """The m smallest-valued ordered pairs, ascending by value.

    Every one of the n(n-1) ordered pairs receives an independent
    uniform [0, 1) value from a generator seeded by ``seed``; identical
    (n, m, seed) give identical output.  Values are drawn in fixed-size
    batches and only the running m smallest are kept, so memory stays
    O(m + batch) even when n(n-1) is huge.
    """
    if n < 0:
        raise ValueError(f"vertex count must be >= 0, got {n}")
    total = n * (n - 1)
    if not 0 <= m <= total:
        raise ValueError(f"m must be in [0, {total}], got {m}")
    if m == 0:
        return ArcSequence(n=n, entries=[], rhos=[], seed=seed)
    rng = np.random.default_rng(seed)
    best_vals = np.empty(0, dtype=np.float64)
    best_idx = np.empty(0, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        count = min(_CHUNK, total - start)
        vals = np.concatenate([best_vals, rng.random(count)])
        idx = np.concatenate(
            [best_idx, np.arange(start, start + count, dtype=np.int64)])
        if vals.size > m:
            keep = np.argpartition(vals, m - 1)[:m]
            vals, idx = vals[keep], idx[keep]
        best_vals, best_idx = vals, idx
    order = np.lexsort((best_idx, best_vals))
    vals = best_vals[order]
    idx = best_idx[order]
    for i in range(1, m):  # guard against float ties
        if vals[i] <= vals[i - 1]:
            vals[i] = np.nextafter(vals[i - 1], 1.0)
    u, v = _pair_from_index(idx, n)
    entries = list(zip(u.tolist(), v.tolist()))
    return ArcSequence(n=n, entries=entries, rhos=vals.tolist(), seed=seed)


def bidirected_path_adversary(n: int) -> ArcSequence:
    """Adversarial sequence forcing (n-2)(n-1)/2 total recourse.

    Starts with an arc in the middle of the path 0..n-1, immediately
    bidirected, then alternately extends right and left: each extension
    arc points from the new endpoint into the existing path (forcing the
    unique maximum forest to flip orientation) and is then bidirected.
    Requires even n >= 4; emits 2(n-1) arcs.
    """
    if n < 4:
        raise ValueError(f"adversary needs n >= 4, got {n}")
    if n % 2:
        raise ValueError(f"adversary needs even n, got {n}")
    mid = n // 2 - 1
    entries = [(mid, mid + 1), (mid + 1, mid)]
    right = mid + 1
    left = mid
    while right < n - 1 or left > 0:
        if right < n - 1:
            entries.append((right + 1, right))
            entries.append((right, right + 1))
            right += 1
        if left > 0:
            entries.append((left - 1, left))
            entries.append((left, left - 1))
            left -= 1
    return ArcSequence(n=n, entries=entries, rhos=None, seed=None)


def adversary_flip_steps(n: int) -> list[int]:
    """1-based indices of the insertions that force a forest flip."""
    return list(range(3, 2 * (n - 1), 2))


def phase_split_index(seq: ArcSequence, threshold: float) -> int:
    """Largest i such that the i-th arrival value is <= threshold (0 if none)."""
    if seq.rhos is None:
        raise ValueError("sequence carries no arrival values")
    return bisect.bisect_right(seq.rhos, threshold)
