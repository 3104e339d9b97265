"""Directed graph with incremental arc insertion and reachability queries.

Vertices are dense integers ``0..n-1`` with ``n`` fixed at construction.
Arcs are ordered pairs without self-loops; duplicate insertions are
no-ops so arc semantics are set-like while the arc list preserves
insertion order.  Adjacency is stored as flat linked-arc arrays so the
search kernels (compiled or pure) can walk them without conversion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels

_GROW = 16


@dataclass
class SccDecomposition:
    """Strongly connected components plus their condensation.

    ``component_id[v]`` labels components by smallest contained vertex,
    ascending.  ``source_components`` lists component ids with no
    incoming condensation arc.
    """

    component_id: np.ndarray
    components: list[list[int]]
    condensation_arcs: set[tuple[int, int]]
    source_components: list[int]

    @property
    def num_components(self) -> int:
        return len(self.components)


class Digraph:
    """Mutable digraph on a fixed vertex set; single writer per instance."""

    __slots__ = (
        "n", "_m", "_cap", "_tails", "_heads",
        "_first_out", "_last_out", "_next_out",
        "_first_in", "_last_in", "_next_in",
        "_arc_ids",
    )

    def __init__(self, n: int):
        if n < 0:
            raise ValueError(f"vertex count must be >= 0, got {n}")
        self.n = n
        self._m = 0
        self._cap = _GROW
        self._tails = np.empty(self._cap, dtype=np.intc)
        self._heads = np.empty(self._cap, dtype=np.intc)
        self._next_out = np.empty(self._cap, dtype=np.intc)
        self._next_in = np.empty(self._cap, dtype=np.intc)
        self._first_out = np.full(n, -1, dtype=np.intc)
        self._last_out = np.full(n, -1, dtype=np.intc)
        self._first_in = np.full(n, -1, dtype=np.intc)
        self._last_in = np.full(n, -1, dtype=np.intc)
        self._arc_ids: dict[tuple[int, int], int] = {}

    @property
    def m(self) -> int:
        return self._m

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range [0, {self.n})")

    def add_arc(self, tail: int, head: int) -> bool:
        """Append arc (tail, head); returns True when it was a duplicate."""
        self._check_vertex(tail)
        self._check_vertex(head)
        if tail == head:
            raise ValueError(f"self-loop ({tail}, {head}) rejected")
        if (tail, head) in self._arc_ids:
            return True
        if self._m == self._cap:
            self._cap *= 2
            for name in ("_tails", "_heads", "_next_out", "_next_in"):
                old = getattr(self, name)
                new = np.empty(self._cap, dtype=np.intc)
                new[: self._m] = old
                setattr(self, name, new)
        a = self._m
        self._tails[a] = tail
        self._heads[a] = head
        self._next_out[a] = -1
        self._next_in[a] = -1
        if self._last_out[tail] == -1:
            self._first_out[tail] = a
        else:
            self._next_out[self._last_out[tail]] = a
        self._last_out[tail] = a
        if self._last_in[head] == -1:
            self._first_in[head] = a
        else:
            self._next_in[self._last_in[head]] = a
        self._last_in[head] = a
        self._arc_ids[(tail, head)] = a
        self._m += 1
        return False

    def has_arc(self, tail: int, head: int) -> bool:
        return (tail, head) in self._arc_ids

    def arc_id(self, tail: int, head: int) -> int:
        return self._arc_ids[(tail, head)]

    def arc(self, arc_id: int) -> tuple[int, int]:
        if not 0 <= arc_id < self._m:
            raise ValueError(f"arc id {arc_id} out of range")
        return int(self._tails[arc_id]), int(self._heads[arc_id])

    def arcs(self) -> list[tuple[int, int]]:
        """All arcs in insertion order."""
        return [(int(t), int(h)) for t, h in
                zip(self._tails[: self._m], self._heads[: self._m])]

    def out_arcs(self, v: int) -> list[int]:
        """Arc ids leaving v, in insertion order."""
        self._check_vertex(v)
        out = []
        a = int(self._first_out[v])
        while a != -1:
            out.append(a)
            a = int(self._next_out[a])
        return out

    def in_arcs(self, v: int) -> list[int]:
        """Arc ids entering v, in insertion order."""
        self._check_vertex(v)
        out = []
        a = int(self._first_in[v])
        while a != -1:
            out.append(a)
            a = int(self._next_in[a])
        return out

    def out_neighbors(self, v: int) -> list[int]:
        return [int(self._heads[a]) for a in self.out_arcs(v)]

    def in_neighbors(self, v: int) -> list[int]:
        return [int(self._tails[a]) for a in self.in_arcs(v)]

    def degree_isolated(self) -> int:
        """Number of vertices with no incident arcs."""
        return int(np.count_nonzero(
            (self._first_out == -1) & (self._first_in == -1)))

    # -- searches ---------------------------------------------------------

    def dist_from(self, v: int, skip_arc: int = -1) -> np.ndarray:
        """Forward BFS hop distances from v (-1 unreachable)."""
        self._check_vertex(v)
        return kernels.bfs_dist(self.n, self._first_out, self._next_out,
                                self._heads, v, skip_arc)

    def dist_to(self, v: int, skip_arc: int = -1) -> np.ndarray:
        """Hop distance of every vertex TO v (reverse BFS; -1 unreachable)."""
        self._check_vertex(v)
        return kernels.bfs_dist(self.n, self._first_in, self._next_in,
                                self._tails, v, skip_arc)

    def reachable_set(self, v: int, skip_arc: int = -1) -> set[int]:
        """Out-component of v, v included."""
        dist = self.dist_from(v, skip_arc)
        return set(np.flatnonzero(dist >= 0).tolist())

    def in_component(self, v: int, skip_arc: int = -1) -> set[int]:
        """All vertices that can reach v, v included."""
        dist = self.dist_to(v, skip_arc)
        return set(np.flatnonzero(dist >= 0).tolist())

    def in_component_size(self, v: int, skip_arc: int = -1) -> int:
        return int(np.count_nonzero(self.dist_to(v, skip_arc) >= 0))

    def is_strongly_connected(self) -> bool:
        if self.n <= 1:
            return True
        return (bool(np.all(self.dist_from(0) >= 0))
                and bool(np.all(self.dist_to(0) >= 0)))

    def scc(self) -> SccDecomposition:
        """SCC decomposition with deterministic component numbering."""
        raw, ncomp = kernels.scc_labels(self.n, self._first_out,
                                        self._next_out, self._heads)
        raw = raw.tolist()
        remap = [-1] * ncomp
        comp_id = np.empty(self.n, dtype=np.intc)
        components: list[list[int]] = []
        for v in range(self.n):
            r = raw[v]
            if remap[r] == -1:
                remap[r] = len(components)
                components.append([])
            comp_id[v] = remap[r]
            components[remap[r]].append(v)
        condensation: set[tuple[int, int]] = set()
        has_in = [False] * ncomp
        for a in range(self._m):
            cu = int(comp_id[self._tails[a]])
            cv = int(comp_id[self._heads[a]])
            if cu != cv:
                condensation.add((cu, cv))
                has_in[cv] = True
        sources = [c for c in range(ncomp) if not has_in[c]]
        return SccDecomposition(comp_id, components, condensation, sources)


def read_only_copy(g: Digraph) -> Digraph:
    """Snapshot of g for consumers that outlive further insertions."""
    h = Digraph(g.n)
    for tail, head in g.arcs():
        h.add_arc(tail, head)
    return h
