"""Arborescence forests, path updates, and root-to-root path search.

A forest is stored as a per-vertex parent pointer (at most one in-arc by
construction) together with derived root labels and per-root member
sets.  ``path_update`` merges two arborescences along a root-to-root
path; ``find_feasible_path`` locates the structured path used by the
incremental engine, or reports that none exists.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .graph import Digraph


class ForestInvariantError(RuntimeError):
    """A structural forest/path invariant failed at runtime."""


@dataclass(frozen=True)
class FeasiblePath:
    """Root-to-root path split as tree-prefix plus target-arborescence suffix.

    ``vertices[split_index]`` is the last vertex of the prefix: arcs
    before it are parent arcs in the first root's arborescence, vertices
    after it belong to the last root's arborescence.
    """

    vertices: tuple[int, ...]
    split_index: int

    @property
    def arcs(self) -> list[tuple[int, int]]:
        return list(zip(self.vertices, self.vertices[1:]))

    @property
    def source_root(self) -> int:
        return self.vertices[0]

    @property
    def target_root(self) -> int:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.vertices)


def validate_arc_set(arcs, g: Digraph) -> list[str]:
    """Check an arc collection against the forest definition.

    Returns a list of violation messages (empty means valid): every arc
    must exist in g, in-degrees stay <= 1, and no undirected cycle may
    form.
    """
    violations = []
    indeg: dict[int, int] = {}
    dsu = list(range(g.n))

    def find(x: int) -> int:
        while dsu[x] != x:
            dsu[x] = dsu[dsu[x]]
            x = dsu[x]
        return x

    seen = set()
    for tail, head in arcs:
        if (tail, head) in seen:
            violations.append(f"arc ({tail}, {head}) listed twice")
            continue
        seen.add((tail, head))
        if not g.has_arc(tail, head):
            violations.append(f"arc ({tail}, {head}) not in digraph")
            continue
        indeg[head] = indeg.get(head, 0) + 1
        if indeg[head] == 2:
            violations.append(f"vertex {head} has in-degree >= 2")
            continue
        rt, rh = find(tail), find(head)
        if rt == rh:
            violations.append(
                f"arc ({tail}, {head}) closes an undirected cycle")
        else:
            dsu[rt] = rh
    return violations


class ArborescenceForest:
    """Forest of arborescences over vertices 0..n-1."""

    __slots__ = ("n", "_parent", "_root_of", "_members", "_size")

    def __init__(self, n: int):
        self.n = n
        self._parent = np.full(n, -1, dtype=np.intc)
        self._root_of = np.arange(n, dtype=np.intc)
        self._members: dict[int, set[int]] = {v: {v} for v in range(n)}
        self._size = 0

    @classmethod
    def from_arcs(cls, n: int, arcs) -> "ArborescenceForest":
        """Build from parent arcs; raises ValueError on a non-forest."""
        forest = cls(n)
        parent = forest._parent
        for tail, head in arcs:
            if not (0 <= tail < n and 0 <= head < n):
                raise ValueError(f"arc ({tail}, {head}) out of range")
            if parent[head] != -1:
                raise ValueError(f"vertex {head} has in-degree >= 2")
            parent[head] = tail
            forest._size += 1
        order = forest._resolve_roots()
        if order is None:
            raise ValueError("parent arcs contain a cycle")
        return forest

    def _resolve_roots(self):
        """Recompute root labels and member sets; None if cyclic."""
        parent = self._parent
        root_of = self._root_of
        state = np.zeros(self.n, dtype=np.int8)  # 0 new, 1 active, 2 done
        for v in range(self.n):
            if state[v]:
                continue
            chain = []
            x = v
            while True:
                if state[x] == 1:
                    return None
                if state[x] == 2:
                    root = root_of[x]
                    break
                state[x] = 1
                chain.append(x)
                p = parent[x]
                if p == -1:
                    root = x
                    break
                x = p
            for y in chain:
                root_of[y] = root
                state[y] = 2
        members: dict[int, set[int]] = {}
        for v in range(self.n):
            members.setdefault(int(root_of[v]), set()).add(v)
        self._members = members
        return True

    @property
    def size(self) -> int:
        """Number of arcs in the forest."""
        return self._size

    @property
    def num_roots(self) -> int:
        return self.n - self._size

    def parent(self, v: int) -> int | None:
        p = int(self._parent[v])
        return None if p == -1 else p

    def is_root(self, v: int) -> bool:
        return self._parent[v] == -1

    def roots(self) -> list[int]:
        return sorted(self._members)

    def root_of(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range [0, {self.n})")
        return int(self._root_of[v])

    def members(self, root: int) -> set[int]:
        """Vertex set of the arborescence rooted at ``root`` (copy)."""
        if root not in self._members:
            raise ValueError(f"vertex {root} is not a root")
        return set(self._members[root])

    def member_count(self, root: int) -> int:
        if root not in self._members:
            raise ValueError(f"vertex {root} is not a root")
        return len(self._members[root])

    def arborescence_of(self, v: int) -> tuple[int, set[int]]:
        """Root and vertex set of the arborescence containing v."""
        r = self.root_of(v)
        return r, set(self._members[r])

    def arcs(self) -> set[tuple[int, int]]:
        return {(int(self._parent[v]), v)
                for v in range(self.n) if self._parent[v] != -1}

    def tree_path_from_root(self, v: int) -> list[int]:
        """Vertices along the unique tree path root_of(v) -> v."""
        path = []
        x = v
        while x != -1:
            path.append(int(x))
            x = self._parent[x]
        path.reverse()
        return path

    def root_mask(self) -> np.ndarray:
        return (self._parent == -1).astype(np.uint8)

    def validate(self, g: Digraph) -> list[str]:
        """Violation report against g plus internal-map consistency."""
        violations = validate_arc_set(self.arcs(), g)
        check = ArborescenceForest(self.n)
        check._parent[:] = self._parent
        check._size = self._size
        if check._resolve_roots() is None:
            violations.append("parent links contain a cycle")
            return violations
        if not np.array_equal(check._root_of, self._root_of):
            violations.append("root_of labels inconsistent with parents")
        if check._members != self._members:
            violations.append("member sets inconsistent with parents")
        if self._size != int(np.count_nonzero(self._parent != -1)):
            violations.append("size inconsistent with parent count")
        return violations


def path_update(forest: ArborescenceForest, path: FeasiblePath,
                g: Digraph) -> set[tuple[int, int]]:
    """Merge along ``path``: drop internal parent arcs, add the path arcs.

    Mutates ``forest`` in place and returns the net-deleted arc set.  The
    path's endpoints must be distinct roots, every path arc must exist in
    g, and the prefix/suffix split must satisfy the feasible-path
    invariants (prefix arcs inside the source arborescence, suffix
    vertices inside the target arborescence).
    """
    verts = path.vertices
    r, rp = verts[0], verts[-1]
    if r == rp:
        raise ValueError("path endpoints must be distinct")
    if not forest.is_root(r) or not forest.is_root(rp):
        raise ValueError(f"path endpoints ({r}, {rp}) must both be roots")
    if len(set(verts)) != len(verts):
        raise ValueError("path vertices must be distinct")
    if not 0 <= path.split_index < len(verts) - 1:
        raise ValueError(f"split index {path.split_index} out of range")
    parent = forest._parent
    root_of = forest._root_of
    for tail, head in path.arcs:
        if not g.has_arc(tail, head):
            raise ValueError(f"path arc ({tail}, {head}) not in digraph")
    for i in range(path.split_index):
        if parent[verts[i + 1]] != verts[i] or root_of[verts[i]] != r:
            raise ValueError(
                f"prefix arc ({verts[i]}, {verts[i + 1]}) is not a parent "
                "arc of the source arborescence")
    for i in range(path.split_index + 1, len(verts)):
        if root_of[verts[i]] != rp:
            raise ValueError(
                f"suffix vertex {verts[i]} outside the target arborescence")

    removed = set()
    for v in verts[1:-1]:
        p = parent[v]
        if p != -1:
            removed.add((int(p), int(v)))
    for tail, head in path.arcs:
        parent[head] = tail
    deleted = removed - set(path.arcs)

    moved = forest._members.pop(rp)
    for v in moved:
        root_of[v] = r
    forest._members[r].update(moved)
    forest._size += 1
    return deleted


def find_feasible_path(forest: ArborescenceForest, g: Digraph,
                       tail: int, head: int) -> FeasiblePath | None:
    """Structured root-to-root path created by inserting arc (tail, head).

    Requires that ``forest`` is a maximum arborescence forest of g minus
    the new arc and that the arc is already present in g.  Returns None
    exactly when no path between two distinct roots exists.

    The target root is forced: any root reachable from ``head`` without
    the new arc already has ``head`` in its arborescence, so only
    ``root_of(head)`` qualifies.  The path enters that arborescence at
    the last vertex outside it -- the arc's tail when the tail lies in a
    different arborescence, otherwise the closest outside vertex with an
    arc into the region of the target arborescence that reaches ``tail``.
    Ties always resolve to the smallest vertex id.
    """
    u, v = tail, head
    aid = g.arc_id(u, v)
    rp = forest.root_of(v)

    dist_to_rp = g.dist_to(rp, skip_arc=aid)
    if dist_to_rp[v] < 0:
        return None
    suffix = kernels.greedy_min_path(
        dist_to_rp, g._first_out, g._next_out, g._heads, v, rp, aid).tolist()

    if forest.root_of(u) != rp:
        # Entry vertex is the arc's tail; its tree path forms the prefix.
        prefix = forest.tree_path_from_root(u)
        mid: list[int] = []
    else:
        # Tail sits inside the target arborescence: look for an outside
        # vertex with an arc into the set of arborescence vertices that
        # reach the tail inside it.
        mask = (forest._root_of == rp).view(np.uint8)
        dist_to_u = kernels.bfs_dist_masked(
            g.n, g._first_in, g._next_in, g._tails, u, aid, mask)
        w, w_dist = kernels.boundary_candidate(
            g.n, g._first_in, g._next_in, g._tails, dist_to_u, mask, aid)
        if w == -1:
            return None
        entry = -1
        for arc in g.out_arcs(w):
            if arc == aid:
                continue
            y = int(g._heads[arc])
            if dist_to_u[y] == w_dist - 1 and (entry == -1 or y < entry):
                entry = y
        prefix = forest.tree_path_from_root(w)
        mid = kernels.greedy_min_path(
            dist_to_u, g._first_out, g._next_out, g._heads,
            entry, u, aid).tolist()

    vertices = tuple(prefix + mid + suffix)
    path = FeasiblePath(vertices=vertices, split_index=len(prefix) - 1)
    _check_path(forest, g, path, aid)
    return path


def _check_path(forest: ArborescenceForest, g: Digraph,
                path: FeasiblePath, aid: int) -> None:
    """Structural feasible-path invariants; raises on any breach."""
    verts = path.vertices
    if len(set(verts)) != len(verts):
        raise ForestInvariantError(f"path revisits a vertex: {verts}")
    r, rp = verts[0], verts[-1]
    if r == rp or not forest.is_root(r) or not forest.is_root(rp):
        raise ForestInvariantError(
            f"path endpoints ({r}, {rp}) are not distinct roots")
    for tail, head in path.arcs:
        if not g.has_arc(tail, head):
            raise ForestInvariantError(f"path arc ({tail}, {head}) missing")
    for i in range(path.split_index):
        if forest.parent(verts[i + 1]) != verts[i]:
            raise ForestInvariantError(
                f"prefix arc ({verts[i]}, {verts[i + 1]}) not a forest arc")
    for i in range(path.split_index + 1, len(verts)):
        if forest.root_of(verts[i]) != rp:
            raise ForestInvariantError(
                f"suffix vertex {verts[i]} outside target arborescence")
