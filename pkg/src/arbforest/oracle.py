"""Independent correctness oracles for maximum arborescence forests.

Three routes that never share code with the incremental engine: a
closed-form cardinality count from the condensation's source components,
an exhaustive search over parent assignments for tiny graphs, and a
direct no-root-reaches-another-root maximality test.
"""

from __future__ import annotations

import numpy as np

from .forest import ArborescenceForest
from .graph import Digraph

BRUTE_FORCE_LIMIT = 10


def max_forest_cardinality(g: Digraph) -> int:
    """Maximum forest size: n minus the number of source components.

    Every source component of the condensation must contain a root (its
    vertices are reachable only from inside), and picking one root per
    source component always extends to a spanning forest of that size.
    """
    return g.n - len(g.scc().source_components)


def _parent_choice_search(g: Digraph, count_all: bool):
    """Enumerate per-vertex parent choices, pruning undirected cycles.

    Returns (best_size, best_parents, number_of_maximum_forests); the
    count is exact only when ``count_all`` disables the cardinality
    bound prune.
    """
    n = g.n
    in_lists = [g.in_neighbors(v) for v in range(n)]
    dsu_parent = list(range(n))
    dsu_size = [1] * n

    def find(x: int) -> int:
        while dsu_parent[x] != x:
            x = dsu_parent[x]
        return x

    best_size = -1
    best_parents: list[int] = []
    best_count = 0
    parents = [-1] * n
    undo: list[tuple[int, int]] = []

    def rec(v: int, used: int) -> None:
        nonlocal best_size, best_parents, best_count
        if v == n:
            if used > best_size:
                best_size = used
                best_parents = parents.copy()
                best_count = 1
            elif used == best_size:
                best_count += 1
            return
        if not count_all and used + (n - v) <= best_size:
            return
        for p in in_lists[v]:
            rp, rv = find(p), find(v)
            if rp == rv:
                continue  # undirected cycle
            if dsu_size[rp] < dsu_size[rv]:
                rp, rv = rv, rp
            dsu_parent[rv] = rp
            dsu_size[rp] += dsu_size[rv]
            undo.append((rv, rp))
            parents[v] = p
            rec(v + 1, used + 1)
            parents[v] = -1
            child, root = undo.pop()
            dsu_size[root] -= dsu_size[child]
            dsu_parent[child] = child
        rec(v + 1, used)

    rec(0, 0)
    return best_size, best_parents, best_count


def brute_force_max_forest(g: Digraph) -> tuple[int, ArborescenceForest]:
    """Exhaustive maximum forest for tiny graphs (ground truth).

    Every vertex independently picks one in-arc or none; assignments
    closing an undirected cycle are pruned.  Rejects n above
    ``BRUTE_FORCE_LIMIT``.
    """
    if g.n > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"brute force limited to n <= {BRUTE_FORCE_LIMIT}, got {g.n}")
    size, parents, _ = _parent_choice_search(g, count_all=False)
    witness = ArborescenceForest.from_arcs(
        g.n, [(p, v) for v, p in enumerate(parents) if p != -1])
    return size, witness


def brute_force_count_maximum(g: Digraph) -> tuple[int, int]:
    """Maximum forest size and the exact number of maximum forests."""
    if g.n > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"brute force limited to n <= {BRUTE_FORCE_LIMIT}, got {g.n}")
    size, _, count = _parent_choice_search(g, count_all=True)
    return size, count


def has_root_to_root_path(g: Digraph, roots) -> bool:
    """True when some root reaches a different one of the given roots."""
    roots = sorted(roots)
    root_mask = np.zeros(g.n, dtype=bool)
    root_mask[roots] = True
    for r in roots:
        dist = g.dist_from(r)
        reached = (dist >= 0) & root_mask
        reached[r] = False
        if reached.any():
            return True
    return False


def is_maximum(forest: ArborescenceForest, g: Digraph) -> bool:
    """Maximality test: no root of the forest reaches another root."""
    problems = forest.validate(g)
    if problems:
        raise ValueError("invalid forest: " + "; ".join(problems))
    return not has_root_to_root_path(g, forest.roots())
