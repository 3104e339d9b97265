"""Min-cost spanning arborescences: solvers, dual certificates, adversary.

Three independent solution routes: an exhaustive search for tiny
instances, the classic recursive-contraction algorithm, and a
tree-improvement algorithm that grows a laminar dual packing certifying
optimality via LP duality.  Plus the 0/1-weight adversarial instance
whose insertions force quadratic recourse, and an incremental
re-solve runner that measures it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graph import Digraph

BRUTE_FORCE_LIMIT = 8
_TOL = 1e-9


class CertificationError(RuntimeError):
    """The certificate algorithm could not certify optimality."""


class WeightedDigraph:
    """Digraph with nonnegative integer arc weights and a designated root."""

    def __init__(self, n: int, root: int = 0):
        if not 0 <= root < n:
            raise ValueError(f"root {root} out of range [0, {n})")
        self.graph = Digraph(n)
        self.root = root
        self.weights: list[int] = []

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    def add_arc(self, tail: int, head: int, weight: int) -> None:
        if weight < 0:
            raise ValueError(f"negative weight {weight} on ({tail}, {head})")
        if self.graph.add_arc(tail, head):
            raise ValueError(f"parallel arc ({tail}, {head}) rejected")
        self.weights.append(weight)

    def weight_of(self, tail: int, head: int) -> int:
        return self.weights[self.graph.arc_id(tail, head)]

    def arcs_with_weights(self) -> list[tuple[int, int, int]]:
        return [(t, h, w) for (t, h), w in
                zip(self.graph.arcs(), self.weights)]

    def unreachable(self) -> set[int]:
        return set(range(self.n)) - self.graph.reachable_set(self.root)

    def cost_of(self, arcs) -> int:
        return sum(self.weight_of(t, h) for t, h in arcs)


@dataclass(frozen=True)
class DualPacking:
    """Vertex sets with nonnegative multipliers packing arc costs."""

    entries: tuple[tuple[frozenset, float], ...]

    @property
    def value(self) -> float:
        return sum(mult for _, mult in self.entries)

    def is_laminar(self) -> bool:
        sets = [s for s, _ in self.entries]
        for a, b in itertools.combinations(sets, 2):
            inter = a & b
            if inter and inter != a and inter != b:
                return False
        return True

    def reduced_cost(self, tail: int, head: int, weight: float) -> float:
        return weight - sum(mult for s, mult in self.entries
                            if head in s and tail not in s)


@dataclass(frozen=True)
class CertifiedArborescence:
    arcs: frozenset
    cost: int
    packing: DualPacking
    restarts: int


def _require_spanning(gw: WeightedDigraph) -> None:
    missing = gw.unreachable()
    if missing:
        raise ValueError(
            f"vertices unreachable from root {gw.root}: {sorted(missing)}")


def brute_force_min_arborescence(gw: WeightedDigraph):
    """Exhaustive minimum over all parent assignments (tiny n only)."""
    if gw.n > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"brute force limited to n <= {BRUTE_FORCE_LIMIT}, got {gw.n}")
    _require_spanning(gw)
    n, root = gw.n, gw.root
    others = [v for v in range(n) if v != root]
    choices = [gw.graph.in_arcs(v) for v in others]
    best_cost = None
    best_arcs = None
    for combo in itertools.product(*choices):
        parent = {}
        cost = 0
        for v, arc in zip(others, combo):
            t, _ = gw.graph.arc(arc)
            parent[v] = t
            cost += gw.weights[arc]
        if best_cost is not None and cost >= best_cost:
            continue
        ok = True
        for v in others:
            x, hops = v, 0
            while x != root:
                x = parent[x]
                hops += 1
                if hops > n:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            best_cost = cost
            best_arcs = frozenset((parent[v], v) for v in others)
    return best_arcs, best_cost


def chu_liu_edmonds(gw: WeightedDigraph):
    """Classic recursive-contraction minimum arborescence (oracle route)."""
    _require_spanning(gw)
    n, root = gw.n, gw.root
    if n == 1:
        return frozenset(), 0
    arcs = [(t, h, w, i) for i, (t, h, w) in enumerate(gw.arcs_with_weights())]
    nodes = list(range(n))
    next_id = n
    chosen = _cle_solve(nodes, arcs, root, next_id)
    result = frozenset(gw.graph.arc(i) for i in chosen)
    return result, gw.cost_of(result)


def _cle_solve(nodes, arcs, root, next_id):
    best = {}
    for t, h, w, idx in arcs:
        if h == root or t == h:
            continue
        cur = best.get(h)
        if cur is None or (w, t) < (cur[0], cur[1]):
            best[h] = (w, t, idx)
    cycle = None
    visited = {}
    for mark, start in enumerate(nodes):
        if start == root or start in visited:
            continue
        x = start
        while x != root and x in best and visited.setdefault(x, mark) == mark:
            nxt = best[x][1]
            if nxt in visited and visited[nxt] == mark:
                cyc = [nxt]
                y = best[nxt][1]
                while y != nxt:
                    cyc.append(y)
                    y = best[y][1]
                cycle = cyc
                break
            x = nxt
        if cycle:
            break
    if cycle is None:
        return [idx for _, _, idx in best.values()]

    cyc_set = set(cycle)
    cid = next_id
    new_nodes = [v for v in nodes if v not in cyc_set] + [cid]
    new_arcs = []
    mapping = {}
    for pos, (t, h, w, idx) in enumerate(arcs):
        tin, hin = t in cyc_set, h in cyc_set
        if tin and hin:
            continue
        key = len(new_arcs)
        if hin:
            new_arcs.append((t, cid, w - best[h][0], key))
            mapping[key] = (idx, h)
        elif tin:
            new_arcs.append((cid, h, w, key))
            mapping[key] = (idx, None)
        else:
            new_arcs.append((t, h, w, key))
            mapping[key] = (idx, None)
    sub = _cle_solve(new_nodes, new_arcs, root, next_id + 1)
    chosen = []
    entered = None
    for key in sub:
        idx, displaced = mapping[key]
        chosen.append(idx)
        if displaced is not None:
            entered = displaced
    for h in cycle:
        if h != entered:
            chosen.append(best[h][2])
    return chosen


# -- certificate algorithm ---------------------------------------------------

def _bfs_arborescence(gw: WeightedDigraph) -> dict[int, int]:
    """Initial spanning arborescence: BFS tree from the root."""
    parent: dict[int, int] = {}
    queue = [gw.root]
    seen = {gw.root}
    qh = 0
    while qh < len(queue):
        v = queue[qh]
        qh += 1
        for arc in gw.graph.out_arcs(v):
            _, h = gw.graph.arc(arc)
            if h not in seen:
                seen.add(h)
                parent[h] = v
                queue.append(h)
    return parent


def _parent_cost(gw: WeightedDigraph, parent: dict[int, int]) -> int:
    return sum(gw.weight_of(p, v) for v, p in parent.items())


def _bottom_up_order(gw: WeightedDigraph, parent: dict[int, int]) -> list[int]:
    depth = {gw.root: 0}
    pending = sorted(parent)
    while pending:
        rest = []
        for v in pending:
            if parent[v] in depth:
                depth[v] = depth[parent[v]] + 1
            else:
                rest.append(v)
        pending = rest
    return sorted(parent, key=lambda v: (-depth[v], v))


def _subtree(children: dict[int, list[int]], v: int) -> set[int]:
    out = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for c in children.get(x, ()):
            out.add(c)
            stack.append(c)
    return out


def _zero_dist_set(gw: WeightedDigraph, reduced, subtree: set[int],
                   v: int) -> set[int]:
    """Vertices of the subtree reaching v at zero reduced cost within it."""
    region = {v}
    queue = [v]
    qh = 0
    while qh < len(queue):
        y = queue[qh]
        qh += 1
        for arc in gw.graph.in_arcs(y):
            x, _ = gw.graph.arc(arc)
            if x in subtree and x not in region and reduced[arc] == 0:
                region.add(x)
                queue.append(x)
    return region


def _maximal_proper_subsets(family, t: frozenset):
    proper = [(s, sr) for s, sr in family if s < t]
    return [(s, sr) for s, sr in proper
            if not any(s < bigger for bigger, _ in proper)]


def _rehang(gw: WeightedDigraph, reduced, family, t: frozenset,
            subroot: int, entry: int, parent: dict[int, int]) -> None:
    """Re-root set ``t`` at ``entry`` along zero-reduced arcs.

    Contract the maximal proper family subsets of ``t``, walk a
    zero-cost contracted path from the entry's node to the old
    subroot's node, then recursively re-root every entered node.  Nodes
    off the path keep their current entering arc and interior, so every
    inner set stays entered exactly once and the rewiring is free at
    current reduced costs.
    """
    if len(t) == 1:
        return
    nodes: list[tuple[frozenset, int]] = []
    node_of: dict[int, int] = {}
    for s, sr in _maximal_proper_subsets(family, t):
        for x in s:
            node_of[x] = len(nodes)
        nodes.append((s, sr))
    for x in sorted(t):
        if x not in node_of:
            node_of[x] = len(nodes)
            nodes.append((frozenset((x,)), x))
    adj: list[list[tuple[int, int, int]]] = [[] for _ in nodes]
    for x in sorted(t):
        for arc in gw.graph.out_arcs(x):
            _, z = gw.graph.arc(arc)
            if z in t and reduced[arc] == 0 and node_of[x] != node_of[z]:
                adj[node_of[x]].append((node_of[z], x, z))
    for lst in adj:
        lst.sort(key=lambda item: (item[1], item[2]))
    start, goal = node_of[entry], node_of[subroot]
    pred: dict[int, tuple[int, int, int] | None] = {start: None}
    queue = [start]
    qh = 0
    while qh < len(queue) and goal not in pred:
        cur = queue[qh]
        qh += 1
        for nxt, x, z in adj[cur]:
            if nxt not in pred:
                pred[nxt] = (cur, x, z)
                queue.append(nxt)
    if goal not in pred:
        raise CertificationError(
            f"no zero-cost contracted path to subroot {subroot}")
    chain = []
    cur = goal
    while pred[cur] is not None:
        prev, x, z = pred[cur]
        chain.append((cur, x, z))
        cur = prev
    chain.reverse()
    s0, sr0 = nodes[start]
    _rehang(gw, reduced, family, s0, sr0, entry, parent)
    for node_idx, x, z in chain:
        parent[z] = x
        s, sr = nodes[node_idx]
        _rehang(gw, reduced, family, s, sr, z, parent)


def min_arborescence_with_certificate(
        gw: WeightedDigraph, candidate_rule: str = "arc",
        max_restarts: int | None = None) -> CertifiedArborescence:
    """Improve a spanning arborescence until a dual packing certifies it.

    Processes vertices bottom-up; for each, grows a zero-reduced-cost
    set inside its subtree and lowers entering arcs until the parent arc
    is tight, switching the subtree onto any arc driven negative and
    restarting with original costs.  ``candidate_rule`` selects what may
    set the lowering step: "arc" admits arcs from inside the subtree
    plus the parent arc itself; "tail" admits any arc whose source is
    inside the subtree or is the parent vertex.  The "tail" rule can
    stall on a zero-valued candidate, which raises CertificationError.
    """
    if candidate_rule not in ("arc", "tail"):
        raise ValueError(f"unknown candidate rule {candidate_rule!r}")
    _require_spanning(gw)
    parent = _bfs_arborescence(gw)
    cost = _parent_cost(gw, parent)
    if max_restarts is None:
        max_restarts = cost + gw.n + 2
    restarts = 0
    while True:
        outcome, payload = _sweep(gw, parent, candidate_rule)
        if outcome == "done":
            arcs = frozenset((p, v) for v, p in parent.items())
            packing = DualPacking(entries=tuple(payload))
            result = CertifiedArborescence(
                arcs=arcs, cost=cost, packing=packing, restarts=restarts)
            ok, problems = verify_dual_certificate(gw, arcs, packing)
            if not ok:
                raise CertificationError(
                    "final state fails certification: " + "; ".join(problems))
            return result
        parent = payload
        new_cost = _parent_cost(gw, parent)
        if new_cost >= cost:
            raise CertificationError(
                f"restart did not decrease cost ({cost} -> {new_cost})")
        cost = new_cost
        restarts += 1
        if restarts > max_restarts:
            raise CertificationError("restart limit exceeded")


def _sweep(gw: WeightedDigraph, parent: dict[int, int], rule: str):
    """One bottom-up pass; returns ('done', packing) or ('improved', parent)."""
    children: dict[int, list[int]] = {}
    for v, p in parent.items():
        children.setdefault(p, []).append(v)
    reduced = list(gw.weights)
    packing: list[tuple[frozenset, int]] = []
    for v in _bottom_up_order(gw, parent):
        par_arc = gw.graph.arc_id(parent[v], v)
        subtree = None
        while reduced[par_arc] > 0:
            if subtree is None:
                subtree = _subtree(children, v)
            region = _zero_dist_set(gw, reduced, subtree, v)
            lower = None
            entering = []
            for y in region:
                for arc in gw.graph.in_arcs(y):
                    x, _ = gw.graph.arc(arc)
                    if x in region:
                        continue
                    entering.append(arc)
                    if x in subtree or (rule == "arc" and arc == par_arc) \
                            or (rule == "tail" and x == parent[v]):
                        if lower is None or reduced[arc] < lower:
                            lower = reduced[arc]
            if lower is None or lower <= 0:
                raise CertificationError(
                    f"stalled at vertex {v}: no positive-valued candidate")
            packing.append((frozenset(region), lower))
            negative = None
            for arc in entering:
                reduced[arc] -= lower
                if reduced[arc] < 0:
                    x, y = gw.graph.arc(arc)
                    key = (reduced[arc], x, y)
                    if negative is None or key < negative[0]:
                        negative = (key, arc)
            if negative is not None:
                new_parent = dict(parent)
                u, u1 = gw.graph.arc(negative[1])
                path = _zero_path(gw, reduced, subtree, u1, v)
                prev = u
                for y in path:
                    new_parent[y] = prev
                    prev = y
                return "improved", new_parent
    return "done", packing


def verify_dual_certificate(gw: WeightedDigraph, arcs,
                            packing: DualPacking):
    """Check a (tree, packing) pair; returns (ok, diagnostics).

    Certifies optimality when: the tree is a spanning root-arborescence
    of existing arcs; the packing is laminar with nonnegative
    multipliers over root-free sets; every arc's reduced cost is
    nonnegative; every tree arc's reduced cost is zero; and the packing
    value equals the tree cost.
    """
    problems = []
    arcs = set(arcs)
    parent: dict[int, int] = {}
    for t, h in arcs:
        if not gw.graph.has_arc(t, h):
            problems.append(f"tree arc ({t}, {h}) not in digraph")
        elif h in parent:
            problems.append(f"tree vertex {h} has two parents")
        else:
            parent[h] = t
    if set(parent) != set(range(gw.n)) - {gw.root}:
        problems.append("tree is not spanning with the designated root")
    else:
        for v in parent:
            x, hops = v, 0
            while x != gw.root and hops <= gw.n:
                x = parent[x]
                hops += 1
            if x != gw.root:
                problems.append(f"tree contains a cycle through {v}")
                break
    for s, mult in packing.entries:
        if mult < 0:
            problems.append(f"negative multiplier {mult} on {sorted(s)}")
        if gw.root in s:
            problems.append(f"packing set {sorted(s)} contains the root")
        if not s or not all(0 <= x < gw.n for x in s):
            problems.append(f"packing set {sorted(s)} out of range")
    if not packing.is_laminar():
        problems.append("packing family is not laminar")
    for t, h, w in gw.arcs_with_weights():
        rc = packing.reduced_cost(t, h, w)
        if rc < -_TOL:
            problems.append(f"arc ({t}, {h}) has negative reduced cost {rc}")
        elif (t, h) in arcs and abs(rc) > _TOL:
            problems.append(f"tree arc ({t}, {h}) not tight: reduced {rc}")
    if not problems:
        cost = gw.cost_of(arcs)
        if abs(packing.value - cost) > _TOL:
            problems.append(
                f"packing value {packing.value} != tree cost {cost}")
    return not problems, problems


# -- adversarial instance ----------------------------------------------------

@dataclass(frozen=True)
class TriangleInstance:
    """0/1-weight triangle whose insertions keep flipping the bottom.

    Vertices: apex 0; left side 1..k descending; right side k+1..2k
    descending; bottom interior 2k+1..3k-1 between the two corners k and
    2k.  The initial weight-1 graph is the unique spanning arborescence
    (sides down, spokes to the bottom).  Weight-0 insertions first build
    the bottom in both directions, then climb the sides alternately so
    that every second arc makes the opposite bottom orientation strictly
    cheaper, flipping about n/3 arcs of the unique optimum each time.
    """

    n: int
    root: int
    initial: list[tuple[int, int, int]]
    insertions: list[tuple[int, int, int]]

    @property
    def all_arcs(self) -> list[tuple[int, int, int]]:
        return self.initial + self.insertions


def triangle_adversary(n: int) -> TriangleInstance:
    if n < 9 or n % 3:
        raise ValueError(f"triangle adversary needs n >= 9 divisible by 3, got {n}")
    k = n // 3
    left = list(range(1, k + 1))           # L1..Lk, corner Lk = k
    right = list(range(k + 1, 2 * k + 1))  # R1..Rk, corner Rk = 2k
    bottom = list(range(2 * k + 1, 3 * k))  # B1..B(k-1)

    initial = [(0, left[0], 1), (0, right[0], 1)]
    initial += [(left[i], left[i + 1], 1) for i in range(k - 1)]
    initial += [(right[i], right[i + 1], 1) for i in range(k - 1)]
    initial += [(0, b, 1) for b in bottom]

    ins: list[tuple[int, int, int]] = []
    # Bottom, corner to corner, left-to-right; each swap costs one arc.
    ins.append((left[-1], bottom[0], 0))
    ins += [(bottom[i], bottom[i + 1], 0) for i in range(k - 2)]
    ins.append((bottom[-1], right[-1], 0))
    # Reverse direction, except the final hop onto the left corner.
    ins.append((right[-1], bottom[-1], 0))
    ins += [(bottom[i + 1], bottom[i], 0) for i in reversed(range(k - 2))]
    # First left climb arc, then the corner hop: strict flip to leftward.
    ins.append((left[-1], left[-2], 0))
    ins.append((bottom[0], left[-1], 0))
    # Climb arcs near-to-far; pairs of two keep the savings alternating.
    climb_r = [(right[-1 - i], right[-2 - i], 0) for i in range(k - 1)]
    climb_l = [(left[-1 - i], left[-2 - i], 0) for i in range(k - 1)]
    r_next, l_next = 0, 1
    turn_right = True
    while True:
        if turn_right:
            if r_next + 1 >= len(climb_r):
                if l_next + 1 >= len(climb_l):
                    break
            else:
                ins.append(climb_r[r_next + 1])
                ins.append(climb_r[r_next])
                r_next += 2
            turn_right = False
        else:
            if l_next + 1 >= len(climb_l):
                if r_next + 1 >= len(climb_r):
                    break
            else:
                ins.append(climb_l[l_next + 1])
                ins.append(climb_l[l_next])
                l_next += 2
            turn_right = True
    return TriangleInstance(n=n, root=0, initial=initial, insertions=ins)


def incremental_recourse(n: int, root: int, arc_rows, num_initial: int = 0,
                         solver=chu_liu_edmonds):
    """Re-solve after each insertion; recourse between consecutive optima.

    ``arc_rows`` yields (tail, head, weight).  The first ``num_initial``
    rows form the starting graph; counting begins at the first prefix
    admitting a spanning arborescence.  Returns (total recourse, list of
    per-step change counts aligned with the inserted rows).
    """
    gw = WeightedDigraph(n, root)
    rows = list(arc_rows)
    for t, h, w in rows[:num_initial]:
        gw.add_arc(t, h, w)
    prev = None
    if not gw.unreachable():
        prev, _ = solver(gw)
    total = 0
    per_step = []
    for t, h, w in rows[num_initial:]:
        gw.add_arc(t, h, w)
        if gw.unreachable():
            per_step.append(0)
            continue
        cur, _ = solver(gw)
        changed = len(cur - prev) if prev is not None else 0
        per_step.append(changed)
        total += changed
        prev = cur
    return total, per_step
