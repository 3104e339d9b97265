"""Pure-Python twins of the compiled kernels in ``_kernels.pyx``.

Same signatures, same return types (numpy arrays with C ``int`` dtype),
bit-identical results.  Used when the extension is not built or when
``ARBFOREST_PURE`` is set; the parity test suite compares both backends.
"""

import numpy as np


def bfs_dist(n, first, nxt, endpoint, src, skip_arc):
    """Hop distances from ``src``; -1 marks unreachable vertices."""
    first = first.tolist()
    nxt = nxt.tolist()
    endpoint = endpoint.tolist()
    dist = [-1] * n
    dist[src] = 0
    queue = [src]
    qh = 0
    while qh < len(queue):
        v = queue[qh]
        qh += 1
        a = first[v]
        while a != -1:
            if a != skip_arc:
                w = endpoint[a]
                if dist[w] == -1:
                    dist[w] = dist[v] + 1
                    queue.append(w)
            a = nxt[a]
    return np.asarray(dist, dtype=np.intc)


def bfs_dist_masked(n, first, nxt, endpoint, src, skip_arc, mask):
    """Like :func:`bfs_dist` but only vertices with ``mask`` set are entered."""
    first = first.tolist()
    nxt = nxt.tolist()
    endpoint = endpoint.tolist()
    mask = mask.tolist()
    dist = [-1] * n
    dist[src] = 0
    queue = [src]
    qh = 0
    while qh < len(queue):
        v = queue[qh]
        qh += 1
        a = first[v]
        while a != -1:
            if a != skip_arc:
                w = endpoint[a]
                if mask[w] and dist[w] == -1:
                    dist[w] = dist[v] + 1
                    queue.append(w)
            a = nxt[a]
    return np.asarray(dist, dtype=np.intc)


def boundary_candidate(n, first_in, next_in, tails, dist, mask, skip_arc):
    """Best unmasked vertex with an arc into the ``dist >= 0`` region.

    Minimizes ``(dist[x] + 1, w)`` over arcs (w, x) with ``dist[x] >= 0``
    and ``mask[w] == 0``; returns ``(-1, -1)`` when no candidate exists.
    """
    first_in = first_in.tolist()
    next_in = next_in.tolist()
    tails = tails.tolist()
    dist_l = dist.tolist()
    mask = mask.tolist()
    best_w = -1
    best_d = -1
    for x in range(n):
        if dist_l[x] < 0:
            continue
        d = dist_l[x] + 1
        a = first_in[x]
        while a != -1:
            if a != skip_arc:
                w = tails[a]
                if not mask[w]:
                    if best_w == -1 or d < best_d or (d == best_d and w < best_w):
                        best_w = w
                        best_d = d
            a = next_in[a]
    return best_w, best_d


def greedy_min_path(dist, first_out, next_out, heads, src, target, skip_arc):
    """Path ``src -> target`` descending ``dist`` by one per hop.

    Ties pick the smallest next-vertex id; both endpoints included.
    """
    dist_l = dist.tolist()
    first_out = first_out.tolist()
    next_out = next_out.tolist()
    heads = heads.tolist()
    steps = dist_l[src]
    path = [src]
    v = src
    for _ in range(steps):
        best = -1
        a = first_out[v]
        while a != -1:
            if a != skip_arc:
                w = heads[a]
                if dist_l[w] == dist_l[v] - 1 and (best == -1 or w < best):
                    best = w
            a = next_out[a]
        if best == -1:
            raise RuntimeError("distance array inconsistent with adjacency")
        v = best
        path.append(v)
    if v != target:
        raise RuntimeError("distance array inconsistent with adjacency")
    return np.asarray(path, dtype=np.intc)


def scc_labels(n, first_out, next_out, heads):
    """Iterative Tarjan; returns (label array, component count)."""
    first_out = first_out.tolist()
    next_out = next_out.tolist()
    heads = heads.tolist()
    label = [-1] * n
    index = [-1] * n
    low = [0] * n
    onstack = [False] * n
    stack = []
    counter = 0
    ncomp = 0
    for s in range(n):
        if index[s] != -1:
            continue
        frames = [(s, first_out[s])]
        index[s] = low[s] = counter
        counter += 1
        stack.append(s)
        onstack[s] = True
        while frames:
            v, a = frames[-1]
            advanced = False
            while a != -1:
                w = heads[a]
                if index[w] == -1:
                    frames[-1] = (v, next_out[a])
                    frames.append((w, first_out[w]))
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    onstack[w] = True
                    advanced = True
                    break
                if onstack[w] and index[w] < low[v]:
                    low[v] = index[w]
                a = next_out[a]
            if advanced:
                continue
            frames.pop()
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    onstack[w] = False
                    label[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            if frames:
                p = frames[-1][0]
                if low[v] < low[p]:
                    low[p] = low[v]
    return np.asarray(label, dtype=np.intc), ncomp
