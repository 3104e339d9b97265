# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled graph-search kernels.

All functions operate on the flat linked-adjacency arrays owned by
``arbforest.graph.Digraph``: ``first[v]`` is the first arc id incident to
vertex ``v`` (or -1), ``nxt[a]`` chains to the next arc id, and
``endpoint[a]`` is the far endpoint of arc ``a`` (head for out-adjacency,
tail for in-adjacency).  ``skip_arc`` excludes one arc id from traversal
(-1 to disable).  The pure-Python module ``_kernels_py`` implements the
same contracts.
"""

import numpy as np


def bfs_dist(int n, int[::1] first, int[::1] nxt, int[::1] endpoint,
             int src, int skip_arc):
    """Hop distances from ``src``; -1 marks unreachable vertices."""
    dist_arr = np.full(n, -1, dtype=np.intc)
    queue_arr = np.empty(n, dtype=np.intc)
    cdef int[::1] dist = dist_arr
    cdef int[::1] queue = queue_arr
    cdef int qh = 0, qt = 0, v, a, w
    dist[src] = 0
    queue[qt] = src
    qt += 1
    while qh < qt:
        v = queue[qh]
        qh += 1
        a = first[v]
        while a != -1:
            if a != skip_arc:
                w = endpoint[a]
                if dist[w] == -1:
                    dist[w] = dist[v] + 1
                    queue[qt] = w
                    qt += 1
            a = nxt[a]
    return dist_arr


def bfs_dist_masked(int n, int[::1] first, int[::1] nxt, int[::1] endpoint,
                    int src, int skip_arc, const unsigned char[::1] mask):
    """Like :func:`bfs_dist` but only vertices with ``mask`` set are entered.

    ``src`` must itself be masked.
    """
    dist_arr = np.full(n, -1, dtype=np.intc)
    queue_arr = np.empty(n, dtype=np.intc)
    cdef int[::1] dist = dist_arr
    cdef int[::1] queue = queue_arr
    cdef int qh = 0, qt = 0, v, a, w
    dist[src] = 0
    queue[qt] = src
    qt += 1
    while qh < qt:
        v = queue[qh]
        qh += 1
        a = first[v]
        while a != -1:
            if a != skip_arc:
                w = endpoint[a]
                if mask[w] and dist[w] == -1:
                    dist[w] = dist[v] + 1
                    queue[qt] = w
                    qt += 1
            a = nxt[a]
    return dist_arr


def boundary_candidate(int n, int[::1] first_in, int[::1] next_in,
                       int[::1] tails, int[::1] dist,
                       const unsigned char[::1] mask, int skip_arc):
    """Best unmasked vertex with an arc into the ``dist >= 0`` region.

    Candidates are arcs (w, x) with ``dist[x] >= 0`` and ``mask[w] == 0``;
    the winner minimizes ``(dist[x] + 1, w)``.  Returns ``(w, dist[x] + 1)``
    or ``(-1, -1)`` when no candidate exists.
    """
    cdef int best_w = -1, best_d = -1, x, a, w, d
    for x in range(n):
        if dist[x] < 0:
            continue
        d = dist[x] + 1
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


def greedy_min_path(int[::1] dist, int[::1] first_out, int[::1] next_out,
                    int[::1] heads, int src, int target, int skip_arc):
    """Path ``src -> target`` descending ``dist`` by one per hop.

    ``dist`` must give hop distances to ``target`` (e.g. from a reverse
    BFS).  Ties pick the smallest next-vertex id.  Returns the vertex
    sequence including both endpoints.
    """
    cdef int steps = dist[src]
    path_arr = np.empty(steps + 1, dtype=np.intc)
    cdef int[::1] path = path_arr
    cdef int i, v, a, w, best
    v = src
    path[0] = v
    for i in range(steps):
        best = -1
        a = first_out[v]
        while a != -1:
            if a != skip_arc:
                w = heads[a]
                if dist[w] == dist[v] - 1 and (best == -1 or w < best):
                    best = w
            a = next_out[a]
        if best == -1:
            raise RuntimeError("distance array inconsistent with adjacency")
        v = best
        path[i + 1] = v
    if v != target:
        raise RuntimeError("distance array inconsistent with adjacency")
    return path_arr


def scc_labels(int n, int[::1] first_out, int[::1] next_out, int[::1] heads):
    """Iterative Tarjan; returns (label array, component count).

    Labels are assigned in completion order (reverse topological); the
    caller renumbers them deterministically.
    """
    label_arr = np.full(n, -1, dtype=np.intc)
    cdef int[::1] label = label_arr
    index_arr = np.full(n, -1, dtype=np.intc)
    low_arr = np.empty(n, dtype=np.intc)
    onstack_arr = np.zeros(n, dtype=np.uint8)
    stack_arr = np.empty(n, dtype=np.intc)
    frame_v_arr = np.empty(n, dtype=np.intc)
    frame_a_arr = np.empty(n, dtype=np.intc)
    cdef int[::1] index = index_arr
    cdef int[::1] low = low_arr
    cdef unsigned char[::1] onstack = onstack_arr
    cdef int[::1] stack = stack_arr
    cdef int[::1] frame_v = frame_v_arr
    cdef int[::1] frame_a = frame_a_arr
    cdef int counter = 0, ncomp = 0, sp = 0, fp, s, v, a, w
    cdef bint advanced

    for s in range(n):
        if index[s] != -1:
            continue
        fp = 0
        frame_v[0] = s
        frame_a[0] = first_out[s]
        index[s] = counter
        low[s] = counter
        counter += 1
        stack[sp] = s
        sp += 1
        onstack[s] = 1
        while fp >= 0:
            v = frame_v[fp]
            a = frame_a[fp]
            advanced = False
            while a != -1:
                w = heads[a]
                if index[w] == -1:
                    frame_a[fp] = next_out[a]
                    fp += 1
                    frame_v[fp] = w
                    frame_a[fp] = first_out[w]
                    index[w] = counter
                    low[w] = counter
                    counter += 1
                    stack[sp] = w
                    sp += 1
                    onstack[w] = 1
                    advanced = True
                    break
                if onstack[w] and index[w] < low[v]:
                    low[v] = index[w]
                a = next_out[a]
            if advanced:
                continue
            if low[v] == index[v]:
                while True:
                    w = stack[sp - 1]
                    sp -= 1
                    onstack[w] = 0
                    label[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            fp -= 1
            if fp >= 0:
                w = frame_v[fp]
                if low[v] < low[w]:
                    low[w] = low[v]
    return label_arr, ncomp
