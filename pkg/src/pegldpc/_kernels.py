"""Compiled graph traversals used on the construction and analysis hot paths."""

import numpy as np
from numba import njit

STOP_SATURATED = 0
STOP_COMPLEMENT_VANISHES = 1
STOP_DEPTH_CAP = 2
STOP_EXHAUSTED = 3


@njit(cache=True)
def expand_checks(root, sym_nbr, sym_cnt, chk_nbr, chk_cnt, n_checks, max_depth):
    """Breadth-first tree from a symbol node, reporting the depth each check is reached at.

    Depth 0 holds the checks adjacent to ``root``.  Returns ``(check_depth,
    final_depth, stop_code)`` where the candidate ensemble is every check with
    ``check_depth == -1`` or ``check_depth > final_depth``.
    """
    n_sym = sym_cnt.shape[0]
    depth = np.full(n_checks, -1, np.int32)
    sym_seen = np.zeros(n_sym, np.bool_)
    sym_seen[root] = True
    frontier = np.empty(n_checks, np.int32)
    nxt = np.empty(n_checks, np.int32)
    nf = 0
    for t in range(sym_cnt[root]):
        c = sym_nbr[root, t]
        depth[c] = 0
        frontier[nf] = c
        nf += 1
    reached = nf
    if reached == n_checks:
        return depth, 0, STOP_EXHAUSTED
    level = 0
    while True:
        if max_depth >= 0 and level >= max_depth:
            return depth, level, STOP_DEPTH_CAP
        nn = 0
        for a in range(nf):
            c = frontier[a]
            for b in range(chk_cnt[c]):
                s = chk_nbr[c, b]
                if sym_seen[s]:
                    continue
                sym_seen[s] = True
                for t in range(sym_cnt[s]):
                    c2 = sym_nbr[s, t]
                    if depth[c2] < 0:
                        depth[c2] = level + 1
                        nxt[nn] = c2
                        nn += 1
        if nn == 0:
            return depth, level, STOP_SATURATED
        reached += nn
        if reached == n_checks:
            return depth, level, STOP_COMPLEMENT_VANISHES
        for a in range(nn):
            frontier[a] = nxt[a]
        nf = nn
        level += 1


@njit(cache=True)
def _local_girth(root, ptr, idx, bound, dist, branch, parent, queue):
    # dist/branch/parent must be -1 everywhere on entry and are restored on exit
    best = bound
    head = 0
    tail = 1
    queue[0] = root
    dist[root] = 0
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u]
        if 2 * du + 1 >= best:
            break
        for e in range(ptr[u], ptr[u + 1]):
            v = idx[e]
            if v == parent[u]:
                continue
            if dist[v] < 0:
                dist[v] = du + 1
                parent[v] = u
                branch[v] = v if u == root else branch[u]
                queue[tail] = v
                tail += 1
            elif v != root and branch[v] != branch[u]:
                length = du + dist[v] + 1
                if length < best:
                    best = length
    for i in range(tail):
        w = queue[i]
        dist[w] = -1
        branch[w] = -1
        parent[w] = -1
    return best


@njit(cache=True)
def local_girths(roots, ptr, idx, bound, running_min):
    """Shortest cycle through each root (``bound`` means none shorter than bound).

    With ``running_min`` the bound tightens as cycles are found, which is
    enough for the global girth but leaves per-root values as upper bounds.
    """
    n_nodes = ptr.shape[0] - 1
    dist = np.full(n_nodes, -1, np.int64)
    branch = np.full(n_nodes, -1, np.int64)
    parent = np.full(n_nodes, -1, np.int64)
    queue = np.empty(n_nodes, np.int64)
    out = np.empty(roots.shape[0], np.int64)
    cur = bound
    for i in range(roots.shape[0]):
        g = _local_girth(roots[i], ptr, idx, cur if running_min else bound, dist, branch, parent, queue)
        out[i] = g
        if g < cur:
            cur = g
    return out
