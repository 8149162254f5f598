"""Backtracking kernel for exact magic-labeling search.

One source function drives both execution paths: `backtrack` is the
numba-jitted build (the default) and `backtrack_python` is the identical
routine interpreted over the same numpy arrays.  Set MAGICLAB_NO_JIT=1 (or
NUMBA_DISABLE_JIT=1) before import to select the interpreted path; the two
are bit-for-bit equivalent, including node counts.  The search is the only
hot loop in the package -- everything else is closed-form construction.
"""

from __future__ import annotations

import os

import numpy as np

STATUS_DONE = 0
STATUS_NODE_LIMIT = 1
STATUS_OUT_FULL = 2


def _backtrack_impl(
    indptr,
    nbrs,
    labels,
    have_c,
    c_init,
    prune,
    node_limit,
    stop_after,
    max_out,
):
    """Depth-first search for magic assignments in lexicographic order.

    Vertices are assigned in id order, labels tried in ascending order, so
    accepted assignments appear sorted by the label vector.  `labels` must be
    sorted ascending with len(labels) == order.

    With prune set, a branch dies as soon as a completed neighborhood misses
    the constant or a partial weight can no longer reach it; the constant is
    either supplied (have_c) or fixed by the first completed neighborhood.
    Without prune, full assignments are generated and checked at the leaves
    only -- same results, no shortcuts.

    node_limit < 0 means unlimited; a node is one attempted assignment.
    Recording stops after `stop_after` accepted assignments; if an extra one
    is found once `max_out` are recorded, the walk aborts with
    STATUS_OUT_FULL so the caller can grow the buffer and rerun.

    Returns (status, nodes, count, out) with accepted label vectors packed
    row-major into out[:count*n].
    """
    n = indptr.shape[0] - 1
    out = np.empty(max_out * n, dtype=np.int64)
    used = np.zeros(n, dtype=np.bool_)
    pick = np.full(n, -1, dtype=np.int64)
    cfix = np.zeros(n, dtype=np.bool_)
    w = np.zeros(n, dtype=np.int64)
    rem = np.empty(n, dtype=np.int64)
    for u in range(n):
        rem[u] = indptr[u + 1] - indptr[u]
    c = c_init
    know_c = have_c
    if prune and not know_c:
        # isolated vertices pin the constant to 0 from the start
        for u in range(n):
            if rem[u] == 0:
                c = 0
                know_c = True
                break
    lmin = labels[0]
    lmax = labels[n - 1]
    nodes = 0
    count = 0
    depth = 0
    li = 0
    while True:
        advanced = False
        while li < n:
            if used[li]:
                li += 1
                continue
            nodes += 1
            if node_limit >= 0 and nodes > node_limit:
                return STATUS_NODE_LIMIT, nodes, count, out
            lab = labels[li]
            ok = True
            fixed_here = False
            for k in range(indptr[depth], indptr[depth + 1]):
                u = nbrs[k]
                w[u] += lab
                rem[u] -= 1
            if prune:
                for k in range(indptr[depth], indptr[depth + 1]):
                    u = nbrs[k]
                    if rem[u] == 0:
                        if know_c:
                            if w[u] != c:
                                ok = False
                                break
                        else:
                            c = w[u]
                            know_c = True
                            fixed_here = True
                    elif know_c:
                        if w[u] + rem[u] * lmin > c or w[u] + rem[u] * lmax < c:
                            ok = False
                            break
            if ok:
                pick[depth] = li
                used[li] = True
                cfix[depth] = fixed_here
                advanced = True
                break
            # roll back the failed attempt
            for k in range(indptr[depth], indptr[depth + 1]):
                u = nbrs[k]
                w[u] -= lab
                rem[u] += 1
            if fixed_here:
                know_c = False
            li += 1
        if advanced:
            depth += 1
            li = 0
            if depth == n:
                good = True
                for u in range(1, n):
                    if w[u] != w[0]:
                        good = False
                        break
                if good:
                    if count == max_out:
                        return STATUS_OUT_FULL, nodes, count, out
                    for v in range(n):
                        out[count * n + v] = labels[pick[v]]
                    count += 1
                    if count >= stop_after:
                        return STATUS_DONE, nodes, count, out
                # step back from the leaf
                depth -= 1
                li = pick[depth]
                lab = labels[li]
                for k in range(indptr[depth], indptr[depth + 1]):
                    u = nbrs[k]
                    w[u] -= lab
                    rem[u] += 1
                if cfix[depth]:
                    know_c = False
                used[li] = False
                pick[depth] = -1
                li += 1
        else:
            if depth == 0:
                return STATUS_DONE, nodes, count, out
            depth -= 1
            li = pick[depth]
            lab = labels[li]
            for k in range(indptr[depth], indptr[depth + 1]):
                u = nbrs[k]
                w[u] -= lab
                rem[u] += 1
            if cfix[depth]:
                know_c = False
            used[li] = False
            pick[depth] = -1
            li += 1


backtrack_python = _backtrack_impl


def _jit_enabled() -> bool:
    if os.environ.get("MAGICLAB_NO_JIT", "").strip().lower() in ("1", "true", "yes"):
        return False
    if os.environ.get("NUMBA_DISABLE_JIT", "").strip() == "1":
        return False
    return True


def _build_active():
    if _jit_enabled():
        try:
            from numba import njit

            return njit(cache=True)(_backtrack_impl), "numba"
        except ImportError:
            pass
    return _backtrack_impl, "python"


backtrack, BACKEND = _build_active()
