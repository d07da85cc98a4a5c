"""Interpreted implementations of the search kernels.

Both entry points take the integer encoding built by
:func:`mvtopo.multifun.encode_problem`:

``n_points``
    number of subdivision points, indexed in lexicographic order
``nbr_ptr, nbr_idx``
    CSR lists; the neighbors of point i with a smaller index
``cand_ptr, cand_idx``
    CSR lists; admissible codomain indices for point i, ascending
``block_of``
    base-point index of each subdivision point
``need``
    size of the required point-image of each base point
``n_values, adj_eq``
    codomain size and a flattened n_values x n_values 0/1 matrix of
    the adjacent-or-equal relation
"""

import numpy as np


def _frontier_tables(n_points, nbr_ptr, nbr_idx, block_of, n_blocks):
    """Per position i: assigned points with a neighbor at or after i, and blocks
    with points on both sides of i."""
    last_use = list(range(n_points))
    for j in range(n_points):
        for e in range(nbr_ptr[j], nbr_ptr[j + 1]):
            k = nbr_idx[e]
            if j > last_use[k]:
                last_use[k] = j
    first = [n_points] * n_blocks
    last = [-1] * n_blocks
    for i, b in enumerate(block_of):
        first[b] = min(first[b], i)
        last[b] = max(last[b], i)
    frontier = [[k for k in range(i) if last_use[k] >= i] for i in range(n_points)]
    partial = [[b for b in range(n_blocks) if first[b] < i <= last[b]] for i in range(n_points)]
    return frontier, partial


def search_witness(n_points, nbr_ptr, nbr_idx, cand_ptr, cand_idx, block_of, need, n_values, adj_eq):
    """Lexicographically first continuous assignment covering every block exactly.

    Depth-first in point order, values ascending. A subtree's outcome depends
    only on the frontier values and the coverage of partially assigned
    blocks, so failed states are remembered and never re-explored.
    Returns a list of codomain indices, or None.
    """
    nbr_ptr = [int(v) for v in nbr_ptr]
    nbr_idx = [int(v) for v in nbr_idx]
    cand_ptr = [int(v) for v in cand_ptr]
    cand_idx = [int(v) for v in cand_idx]
    block_of = [int(v) for v in block_of]
    need = [int(v) for v in need]
    adj = [bool(v) for v in adj_eq]
    n_blocks = len(need)

    remaining = [0] * n_blocks
    for b in block_of:
        remaining[b] += 1
    for b in range(n_blocks):
        if need[b] > remaining[b]:
            return None
    covered = [0] * n_blocks
    cov_mask = [0] * n_blocks
    counts = [0] * (n_blocks * n_values)
    frontier, partial = _frontier_tables(n_points, nbr_ptr, nbr_idx, block_of, n_blocks)
    failed = set()
    keys = [None] * n_points

    assign = [-1] * n_points
    pos = list(cand_ptr[:n_points])
    i = 0
    entering = True
    while 0 <= i < n_points:
        b = block_of[i]
        if entering:
            key = (i, tuple(assign[k] for k in frontier[i]), tuple(cov_mask[c] for c in partial[i]))
            keys[i] = key
            entering = False
            if key in failed:
                pos[i] = cand_ptr[i + 1]
        if assign[i] >= 0:
            # undo the previous choice at this level before trying the next
            v = assign[i]
            k = b * n_values + v
            counts[k] -= 1
            if counts[k] == 0:
                covered[b] -= 1
                cov_mask[b] &= ~(1 << v)
            remaining[b] += 1
            assign[i] = -1
        end = cand_ptr[i + 1]
        p = pos[i]
        placed = False
        while p < end:
            v = cand_idx[p]
            p += 1
            row = v * n_values
            ok = True
            for e in range(nbr_ptr[i], nbr_ptr[i + 1]):
                if not adj[row + assign[nbr_idx[e]]]:
                    ok = False
                    break
            if not ok:
                continue
            k = b * n_values + v
            fresh = counts[k] == 0
            if need[b] - covered[b] - fresh > remaining[b] - 1:
                continue
            counts[k] += 1
            if fresh:
                covered[b] += 1
                cov_mask[b] |= 1 << v
            remaining[b] -= 1
            assign[i] = v
            placed = True
            break
        pos[i] = p
        if placed:
            i += 1
            if i < n_points:
                pos[i] = cand_ptr[i]
                entering = True
        else:
            failed.add(keys[i])
            pos[i] = cand_ptr[i]
            i -= 1
    if i < 0:
        return None
    return assign


def enumerate_inducing(n_points, edge_u, edge_v, cand_ptr, cand_idx, block_of, need, n_values, adj_eq, chunk=1 << 16):
    """Exhaustively scan the product of candidate lists for an inducing continuous map.

    No pruning: every assignment in the product is materialized and tested
    against all edges and the exact-coverage condition. Returns True on the
    first hit.
    """
    cand_ptr = np.asarray(cand_ptr, dtype=np.int64)
    cand_idx = np.asarray(cand_idx, dtype=np.int64)
    block_of = np.asarray(block_of, dtype=np.int64)
    need = np.asarray(need, dtype=np.int64)
    eu = np.asarray(edge_u, dtype=np.int64)
    ev = np.asarray(edge_v, dtype=np.int64)
    adj = np.asarray(adj_eq, dtype=bool).reshape(n_values, n_values)
    radix = np.diff(cand_ptr)
    if n_points == 0:
        return bool(np.all(need == 0))
    if np.any(radix == 0):
        return False
    total = int(np.prod(radix, dtype=object))
    n_blocks = len(need)
    # place value of each digit, least significant last
    weights = np.ones(n_points, dtype=object)
    for i in range(n_points - 2, -1, -1):
        weights[i] = weights[i + 1] * int(radix[i + 1])
    weights = weights.astype(np.int64)
    start = 0
    while start < total:
        stop = min(total, start + chunk)
        codes = np.arange(start, stop, dtype=np.int64)
        digits = (codes[:, None] // weights[None, :]) % radix[None, :]
        values = cand_idx[cand_ptr[:-1][None, :] + digits]
        ok = np.ones(len(codes), dtype=bool)
        if len(eu):
            ok &= adj[values[:, eu], values[:, ev]].all(axis=1)
        if ok.any():
            vals = values[ok]
            present = np.zeros((len(vals), n_blocks, n_values), dtype=bool)
            rows = np.repeat(np.arange(len(vals)), n_points)
            present[rows, np.tile(block_of, len(vals)), vals.ravel()] = True
            distinct = present.sum(axis=2)
            if np.any((distinct == need[None, :]).all(axis=1)):
                return True
        start = stop
    return False
