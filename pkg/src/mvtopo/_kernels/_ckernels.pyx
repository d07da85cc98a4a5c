# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels. Same contract as :mod:`mvtopo._kernels._pure`."""

from libc.stdlib cimport malloc, calloc, free
from libcpp.string cimport string
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector


cdef inline void _push_int(string& key, int v) noexcept nogil:
    key.append(<char*> &v, sizeof(int))


def search_witness(int n_points, const int[::1] nbr_ptr, const int[::1] nbr_idx,
                   const int[::1] cand_ptr, const int[::1] cand_idx,
                   const int[::1] block_of, const int[::1] need,
                   int n_values, const unsigned char[::1] adj_eq):
    cdef int n_blocks = need.shape[0]
    cdef int i, j, b, v, k, p, e, end, row, fresh, placed, ok, entering
    cdef int nb = n_blocks if n_blocks > 0 else 1
    cdef int npt = n_points if n_points > 0 else 1
    cdef int *remaining = <int *> calloc(nb, sizeof(int))
    cdef int *covered = <int *> calloc(nb, sizeof(int))
    cdef int *first = <int *> malloc(nb * sizeof(int))
    cdef int *last = <int *> malloc(nb * sizeof(int))
    cdef int *counts = <int *> calloc(nb * (n_values if n_values > 0 else 1), sizeof(int))
    cdef int *assign = <int *> malloc(npt * sizeof(int))
    cdef int *pos = <int *> malloc(npt * sizeof(int))
    cdef int *last_use = <int *> malloc(npt * sizeof(int))
    cdef vector[vector[int]] frontier
    cdef vector[vector[int]] partial
    cdef vector[string] keys
    cdef unordered_set[string] failed
    cdef string key
    if not (remaining and covered and first and last and counts and assign and pos and last_use):
        free(remaining); free(covered); free(first); free(last); free(counts)
        free(assign); free(pos); free(last_use)
        raise MemoryError()
    try:
        with nogil:
            frontier.resize(n_points)
            partial.resize(n_points)
            keys.resize(n_points)
            for b in range(n_blocks):
                first[b] = n_points
                last[b] = -1
            for i in range(n_points):
                last_use[i] = i
                b = block_of[i]
                remaining[b] += 1
                if i < first[b]:
                    first[b] = i
                if i > last[b]:
                    last[b] = i
                assign[i] = -1
                pos[i] = cand_ptr[i]
            for j in range(n_points):
                for e in range(nbr_ptr[j], nbr_ptr[j + 1]):
                    k = nbr_idx[e]
                    if j > last_use[k]:
                        last_use[k] = j
            for i in range(n_points):
                for k in range(i):
                    if last_use[k] >= i:
                        frontier[i].push_back(k)
                for b in range(n_blocks):
                    if first[b] < i and i <= last[b]:
                        partial[i].push_back(b)
            ok = 1
            for b in range(n_blocks):
                if need[b] > remaining[b]:
                    ok = 0
            i = 0 if ok else -1
            entering = 1
            while 0 <= i < n_points:
                b = block_of[i]
                if entering:
                    entering = 0
                    key.clear()
                    _push_int(key, i)
                    for k in frontier[i]:
                        _push_int(key, assign[k])
                    for j in partial[i]:
                        for v in range(n_values):
                            key.push_back(<char> (counts[j * n_values + v] > 0))
                    keys[i] = key
                    if failed.count(key):
                        pos[i] = cand_ptr[i + 1]
                if assign[i] >= 0:
                    v = assign[i]
                    k = b * n_values + v
                    counts[k] -= 1
                    if counts[k] == 0:
                        covered[b] -= 1
                    remaining[b] += 1
                    assign[i] = -1
                end = cand_ptr[i + 1]
                p = pos[i]
                placed = 0
                while p < end:
                    v = cand_idx[p]
                    p += 1
                    row = v * n_values
                    ok = 1
                    for e in range(nbr_ptr[i], nbr_ptr[i + 1]):
                        if not adj_eq[row + assign[nbr_idx[e]]]:
                            ok = 0
                            break
                    if not ok:
                        continue
                    k = b * n_values + v
                    fresh = 1 if counts[k] == 0 else 0
                    if need[b] - covered[b] - fresh > remaining[b] - 1:
                        continue
                    counts[k] += 1
                    if fresh:
                        covered[b] += 1
                    remaining[b] -= 1
                    assign[i] = v
                    placed = 1
                    break
                pos[i] = p
                if placed:
                    i += 1
                    if i < n_points:
                        pos[i] = cand_ptr[i]
                        entering = 1
                else:
                    failed.insert(keys[i])
                    pos[i] = cand_ptr[i]
                    i -= 1
        if i < 0:
            return None
        return [assign[i] for i in range(n_points)]
    finally:
        free(remaining); free(covered); free(first); free(last); free(counts)
        free(assign); free(pos); free(last_use)


def enumerate_inducing(int n_points, const int[::1] edge_u, const int[::1] edge_v,
                       const int[::1] cand_ptr, const int[::1] cand_idx,
                       const int[::1] block_of, const int[::1] need,
                       int n_values, const unsigned char[::1] adj_eq):
    """Odometer over the full candidate product; every assignment is checked in full."""
    cdef int n_blocks = need.shape[0]
    cdef int n_edges = edge_u.shape[0]
    cdef int i, e, b, v, k, ok, found = 0, done = 0
    cdef int *digit = <int *> calloc(n_points if n_points > 0 else 1, sizeof(int))
    cdef int *vals = <int *> malloc((n_points if n_points > 0 else 1) * sizeof(int))
    cdef int *seen = <int *> malloc((n_blocks * n_values if n_blocks * n_values > 0 else 1) * sizeof(int))
    cdef int *distinct = <int *> malloc((n_blocks if n_blocks > 0 else 1) * sizeof(int))
    if not digit or not vals or not seen or not distinct:
        free(digit); free(vals); free(seen); free(distinct)
        raise MemoryError()
    try:
        with nogil:
            for i in range(n_points):
                if cand_ptr[i + 1] == cand_ptr[i]:
                    done = 1
            while not done:
                for i in range(n_points):
                    vals[i] = cand_idx[cand_ptr[i] + digit[i]]
                ok = 1
                for e in range(n_edges):
                    if not adj_eq[vals[edge_u[e]] * n_values + vals[edge_v[e]]]:
                        ok = 0
                        break
                if ok:
                    for k in range(n_blocks * n_values):
                        seen[k] = 0
                    for b in range(n_blocks):
                        distinct[b] = 0
                    for i in range(n_points):
                        k = block_of[i] * n_values + vals[i]
                        if not seen[k]:
                            seen[k] = 1
                            distinct[block_of[i]] += 1
                    for b in range(n_blocks):
                        if distinct[b] != need[b]:
                            ok = 0
                            break
                    if ok:
                        found = 1
                        break
                # advance the odometer, last digit fastest
                i = n_points - 1
                while i >= 0:
                    digit[i] += 1
                    if digit[i] < cand_ptr[i + 1] - cand_ptr[i]:
                        break
                    digit[i] = 0
                    i -= 1
                if i < 0:
                    done = 1
        return bool(found)
    finally:
        free(digit); free(vals); free(seen); free(distinct)
