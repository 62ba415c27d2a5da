# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels. Output must match ``_pure`` element for element."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int16_t, int32_t, int64_t, uint64_t

cnp.import_array()

cdef int VPOS[12][6]
cdef int EPOS[12][6]

cdef void _init_dihedral():
    cdef int r, k
    for r in range(6):
        for k in range(6):
            VPOS[r][k] = (k + r) % 6
            EPOS[r][k] = (k + r) % 6
            VPOS[6 + r][k] = (r - k + 12) % 6
            EPOS[6 + r][k] = (r - k - 1 + 12) % 6

_init_dihedral()


def incident_conflicts(int n, edge_color):
    cdef const int64_t[:] col = np.ascontiguousarray(edge_color, dtype=np.int64)
    cdef int64_t[:] inc = np.empty(n, dtype=np.int64)
    cdef int v, w, i, j, a, b, deg
    cdef int64_t e, f
    out = []
    for v in range(n):
        deg = 0
        for w in range(n):
            if w == v:
                continue
            if v < w:
                i = v; j = w
            else:
                i = w; j = v
            inc[deg] = i * n - i * (i + 1) // 2 + (j - i - 1)
            deg += 1
        for b in range(deg):
            f = inc[b]
            for a in range(b):
                e = inc[a]
                if col[e] == col[f]:
                    if e < f:
                        out.append((e, f))
                    else:
                        out.append((f, e))
    return np.array(out, dtype=np.int64).reshape(-1, 2)


cdef inline void _canonical(const int32_t[:, :] cm, int* p, int16_t* bp, int32_t* bw):
    cdef int32_t w[6]
    cdef int32_t cand[6]
    cdef int k, r, better, have = 0
    for k in range(6):
        w[k] = cm[p[k], p[(k + 1) % 6]]
    for r in range(12):
        for k in range(6):
            cand[k] = w[EPOS[r][k]]
        if have:
            better = 0
            for k in range(6):
                if cand[k] != bw[k]:
                    better = cand[k] < bw[k]
                    break
        else:
            better = 1
            have = 1
        if better:
            for k in range(6):
                bw[k] = cand[k]
                bp[k] = <int16_t>p[VPOS[r][k]]


def enumerate_c6(cmat, int64_t limit):
    cdef const int32_t[:, :] cm = np.ascontiguousarray(cmat, dtype=np.int32)
    cdef int n = cm.shape[0]
    cdef int64_t cap = limit
    cycles_arr = np.empty((cap, 6), dtype=np.int16)
    words_arr = np.empty((cap, 6), dtype=np.int32)
    cdef int16_t[:, :] cyc = cycles_arr
    cdef int32_t[:, :] wrd = words_arr
    cdef int64_t count = 0
    cdef int p[6]
    cdef int v0, v1, v2, v3, v4, v5
    cdef bint complete = True
    for v0 in range(n):
        for v1 in range(v0 + 1, n):
            for v2 in range(v0 + 1, n):
                if v2 == v1:
                    continue
                for v3 in range(v0 + 1, n):
                    if v3 == v1 or v3 == v2:
                        continue
                    for v4 in range(v0 + 1, n):
                        if v4 == v1 or v4 == v2 or v4 == v3:
                            continue
                        for v5 in range(v1 + 1, n):
                            if v5 == v2 or v5 == v3 or v5 == v4:
                                continue
                            if count == cap:
                                complete = False
                                break
                            p[0] = v0; p[1] = v1; p[2] = v2
                            p[3] = v3; p[4] = v4; p[5] = v5
                            _canonical(cm, p, &cyc[count, 0], &wrd[count, 0])
                            count += 1
                        if not complete:
                            break
                    if not complete:
                        break
                if not complete:
                    break
            if not complete:
                break
        if not complete:
            break
    return cycles_arr[:count].copy(), words_arr[:count].copy(), bool(complete)


def first_disjoint_pair(masks, order, starts):
    cdef const uint64_t[:] mk = np.ascontiguousarray(masks, dtype=np.uint64)
    cdef const int64_t[:] od = np.ascontiguousarray(order, dtype=np.int64)
    cdef const int64_t[:] st = np.ascontiguousarray(starts, dtype=np.int64)
    cdef Py_ssize_t g, a, b, lo, hi
    cdef uint64_t ma
    for g in range(st.shape[0] - 1):
        lo = st[g]
        hi = st[g + 1]
        for a in range(lo, hi):
            ma = mk[od[a]]
            for b in range(a + 1, hi):
                if (ma & mk[od[b]]) == 0:
                    return int(od[a]), int(od[b])
    return -1, -1
