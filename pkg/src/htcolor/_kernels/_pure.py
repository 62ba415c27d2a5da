"""Pure-Python kernels. Reference semantics for the compiled ``_core`` module.

Every function here must return exactly what its ``_core`` twin returns,
including element order; the test-suite compares the two backends directly.
"""
import numpy as np

# dihedral action on a 6-cycle: (vertex positions, edge positions) per variant
_DIHEDRAL = []
for _r in range(6):
    _DIHEDRAL.append((tuple((k + _r) % 6 for k in range(6)),
                      tuple((k + _r) % 6 for k in range(6))))
for _r in range(6):
    _DIHEDRAL.append((tuple((_r - k) % 6 for k in range(6)),
                      tuple((_r - k - 1) % 6 for k in range(6))))
DIHEDRAL = tuple(_DIHEDRAL)


def incident_conflicts(n, edge_color):
    """Pairs (e, f), e < f, of same-colored edges sharing an endpoint."""
    edge_color = np.asarray(edge_color, dtype=np.int64)
    out = []
    for v in range(n):
        seen = {}
        for w in range(n):
            if w == v:
                continue
            i, j = (v, w) if v < w else (w, v)
            e = i * n - i * (i + 1) // 2 + (j - i - 1)
            c = int(edge_color[e])
            for f in seen.get(c, ()):
                out.append((min(e, f), max(e, f)))
            seen.setdefault(c, []).append(e)
    return np.array(out, dtype=np.int64).reshape(-1, 2)


def _canonical(p, cmat):
    w = [cmat[p[k]][p[(k + 1) % 6]] for k in range(6)]
    best_w = None
    best_p = None
    for vpos, epos in DIHEDRAL:
        cand = [w[x] for x in epos]
        if best_w is None or cand < best_w:
            best_w = cand
            best_p = [p[x] for x in vpos]
    return best_p, best_w


def enumerate_c6(cmat, limit):
    """Every 6-cycle of K_n once, rotated to its lexicographically least color word.

    Returns ``(cycles, words, complete)``; ``complete`` is False when more
    than ``limit`` cycles exist and enumeration stopped early.
    """
    cm = np.asarray(cmat).tolist()
    n = len(cm)
    cycles, words = [], []
    complete = True
    rng = range(n)
    try:
        for v0 in rng:
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
                                if len(cycles) == limit:
                                    complete = False
                                    raise StopIteration
                                p, w = _canonical((v0, v1, v2, v3, v4, v5), cm)
                                cycles.append(p)
                                words.append(w)
    except StopIteration:
        pass
    return (np.array(cycles, dtype=np.int16).reshape(-1, 6),
            np.array(words, dtype=np.int32).reshape(-1, 6),
            complete)


def first_disjoint_pair(masks, order, starts):
    """First (i, j) inside one group whose vertex masks are disjoint, else (-1, -1).

    ``order`` lists row indices grouped contiguously; group g occupies
    ``order[starts[g]:starts[g + 1]]``.
    """
    masks = [int(x) for x in np.asarray(masks, dtype=np.uint64)]
    order = [int(x) for x in order]
    starts = [int(x) for x in starts]
    for g in range(len(starts) - 1):
        lo, hi = starts[g], starts[g + 1]
        for a in range(lo, hi):
            ma = masks[order[a]]
            for b in range(a + 1, hi):
                if ma & masks[order[b]] == 0:
                    return order[a], order[b]
    return -1, -1
