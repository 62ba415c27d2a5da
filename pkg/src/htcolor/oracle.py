"""Brute-force ground truth: H_t copies, color isomorphism, disjoint pairs, verification.

Nothing here trusts the embedding pipeline; certificates are re-derived from
the coloring alone.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb

import numpy as np

from . import _kernels
from ._kernels._pure import DIHEDRAL
from .certificate import CertificatePair, HtCopy, index_pairs
from .coloring import ProperColoring
from .errors import StructuralError

EXHAUSTIVE_C6_LIMIT = 480_480  # every 6-cycle of K_16
DEFAULT_BUDGET = 1_000_000


def _falling(n, k):
    r = 1
    for i in range(k):
        r *= n - i
    return r


def count_c6(n):
    """Number of 6-cycles in K_n."""
    return _falling(n, 6) // 12 if n >= 6 else 0


# ---------------------------------------------------------------- enumeration

def enumerate_ht_copies(coloring: ProperColoring, t: int, limit=None):
    """Yield every H_t subgraph of K_n once.

    Branch sets come in ascending order. For t = 3 the two alternating
    triples of a 6-cycle could both serve as branch set; the one holding the
    smallest vertex is used.
    """
    if t < 3:
        raise ValueError("t must be at least 3")
    n = coloring.n
    need = t + comb(t, 2)
    if n < need:
        raise ValueError(f"H_{t} has {need} vertices but n = {n}")
    slots = index_pairs(t)
    emitted = 0
    for branch in combinations(range(n), t):
        rest = [v for v in range(n) if v not in branch]
        if t == 3:
            rest = [v for v in rest if v > branch[0]]
        for subs in permutations(rest, len(slots)):
            if limit is not None and emitted >= limit:
                return
            emitted += 1
            yield HtCopy(branch, dict(zip(slots, subs)))


def _cycle_of(copy: HtCopy):
    b, s = copy.branch, copy.subdiv
    return [b[0], s[(0, 1)], b[1], s[(1, 2)], b[2], s[(0, 2)]]


def _copy_of_cycle(p):
    return HtCopy((int(p[0]), int(p[2]), int(p[4])),
                  {(0, 1): int(p[1]), (1, 2): int(p[3]), (0, 2): int(p[5])})


def _isomorphisms(c1: HtCopy, c2: HtCopy):
    """Graph isomorphisms c1 -> c2 as dicts, index-preserving map first."""
    t = c1.t
    if t == 3:
        p, q = _cycle_of(c1), _cycle_of(c2)
        for vpos, _ in DIHEDRAL:
            yield {p[k]: q[vpos[k]] for k in range(6)}
        return
    for perm in permutations(range(t)):
        phi = {c1.branch[i]: c2.branch[perm[i]] for i in range(t)}
        for i, j in index_pairs(t):
            a, b = sorted((perm[i], perm[j]))
            phi[c1.subdiv[(i, j)]] = c2.subdiv[(a, b)]
        yield phi


def _preserves_colors(cm, c1, phi):
    return all(cm[p, q] == cm[phi[p], phi[q]] for p, q in c1.edges())


def color_isomorphic(coloring: ProperColoring, c1: HtCopy, c2: HtCopy):
    """A color-preserving isomorphism c1 -> c2 as a dict, or None."""
    if c1.t != c2.t:
        return None
    cm = coloring.color_matrix
    for phi in _isomorphisms(c1, c2):
        if _preserves_colors(cm, c1, phi):
            return phi
    return None


# ---------------------------------------------------------------- pair search

@dataclass(frozen=True)
class OracleResult:
    certificate: CertificatePair | None
    exhaustive: bool     # the whole search space was examined
    examined: int        # copies enumerated

    @property
    def absent(self):
        """Proof that no disjoint color-isomorphic pair exists."""
        return self.certificate is None and self.exhaustive

    @property
    def outcome(self):
        if self.certificate is not None:
            return "found"
        return "absent" if self.exhaustive else "inconclusive"


def _search_c6(coloring, limit):
    cyc, words, complete = _kernels.enumerate_c6(coloring.color_matrix, limit)
    k = len(cyc)
    if k == 0:
        return None, complete, 0
    order = np.lexsort(words.T[::-1]).astype(np.int64)
    sw = words[order]
    change = np.any(sw[1:] != sw[:-1], axis=1)
    starts = np.concatenate(([0], np.flatnonzero(change) + 1, [k])).astype(np.int64)
    masks = np.zeros(k, dtype=np.uint64)
    for col in range(6):
        masks |= np.left_shift(np.uint64(1), cyc[:, col].astype(np.uint64))
    i, j = _kernels.first_disjoint_pair(masks, order, starts)
    if i < 0:
        return None, complete, k
    c1, c2 = _copy_of_cycle(cyc[i]), _copy_of_cycle(cyc[j])
    return CertificatePair(3, c1, c2, None, True), complete, k


def _signature(cm, copy):
    """Canonical color signature and the relabeled copy realizing it."""
    t = copy.t
    if t == 3:
        p = _cycle_of(copy)
        w = [int(cm[p[k], p[(k + 1) % 6]]) for k in range(6)]
        best = min(((tuple(w[x] for x in epos), vpos) for vpos, epos in DIHEDRAL))
        q = [p[x] for x in best[1]]
        return best[0], _copy_of_cycle(q)
    best = None
    for perm in permutations(range(t)):
        branch = [0] * t
        for i in range(t):
            branch[perm[i]] = copy.branch[i]
        subdiv = {}
        for i, j in index_pairs(t):
            subdiv[tuple(sorted((perm[i], perm[j])))] = copy.subdiv[(i, j)]
        sig = tuple((int(cm[branch[a], subdiv[(a, b)]]), int(cm[branch[b], subdiv[(a, b)]]))
                    for a, b in index_pairs(t))
        if best is None or sig < best[0]:
            best = (sig, HtCopy(tuple(branch), subdiv))
    return best


def _search_generic(coloring, t, limit):
    cm = coloring.color_matrix
    groups = {}
    examined = 0
    gen = enumerate_ht_copies(coloring, t)
    for copy in gen:
        if examined == limit:
            return None, False, examined
        examined += 1
        sig, canon = _signature(cm, copy)
        mask = 0
        for v in canon.vertices():
            mask |= 1 << v
        bucket = groups.setdefault(sig, [])
        for other_mask, other in bucket:
            if other_mask & mask == 0:
                return CertificatePair(t, other, canon, None, True), True, examined
        bucket.append((mask, canon))
    return None, True, examined


def find_disjoint_color_iso_pair(coloring: ProperColoring, t: int, budget=None) -> OracleResult:
    """Search for two vertex-disjoint color-isomorphic copies of H_t.

    With ``budget=None`` the search is exhaustive for t = 3 and n <= 16 and
    budgeted at ``DEFAULT_BUDGET`` copies otherwise. An empty result is a
    proof of absence only when ``exhaustive`` is set.
    """
    need = t + comb(t, 2)
    if coloring.n < 2 * need:
        raise ValueError(f"two disjoint copies of H_{t} need n >= {2 * need}")
    if t == 3 and coloring.n <= 64:
        total = count_c6(coloring.n)
        if budget is None:
            budget = total if total <= EXHAUSTIVE_C6_LIMIT else DEFAULT_BUDGET
        cert, complete, k = _search_c6(coloring, min(budget, total))
        return OracleResult(cert, complete, k)
    cert, complete, k = _search_generic(coloring, t, DEFAULT_BUDGET if budget is None else budget)
    return OracleResult(cert, complete, k)


def absence_record(coloring: ProperColoring, t: int):
    return {"n": coloring.n, "t": t, "coloring_hash": coloring.digest(), "absent": True}


# ---------------------------------------------------------------- verification

@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    violations: list


def _copy_problems(copy, t, n, name):
    out = []
    if len(copy.branch) != t:
        out.append(f"{name}: {len(copy.branch)} branch vertices, expected {t}")
    if sorted(copy.subdiv) != index_pairs(t):
        out.append(f"{name}: subdivision keys {sorted(copy.subdiv)} are not all pairs i<j<{t}")
        return out
    vs = list(copy.branch) + list(copy.subdiv.values())
    if any(not (0 <= v < n) for v in vs):
        out.append(f"{name}: vertex outside 0..{n - 1}")
    if len(set(vs)) != len(vs):
        out.append(f"{name}: vertices are not distinct")
    return out


def verify_certificate(coloring: ProperColoring, cert) -> VerificationReport:
    """Re-derive every certificate invariant from the coloring."""
    if isinstance(cert, dict):
        cert = CertificatePair.from_dict(cert)
    if not isinstance(cert, CertificatePair):
        raise StructuralError("not a certificate")
    t, n = cert.t, coloring.n
    if t < 3:
        raise StructuralError(f"t={t} is below 3")
    bad = _copy_problems(cert.copy1, t, n, "copy1") + _copy_problems(cert.copy2, t, n, "copy2")
    if any("keys" in b or "branch vertices" in b or "outside" in b for b in bad):
        return VerificationReport(False, bad)

    def edge_set(c):
        es = set()
        for (i, j), s in c.subdiv.items():
            es.add(frozenset((c.branch[i], s)))
            es.add(frozenset((c.branch[j], s)))
        return es

    v1 = set(cert.copy1.branch) | set(cert.copy1.subdiv.values())
    v2 = set(cert.copy2.branch) | set(cert.copy2.subdiv.values())
    shared = sorted(v1 & v2)
    if shared:
        bad.append(f"copies share vertices {shared}")
    iso = dict(cert.iso)
    if set(iso) != v1 or set(iso.values()) != v2 or len(set(iso.values())) != len(iso):
        bad.append("iso is not a bijection between the vertex sets")
    else:
        e1, e2 = edge_set(cert.copy1), edge_set(cert.copy2)
        image = {frozenset(iso[x] for x in e) for e in e1}
        if image != e2:
            bad.append("iso does not map edges onto edges")
        cm = coloring.color_matrix
        for e in sorted(tuple(sorted(e)) for e in e1):
            p, q = e
            if cm[p, q] != cm[iso[p], iso[q]]:
                bad.append(f"edge {p}-{q} has color {cm[p, q]} but its image "
                           f"{iso[p]}-{iso[q]} has color {cm[iso[p], iso[q]]}")
    return VerificationReport(not bad, bad)
