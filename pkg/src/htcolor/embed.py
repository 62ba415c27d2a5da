"""Codegree weights, light/heavy pairs and the greedy H_t embedding with deletions.

Everything here works on a :class:`RegularizedSubgraph` G_0 = (A, B). The
weight of a pair u, v in A is their number of common neighbors in B; a pair
is light when 1 <= weight < light_threshold and heavy above that.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from .auxgraph import pairs_share_vertex
from .certificate import CertificatePair, HtCopy, index_pairs
from .errors import EmbeddingFailed, InternalInconsistency
from .regularize import RegularizedSubgraph


@dataclass(frozen=True)
class PipelineParams:
    t: int = 3
    gamma: Fraction = Fraction(1, 1024)
    light_threshold: int | None = None  # default 2 * C(t, 2)
    relaxed: bool = True
    seed: int = 0
    max_backtracks: int = 10_000
    use_heavy_cliques: bool = True

    def __post_init__(self):
        if self.t < 3:
            raise ValueError("t must be at least 3")
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        if self.light_threshold is None:
            object.__setattr__(self, "light_threshold", 2 * comb(self.t, 2))
        if self.light_threshold < 2:
            raise ValueError("light_threshold must be at least 2")


@dataclass(frozen=True, eq=False)
class HtEmbedding:
    branch: tuple      # u_1..u_t, ids in side A
    subdiv: dict       # (i, j) -> id in side B, 0-based i < j
    g0: RegularizedSubgraph = field(repr=False)
    trace: dict = field(default_factory=dict, repr=False)


# ---------------------------------------------------------------- weights

def _require_a(g0, *vs):
    for v in vs:
        if v not in g0.adj_a:
            raise ValueError(f"{v} is not a side-A vertex")


def codegree(g0: RegularizedSubgraph, u, v) -> int:
    _require_a(g0, u, v)
    if u == v:
        raise ValueError("codegree needs two distinct vertices")
    return len(g0.adj_a[u] & g0.adj_a[v])


def weight_matrix(g0: RegularizedSubgraph, U):
    """|U| x |U| matrix of codegrees (diagonal holds degrees)."""
    U = list(U)
    _require_a(g0, *U)
    bidx = {b: k for k, b in enumerate(g0.side_b)}
    inc = np.zeros((len(U), len(bidx)), dtype=np.float64)
    for r, u in enumerate(U):
        inc[r, [bidx[b] for b in g0.adj_a[u]]] = 1.0
    # float product goes through BLAS; counts are far below 2^53 so the cast is exact
    return np.rint(inc @ inc.T).astype(np.int64)


def weight_sum(g0: RegularizedSubgraph, U) -> int:
    """Sum of codegrees over pairs in U, counted per B-vertex as C(d_U(b), 2)."""
    U = set(U)
    _require_a(g0, *U)
    return sum(comb(len(U & nb), 2) for nb in g0.adj_b.values())


@dataclass(frozen=True)
class Lemma24Report:
    size: int
    weight: int
    bound: Fraction           # delta^2 / (2m) * C(|U|, 2)
    precondition: bool        # delta * |U| >= 2m
    passed: bool

    def to_dict(self):
        return {"size": self.size, "weight": self.weight, "bound": str(self.bound),
                "precondition": self.precondition, "passed": self.passed}


def lemma24_check(g0: RegularizedSubgraph, U) -> Lemma24Report:
    U = list(U)
    if len(U) < 2:
        raise ValueError("U needs at least two vertices")
    w = weight_sum(g0, U)
    bound = Fraction(g0.delta ** 2, 2 * g0.m) * comb(len(U), 2)
    return Lemma24Report(len(U), w, bound, g0.delta * len(U) >= 2 * g0.m, w >= bound)


@dataclass(frozen=True)
class EdgeClasses:
    light: list
    heavy: list
    zero: list

    def counts(self):
        return {"light": len(self.light), "heavy": len(self.heavy), "zero": len(self.zero)}


def classify_edges(g0: RegularizedSubgraph, U, params: PipelineParams) -> EdgeClasses:
    U = sorted(U)
    W = weight_matrix(g0, U)
    thr = params.light_threshold
    light, heavy, zero = [], [], []
    for x, y in combinations(range(len(U)), 2):
        w = W[x, y]
        (zero if w == 0 else heavy if w >= thr else light).append((U[x], U[y]))
    return EdgeClasses(light, heavy, zero)


# ---------------------------------------------------------------- cliques

def find_clique(adj, k):
    """Lexicographically first k-clique of the graph ``adj`` (vertex -> set), or None."""
    if k <= 0:
        return ()
    verts = sorted(v for v in adj if len(adj[v]) >= k - 1)

    def grow(clique, cand):
        if len(clique) == k:
            return tuple(clique)
        for pos, v in enumerate(cand):
            if len(clique) + len(cand) - pos < k:
                return None
            nxt = [w for w in cand[pos + 1:] if w in adj[v]]
            found = grow(clique + [v], nxt)
            if found:
                return found
        return None

    return grow([], verts)


# ---------------------------------------------------------------- Turan audit

@dataclass(frozen=True)
class TuranEntry:
    b: int
    h: int
    status: str               # "small", "kt_free" or "heavy_clique"
    light: int | None = None
    stated_bound: Fraction | None = None   # C(h, 2) / (t - 1)
    turan_bound: Fraction | None = None    # h (h - t + 1) / (2 (t - 1)), from ex(h, K_t)
    clique: tuple | None = None

    @property
    def meets_stated(self):
        return self.light is None or self.light >= self.stated_bound

    @property
    def meets_turan(self):
        return self.light is None or self.light >= self.turan_bound


@dataclass(frozen=True)
class TuranAudit:
    entries: list
    heavy_clique: tuple | None
    light_total: int
    aggregate_bound: Fraction     # delta^2 / (16 t^3 m) * C(|U|, 2)
    preconditions: bool           # no heavy K_t in any N(b), |U| >= 8tm/delta, |U| >= 2
    aggregate_holds: bool

    def to_dict(self):
        return {
            "audited": sum(e.status != "small" for e in self.entries),
            "small": sum(e.status == "small" for e in self.entries),
            "stated_bound_failures": [e.b for e in self.entries if not e.meets_stated],
            "turan_bound_failures": [e.b for e in self.entries if not e.meets_turan],
            "heavy_clique": list(self.heavy_clique) if self.heavy_clique else None,
            "light_total": self.light_total, "aggregate_bound": str(self.aggregate_bound),
            "preconditions": self.preconditions, "aggregate_holds": self.aggregate_holds,
        }


def _heavy_adjacency(W, ids, thr):
    adj = {v: set() for v in ids}
    for x, y in zip(*np.nonzero(np.triu(W >= thr, k=1))):
        adj[ids[x]].add(ids[y])
        adj[ids[y]].add(ids[x])
    return adj


def turan_light_audit(g0: RegularizedSubgraph, U, params: PipelineParams) -> TuranAudit:
    U = sorted(U)
    t, thr = params.t, params.light_threshold
    W = weight_matrix(g0, U)
    pos = {u: k for k, u in enumerate(U)}
    Uset = set(U)
    entries = []
    first_clique = None
    for b in g0.side_b:
        nb = sorted(Uset & g0.adj_b[b])
        h = len(nb)
        if h < 2 * (t - 1):
            entries.append(TuranEntry(b, h, "small"))
            continue
        sub = W[np.ix_([pos[u] for u in nb], [pos[u] for u in nb])]
        clique = find_clique(_heavy_adjacency(sub, nb, thr), t)
        if clique:
            first_clique = first_clique or clique
            entries.append(TuranEntry(b, h, "heavy_clique", clique=clique))
            continue
        # every pair inside N(b) has weight >= 1, so non-heavy means light
        light = int(np.triu(sub < thr, k=1).sum())
        entries.append(TuranEntry(b, h, "kt_free", light, Fraction(comb(h, 2), t - 1),
                                  Fraction(h * (h - t + 1), 2 * (t - 1))))
    light_total = int(np.triu((W >= 1) & (W < thr), k=1).sum())
    bound = Fraction(g0.delta ** 2, 16 * t ** 3 * g0.m) * comb(len(U), 2) if g0.m else Fraction(0)
    pre = (first_clique is None and len(U) >= 2 and g0.delta > 0
           and len(U) * g0.delta >= 8 * t * g0.m and thr == 2 * comb(t, 2))
    return TuranAudit(entries, first_clique, light_total, bound, pre, light_total >= bound)


# ---------------------------------------------------------------- embedding

class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def spend(self):
        self.used += 1
        if self.used > self.limit:
            raise _OutOfBudget


class _OutOfBudget(Exception):
    pass


def _assign_subdivisions(g0, branch, budget):
    """Depth-first choice of v_ij in lexicographic (i, j) order; None if impossible."""
    t = len(branch)
    slots = index_pairs(t)
    cands = [sorted(g0.adj_a[branch[i]] & g0.adj_a[branch[j]]) for i, j in slots]
    lab = g0.label_b
    chosen = []

    def place(k):
        if k == len(slots):
            return True
        for b in cands[k]:
            budget.spend()
            if any(b == c or pairs_share_vertex(lab[b], lab[c]) for c in chosen):
                continue
            chosen.append(b)
            if place(k + 1):
                return True
            chosen.pop()
        return False

    if place(0):
        return dict(zip(slots, chosen))
    return None


def embed_heavy_clique(g0: RegularizedSubgraph, clique, params: PipelineParams) -> HtEmbedding:
    """Complete a heavy K_t of the weight graph into an H_t with pairwise-disjoint vertices."""
    budget = _Budget(params.max_backtracks)
    try:
        subdiv = _assign_subdivisions(g0, tuple(clique), budget)
    except _OutOfBudget:
        raise EmbeddingFailed("backtrack budget exhausted completing heavy clique",
                              {"kind": "backtrack-budget", "step": params.t, "route": "heavy"})
    if subdiv is None:
        raise EmbeddingFailed("heavy clique admits no disjoint subdivision choice",
                              {"kind": "exhausted", "step": params.t, "route": "heavy"})
    emb = HtEmbedding(tuple(clique), subdiv, g0, {"route": "heavy", "backtracks": budget.used})
    bad = check_embedding(emb)
    if bad:
        raise InternalInconsistency("; ".join(bad))
    return emb


@dataclass
class _Gate:
    name: str
    step: int
    lhs: float
    rhs: float

    @property
    def holds(self):
        return self.lhs >= self.rhs

    def to_dict(self):
        return {"name": self.name, "step": self.step, "lhs": self.lhs, "rhs": self.rhs,
                "holds": self.holds}


def greedy_embed(g0: RegularizedSubgraph, params: PipelineParams) -> HtEmbedding:
    """Choose u_1, ..., u_t recursively with deletions, then the subdivision vertices.

    Raises :class:`EmbeddingFailed` with diagnostics on failure.
    """
    t, thr = params.t, params.light_threshold
    diag = {"kind": None, "step": 1, "u0_sizes": [], "u_sizes": [], "deleted_triple": [],
            "deleted_disjoint": [], "deleted_branch_overlap": [], "deletion_bound": [],
            "max_bad_set": 0, "gates": [], "route": "greedy"}
    A = list(g0.side_a)
    if not A:
        diag["kind"] = "exhausted"
        raise EmbeddingFailed("empty G_0", diag)

    W = weight_matrix(g0, A)
    if params.use_heavy_cliques:
        clique = find_clique(_heavy_adjacency(W, A, thr), t)
        if clique:
            try:
                return embed_heavy_clique(g0, clique, params)
            except EmbeddingFailed as exc:
                diag["heavy_attempt"] = exc.diagnostics
    light = (W >= 1) & (W < thr)
    np.fill_diagonal(light, False)
    pos = {u: k for k, u in enumerate(A)}
    delta, m = g0.delta, g0.m
    kdelta = g0.max_degree  # K * delta with K the achieved ratio
    ratio = Fraction(delta ** 2, 64 * t ** 3 * m)
    lab_a, lab_b = g0.label_a, g0.label_b

    def gate(name, step, lhs, rhs):
        g = _Gate(name, step, float(lhs), float(rhs))
        diag["gates"].append(g.to_dict())
        if not params.relaxed and not g.holds:
            diag["kind"] = "gate"
            diag["gate"] = g.to_dict()
            raise EmbeddingFailed(f"gate {name} fails at step {step}", diag)

    chosen = []
    U = list(A)
    for step in range(1, t + 1):
        diag["step"] = step
        prev = step - 1
        diag["u0_sizes"].append(len(U))
        if step == 1:
            gate("size_A_ge_8tm_over_delta", 1, len(A), Fraction(8 * t * m, delta))
        else:
            gate("light_common_ge_ratio_pow", step, len(U), ratio ** prev * len(A))
            gate("m_sufficiently_large", step, ratio ** prev * len(A),
                 2 * comb(prev, 3) * 2 * thr * kdelta + 2 * comb(prev, 2) * thr * kdelta)

        # deletions
        overlap = {u for u in U if any(pairs_share_vertex(lab_a[u], lab_a[c]) for c in chosen)}
        survivors = [u for u in U if u not in overlap]
        common = {(i, j): g0.adj_a[chosen[i]] & g0.adj_a[chosen[j]]
                  for i, j in combinations(range(prev), 2)}
        triple = set()
        for S in common.values():
            triple |= {u for u in survivors if g0.adj_a[u] & S}
        survivors = [u for u in survivors if u not in triple]
        disjoint = set()
        for (i, j), S in common.items():
            for k in range(prev):
                if k in (i, j):
                    continue
                bad = {w for w in g0.adj_a[chosen[k]]
                       if any(pairs_share_vertex(lab_b[w], lab_b[s]) for s in S)}
                diag["max_bad_set"] = max(diag["max_bad_set"], len(bad))
                if bad:
                    disjoint |= {u for u in survivors if g0.adj_a[u] & bad}
        survivors = [u for u in survivors if u not in disjoint]
        diag["deleted_branch_overlap"].append(len(overlap))
        diag["deleted_triple"].append(len(triple))
        diag["deleted_disjoint"].append(len(disjoint - triple))
        diag["deletion_bound"].append(
            comb(prev, 2) * (thr - 1) * kdelta + 3 * comb(prev, 3) * 2 * (thr - 1) * kdelta)
        diag["u_sizes"].append(len(survivors))
        if not survivors:
            diag["kind"] = "exhausted"
            diag["chosen"] = list(chosen)
            raise EmbeddingFailed(f"no candidate left at step {step}", diag)

        if step < t:
            idx = [pos[u] for u in survivors]
            score = light[np.ix_(idx, idx)].sum(axis=1)
            u = survivors[int(np.argmax(score))]  # first maximum = smallest id
            chosen.append(u)
            U = [w for w in survivors if light[pos[u], pos[w]]]
            continue

        # last branch vertex: best-scoring survivor first, then the rest by id
        budget = _Budget(params.max_backtracks)
        try:
            for u in survivors:
                subdiv = _assign_subdivisions(g0, tuple(chosen + [u]), budget)
                if subdiv is not None:
                    diag["backtracks"] = budget.used
                    emb = HtEmbedding(tuple(chosen + [u]), subdiv, g0, diag)
                    bad = check_embedding(emb)
                    if bad:
                        raise InternalInconsistency("; ".join(bad))
                    return emb
        except _OutOfBudget:
            diag["kind"] = "backtrack-budget"
            diag["chosen"] = list(chosen)
            raise EmbeddingFailed("subdivision backtrack budget exhausted", diag)
        diag["kind"] = "exhausted"
        diag["chosen"] = list(chosen)
        raise EmbeddingFailed("no subdivision assignment for any final candidate", diag)
    raise AssertionError("unreachable")


def check_embedding(emb: HtEmbedding):
    """Violations of the HtEmbedding invariants (empty list when valid)."""
    g0 = emb.g0
    out = []
    t = len(emb.branch)
    if sorted(emb.subdiv) != index_pairs(t):
        return [f"subdivision slots {sorted(emb.subdiv)} do not match t={t}"]
    for (i, j), b in emb.subdiv.items():
        for u in (emb.branch[i], emb.branch[j]):
            if b not in g0.adj_a.get(u, ()):
                out.append(f"v_{i}{j}={b} not adjacent to {u}")
    labels = [g0.label_a[u] for u in emb.branch] + [g0.label_b[b] for b in emb.subdiv.values()]
    ids = [("A", u) for u in emb.branch] + [("B", b) for b in emb.subdiv.values()]
    if len(set(ids)) != len(ids):
        out.append("embedding vertices are not distinct")
    for x, y in combinations(range(len(labels)), 2):
        if pairs_share_vertex(labels[x], labels[y]):
            out.append(f"{ids[x]} and {ids[y]} share a K_n vertex")
    return out


def lift_to_certificate(emb: HtEmbedding) -> CertificatePair:
    """First coordinates form copy 1, second coordinates copy 2."""
    g0 = emb.g0
    t = len(emb.branch)
    la, lb = g0.label_a, g0.label_b
    c1 = HtCopy(tuple(la[u][0] for u in emb.branch), {p: lb[b][0] for p, b in emb.subdiv.items()})
    c2 = HtCopy(tuple(la[u][1] for u in emb.branch), {p: lb[b][1] for p, b in emb.subdiv.items()})
    problems = []
    v1, v2 = c1.vertices(), c2.vertices()
    if len(set(v1)) != len(v1) or len(set(v2)) != len(v2):
        problems.append("a copy repeats a vertex")
    if set(v1) & set(v2):
        problems.append("copies intersect")
    coloring = g0.aux.coloring if g0.aux is not None else None
    if coloring is not None:
        for (p, q), (r, s) in zip(c1.edges(), c2.edges()):
            if coloring.color(p, q) != coloring.color(r, s):
                problems.append(f"color mismatch on {p}-{q} vs {r}-{s}")
    if problems:
        raise InternalInconsistency("; ".join(problems))
    return CertificatePair(t, c1, c2, None, coloring is not None)
