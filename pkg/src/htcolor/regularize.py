"""Almost-regular balanced bipartite subgraph extraction.

Side A is the left (X1 x X2) side of the auxiliary graph, side B the right.
The procedure is deterministic: dyadic degree bucketing, peeling of
low-degree vertices, then trimming the larger side back into balance.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .auxgraph import AuxGraph
from .errors import EmptyInputError, TooSparseError


@dataclass(frozen=True, eq=False)
class RegularizedSubgraph:
    """Bipartite graph G_0 = (A, B) with vertex labels being K_n pairs.

    ``adj_a[u]`` / ``adj_b[b]`` are frozensets of ids on the other side.
    Ids are those of the source auxiliary graph when there is one.
    """

    adj_a: dict
    adj_b: dict
    label_a: dict  # id -> (x1, x2)
    label_b: dict  # id -> (x3, x4)
    alpha: Fraction = Fraction(1, 3)
    aux: AuxGraph | None = field(default=None, repr=False)
    rounds: int = 0
    bucket_histogram: dict = field(default_factory=dict)
    dyadic_edges: int = 0
    source_edges: int = 0

    @classmethod
    def from_edges(cls, edges, label_a=None, label_b=None, alpha=Fraction(1, 3), aux=None, **extra):
        """Build from ``(a, b)`` id pairs. Missing labels get synthetic disjoint pairs."""
        adj_a, adj_b = {}, {}
        for a, b in edges:
            adj_a.setdefault(a, set()).add(b)
            adj_b.setdefault(b, set()).add(a)
        if label_a is None:
            label_a = {a: (2 * a, 2 * a + 1) for a in adj_a}
        if label_b is None:
            off = 1 + max((x for p in label_a.values() for x in p), default=-1)
            label_b = {b: (off + 2 * b, off + 2 * b + 1) for b in adj_b}
        return cls({a: frozenset(s) for a, s in adj_a.items()},
                   {b: frozenset(s) for b, s in adj_b.items()},
                   {a: tuple(label_a[a]) for a in adj_a},
                   {b: tuple(label_b[b]) for b in adj_b},
                   Fraction(alpha), aux, **extra)

    @classmethod
    def induced(cls, aux: AuxGraph, side_a, side_b, alpha=Fraction(1, 3)):
        """Subgraph of ``aux`` induced on the given left and right ids."""
        side_b = set(side_b)
        edges = [(a, b) for a in side_a for b in aux.left_adj[a] if b in side_b]
        return cls.from_edges(edges, {a: aux.left[a] for a in side_a},
                              {b: aux.right[b] for b in side_b}, alpha, aux,
                              source_edges=aux.num_edges)

    @cached_property
    def side_a(self):
        return tuple(sorted(self.adj_a))

    @cached_property
    def side_b(self):
        return tuple(sorted(self.adj_b))

    @property
    def m(self):
        return len(self.adj_b)

    @cached_property
    def num_edges(self):
        return sum(len(s) for s in self.adj_a.values())

    @cached_property
    def delta(self):
        degs = [len(s) for s in self.adj_a.values()] + [len(s) for s in self.adj_b.values()]
        return min(degs, default=0)

    @cached_property
    def max_degree(self):
        degs = [len(s) for s in self.adj_a.values()] + [len(s) for s in self.adj_b.values()]
        return max(degs, default=0)

    @property
    def big_k(self):
        """Achieved max-degree / min-degree."""
        return Fraction(self.max_degree, self.delta) if self.delta else None

    @property
    def min_over_max(self):
        """The other ratio, min / max; reported alongside ``big_k``."""
        return Fraction(self.delta, self.max_degree) if self.max_degree else None

    def is_balanced(self):
        return 2 * len(self.adj_a) >= self.m and len(self.adj_a) <= 2 * self.m

    def report(self):
        return {
            "m": self.m, "size_a": len(self.adj_a), "delta": self.delta,
            "bigK": str(self.big_k), "edges": self.num_edges, "rounds": self.rounds,
            "bucket_histogram": {f"{i},{j}": c for (i, j), c in sorted(self.bucket_histogram.items())},
        }


def _remove(adj_self, adj_other, victims):
    for v in victims:
        for w in adj_self.pop(v):
            adj_other[w].discard(v)


def _drop_isolated(adj_a, adj_b):
    for adj in (adj_a, adj_b):
        for v in [v for v, s in adj.items() if not s]:
            del adj[v]


def _rebalance(adj_a, adj_b):
    """Trim the larger side by lowest degree (ties: largest id first) until balanced."""
    while adj_a and adj_b:
        big, small = (adj_a, adj_b) if len(adj_a) > 2 * len(adj_b) else \
                     (adj_b, adj_a) if len(adj_b) > 2 * len(adj_a) else (None, None)
        if big is None:
            return
        excess = len(big) - 2 * len(small)
        victims = sorted(big, key=lambda v: (len(big[v]), -v))[:excess]
        _remove(big, small, victims)
        _drop_isolated(adj_a, adj_b)


def almost_regular_balanced_subgraph(aux: AuxGraph, alpha=Fraction(1, 3), max_rounds: int = 64,
                                     peel_fraction=Fraction(1, 2), min_side: int = 4) -> RegularizedSubgraph:
    if aux.num_edges == 0:
        raise EmptyInputError("auxiliary graph has no edges")
    deg_a = [len(s) for s in aux.left_adj]
    deg_b = [len(s) for s in aux.right_adj]

    # (a) dyadic buckets: degree in [2^i, 2^(i+1))
    bucket = {}
    for a, b in aux.edges:
        key = (deg_a[a].bit_length() - 1, deg_b[b].bit_length() - 1)
        bucket[key] = bucket.get(key, 0) + 1
    best = min(bucket, key=lambda k: (-bucket[k], k))
    ia, ib = best
    adj_a, adj_b = {}, {}
    for a, b in aux.edges:
        if deg_a[a].bit_length() - 1 == ia and deg_b[b].bit_length() - 1 == ib:
            adj_a.setdefault(a, set()).add(b)
            adj_b.setdefault(b, set()).add(a)
    dyadic_edges = bucket[best]

    # (b) peel vertices below peel_fraction * side average, (c) rebalance; repeat to a fixpoint
    rounds = 0
    while rounds < max_rounds:
        rounds += 1
        e = sum(len(s) for s in adj_a.values())
        if e == 0:
            break
        cut_a = peel_fraction * Fraction(e, len(adj_a))
        cut_b = peel_fraction * Fraction(e, len(adj_b))
        low_a = [v for v, s in adj_a.items() if len(s) < cut_a]
        low_b = [v for v, s in adj_b.items() if len(s) < cut_b]
        _remove(adj_a, adj_b, low_a)
        _remove(adj_b, adj_a, [v for v in low_b if v in adj_b])
        _drop_isolated(adj_a, adj_b)
        before = (len(adj_a), len(adj_b))
        _rebalance(adj_a, adj_b)
        if not low_a and not low_b and before == (len(adj_a), len(adj_b)):
            break
    _drop_isolated(adj_a, adj_b)
    _rebalance(adj_a, adj_b)

    edges = [(a, b) for a, s in adj_a.items() for b in s]
    g0 = RegularizedSubgraph.from_edges(
        edges, {a: aux.left[a] for a in adj_a}, {b: aux.right[b] for b in adj_b}, alpha, aux,
        rounds=rounds, bucket_histogram=dict(bucket), dyadic_edges=dyadic_edges,
        source_edges=aux.num_edges)
    if g0.m < min_side or g0.delta == 0:
        raise TooSparseError(
            f"regularized subgraph too sparse (m={g0.m}, delta={g0.delta})",
            {"m": g0.m, "size_a": len(g0.adj_a), "delta": g0.delta, "edges": g0.num_edges,
             "rounds": rounds, "dyadic_edges": dyadic_edges, "source_edges": aux.num_edges,
             "bucket_histogram": dict(bucket)})
    return g0


def dyadic_retention_floor(source_edges, max_degree):
    """Pigeonhole floor on edges kept by the best bucket pair."""
    buckets = max_degree.bit_length()  # floor(log2 D) + 1
    return Fraction(source_edges, buckets * buckets)


@dataclass(frozen=True)
class PipelineConstants:
    alpha: Fraction
    paper_k: object  # int when 1/alpha^2 is an integer, else float
    c0: Fraction
    c1: Fraction


def pipeline_constants(t: int, gamma) -> PipelineConstants:
    """alpha = (t-2)/(2t-3), K = 60 * 2^(1 + 1/alpha^2), c0 = 1/(1024 gamma), c1 = c0/10."""
    if t < 3:
        raise ValueError("t must be at least 3")
    gamma = Fraction(gamma)
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    alpha = Fraction(t - 2, 2 * t - 3)
    expo = 1 + 1 / alpha ** 2
    paper_k = 60 * 2 ** int(expo) if expo.denominator == 1 else 60 * 2.0 ** float(expo)
    c0 = 1 / (1024 * gamma)
    return PipelineConstants(alpha, paper_k, c0, c0 / 10)
