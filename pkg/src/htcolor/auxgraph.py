"""The auxiliary bipartite graph on vertex pairs.

Left vertices are pairs (x1, x2) in X1 x X2, right vertices pairs (x3, x4) in
X3 x X4; (x1, x2) ~ (x3, x4) when x1x3 and x2x4 have the same color. Only
pairs with at least one edge are stored.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .coloring import ProperColoring, edge_endpoints, num_edges, sum_pairs_per_color
from .matchings import Equipartition


def pairs_share_vertex(p, q):
    """True when the 2-sets underlying pair-vertices ``p`` and ``q`` intersect."""
    return p[0] in q or p[1] in q


@dataclass(frozen=True, eq=False)
class AuxGraph:
    left: tuple   # sorted (x1, x2) pairs; left id = position
    right: tuple  # sorted (x3, x4) pairs
    edges: tuple  # sorted (left id, right id)
    coloring: ProperColoring | None = None
    partition: Equipartition | None = None

    @classmethod
    def from_pair_edges(cls, pair_edges, coloring=None, partition=None):
        """Build from ``[((x1, x2), (x3, x4)), ...]``; duplicates are merged."""
        pair_edges = {(tuple(a), tuple(b)) for a, b in pair_edges}
        left = tuple(sorted({a for a, _ in pair_edges}))
        right = tuple(sorted({b for _, b in pair_edges}))
        lid = {p: i for i, p in enumerate(left)}
        rid = {p: i for i, p in enumerate(right)}
        edges = tuple(sorted((lid[a], rid[b]) for a, b in pair_edges))
        return cls(left, right, edges, coloring, partition)

    @property
    def num_edges(self):
        return len(self.edges)

    @property
    def num_vertices(self):
        return len(self.left) + len(self.right)

    @cached_property
    def left_adj(self):
        adj = [[] for _ in self.left]
        for a, b in self.edges:
            adj[a].append(b)
        return [tuple(x) for x in adj]

    @cached_property
    def right_adj(self):
        adj = [[] for _ in self.right]
        for a, b in self.edges:
            adj[b].append(a)
        return [tuple(x) for x in adj]

    def to_dict(self):
        def key(p):
            return f"({p[0]},{p[1]})"
        return {
            "left": {key(self.left[a]): [key(self.right[b]) for b in nb]
                     for a, nb in enumerate(self.left_adj)},
            "right": {key(self.right[b]): [key(self.left[a]) for a in nb]
                      for b, nb in enumerate(self.right_adj)},
        }


def build_aux(coloring: ProperColoring, partition: Equipartition) -> AuxGraph:
    """Enumerate cross pairs color class by color class."""
    if partition.n != coloring.n:
        raise ValueError("partition and coloring disagree on n")
    part = partition.part_of
    us, vs = edge_endpoints(coloring.n)
    pair_edges = []
    for cls in coloring.classes:
        e13, e24 = [], []
        for e in cls:
            x, y = int(us[e]), int(vs[e])
            px, py = part[x], part[y]
            if {px, py} == {0, 2}:
                e13.append((x, y) if px == 0 else (y, x))
            elif {px, py} == {1, 3}:
                e24.append((x, y) if px == 1 else (y, x))
        for x1, x3 in e13:
            for x2, x4 in e24:
                pair_edges.append(((x1, x2), (x3, x4)))
    return AuxGraph.from_pair_edges(pair_edges, coloring, partition)


@dataclass(frozen=True)
class SharedNeighborViolation:
    S: tuple
    v: int
    T1: tuple
    T2: tuple


def check_unique_shared_neighbor(aux: AuxGraph):
    """None when every vertex S has at most one neighbor containing any given v.

    Otherwise the first violation found, scanning left then right vertices.
    """
    sides = ((aux.left, aux.left_adj, aux.right), (aux.right, aux.right_adj, aux.left))
    for pairs, adj, other in sides:
        for s, nbrs in enumerate(adj):
            owner = {}
            for t in nbrs:
                T = other[t]
                for v in T:
                    if v in owner and owner[v] != T:
                        return SharedNeighborViolation(pairs[s], v, owner[v], T)
                    owner[v] = T
    return None


@dataclass(frozen=True)
class EdgeBoundReport:
    edges: int
    sum_pairs: int
    first: Fraction             # (1/256) sum C(e_c, 2)
    second: Fraction            # n^4 / (1024 C)
    convexity_floor: Fraction   # (1/256) C * C(C(n,2)/C, 2), binomial taken continuously
    vertex_count: Fraction      # n^2 / 8
    third: float                # |V|^(3/2 - 1/(4t-6)) / (1024 gamma)
    edges_ge_first: bool
    first_ge_second: bool
    second_gt_third: bool
    first_ge_convexity_floor: bool

    def to_dict(self):
        out = {}
        for k, v in self.__dict__.items():
            out[k] = str(v) if isinstance(v, Fraction) else v
        return out


def edge_lower_bound_report(coloring: ProperColoring, aux: AuxGraph, gamma, t: int) -> EdgeBoundReport:
    """Evaluate each link of the edge-count chain on this instance."""
    n, C = coloring.n, coloring.num_colors
    gamma = Fraction(gamma)
    s = sum_pairs_per_color(coloring)
    N = num_edges(n)
    first = Fraction(s, 256)
    second = Fraction(n ** 4, 1024 * C)
    floor_ = Fraction(N * (N - C), 2 * C * 256)
    vcount = Fraction(n * n, 8)
    expo = 1.5 - 1.0 / (4 * t - 6)
    third = math.exp(expo * math.log(vcount)) / (1024 * float(gamma))
    return EdgeBoundReport(
        edges=aux.num_edges, sum_pairs=s, first=first, second=second,
        convexity_floor=floor_, vertex_count=vcount, third=third,
        edges_ge_first=aux.num_edges >= first,
        first_ge_second=first >= second,
        second_gt_third=float(second) > third,
        first_ge_convexity_floor=first >= floor_,
    )


def implied_gamma(n, num_colors, t):
    """gamma with num_colors = gamma * n^(1 + 1/(2t-3))."""
    return num_colors / n ** (1 + 1 / (2 * t - 3))
