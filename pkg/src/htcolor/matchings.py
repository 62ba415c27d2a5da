"""Four-part equipartitions and cross-form monochromatic matchings.

A cross matching is a pair of same-colored edges {x1x3, x2x4} with
x_i in part X_i. Parts are indexed 0..3 in code (X1 is part 0).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from ._seeding import rng_for
from .coloring import ProperColoring, edge_endpoints, sum_pairs_per_color
from .errors import StructuralError


def part_sizes(n):
    """Sizes of the four parts; the first ``n % 4`` parts get the extra vertex."""
    return tuple(n // 4 + (1 if k < n % 4 else 0) for k in range(4))


@dataclass(frozen=True)
class Equipartition:
    parts: tuple  # four sorted tuples of vertices

    def __post_init__(self):
        if len(self.parts) != 4:
            raise StructuralError("an equipartition has exactly four parts")
        object.__setattr__(self, "parts", tuple(tuple(sorted(int(v) for v in p)) for p in self.parts))
        flat = [v for p in self.parts for v in p]
        if sorted(flat) != list(range(len(flat))):
            raise StructuralError("parts must be disjoint and cover 0..n-1")
        sizes = [len(p) for p in self.parts]
        if max(sizes) - min(sizes) > 1:
            raise StructuralError(f"unbalanced part sizes {sizes}")

    @property
    def n(self):
        return sum(len(p) for p in self.parts)

    @cached_property
    def part_of(self):
        lab = np.empty(self.n, dtype=np.int8)
        for k, p in enumerate(self.parts):
            lab[list(p)] = k
        lab.setflags(write=False)
        return lab

    def to_dict(self):
        return {"parts": [list(p) for p in self.parts]}

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(tuple(tuple(p) for p in data["parts"]))
        except (KeyError, TypeError) as exc:
            raise StructuralError(f"malformed partition: {exc}") from exc


def _split(perm, n):
    sizes = part_sizes(n)
    cuts = np.cumsum((0,) + sizes)
    return Equipartition(tuple(tuple(perm[cuts[k]:cuts[k + 1]]) for k in range(4)))


def sample_equipartition(n: int, seed) -> Equipartition:
    """Seeded shuffle of 0..n-1, split into parts of sizes ``part_sizes(n)``."""
    if n < 4:
        raise ValueError("an equipartition into four parts needs n >= 4")
    return _split(rng_for(seed, 1).permutation(n), n)


def _check_same_n(coloring, partition):
    if partition.n != coloring.n:
        raise ValueError(f"partition covers {partition.n} vertices, coloring has {coloring.n}")


def _cross_counts_per_color(coloring, part_of):
    u, v = edge_endpoints(coloring.n)
    pu, pv = part_of[u], part_of[v]
    lo, hi = np.minimum(pu, pv), np.maximum(pu, pv)
    c = coloring.edge_color
    a13 = np.bincount(c[(lo == 0) & (hi == 2)], minlength=coloring.num_colors)
    a24 = np.bincount(c[(lo == 1) & (hi == 3)], minlength=coloring.num_colors)
    return a13, a24


def count_cross_matchings(coloring: ProperColoring, partition: Equipartition) -> int:
    """Number of same-colored edge pairs {e, f} with e in X1-X3 and f in X2-X4."""
    _check_same_n(coloring, partition)
    a13, a24 = _cross_counts_per_color(coloring, partition.part_of)
    return int(np.dot(a13.astype(object), a24.astype(object)))


def cross_matching_samples(coloring: ProperColoring, num_samples: int, seed, batch=4096):
    """count_cross_matchings over ``num_samples`` independent random equipartitions."""
    n = coloring.n
    rng = rng_for(seed, 2)
    labels = np.repeat(np.arange(4, dtype=np.int8), part_sizes(n))
    u, v = edge_endpoints(n)
    C = coloring.num_colors
    col = coloring.edge_color
    onehot = np.zeros((col.size, C), dtype=np.int64)
    onehot[np.arange(col.size), col] = 1
    out = np.empty(num_samples, dtype=np.int64)
    done = 0
    while done < num_samples:
        k = min(batch, num_samples - done)
        part_of = rng.permuted(np.tile(labels, (k, 1)), axis=1)
        pu, pv = part_of[:, u], part_of[:, v]
        lo, hi = np.minimum(pu, pv), np.maximum(pu, pv)
        is13 = (lo == 0) & (hi == 2)
        is24 = (lo == 1) & (hi == 3)
        a13 = is13.astype(np.int64) @ onehot
        a24 = is24.astype(np.int64) @ onehot
        out[done:done + k] = (a13 * a24).sum(axis=1)
        done += k
    return out


def _falling(n, k):
    r = 1
    for i in range(k):
        r *= n - i
    return r


def _pair_probability(shared, sizes, n):
    """P(one edge splits X1|X3 and the other X2|X4) for two edges sharing ``shared`` vertices."""
    if shared:
        # X1 u X3 and X2 u X4 are disjoint, so a common endpoint cannot be in both
        return Fraction(0)
    s1, s2, s3, s4 = sizes
    # 2 roles (which edge is the 1-3 edge) x 2 x 2 endpoint orientations
    return Fraction(8 * s1 * s2 * s3 * s4, _falling(n, 4))


def exact_expectation(coloring: ProperColoring) -> Fraction:
    """Exact mean of count_cross_matchings under a uniform random equipartition.

    Same-colored edge pairs are classified by how many endpoints they share
    and each is weighted by its exact without-replacement probability.
    """
    n = coloring.n
    if n < 4:
        raise ValueError("needs n >= 4")
    sizes = part_sizes(n)
    u, v = edge_endpoints(n)
    tally = {0: 0, 1: 0}
    for cls in coloring.classes:
        ends = [(int(u[e]), int(v[e])) for e in cls]
        for i in range(len(ends)):
            for j in range(i + 1, len(ends)):
                shared = len(set(ends[i]) & set(ends[j]))
                tally[min(shared, 1)] += 1
    return sum((cnt * _pair_probability(s, sizes, n) for s, cnt in tally.items()), Fraction(0))


def lemma_threshold(coloring: ProperColoring) -> Fraction:
    """(1/256) * sum_c C(e_c, 2)."""
    return Fraction(sum_pairs_per_color(coloring), 256)


@dataclass(frozen=True)
class PartitionChoice:
    partition: Equipartition
    count: int
    threshold: Fraction
    tries: int
    accepted: bool  # False: best of max_tries, still below threshold


def select_good_partition(coloring: ProperColoring, seed, max_tries: int = 64) -> PartitionChoice:
    """First sampled equipartition whose cross-matching count reaches the threshold."""
    if max_tries < 1:
        raise ValueError("max_tries must be >= 1")
    threshold = lemma_threshold(coloring)
    best = None
    for k in range(max_tries):
        part = _split(rng_for(seed, 3, k).permutation(coloring.n), coloring.n)
        cnt = count_cross_matchings(coloring, part)
        if cnt >= threshold:
            return PartitionChoice(part, cnt, threshold, k + 1, True)
        if best is None or cnt > best[1]:
            best = (part, cnt)
    return PartitionChoice(best[0], best[1], threshold, max_tries, False)

