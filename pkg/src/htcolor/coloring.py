"""Proper edge-colorings of the complete graph K_n.

Edges are stored in one dense array indexed by :func:`edge_index`; that
ordering is the serialization contract, so JSON files are portable bit for bit.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from . import _kernels
from ._seeding import rng_for
from .errors import StructuralError


def num_edges(n):
    return n * (n - 1) // 2


def edge_index(i, j, n):
    """Index of edge {i, j} in the dense edge array of K_n."""
    if i == j:
        raise ValueError("loops are not edges")
    if i > j:
        i, j = j, i
    return i * n - i * (i + 1) // 2 + (j - i - 1)


@lru_cache(maxsize=64)
def _endpoints(n):
    iu, ju = np.triu_indices(n, k=1)
    iu.setflags(write=False)
    ju.setflags(write=False)
    return iu, ju


def edge_endpoints(n):
    """Arrays ``(u, v)`` with ``u[e] < v[e]`` the endpoints of edge ``e``."""
    return _endpoints(n)


@dataclass(frozen=True, eq=False)
class ProperColoring:
    """Edge-coloring of K_n. Construction checks structure, not properness."""

    n: int
    num_colors: int
    edge_color: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise StructuralError(f"n must be positive, got {self.n}")
        col = np.array(self.edge_color, dtype=np.int64).reshape(-1)
        if col.shape[0] != num_edges(self.n):
            raise StructuralError(
                f"edge_color has length {col.shape[0]}, expected {num_edges(self.n)}")
        if col.size and (col.min() < 0 or col.max() >= self.num_colors):
            raise StructuralError("color id outside [0, num_colors)")
        col.setflags(write=False)
        object.__setattr__(self, "edge_color", col)

    @cached_property
    def color_matrix(self):
        """Symmetric n x n matrix of colors, -1 on the diagonal."""
        m = np.full((self.n, self.n), -1, dtype=np.int32)
        u, v = edge_endpoints(self.n)
        m[u, v] = self.edge_color
        m[v, u] = self.edge_color
        m.setflags(write=False)
        return m

    def color(self, i, j):
        return int(self.color_matrix[i, j])

    @cached_property
    def classes(self):
        """Edge indices of each color class, as a list indexed by color."""
        order = np.argsort(self.edge_color, kind="stable")
        bounds = np.searchsorted(self.edge_color[order], np.arange(self.num_colors + 1))
        return [order[bounds[c]:bounds[c + 1]] for c in range(self.num_colors)]

    def with_edge_color(self, e, c):
        """Copy with edge ``e`` recolored to ``c``; properness is not checked."""
        col = self.edge_color.copy()
        col[e] = c
        return ProperColoring(self.n, max(self.num_colors, c + 1), col)

    def to_dict(self):
        return {"n": int(self.n), "num_colors": int(self.num_colors),
                "edge_color": [int(c) for c in self.edge_color]}

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(int(data["n"]), int(data["num_colors"]), list(data["edge_color"]))
        except (KeyError, TypeError) as exc:
            raise StructuralError(f"malformed coloring: {exc}") from exc

    def digest(self):
        """sha256 of the canonical JSON encoding."""
        blob = json.dumps(self.to_dict(), separators=(",", ":"), sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: list  # (e, f) edge-index pairs, e < f, sharing an endpoint and a color
    unused_colors: list = field(default_factory=list)


def validate(coloring: ProperColoring) -> ValidationReport:
    pairs = _kernels.incident_conflicts(coloring.n, coloring.edge_color)
    if len(pairs):
        pairs = np.unique(pairs, axis=0)
    present = np.zeros(coloring.num_colors, dtype=bool)
    present[coloring.edge_color] = True
    return ValidationReport(
        ok=len(pairs) == 0,
        violations=[(int(e), int(f)) for e, f in pairs],
        unused_colors=[int(c) for c in np.flatnonzero(~present)],
    )


def _compact(n, col):
    used = np.unique(col)
    remap = np.full(int(col.max()) + 1 if col.size else 1, -1, dtype=np.int64)
    remap[used] = np.arange(used.size)
    return ProperColoring(n, int(used.size), remap[col] if col.size else col)


def generate_round_robin(n: int) -> ProperColoring:
    """Circle-method 1-factorization of K_n into n - 1 perfect matchings (n even)."""
    if n < 2 or n % 2:
        raise ValueError(f"round-robin needs an even n >= 2, got {n}")
    rounds = n - 1
    col = np.empty(num_edges(n), dtype=np.int64)
    for r in range(rounds):
        pairs = [(r, n - 1)]
        pairs += [((r + k) % rounds, (r - k) % rounds) for k in range(1, n // 2)]
        for a, b in pairs:
            col[edge_index(min(a, b), max(a, b), n)] = r
    return ProperColoring(n, rounds, col)


def generate_rainbow(n: int) -> ProperColoring:
    """Every edge its own color."""
    return ProperColoring(n, num_edges(n), np.arange(num_edges(n)))


def chromatic_index(n):
    return n - 1 if n % 2 == 0 else n


def generate_greedy_random(n: int, target_colors: int, seed) -> ProperColoring:
    """Greedy proper coloring over a seeded random edge order.

    Each edge takes the least-used palette color free at both endpoints
    (ties to the smallest id). When none is free, one Kempe-chain swap is
    tried before a new color is opened.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if target_colors < chromatic_index(n) and n > 1:
        raise ValueError(
            f"target_colors={target_colors} is below the chromatic index {chromatic_index(n)} of K_{n}")
    E = num_edges(n)
    if E == 0:
        return ProperColoring(n, 0, [])
    rng = rng_for(seed, 0)
    order = rng.permutation(E)
    us, vs = edge_endpoints(n)
    cap = max(target_colors, 2 * n) + 1
    at = np.full((n, cap), -1, dtype=np.int64)  # at[x, c] = neighbour of x via color c
    used = np.zeros(cap, dtype=np.int64)
    col = np.full(E, -1, dtype=np.int64)
    ncol = target_colors

    def assign(x, y, c):
        at[x, c] = y
        at[y, c] = x
        used[c] += 1
        col[edge_index(x, y, n)] = c

    def unassign(x, y, c):
        at[x, c] = -1
        at[y, c] = -1
        used[c] -= 1

    def kempe(u, v):
        free_u = np.flatnonzero(at[u, :ncol] < 0)
        free_v = np.flatnonzero(at[v, :ncol] < 0)
        free_u = free_u[np.argsort(used[free_u], kind="stable")]
        for a in free_u:
            for b in free_v:
                path, x, c = [], v, a
                while at[x, c] >= 0:
                    y = int(at[x, c])
                    path.append((x, y, c))
                    x, c = y, (b if c == a else a)
                if x == u:
                    continue
                for x, y, c in path:
                    unassign(x, y, c)
                for x, y, c in path:
                    assign(x, y, b if c == a else a)
                return int(a)
        return None

    for e in order:
        u, v = int(us[e]), int(vs[e])
        free = np.flatnonzero((at[u, :ncol] < 0) & (at[v, :ncol] < 0))
        if free.size:
            c = int(free[np.argmin(used[free])])
        else:
            c = kempe(u, v)
            if c is None:
                c = ncol
                ncol += 1
        assign(u, v, c)
    return _compact(n, col)


@dataclass(frozen=True)
class ColorHistogram:
    sizes: tuple  # e_c per color id

    @property
    def total(self):
        return sum(self.sizes)


def histogram(coloring: ProperColoring) -> ColorHistogram:
    counts = np.bincount(coloring.edge_color, minlength=coloring.num_colors)
    return ColorHistogram(tuple(int(x) for x in counts))


def sum_pairs_per_color(coloring: ProperColoring) -> int:
    """Sum over colors of C(e_c, 2): unordered pairs of same-colored edges."""
    return sum(s * (s - 1) // 2 for s in histogram(coloring).sizes)
