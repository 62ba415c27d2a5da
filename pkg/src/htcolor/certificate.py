"""H_t copies in K_n and certificate pairs, with their JSON encoding.

Indices are 0-based: branch vertices 0..t-1, subdivision vertex (i, j) for
i < j joined to branch i and branch j.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import StructuralError


def index_pairs(t):
    return list(combinations(range(t), 2))


@dataclass(frozen=True)
class HtCopy:
    branch: tuple
    subdiv: dict  # (i, j) -> vertex

    @property
    def t(self):
        return len(self.branch)

    def vertices(self):
        """Branch vertices, then subdivision vertices in lexicographic (i, j) order."""
        return list(self.branch) + [self.subdiv[p] for p in index_pairs(self.t)]

    def edges(self):
        """The 2 * C(t, 2) edges as vertex pairs (branch, subdivision)."""
        out = []
        for i, j in index_pairs(self.t):
            s = self.subdiv[(i, j)]
            out.append((self.branch[i], s))
            out.append((self.branch[j], s))
        return out

    def to_dict(self):
        return {"branch": [int(v) for v in self.branch],
                "subdiv": {f"{i},{j}": int(v) for (i, j), v in sorted(self.subdiv.items())}}

    @classmethod
    def from_dict(cls, data):
        try:
            branch = tuple(int(v) for v in data["branch"])
            subdiv = {}
            for key, v in data["subdiv"].items():
                i, j = (int(x) for x in key.split(","))
                subdiv[(i, j)] = int(v)
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise StructuralError(f"malformed H_t copy: {exc}") from exc
        return cls(branch, subdiv)


@dataclass(frozen=True)
class CertificatePair:
    t: int
    copy1: HtCopy
    copy2: HtCopy
    iso: dict = field(default=None)  # copy1 vertex -> copy2 vertex
    colors_checked: bool = False

    def __post_init__(self):
        for name, c in (("copy1", self.copy1), ("copy2", self.copy2)):
            if len(c.branch) != self.t or sorted(c.subdiv) != index_pairs(self.t):
                raise StructuralError(f"{name} is not shaped like H_{self.t}")
        if self.iso is None:
            object.__setattr__(self, "iso", index_map(self.copy1, self.copy2))

    def to_dict(self):
        if self.iso != index_map(self.copy1, self.copy2):
            raise ValueError("only index-preserving certificates are serialized; relabel copy2 first")
        return {"t": self.t, "copy1": self.copy1.to_dict(), "copy2": self.copy2.to_dict(),
                "colors_checked": bool(self.colors_checked)}

    @classmethod
    def from_dict(cls, data):
        try:
            t = int(data["t"])
            c1 = HtCopy.from_dict(data["copy1"])
            c2 = HtCopy.from_dict(data["copy2"])
            checked = bool(data.get("colors_checked", False))
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"malformed certificate: {exc}") from exc
        return cls(t, c1, c2, None, checked)


def index_map(c1: HtCopy, c2: HtCopy):
    """Position-wise map between two copies; later duplicates overwrite earlier ones."""
    return dict(zip(c1.vertices(), c2.vertices()))
