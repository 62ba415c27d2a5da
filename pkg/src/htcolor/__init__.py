"""Vertex-disjoint color-isomorphic copies of subdivided cliques in proper edge-colorings of K_n."""
from ._kernels import BACKEND as KERNEL_BACKEND

__all__ = ["KERNEL_BACKEND", "__version__"]
__version__ = "0.1.0"
