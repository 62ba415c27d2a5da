"""Hot search kernels with a compiled backend and a pure-Python fallback.

The compiled ``_core`` extension is used when it imports; otherwise (or when
``HTCOLOR_PURE_PYTHON=1``) the functions come from ``_pure``. Both backends
return identical results.
"""
import os

from . import _pure

if os.environ.get("HTCOLOR_PURE_PYTHON", "") == "1":
    _impl = _pure
else:
    try:
        from . import _core as _impl
    except ImportError:  # extension not built
        _impl = _pure

BACKEND = "cython" if _impl is not _pure else "python"

incident_conflicts = _impl.incident_conflicts
enumerate_c6 = _impl.enumerate_c6
first_disjoint_pair = _impl.first_disjoint_pair


def backends():
    """Map of available backend name -> module, for tests and benchmarks."""
    found = {"python": _pure}
    try:
        from . import _core
        found["cython"] = _core
    except ImportError:
        pass
    return found
