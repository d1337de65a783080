"""Assembly kernels with a compiled core and a NumPy fallback.

The compiled extension (built from _ext.pyx) is preferred when importable;
otherwise the pure-NumPy reference implementation is used. Both backends
implement stiffness_entries_1d and stiffness_triplets_2d with identical
semantics. The geometry helpers are NumPy-only (they are not hot).
"""

from . import reference
from .reference import (  # noqa: F401
    VARIANT_CONSERVATIVE,
    VARIANT_HALFPOINT,
    VARIANT_TWOCELL,
    eta_edge_metrics,
    eta_edge_speeds,
    halfhalf_metrics,
    nodal_jacobian_dots,
    nodal_jacobians,
    xi_edge_metrics,
    xi_edge_speeds,
)

try:
    from . import _ext as _impl

    BACKEND = "compiled"
except ImportError:
    _impl = reference
    BACKEND = "python"

stiffness_entries_1d = _impl.stiffness_entries_1d
stiffness_triplets_2d = _impl.stiffness_triplets_2d


def available_backends():
    """Importable kernel backends keyed by name (for tests and benchmarks)."""
    out = {"python": reference}
    try:
        from . import _ext

        out["compiled"] = _ext
    except ImportError:
        pass
    return out
