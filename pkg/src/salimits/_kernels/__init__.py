"""Kernel backend selection.

The compiled extension is preferred when importable; the numpy
implementation is the fallback. ``SALIMITS_PURE=1`` forces the fallback.
Both backends are bit-identical by construction (see pure.py).
"""

import os as _os

if _os.environ.get("SALIMITS_PURE"):
    from . import pure as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import pure as _impl

backend = _impl.BACKEND

LOGISTIC = 0
SINE = 1

iterate_scalar = _impl.iterate_scalar
orbit_array = _impl.orbit_array
iterate_array = _impl.iterate_array
grid_edges = _impl.grid_edges
backward_trails = _impl.backward_trails
preimages_scalar = _impl.preimages_scalar
splitmix_outputs = _impl.splitmix_outputs

__all__ = [
    "backend",
    "LOGISTIC",
    "SINE",
    "iterate_scalar",
    "orbit_array",
    "iterate_array",
    "grid_edges",
    "backward_trails",
    "preimages_scalar",
    "splitmix_outputs",
]
