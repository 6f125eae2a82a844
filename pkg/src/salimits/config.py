"""Tuning knobs and config-file loading.

A config file is a JSON object; every key is optional:

.. code-block:: json

    {
        "family_id": "logistic",
        "mu": 3.2,
        "domain": [0.0, 1.0],
        "analytic_derivative": true,
        "scan_n": 4096,
        "max_period": 64,
        "max_depth": 16,
        "cantor_depth": 12,
        "workers": 4
    }

Map families themselves are code, registered through
:func:`salimits.maps.register_family`; the config file only selects an
instance (family id, parameter, domain) and tunes the numerics.
"""

from __future__ import annotations

import dataclasses
import json
import os

# Absolute coordinate tolerance for all bracketed root searches.
TOL_ROOT = 1e-12
# Tolerance for structural coincidence of interval endpoints (shared flip
# endpoints, band/boundary contact, containment slack).
TOL_GEOM = 1e-9
# Half-width of the neutral band around |multiplier| = 1.
TOL_STAB = 1e-6
# Offset used for the one-sided convergence probe at multiplier ~ +1.
PROBE_DELTA = 1e-5


@dataclasses.dataclass
class Settings:
    family_id: str = "logistic"
    mu: float | None = None
    domain: tuple[float, float] | None = None
    analytic_derivative: bool = True
    scan_n: int = 4096
    max_period: int = 64
    max_depth: int = 16
    cantor_depth: int = 12
    workers: int | None = None

    @classmethod
    def from_file(cls, path: str) -> "Settings":
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise ValueError(f"config {path!r}: expected a JSON object")
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ValueError(f"config {path!r}: unknown keys {sorted(unknown)}")
        if "domain" in raw and raw["domain"] is not None:
            raw["domain"] = tuple(float(v) for v in raw["domain"])
        return cls(**raw)


def default_workers() -> int:
    """Worker count for parameter sweeps.

    Honors ``SALIMITS_WORKERS`` when set; otherwise a small multiple of the
    CPU count. Results never depend on the worker count (emission is ordered
    by parameter index).
    """
    env = os.environ.get("SALIMITS_WORKERS")
    if env:
        return max(1, int(env))
    return max(1, min(8, os.cpu_count() or 1))
