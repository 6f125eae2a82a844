"""Periodic orbit search and stability classification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import PROBE_DELTA, TOL_ROOT, TOL_STAB
from .errors import LimitError
from .maps import UnimodalMap

DEDUP_TOL = 100.0 * TOL_ROOT
MAX_PERIOD = 64


@dataclass(frozen=True)
class Cycle:
    """A periodic orbit.

    ``points`` are in orbit order starting from the smallest point, so
    ``f(points[i])`` is ``points[(i+1) % period]``. The multiplier is the
    derivative of f^period along the orbit.
    """

    points: tuple
    period: int
    multiplier: float
    stability: str  # "attracting" | "repelling" | "neutral"

    @property
    def min_point(self) -> float:
        return self.points[0]

    def sorted_points(self) -> tuple:
        return tuple(sorted(self.points))

    def nearest(self, x: float) -> float:
        return min(self.points, key=lambda p: (abs(p - x), p))

    def distance(self, x: float) -> float:
        return min(abs(p - x) for p in self.points)


def classify_multiplier(mult: float, tol: float = TOL_STAB) -> str:
    if abs(mult) < 1.0 - tol:
        return "attracting"
    if abs(mult) > 1.0 + tol:
        return "repelling"
    return "neutral"


def cycle_multiplier(m: UnimodalMap, points) -> float:
    out = 1.0
    for p in points:
        out *= m.derivative(float(p))
    return out


def cycle_from_point(m: UnimodalMap, x: float, period: int) -> Cycle:
    """Build the Cycle through ``x``; ``x`` must be (near-)periodic already."""
    orb = m.orbit(x, period)
    pts = [float(v) for v in orb[:period]]
    i0 = min(range(period), key=lambda i: pts[i])
    pts = pts[i0:] + pts[:i0]
    mult = cycle_multiplier(m, pts)
    return Cycle(tuple(pts), period, mult, classify_multiplier(mult))


def _newton_polish(m: UnimodalMap, period: int, x: float, lo: float, hi: float) -> float:
    for _ in range(8):
        orb = m.orbit(x, period)
        g = float(orb[period]) - x
        dg = 1.0
        for i in range(period):
            dg *= m.derivative(float(orb[i]))
        dg -= 1.0
        if dg == 0.0:
            break
        step = g / dg
        xn = x - step
        if not (lo <= xn <= hi):
            break
        x = xn
        if abs(step) < 1e-15:
            break
    return x


def _refine_root(m, period, lo, hi, glo):
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        gm = float(m.iterate(mid, period)) - mid
        if gm == 0.0:
            return mid
        if (gm > 0.0) == (glo > 0.0):
            lo, glo = mid, gm
        else:
            hi = mid
        if hi - lo < 1e-13:
            break
    x = 0.5 * (lo + hi)
    pad = max(hi - lo, 1e-9)
    return _newton_polish(m, period, x, lo - pad, hi + pad)


def periodic_points(
    m: UnimodalMap,
    period: int,
    lo: Optional[float] = None,
    hi: Optional[float] = None,
    scan_n: int = 4096,
) -> list[float]:
    """Refined solutions of f^period(x) = x in [lo, hi], ascending.

    Sign scan on scan_n * period subdivisions, bisection per bracket, then
    Newton using the chain-rule derivative. No primitivity filtering here.
    Tangent cycles (no sign change) are invisible to this search.
    """
    lo = m.a if lo is None else lo
    hi = m.b if hi is None else hi
    n = scan_n * period
    grid = np.linspace(lo, hi, n + 1)
    vals = np.asarray(m.iterate_many(grid, period)) - grid

    roots = [float(grid[i]) for i in np.nonzero(vals == 0.0)[0]]
    sign_change = (vals[:-1] > 0.0) != (vals[1:] > 0.0)
    nonzero = (vals[:-1] != 0.0) & (vals[1:] != 0.0)
    for i in np.nonzero(sign_change & nonzero)[0]:
        roots.append(
            _refine_root(m, period, float(grid[i]), float(grid[i + 1]), float(vals[i]))
        )

    roots.sort()
    dedup: list[float] = []
    for r in roots:
        if not dedup or r - dedup[-1] > DEDUP_TOL:
            dedup.append(r)
    return dedup


def _proper_divisors(n: int) -> list[int]:
    return [d for d in range(1, n) if n % d == 0]


def find_cycles(
    m: UnimodalMap,
    period: int,
    scan_n: int = 4096,
    lo: Optional[float] = None,
    hi: Optional[float] = None,
    max_period: int = MAX_PERIOD,
) -> list[Cycle]:
    """All primitive period-``period`` cycles with a point in [lo, hi].

    Cycles are deduplicated by orbit and sorted by smallest point. Roots of
    f^period whose primitive period properly divides ``period`` are dropped.
    """
    if period < 1:
        raise ValueError(f"period must be >= 1, got {period}")
    if period > max_period:
        raise LimitError(f"period {period} exceeds max_period {max_period}")
    cycles: list[Cycle] = []
    seen: list[float] = []
    for x in periodic_points(m, period, lo, hi, scan_n):
        if any(abs(float(m.iterate(x, q)) - x) < DEDUP_TOL for q in _proper_divisors(period)):
            continue
        cyc = cycle_from_point(m, x, period)
        if any(abs(cyc.min_point - s) < DEDUP_TOL for s in seen):
            continue
        seen.append(cyc.min_point)
        cycles.append(cyc)
    cycles.sort(key=lambda cc: cc.min_point)
    return cycles


def find_fixed_points(m: UnimodalMap, scan_n: int = 4096) -> list[Cycle]:
    return find_cycles(m, 1, scan_n)


def closest_periodic_point(m: UnimodalMap, x: float, period: int, scan_n: int = 4096):
    """The period-``period`` orbit point nearest x (ties toward the left).

    Returns (point, cycle).
    """
    best = None
    for cyc in find_cycles(m, period, scan_n):
        for p in cyc.points:
            key = (abs(p - x), p)
            if best is None or key < best[0]:
                best = (key, p, cyc)
    if best is None:
        raise LimitError(f"no primitive period-{period} cycle found")
    return best[1], best[2]


def one_sided_attraction(
    m: UnimodalMap, cyc: Cycle, delta: float = PROBE_DELTA
) -> Optional[str]:
    """Probe which side of a cycle attracts; for neutral multiplier +1.

    Returns "left", "right", "both", or None. Probes are planted beside the
    orbit point farthest from c (to avoid folding over the critical point)
    and iterated under f^period; if 200 applications neither converge nor
    escape, the single-application displacement direction decides.
    """
    p = max(cyc.points, key=lambda q: abs(q - m.c))
    out = {}
    for s, label in ((-1.0, "left"), (1.0, "right")):
        x0 = p + s * delta
        if not (m.a <= x0 <= m.b):
            out[label] = False
            continue
        x = x0
        verdict = None
        for _ in range(200):
            x = float(m.iterate(x, cyc.period))
            d = abs(x - p)
            if d < 0.2 * delta:
                verdict = True
                break
            if d > 50.0 * delta:
                verdict = False
                break
        if verdict is None:
            y = float(m.iterate(x0, cyc.period))
            verdict = abs(y - p) < abs(x0 - p)
        out[label] = verdict
    if out["left"] and out["right"]:
        return "both"
    if out["left"]:
        return "left"
    if out["right"]:
        return "right"
    return None
