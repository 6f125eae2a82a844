"""S-unimodal interval maps.

A map ``f : [a, b] -> [a, b]`` is S-unimodal when it is C^3, strictly
increasing on ``[a, c)`` and strictly decreasing on ``(c, b]`` for a single
critical point ``c``, fixes the left endpoint ``a``, and has negative
Schwarzian derivative away from ``c``. Two parametric families ship
registered (logistic and sine); custom families can be registered and get
finite-difference derivatives and generic root-searching in place of the
closed forms the compiled kernels use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

import numpy as np

from . import _kernels
from .config import TOL_ROOT
from .errors import DomainError, EscapeError

_BISECT_ITERS = 80
_FD_H_REL = 1e-3  # 5-point first derivative stencil, relative to b - a


@dataclass(frozen=True, eq=False)
class UnimodalMap:
    """An S-unimodal map instance, pinned to one parameter value.

    Parameters
    ----------
    family : str
        Registry name ("logistic", "sine", or a custom registration).
    mu : float
        Family parameter.
    a, b : float
        Domain endpoints; ``f(a) == a``.
    c : float
        The critical point.
    kernel_code : int or None
        Code of the compiled kernel family, or None for custom families
        (which run through Python evaluation everywhere).
    """

    family: str
    mu: float
    a: float
    b: float
    c: float
    kernel_code: Optional[int]
    _f: Callable[[float], float] = field(repr=False)
    _df: Optional[Callable[[float], float]] = field(repr=False, default=None)

    # -- evaluation ----------------------------------------------------

    def _check_domain(self, x: float) -> None:
        if not (self.a <= x <= self.b):
            raise DomainError(f"{x!r} outside domain [{self.a}, {self.b}]")

    def __call__(self, x: float) -> float:
        self._check_domain(x)
        return self._f(x)

    def eval_raw(self, x: float) -> float:
        """Evaluate without the domain check (for FD stencils and brackets)."""
        return self._f(x)

    def derivative(self, x: float) -> float:
        if self._df is not None:
            return self._df(x)
        h = _FD_H_REL * (self.b - self.a)
        f = self._f
        return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) / (12.0 * h)

    def iterate(self, x: float, n: int) -> float:
        """f^n(x). Raises EscapeError if a custom family leaves the domain."""
        self._check_domain(x)
        if self.kernel_code is not None:
            return _kernels.iterate_scalar(self.kernel_code, self.mu, x, n)
        for k in range(n):
            x = self._f(x)
            if not (self.a <= x <= self.b):
                raise EscapeError(f"orbit left the domain at step {k + 1}", step=k + 1, point=x)
        return x

    def orbit(self, x: float, n: int) -> np.ndarray:
        """``[x, f(x), ..., f^n(x)]``."""
        self._check_domain(x)
        if self.kernel_code is not None:
            return _kernels.orbit_array(self.kernel_code, self.mu, x, n)
        out = np.empty(n + 1, dtype=np.float64)
        out[0] = x
        for k in range(n):
            x = self._f(x)
            if not (self.a <= x <= self.b):
                raise EscapeError(f"orbit left the domain at step {k + 1}", step=k + 1, point=x)
            out[k + 1] = x
        return out

    def iterate_many(self, xs, n: int) -> np.ndarray:
        """Apply f^n elementwise to an array of points."""
        if self.kernel_code is not None:
            return _kernels.iterate_array(self.kernel_code, self.mu, xs, n)
        arr = np.array(xs, dtype=np.float64, copy=True)
        flat = arr.ravel()
        for i in range(flat.size):
            flat[i] = self.iterate(float(flat[i]), n)
        return arr

    def critical_orbit(self, n: int) -> "CriticalOrbit":
        """The forward orbit of the critical point, c_0 = c through c_n."""
        return CriticalOrbit(self, self.orbit(self.c, n))

    def at_parameter(self, mu: float) -> "UnimodalMap":
        """Same family at a different parameter value."""
        return make_map(self.family, mu)

    # -- inverse branches ----------------------------------------------

    def _branch_root(self, y: float, lo: float, hi: float) -> float:
        """Bisection solve of f(x) = y on a monotone branch [lo, hi]."""
        f = self._f
        flo = f(lo) - y
        if flo == 0.0:
            return lo
        fhi = f(hi) - y
        if fhi == 0.0:
            return hi
        if (flo > 0.0) == (fhi > 0.0):
            raise DomainError(f"no preimage of {y!r} on branch [{lo}, {hi}]")
        for _ in range(_BISECT_ITERS):
            mid = 0.5 * (lo + hi)
            if mid == lo or mid == hi:
                break
            fm = f(mid) - y
            if fm == 0.0:
                return mid
            if (fm > 0.0) == (flo > 0.0):
                lo, flo = mid, fm
            else:
                hi, fhi = mid, fm
        return 0.5 * (lo + hi)

    def preimages(self, y: float, tol_root: float = TOL_ROOT) -> list[float]:
        """All solutions of f(x) = y, ascending.

        Two roots for y below f(c), the single root c when y matches f(c)
        within tol_root, none for y above f(c). Root finding is plain
        bisection on each monotone branch, independent of the closed forms
        used inside the compiled kernels.
        """
        self._check_domain(y)
        fc = self._f(self.c)
        if abs(y - fc) <= tol_root:
            return [self.c]
        if y > fc:
            return []
        roots: list[float] = []
        if y >= self._f(self.a):
            roots.append(self._branch_root(y, self.a, self.c))
        if y >= self._f(self.b):
            roots.append(self._branch_root(y, self.b, self.c))
        roots.sort()
        return roots

    def hat(self, p: float) -> float:
        """The conjugate point: the other solution of f(x) = f(p).

        hat(c) == c; for p != c the result lies on the opposite side of c.
        """
        self._check_domain(p)
        if p == self.c:
            return self.c
        if p == self.a:  # f(a) = f(b) = a for this map class; exact by contract
            return self.b
        if p == self.b:
            return self.a
        y = self._f(p)
        fc = self._f(self.c)
        if y >= fc:
            # p is so close to c that f cannot separate them; the symmetric
            # reflection is then accurate to o(tol_root) for a C^3 map.
            return 2.0 * self.c - p
        if p < self.c:
            if y < self._f(self.b):
                raise DomainError(f"f({p!r}) below the range of the decreasing branch")
            return self._branch_root(y, self.b, self.c)
        if y < self._f(self.a):
            raise DomainError(f"f({p!r}) below the range of the increasing branch")
        return self._branch_root(y, self.a, self.c)

    def __repr__(self) -> str:  # noqa: D105
        return f"UnimodalMap({self.family}, mu={self.mu!r})"


@dataclass(frozen=True, eq=False)
class CriticalOrbit:
    """Forward orbit of the critical point; ``point(k)`` is c_k = f^k(c)."""

    map: UnimodalMap
    points: np.ndarray

    def point(self, k: int) -> float:
        return float(self.points[k])

    def __getitem__(self, k: int) -> float:
        return float(self.points[k])

    def __len__(self) -> int:
        return len(self.points)


# -- family registry ----------------------------------------------------

FAMILIES: Dict[str, Callable[[float], UnimodalMap]] = {}


def register_family(name: str, factory: Callable[[float], UnimodalMap]) -> None:
    FAMILIES[name] = factory


def make_map(family: str, mu: float) -> UnimodalMap:
    try:
        factory = FAMILIES[family]
    except KeyError:
        raise DomainError(f"unknown family {family!r}; registered: {sorted(FAMILIES)}") from None
    return factory(mu)


def _logistic(mu: float) -> UnimodalMap:
    if not (0.0 < mu <= 4.0):
        raise DomainError(f"logistic parameter {mu!r} outside (0, 4]")
    return UnimodalMap(
        family="logistic",
        mu=mu,
        a=0.0,
        b=1.0,
        c=0.5,
        kernel_code=_kernels.LOGISTIC,
        _f=lambda x: mu * x * (1.0 - x),
        _df=lambda x: mu * (1.0 - 2.0 * x),
    )


def _sine(mu: float) -> UnimodalMap:
    if not (0.0 < mu <= 1.0):
        raise DomainError(f"sine parameter {mu!r} outside (0, 1]")
    return UnimodalMap(
        family="sine",
        mu=mu,
        a=0.0,
        b=1.0,
        c=0.5,
        kernel_code=_kernels.SINE,
        _f=lambda x: mu * math.sin(math.pi * x),
        _df=lambda x: mu * math.pi * math.cos(math.pi * x),
    )


register_family("logistic", _logistic)
register_family("sine", _sine)


def locate_critical_point(f: Callable[[float], float], a: float, b: float) -> float:
    """Critical point of a unimodal f on [a, b].

    Golden-section bracketing of the maximum followed by bisection on a
    central finite-difference derivative, so the location is resolved far
    below the sqrt(eps) limit of pure maximum search.
    """
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    lo, hi = a, b
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(60):
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = f(x1)
        if hi - lo < 1e-6 * (b - a):
            break
    h = 1e-7 * (b - a)
    df = lambda x: (f(x + h) - f(x - h)) / (2.0 * h)
    lo2, hi2 = max(a + 2 * h, lo - 1e-5), min(b - 2 * h, hi + 1e-5)
    dlo, dhi = df(lo2), df(hi2)
    if not (dlo > 0.0 > dhi):
        return 0.5 * (lo + hi)
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo2 + hi2)
        if mid == lo2 or mid == hi2:
            break
        dm = df(mid)
        if dm > 0.0:
            lo2 = mid
        else:
            hi2 = mid
    return 0.5 * (lo2 + hi2)


# -- verification --------------------------------------------------------


@dataclass
class SUnimodalReport:
    """Outcome of the S-unimodality checks on a sampling grid."""

    ok: bool
    endpoint_fixed: bool
    into_domain: bool
    increasing_left: bool
    decreasing_right: bool
    schwarzian_negative: bool
    notes: list[str]


def check_sunimodal(m: UnimodalMap, samples: int = 2048) -> SUnimodalReport:
    """Sample-based verification that ``m`` satisfies the standing assumptions.

    Monotonicity is checked on ``samples`` points per branch; the Schwarzian
    derivative is estimated by central differences with step
    ``h = 1e-4 (b-a)`` and points within ``5h`` of the critical point are
    skipped (the estimate degenerates with f').
    """
    f = m._f
    a, b, c = m.a, m.b, m.c
    notes: list[str] = []

    endpoint_fixed = abs(f(a) - a) <= TOL_ROOT * max(1.0, abs(a))
    if not endpoint_fixed:
        notes.append(f"f(a) = {f(a)!r} != a")

    xs = np.linspace(a, b, samples)
    ys = np.array([f(float(x)) for x in xs])
    into_domain = bool(np.all(ys >= a - TOL_ROOT) and np.all(ys <= b + TOL_ROOT))
    if not into_domain:
        bad = float(xs[int(np.argmax((ys < a - TOL_ROOT) | (ys > b + TOL_ROOT)))])
        notes.append(f"image leaves the domain near x = {bad!r}")

    left = np.linspace(a, c, samples)
    fl = np.array([f(float(x)) for x in left])
    increasing_left = bool(np.all(np.diff(fl) > -1e-15))
    if not increasing_left:
        bad = float(left[int(np.argmax(np.diff(fl) <= -1e-15))])
        notes.append(f"not increasing near x = {bad!r}")

    right = np.linspace(c, b, samples)
    fr = np.array([f(float(x)) for x in right])
    decreasing_right = bool(np.all(np.diff(fr) < 1e-15))
    if not decreasing_right:
        bad = float(right[int(np.argmax(np.diff(fr) >= 1e-15))])
        notes.append(f"not decreasing near x = {bad!r}")

    h = 1e-4 * (b - a)
    schwarzian_negative = True
    for x in np.linspace(a + 2 * h, b - 2 * h, samples):
        x = float(x)
        if abs(x - c) < 5 * h:
            continue
        fm2, fm1, f0, fp1, fp2 = (f(x - 2 * h), f(x - h), f(x), f(x + h), f(x + 2 * h))
        d1 = (fp1 - fm1) / (2 * h)
        d2 = (fp1 - 2 * f0 + fm1) / (h * h)
        d3 = (fp2 - 2 * fp1 + 2 * fm1 - fm2) / (2 * h * h * h)
        if d1 == 0.0:
            continue
        s = d3 / d1 - 1.5 * (d2 / d1) ** 2
        if s >= 1e-6:
            schwarzian_negative = False
            notes.append(f"Schwarzian {s!r} >= 0 at x = {x!r}")
            break

    ok = (
        endpoint_fixed
        and into_domain
        and increasing_left
        and decreasing_right
        and schwarzian_negative
    )
    return SUnimodalReport(
        ok=ok,
        endpoint_fixed=endpoint_fixed,
        into_domain=into_domain,
        increasing_left=increasing_left,
        decreasing_right=decreasing_right,
        schwarzian_negative=schwarzian_negative,
        notes=notes,
    )
