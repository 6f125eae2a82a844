"""Chain-recurrent node towers for S-unimodal maps.

The chain-recurrent set of an S-unimodal map decomposes into finitely many
linearly ordered nodes N_0 > N_1 > ... > N_p (plus at most one exceptional
deep node). Each non-terminal node is a repelling cycle or a Cantor
repeller and carries a cyclic trapping region; the terminal node is the
attractor. This module builds that structure by recursive renormalization:
at each level it analyses the return map g = f^r on the central interval
J_1 of the current region, and either descends through a period-doubling
(flip) region, descends through a periodic-window region past a Cantor
node, or terminates on the attractor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .config import Settings, TOL_GEOM, TOL_ROOT
from .errors import AnalysisError, DomainError, LimitError
from .intervals import IntervalSet, union_all
from .maps import UnimodalMap, make_map
from .orbits import (
    DEDUP_TOL,
    MAX_PERIOD,
    Cycle,
    classify_multiplier,
    cycle_from_point,
    cycle_multiplier,
    find_fixed_points,
    one_sided_attraction,
    periodic_points,
    _proper_divisors,
)

_BOUNDARY_TOL = 1e-8  # closing error allowed on region boundary orbits


@dataclass(frozen=True)
class TrappingRegion:
    """A cyclic trapping region K_1, ..., K_R with f(K_i) contained in K_{i+1}.

    ``intervals`` lists the K_i in cyclic order with K_1 containing the
    critical point. ``gamma`` is the repelling boundary cycle (gamma_1 the
    point nearest c), ``qs`` the conjugate boundary points q_1, ..., q_R.
    Flip regions (R = 2 * gamma.period) share endpoints at the gamma points;
    regular regions have pairwise disjoint closures. ``margins`` records how
    far each validity inequality held, for bifurcation-proximity reporting.
    """

    intervals: tuple
    period: int
    flip: bool
    gamma: Cycle
    qs: tuple
    margins: dict = field(repr=False)

    @property
    def j1(self) -> tuple:
        return self.intervals[0]

    def interval_set(self) -> IntervalSet:
        return IntervalSet.from_pairs(self.intervals)

    def contains(self, x: float) -> bool:
        return any(lo <= x <= hi for lo, hi in self.intervals)


def cyclic_region(
    m: UnimodalMap,
    gamma: Cycle,
    flip: bool,
    parent: Optional[TrappingRegion] = None,
):
    """Construct the cyclic trapping region spanned by the cycle ``gamma``.

    Returns (region, reason): the region, or None with the first validity
    check that failed. The construction is the backward boundary chain:
    K_1 = [p_1, hat(p_1)] around c, and q_{i} the f-preimage of q_{i+1} on
    gamma's side of c, closing up with f(q_1) = gamma_2.
    """
    r_g = gamma.period
    big_r = 2 * r_g if flip else r_g
    c = m.c
    c1 = m.eval_raw(c)

    pts = list(gamma.points)
    i0 = min(range(r_g), key=lambda i: (abs(pts[i] - c), pts[i]))
    orbit = pts[i0:] + pts[:i0]  # gamma_1 .. gamma_{r_g}, orbit order
    p1 = orbit[0]
    try:
        q1 = m.hat(p1)
    except DomainError as exc:
        return None, f"no conjugate point: {exc}"

    k1 = (min(p1, q1), max(p1, q1))
    c_margin = min(c - k1[0], k1[1] - c)
    if c_margin <= TOL_GEOM:
        return None, "critical point not interior to K_1"

    # backward boundary chain q_R, q_{R-1}, ..., q_2
    qs = [0.0] * (big_r + 1)
    qs[1] = q1
    for i in range(big_r, 1, -1):
        target = qs[i + 1] if i < big_r else q1
        if target > c1 + TOL_ROOT:
            return None, f"boundary target {target!r} above the critical value"
        roots = m.preimages(target)
        if not roots:
            return None, f"no preimage of boundary point {target!r}"
        g_i = orbit[(i - 1) % r_g]
        if len(roots) == 1:
            qs[i] = roots[0]
        else:
            qs[i] = roots[1] if g_i > c else roots[0]

    intervals = [k1]
    for i in range(2, big_r + 1):
        g_i = orbit[(i - 1) % r_g]
        intervals.append((min(g_i, qs[i]), max(g_i, qs[i])))

    # critical point must meet no other interval's interior
    for lo, hi in intervals[1:]:
        if lo + TOL_GEOM < c < hi - TOL_GEOM:
            return None, "critical point interior to a side interval"

    # boundary orbit closes: f(q_1) = gamma_2, f(q_i) = q_{i+1}
    g2 = orbit[1 % r_g]
    if abs(m.eval_raw(q1) - g2) > _BOUNDARY_TOL:
        return None, "boundary orbit fails to close at q_1"

    # the crisis inequality: f(K_1) inside K_2, i.e. c_1 in K_2
    k2 = intervals[1 % big_r]
    crisis_margin = min(c1 - k2[0], k2[1] - c1)
    if crisis_margin < -TOL_GEOM:
        return None, "critical value escapes K_2"

    # pairwise disjoint interiors (shared endpoints allowed: flip contact)
    order = sorted(range(big_r), key=lambda i: intervals[i][0])
    gap_margin = math.inf
    for u, v in zip(order, order[1:]):
        gap = intervals[v][0] - intervals[u][1]
        if gap < -TOL_GEOM:
            return None, "intervals overlap"
        if gap > TOL_GEOM:
            gap_margin = min(gap_margin, gap)

    # strict nesting inside the parent region
    nest_margin = math.inf
    if parent is not None:
        rp = parent.period
        for i in range(1, big_r + 1):
            plo, phi = parent.intervals[(i - 1) % rp]
            lo, hi = intervals[i - 1]
            margin = min(lo - plo, phi - hi)
            if margin <= TOL_GEOM:
                return None, "not nested inside the parent region"
            nest_margin = min(nest_margin, margin)

    margins = {
        "c": c_margin,
        "crisis": crisis_margin,
        "gap": gap_margin,
        "nest": nest_margin,
    }
    region = TrappingRegion(
        intervals=tuple(intervals),
        period=big_r,
        flip=flip,
        gamma=Cycle(tuple(orbit), r_g, gamma.multiplier, gamma.stability),
        qs=tuple(qs[1:]),
        margins=margins,
    )
    return region, ""


def root_region(m: UnimodalMap):
    """The level-0 region [a, b] built on the fixed endpoint."""
    mult = m.derivative(m.a)
    fixed = Cycle((m.a,), 1, mult, classify_multiplier(mult))
    return cyclic_region(m, fixed, flip=False, parent=None)


def band_intervals(m: UnimodalMap, r: int):
    """Period-r band attractor candidates hull(c_j, c_{j+r}), j = 1..r.

    Returns (pairs, min_gap): the bands sorted by position and the smallest
    signed gap between consecutive bands (negative = overlap).
    """
    co = m.critical_orbit(2 * r).points
    pairs = sorted(
        (min(float(co[j]), float(co[j + r])), max(float(co[j]), float(co[j + r])))
        for j in range(1, r + 1)
    )
    min_gap = math.inf
    for (lo1, hi1), (lo2, hi2) in zip(pairs, pairs[1:]):
        min_gap = min(min_gap, lo2 - hi1)
    return pairs, min_gap


# -- attractor detection -------------------------------------------------


@dataclass
class AttractorInfo:
    kind: str  # "cycle" | "bands" | "undecided"
    cycle: Optional[Cycle] = None
    one_sided: Optional[str] = None
    bands: Optional[IntervalSet] = None
    band_period: Optional[int] = None
    diagnostics: dict = field(default_factory=dict)


def find_attractor(
    m: UnimodalMap,
    transient: int = 4096,
    samples: int = 4096,
    q_max: int = 64,
    cycle_tol: float = 1e-7,
) -> AttractorInfo:
    """Classify the attractor from the critical orbit.

    Detects an attracting (or neutrally attracting) cycle when the orbit
    settles to period q within ``cycle_tol``; Newton-refines it unless the
    multiplier is within 0.1 of +1 (a tangency, where Newton is ill-posed
    and the converged sample is kept). Otherwise infers a period-r band
    attractor as the largest q whose orbit residue classes have pairwise
    disjoint hulls; hitting ``q_max`` means the attractor's period structure
    exceeds the detection cap and the result is "undecided".
    """
    orb = m.orbit(m.c, transient + samples)
    tail = np.asarray(orb[transient:])

    for q in range(1, q_max + 1):
        d = float(np.max(np.abs(tail[q:] - tail[:-q])))
        if d >= cycle_tol:
            continue
        period = q
        for dv in _proper_divisors(q):
            if float(np.max(np.abs(tail[dv:] - tail[:-dv]))) < cycle_tol:
                period = dv
                break
        x0 = float(tail[-1])
        mult_raw = cycle_multiplier(m, [m.iterate(x0, i) for i in range(period)])
        if abs(mult_raw - 1.0) > 0.1:
            x0 = _newton_cycle(m, x0, period)
        cyc = cycle_from_point(m, x0, period)
        one = None
        if abs(cyc.multiplier - 1.0) < 0.01:
            one = one_sided_attraction(m, cyc, delta=1e-4)
        return AttractorInfo(
            "cycle",
            cycle=cyc,
            one_sided=one,
            diagnostics={"settle": d, "raw_multiplier": mult_raw},
        )

    q_star = 1
    for q in range(1, q_max + 1):
        hulls = sorted(
            (float(np.min(tail[j::q])), float(np.max(tail[j::q]))) for j in range(q)
        )
        if all(h2[0] > h1[1] for h1, h2 in zip(hulls, hulls[1:])):
            q_star = q
    if q_star == q_max:
        return AttractorInfo("undecided", diagnostics={"q_star": q_star})
    pairs, min_gap = band_intervals(m, q_star)
    return AttractorInfo(
        "bands",
        bands=IntervalSet.from_pairs(pairs),
        band_period=q_star,
        diagnostics={"band_gap": min_gap},
    )


def _newton_cycle(m: UnimodalMap, x: float, period: int) -> float:
    for _ in range(8):
        orb = m.orbit(x, period)
        g = float(orb[period]) - x
        dg = cycle_multiplier(m, orb[:period]) - 1.0
        if dg == 0.0:
            break
        xn = x - g / dg
        if not (m.a <= xn <= m.b):
            break
        if abs(xn - x) < 1e-15:
            x = xn
            break
        x = xn
    return x


# -- nodes and towers -----------------------------------------------------


@dataclass(eq=False)
class Node:
    """One chain-recurrence class.

    ``kind`` is "repelling_cycle", "cantor", or "attracting"; attracting
    nodes carry ``attracting_type`` 1 (cycle), 2 (cyclic bands), 4
    (neutral one-sided cycle), or 5 (bands merged with the boundary
    repeller). ``region`` is the trapping region built from this node
    (non-terminal nodes only); ``parent_region`` the region it lives in.
    """

    map: UnimodalMap = field(repr=False)
    kind: str
    cycle: Optional[Cycle] = None
    attracting_type: Optional[int] = None
    region: Optional[TrappingRegion] = None
    parent_region: Optional[TrappingRegion] = None
    bands: Optional[IntervalSet] = None
    merged_parent: Optional["Node"] = None
    index: int = -1
    diagnostics: dict = field(default_factory=dict, repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    def points(self) -> tuple:
        return self.cycle.sorted_points() if self.cycle is not None else ()

    def support_set(self, depth: Optional[int] = None) -> IntervalSet:
        """The node's support; Cantor nodes are approximated by cylinder
        intervals of word length ``depth`` (config default)."""
        if self.kind == "repelling_cycle":
            return IntervalSet.from_points(self.points())
        if self.kind == "cantor":
            return self.cantor_support(depth)[0]
        t = self.attracting_type
        if t in (2,):
            return self.bands
        if t == 4:
            return self.bands if self.bands is not None else IntervalSet.from_points(self.points())
        if t == 5:
            base = self.merged_parent.support_set(depth)
            return base | IntervalSet.from_pairs(self.region.intervals)
        return IntervalSet.from_points(self.points())

    def omega_set(self, depth: Optional[int] = None) -> IntervalSet:
        if self.attracting_type == 5:
            return self.bands | self.merged_parent.support_set(depth)
        return self.support_set(depth)

    def wandering_set(self, depth: Optional[int] = None) -> IntervalSet:
        if self.attracting_type == 5:
            return self.support_set(depth) - self.omega_set(depth)
        return IntervalSet.empty()

    def cantor_support(self, depth: Optional[int] = None):
        """(approximation, hausdorff_bound) for a Cantor node."""
        if self.kind != "cantor":
            raise AnalysisError("cantor_support on a non-Cantor node")
        d = Settings().cantor_depth if depth is None else depth
        if d not in self._cache:
            from .symbolic import cantor_cover

            self._cache[d] = cantor_cover(self, d)
        return self._cache[d]


@dataclass(eq=False)
class Tower:
    """The node tower, outermost (N_0) first."""

    map: UnimodalMap
    nodes: list
    truncated: bool = False
    diagnostics: dict = field(default_factory=dict)

    @property
    def p(self) -> int:
        return len(self.nodes) - 1

    def node(self, k: int) -> Node:
        return self.nodes[k]

    @property
    def attracting_node(self) -> Optional[Node]:
        last = self.nodes[-1]
        return last if last.kind == "attracting" else None

    def min_structural_margin(self) -> float:
        """Smallest validity margin over all regions/bands in the tower,
        plus the attractor's distance from neutral stability. A proxy for
        distance to the nearest bifurcation (mixed units)."""
        worst = math.inf
        for nd in self.nodes:
            if nd.region is not None:
                mg = nd.region.margins
                worst = min(worst, mg["c"], mg["crisis"], mg["nest"], mg["gap"])
            if nd.kind == "attracting":
                if nd.cycle is not None:
                    worst = min(worst, abs(1.0 - abs(nd.cycle.multiplier)))
                if nd.attracting_type in (2, 5) and "band_gap" in nd.diagnostics:
                    worst = min(worst, abs(nd.diagnostics["band_gap"]))
                if nd.attracting_type == 5:
                    worst = min(worst, 0.0)
        return worst


def _interior_fixed_points(m, region, scan_n):
    lo, hi = region.j1
    etol = max(1e-10, 1e-6 * (hi - lo))
    pts = periodic_points(m, region.period, lo, hi, scan_n)
    return [x for x in pts if lo + etol < x < hi - etol]


def primitive_period(m: UnimodalMap, x: float, r: int) -> int:
    for q in [d for d in range(1, r + 1) if r % d == 0]:
        if abs(float(m.iterate(x, q)) - x) < DEDUP_TOL:
            return q
    return r


def _window_regions(m, region, scan_n, s_max, max_period):
    """All valid regular sub-regions from repelling return cycles in J_1."""
    r = region.period
    lo, hi = region.j1
    etol = max(1e-10, 1e-6 * (hi - lo))
    found = []
    for s in range(3, s_max + 1):
        big_r = r * s
        if big_r > max_period:
            break
        seen: list[float] = []
        for x in periodic_points(m, big_r, lo, hi, scan_n):
            if not (lo + etol < x < hi - etol):
                continue
            if any(
                abs(float(m.iterate(x, r * j)) - x) < DEDUP_TOL
                for j in _proper_divisors(s)
            ):
                continue
            gorb = [x]
            for _ in range(s - 1):
                gorb.append(float(m.iterate(gorb[-1], r)))
            key = min(gorb)
            if any(abs(key - k0) < DEDUP_TOL for k0 in seen):
                continue
            seen.append(key)
            q = primitive_period(m, x, big_r)
            cyc = cycle_from_point(m, x, q)
            if cyc.stability != "repelling":
                continue
            reg, _ = cyclic_region(m, cyc, flip=False, parent=region)
            if reg is not None:
                found.append(reg)
    return found


def build_tower(
    m: UnimodalMap,
    scan_n: Optional[int] = None,
    max_depth: int = 16,
    s_max: int = 16,
    max_period: int = MAX_PERIOD,
) -> Tower:
    """Compute the full node tower of ``m``.

    Raises AnalysisError (with the partial tower attached) when the
    attractor's period structure exceeds the detection cap; returns a tower
    with ``truncated=True`` when the recursion depth or region period cap
    is reached before the attractor is resolved.
    """
    scan_n = Settings().scan_n if scan_n is None else scan_n
    diag: dict = {"levels": []}

    mult_a = m.derivative(m.a)
    if classify_multiplier(mult_a) != "repelling":
        cyc = Cycle((m.a,), 1, mult_a, classify_multiplier(mult_a))
        node = Node(m, "attracting", cycle=cyc, attracting_type=1)
        node.index = 0
        return Tower(m, [node], diagnostics=diag)

    region, reason = root_region(m)
    if region is None:
        raise AnalysisError(f"no base trapping region: {reason}")
    nodes = [
        Node(
            m,
            "repelling_cycle",
            cycle=region.gamma,
            region=region,
            parent_region=None,
        )
    ]
    truncated = False

    for _depth in range(1, max_depth + 1):
        r = region.period
        if r > max_period:
            truncated = True
            diag["period_cap"] = r
            break
        interior = _interior_fixed_points(m, region, scan_n)
        if len(interior) > 1:
            raise AnalysisError(
                "return map has multiple interior fixed points",
                diagnostics={"points": interior, "period": r},
                partial=Tower(m, nodes, truncated=True, diagnostics=diag),
            )

        if interior:
            x_bar = interior[0]
            q = primitive_period(m, x_bar, r)
            gamma = cycle_from_point(m, x_bar, q)
            diag["levels"].append({"period": r, "fixed_point": x_bar, "multiplier": gamma.multiplier})

            if gamma.stability == "attracting":
                node = Node(m, "attracting", cycle=gamma, attracting_type=1, parent_region=region)
                nodes.append(node)
                break
            if gamma.stability == "neutral":
                one = one_sided_attraction(m, gamma, delta=1e-4)
                if gamma.multiplier > 0 and one in ("left", "right"):
                    pairs, min_gap = band_intervals(m, r)
                    node = Node(
                        m,
                        "attracting",
                        cycle=gamma,
                        attracting_type=4,
                        parent_region=region,
                        bands=IntervalSet.from_pairs(pairs),
                        diagnostics={"one_sided": one, "band_gap": min_gap},
                    )
                else:
                    node = Node(
                        m,
                        "attracting",
                        cycle=gamma,
                        attracting_type=1,
                        parent_region=region,
                        diagnostics={"neutral": True, "one_sided": one},
                    )
                nodes.append(node)
                break

            # repelling interior fixed point: try the flip region
            if gamma.multiplier < 0 and 2 * gamma.period <= max_period:
                flip_region, flip_reason = cyclic_region(m, gamma, flip=True, parent=region)
                if flip_region is not None:
                    nodes.append(
                        Node(
                            m,
                            "repelling_cycle",
                            cycle=gamma,
                            region=flip_region,
                            parent_region=region,
                        )
                    )
                    region = flip_region
                    continue
                diag["levels"][-1]["flip_failed"] = flip_reason

        # window search
        windows = _window_regions(m, region, scan_n, s_max, max_period)
        if windows:
            win = max(windows, key=lambda rg: rg.j1[1] - rg.j1[0])
            nodes.append(
                Node(
                    m,
                    "cantor",
                    cycle=win.gamma,
                    region=win,
                    parent_region=region,
                )
            )
            region = win
            continue

        # band exit (also the tangency path: no visible interior fixed point)
        att = find_attractor(m)
        if att.kind == "cycle":
            if att.one_sided in ("left", "right"):
                pairs, min_gap = band_intervals(m, r)
                node = Node(
                    m,
                    "attracting",
                    cycle=att.cycle,
                    attracting_type=4,
                    parent_region=region,
                    bands=IntervalSet.from_pairs(pairs),
                    diagnostics={"one_sided": att.one_sided, "band_gap": min_gap, **att.diagnostics},
                )
            else:
                node = Node(
                    m,
                    "attracting",
                    cycle=att.cycle,
                    attracting_type=1,
                    parent_region=region,
                    diagnostics={"unresolved_window": True, **att.diagnostics},
                )
            nodes.append(node)
            break
        if att.kind == "undecided":
            raise AnalysisError(
                "attractor period structure exceeds the detection cap",
                diagnostics=att.diagnostics,
                partial=Tower(m, nodes, truncated=True, diagnostics=diag),
            )

        pairs, min_gap = band_intervals(m, r)
        r_eff = r
        if min_gap < -TOL_GEOM:
            # wrong band count; fall back to divisors (crisis knife-edge)
            for d in sorted(_proper_divisors(r), reverse=True):
                pairs_d, gap_d = band_intervals(m, d)
                if gap_d >= -TOL_GEOM:
                    pairs, min_gap, r_eff = pairs_d, gap_d, d
                    break
            diag["band_fallback"] = {"from": r, "to": r_eff}
        if att.band_period != r_eff:
            diag["band_period_mismatch"] = {"grid": att.band_period, "orbit": r_eff}

        band_set = IntervalSet.from_pairs(pairs)
        touch = min(
            abs(e - g)
            for lo, hi in pairs
            for e in (lo, hi)
            for g in region.gamma.points
        )
        if touch <= TOL_GEOM:
            parent = nodes.pop()
            node = Node(
                m,
                "attracting",
                cycle=parent.cycle,
                attracting_type=5,
                region=parent.region,
                parent_region=parent.parent_region,
                bands=band_set,
                merged_parent=parent,
                diagnostics={"touch": touch, "band_gap": min_gap, "band_period": r_eff},
            )
        else:
            node = Node(
                m,
                "attracting",
                attracting_type=2,
                parent_region=region,
                bands=band_set,
                diagnostics={"band_gap": min_gap, "band_period": r_eff, "gamma_gap": touch},
            )
        nodes.append(node)
        break
    else:
        truncated = True
        diag["depth_cap"] = max_depth

    for i, nd in enumerate(nodes):
        nd.index = i
    return Tower(m, nodes, truncated=truncated, diagnostics=diag)


# -- parameter location ---------------------------------------------------


def locate_crisis(
    family: str = "logistic",
    lo: float = 3.2,
    hi: float = 3.7,
    tol: float = 1e-10,
) -> float:
    """Parameter of the band-merging crisis: where c_3 meets the interior
    fixed point (equivalently c_2 meets its conjugate), by bisection."""

    def h(mu: float) -> float:
        m = make_map(family, mu)
        x_lo, x_hi = m.c, m.b
        # interior fixed point by bisection of f(x) - x on [c, b]
        for _ in range(80):
            mid = 0.5 * (x_lo + x_hi)
            if m.eval_raw(mid) - mid > 0.0:
                x_lo = mid
            else:
                x_hi = mid
        x_bar = 0.5 * (x_lo + x_hi)
        return float(m.iterate(m.c, 3)) - x_bar

    h_lo, h_hi = h(lo), h(hi)
    if not (h_lo > 0.0 > h_hi):
        raise AnalysisError(f"crisis not bracketed on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if h(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _has_valid_region(m: UnimodalMap, period: int, scan_n: int) -> bool:
    base, _ = root_region(m)
    if base is None:
        return False
    if period == 1:
        etol = 1e-9 * (m.b - m.a)
        pts = [
            x
            for x in periodic_points(m, 1, m.a, m.b, scan_n)
            if m.a + etol < x < m.b - etol
        ]
        for x in pts:
            cyc = cycle_from_point(m, x, 1)
            if cyc.stability != "repelling":
                continue
            reg, _ = cyclic_region(m, cyc, flip=True, parent=base)
            if reg is not None:
                return True
        return False
    seen: list[float] = []
    for x in periodic_points(m, period, m.a, m.b, scan_n):
        if any(
            abs(float(m.iterate(x, q)) - x) < DEDUP_TOL
            for q in _proper_divisors(period)
        ):
            continue
        cyc = cycle_from_point(m, x, period)
        if any(abs(cyc.min_point - s) < DEDUP_TOL for s in seen):
            continue
        seen.append(cyc.min_point)
        if cyc.stability != "repelling":
            continue
        reg, _ = cyclic_region(m, cyc, flip=False, parent=base)
        if reg is not None:
            return True
    return False


def locate_window(
    period: int,
    family: str = "logistic",
    mu_lo: Optional[float] = None,
    mu_hi: Optional[float] = None,
    samples: int = 256,
    tol_start: float = 1e-7,
    tol_end: float = 1e-8,
) -> tuple:
    """Parameter interval over which a valid period-``period`` region exists.

    For period >= 2 this is the periodic window: from the saddle-node birth of
    the repelling cycle to the interior crisis that destroys the region.
    Period 1 gives the analogous interval for the flip region of the
    interior fixed point. Near the saddle-node end the cycle pair is
    resolved with a densified scan, so the start is sharp to ``tol_start``.

    Returns (mu_start, mu_end).
    """
    if mu_lo is None or mu_hi is None:
        if family == "logistic":
            mu_lo, mu_hi = (2.5, 4.0) if mu_lo is None else (mu_lo, 4.0)
        else:
            raise DomainError("mu_lo and mu_hi are required for non-logistic families")
    scan_n = max(4096, -(-(1 << 17) // period))

    def pred(mu: float) -> bool:
        try:
            return _has_valid_region(make_map(family, mu), period, scan_n)
        except (DomainError, LimitError):
            return False

    grid = [mu_lo + (mu_hi - mu_lo) * i / samples for i in range(samples + 1)]
    flags = [pred(mu) for mu in grid]
    runs = []
    i = 0
    while i <= samples:
        if flags[i]:
            j = i
            while j + 1 <= samples and flags[j + 1]:
                j += 1
            runs.append((i, j))
            i = j + 1
        else:
            i += 1
    if not runs:
        raise AnalysisError(
            f"no period-{period} region found in [{mu_lo}, {mu_hi}] at {samples} samples"
        )
    i0, j0 = max(runs, key=lambda ij: ij[1] - ij[0])

    def bisect(mu_false: float, mu_true: float, tol: float) -> float:
        while abs(mu_true - mu_false) > tol:
            mid = 0.5 * (mu_false + mu_true)
            if pred(mid):
                mu_true = mid
            else:
                mu_false = mid
        return mu_true

    if i0 == 0:
        start = grid[0]
    else:
        start = bisect(grid[i0 - 1], grid[i0], tol_start)
    if j0 == samples:
        end = grid[samples]
    else:
        end = bisect(grid[j0 + 1], grid[j0], tol_end)
    return start, end
