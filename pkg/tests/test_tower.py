"""Tower construction across the qualitative regimes of the logistic and
sine families, plus the bisection locators."""

import math

import pytest

from salimits.errors import AnalysisError
from salimits.maps import make_map
from salimits.tower import (
    build_tower,
    cyclic_region,
    locate_crisis,
    locate_window,
    root_region,
)

MU_TANGENT = 1.0 + 2.0 * math.sqrt(2.0)
MU_CRISIS_RADICAL = 3.678573510428322  # root of mu^3 - 2 mu^2 - 4 mu - 8


def kinds(t):
    return [nd.kind for nd in t.nodes]


def test_root_region_spans_the_domain(m32):
    reg, why = root_region(m32)
    assert not why
    assert reg.period == 1 and not reg.flip
    assert reg.intervals == ((0.0, 1.0),)


def test_simple_sink_tower():
    t = build_tower(make_map("logistic", 2.5))
    assert t.p == 1 and not t.truncated
    assert kinds(t) == ["repelling_cycle", "attracting"]
    assert t.nodes[0].points() == pytest.approx((0.0,), abs=1e-12)
    att = t.attracting_node
    assert att.attracting_type == 1
    assert att.points() == pytest.approx((1.0 - 1.0 / 2.5,), abs=1e-10)


def test_two_cycle_tower_regions(t32):
    assert t32.p == 2 and not t32.truncated
    assert kinds(t32) == ["repelling_cycle", "repelling_cycle", "attracting"]

    xbar = t32.nodes[1]
    assert xbar.points() == pytest.approx((0.6875,), abs=1e-10)
    reg = xbar.region
    assert reg.flip and reg.period == 2
    assert reg.intervals[0] == pytest.approx((0.3125, 0.6875), abs=1e-9)
    assert reg.intervals[1] == pytest.approx((0.6875, 0.890312375), abs=1e-9)
    # boundary orbit: f(q2) returns to q1
    q1, q2 = reg.qs
    assert t32.map(q2) == pytest.approx(q1, abs=1e-9)

    att = t32.attracting_node
    assert att.attracting_type == 1
    assert att.points() == pytest.approx((0.513044509533, 0.799455490467), abs=1e-9)


def test_flip_cascade_tower(t355):
    assert t355.p == 4 and not t355.truncated
    assert kinds(t355) == ["repelling_cycle"] * 4 + ["attracting"]
    assert [nd.cycle.period for nd in t355.nodes] == [1, 1, 2, 4, 8]
    for nd in t355.nodes[1:4]:
        assert nd.region.flip
        assert nd.region.period == 2 * nd.cycle.period
    assert t355.nodes[1].region.intervals[0] == pytest.approx(
        (0.28169, 0.71831), abs=1e-4
    )
    assert t355.nodes[2].region.intervals[0] == pytest.approx(
        (0.41804, 0.58196), abs=1e-4
    )
    assert t355.nodes[3].region.intervals[0] == pytest.approx(
        (0.47382, 0.52618), abs=1e-4
    )
    att = t355.attracting_node
    assert att.cycle.period == 8
    assert att.cycle.multiplier == pytest.approx(0.4497, abs=1e-3)


def test_cantor_tower(t384):
    assert t384.p == 2 and not t384.truncated
    assert kinds(t384) == ["repelling_cycle", "cantor", "attracting"]

    cantor = t384.nodes[1]
    assert cantor.cycle.period == 3
    assert cantor.cycle.sorted_points() == pytest.approx(
        (0.169433819673, 0.540387841629, 0.953736277434), abs=1e-9
    )
    reg = cantor.region
    assert not reg.flip and reg.period == 3
    assert reg.intervals[0] == pytest.approx((0.459612158, 0.540387842), abs=1e-8)
    assert reg.intervals[1] == pytest.approx((0.953736277, 0.962382823), abs=1e-8)
    assert reg.intervals[2] == pytest.approx((0.139016159, 0.169433820), abs=1e-8)

    att = t384.attracting_node
    assert att.attracting_type == 1
    assert att.cycle.period == 3
    assert att.cycle.multiplier == pytest.approx(-0.8753, abs=1e-3)


def test_one_band_tower():
    t = build_tower(make_map("logistic", 3.7))
    assert t.p == 1
    assert kinds(t) == ["repelling_cycle", "attracting"]
    att = t.attracting_node
    assert att.attracting_type == 2
    assert att.bands.n_pieces == 1
    c1 = 3.7 * 0.25
    c2 = 3.7 * c1 * (1 - c1)
    assert att.bands.hull() == pytest.approx((c2, c1), abs=1e-12)


def test_two_band_tower():
    t = build_tower(make_map("logistic", 3.66))
    assert t.p == 2
    assert kinds(t) == ["repelling_cycle", "repelling_cycle", "attracting"]
    att = t.attracting_node
    assert att.attracting_type == 2
    assert att.bands.n_pieces == 2
    m = t.map
    c = [m.iterate(m.c, k) for k in range(5)]
    assert att.bands.pieces[0].lo == pytest.approx(c[2], abs=1e-9)
    assert att.bands.pieces[0].hi == pytest.approx(c[4], abs=1e-9)
    assert att.bands.pieces[1].lo == pytest.approx(c[3], abs=1e-9)
    assert att.bands.pieces[1].hi == pytest.approx(c[1], abs=1e-9)


def test_tangent_cycle_tower_is_one_sided():
    t = build_tower(make_map("logistic", MU_TANGENT))
    att = t.attracting_node
    assert att.attracting_type == 4
    assert att.cycle.period == 3
    assert att.diagnostics.get("one_sided") == "right"


def test_crisis_tower_merges_with_the_boundary():
    mu_m = locate_crisis()
    t = build_tower(make_map("logistic", mu_m))
    assert kinds(t) == ["repelling_cycle", "attracting"]
    att = t.attracting_node
    assert att.attracting_type == 5
    assert att.wandering_set().total_length == 0.0
    # the crisis margin sits at the bisection root: <= 0 and numerically tiny
    assert t.min_structural_margin() <= 0.0
    assert abs(t.min_structural_margin()) < 1e-9

    below = build_tower(make_map("logistic", mu_m - 1e-6))
    assert len(below.nodes) == 3
    assert below.attracting_node.attracting_type == 2
    above = build_tower(make_map("logistic", mu_m + 1e-6))
    assert len(above.nodes) == 2
    assert above.attracting_node.attracting_type == 2


def test_depth_cap_truncates(m355):
    t = build_tower(m355, max_depth=2)
    assert t.truncated
    assert len(t.nodes) == 3
    assert t.nodes[-1].kind != "attracting"


def test_undecidable_attractor_raises():
    with pytest.raises(AnalysisError):
        build_tower(make_map("logistic", 3.5699))


def test_low_parameter_interior_sink():
    t = build_tower(make_map("logistic", 1.5))
    assert t.p == 1
    assert t.attracting_node.points() == pytest.approx((1 / 3,), abs=1e-10)


def test_sine_family_towers():
    t = build_tower(make_map("sine", 0.85))
    assert t.p == 3
    assert t.attracting_node.attracting_type == 1

    t = build_tower(make_map("sine", 0.88))
    assert t.p == 2
    assert t.attracting_node.attracting_type == 2

    t = build_tower(make_map("sine", 0.967))
    assert t.p == 1
    assert t.attracting_node.attracting_type == 2


def test_cyclic_region_reports_failed_constructions(m32):
    from salimits.orbits import cycle_from_point

    d = math.sqrt(0.2 * 4.2)
    cyc = cycle_from_point(m32, (3.2 + 1 - d) / 6.4, 2)
    # the constructor is geometric: it accepts any cycle whose boundary
    # chain closes up, and reports the first failed check otherwise
    reg, why = cyclic_region(m32, cyc, flip=False)
    assert reg is not None and why == ""
    reg, why = cyclic_region(m32, cyc, flip=True)
    assert reg is None and "critical value" in why


def test_locate_crisis_matches_the_radical():
    mu_m = locate_crisis()
    assert abs(mu_m - MU_CRISIS_RADICAL) < 1e-6


def test_locate_window_three():
    start, end = locate_window(3)
    assert abs(start - MU_TANGENT) < 1e-6
    assert abs(end - 3.857) < 1e-3


def test_margins_shrink_toward_the_flip(t32):
    # just after the 2-cycle is born its multiplier is nearly +1, so the
    # stability margin dominates and the structural margin collapses
    near = build_tower(make_map("logistic", 3.005))
    assert near.min_structural_margin() == pytest.approx(0.02, abs=1e-3)
    assert near.min_structural_margin() < t32.min_structural_margin()
