"""The level partition U_{-1}..U_p, the nested V_k, and alpha-limit sets."""

import math

import pytest

from salimits.errors import AnalysisError, DomainError
from salimits.intervals import IntervalSet, union_all
from salimits.maps import make_map
from salimits.partition import (
    compute_partition,
    compute_V,
    level,
    omega_candidates,
    salpha,
)
from salimits.tower import build_tower


def two_cycle(mu):
    d = math.sqrt((mu - 3.0) * (mu + 1.0))
    return (mu + 1.0 - d) / (2.0 * mu), (mu + 1.0 + d) / (2.0 * mu)


def test_partition_display_two_cycle(part32):
    p1, p2 = two_cycle(3.2)
    u = part32.sets

    assert u[-1] == IntervalSet.interval(0.8, 1.0, False, True)
    assert u[0] == IntervalSet.interval(0.0, 0.512, True, False)

    assert u[1].n_pieces == 3
    a, b, c = u[1].pieces
    assert (a.lo, a.hi) == pytest.approx((0.512, p1), abs=1e-9)
    assert (a.lo_closed, a.hi_closed) == (True, False)
    assert (b.lo, b.hi) == pytest.approx((p1, p2), abs=1e-9)
    assert (b.lo_closed, b.hi_closed) == (False, False)
    assert (c.lo, c.hi) == pytest.approx((p2, 0.8), abs=1e-9)
    assert (c.lo_closed, c.hi_closed) == (False, True)

    assert u[2].n_pieces == 2
    assert u[2].total_length == 0.0
    assert [q.lo for q in u[2].pieces] == pytest.approx([p1, p2], abs=1e-9)


def test_partition_display_simple_sink():
    t = build_tower(make_map("logistic", 2.5))
    u = compute_partition(t).sets
    xbar = t.attracting_node.points()[0]
    assert xbar == pytest.approx(0.6, abs=1e-12)
    assert u[-1] == IntervalSet.interval(0.625, 1.0, False, True)
    assert u[0].n_pieces == 2  # [0, xbar) U (xbar, c_1]
    assert xbar not in u[0]
    assert u[1] == IntervalSet.point(xbar)


def test_partition_display_window_onset():
    mu = 1.0 + 2.0 * math.sqrt(2.0) + 2e-4
    t = build_tower(make_map("logistic", mu))
    u = compute_partition(t).sets
    assert u[1].n_pieces == 4
    sink = sorted(q.lo for q in u[2].pieces)
    assert sink == pytest.approx(
        [0.158596051605, 0.510904806533, 0.956701500737], abs=1e-8
    )
    holes = [piece.hi for piece in u[1].pieces[:-1]]
    assert holes == pytest.approx(sink, abs=1e-8)


def test_partition_cascade_middle_levels(part355, m355):
    co = m355.critical_orbit(8)
    c = [co.point(k) for k in range(9)]
    u2 = part355.sets[2]
    assert u2.n_pieces == 2
    assert (u2.pieces[0].lo, u2.pieces[0].hi) == pytest.approx(
        (c[6], c[8]), abs=1e-9
    )
    assert (u2.pieces[1].lo, u2.pieces[1].hi) == pytest.approx(
        (c[7], c[5]), abs=1e-9
    )
    assert not u2.pieces[0].lo_closed and not u2.pieces[0].hi_closed

    u4 = part355.sets[4]
    assert u4.n_pieces == 8
    assert u4.total_length == 0.0  # the 8-cycle itself


def test_partition_covers_domain_disjointly(part32, part355, part384):
    for part in (part32, part355, part384):
        m = part.tower.map
        keys = sorted(part.sets)
        assert keys == list(range(-1, part.p + 1))
        total = union_all([part.sets[k] for k in keys])
        assert total.n_pieces == 1
        assert total.hull() == (m.a, m.b)
        assert abs(total.total_length - (m.b - m.a)) < 1e-9
        for i in keys:
            for j in keys:
                if i < j:
                    assert part.sets[i].intersect(part.sets[j]).is_empty


def test_level_lookup(part32):
    assert level(part32.tower, 0.9, part32) == -1
    assert level(part32.tower, 0.1, part32) == 0
    assert level(part32.tower, 0.6, part32) == 1
    # the level-2 set is the two cycle points themselves, held exactly
    p1 = part32.tower.attracting_node.points()[0]
    assert level(part32.tower, p1, part32) == 2
    assert part32.level(0.6) == 1
    with pytest.raises(DomainError):
        level(part32.tower, 1.5, part32)


def test_low_parameter_partition_rejected():
    t = build_tower(make_map("logistic", 1.5))
    with pytest.raises(AnalysisError):
        compute_partition(t)


def test_v_sets_nest_strictly(t355):
    vs = [compute_V(t355, k) for k in range(t355.p)]
    for outer, inner in zip(vs, vs[1:]):
        assert inner.subtract(outer).is_empty
        assert inner.total_length < outer.total_length
    with pytest.raises(DomainError):
        compute_V(t355, t355.p)
    with pytest.raises(DomainError):
        compute_V(t355, -1)


def test_salpha_by_level(t32, part32):
    # level -1: no backward orbit stays in the domain
    assert salpha(t32, 0.9, part32).is_empty

    # level 0: the fixed endpoint only
    s0 = salpha(t32, 0.1, part32)
    assert s0 == IntervalSet.point(0.0)

    # level 1: endpoint plus the interior repeller
    s1 = salpha(t32, 0.6, part32)
    assert s1 == IntervalSet.from_points([0.0, 0.6875])

    # level 2 (on the attracting cycle): every node appears
    p1, p2 = t32.attracting_node.points()
    s2 = salpha(t32, p1, part32)
    assert 0.0 in s2
    assert s2.distance(0.6875) < 1e-9
    for q in (p1, p2):
        assert s2.distance(q) < 1e-9


def test_salpha_is_closed_and_union_of_node_supports(t384, part384):
    for x in (0.95, 0.3, 0.5, 0.7, 0.05):
        k = level(t384, x, part384)
        s = salpha(t384, x, part384)
        if k == -1:
            assert s.is_empty
            continue
        assert s.is_closed()
        claimed = union_all(
            [t384.node(i).support_set() for i in range(k + 1)]
        )
        assert s == claimed


def test_salpha_cantor_cover_depth_controls_resolution(t384, part384):
    coarse = salpha(t384, 0.3, part384, depth=4)
    fine = salpha(t384, 0.3, part384, depth=10)
    assert fine.n_pieces > coarse.n_pieces
    assert fine.total_length < coarse.total_length
    assert fine.subtract(coarse).is_empty  # refinement stays inside


def test_omega_candidates_narrow_with_level():
    for mu, full in ((3.7, {0, 1}), (3.66, {0, 1, 2})):
        m = make_map("logistic", mu)
        t = build_tower(m)
        part = compute_partition(t)
        assert omega_candidates(t, 0.01, part) == full
        assert omega_candidates(t, m.c, part) == {t.p}


def test_band_attractor_partition_supports():
    t = build_tower(make_map("logistic", 3.66))
    part = compute_partition(t)
    bands = t.attracting_node.bands
    assert part.sets[2].subtract(bands).is_empty  # U_2 is carried by the bands
    assert level(t, t.map.c, part) == 2
