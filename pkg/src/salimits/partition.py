"""Backward-dynamics partition and special alpha-limit sets.

The special alpha-limit of a point x — the union of alpha-limits over all
backward orbits from x — is determined by a finite partition of the
interval: [a, b] splits into classes U_{-1}, U_0, ..., U_p, and on U_k the
special alpha-limit is exactly N_0 ∪ ... ∪ N_k (the whole chain-recurrent
set on U_p, nothing on U_{-1}, whose points have no backward orbit at all
beyond finitely many steps). The classes are cut out by the forward
critical orbit: V_k is the union of hulls of critical-orbit segments at
the period of node N_k's region, and U_k = V_{k-1} minus the deeper
classes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import AnalysisError, DomainError
from .intervals import IntervalSet, Piece, union_all
from .tower import Tower


def compute_V(tower: Tower, k: int) -> IntervalSet:
    """V_k: hulls of the critical orbit at the period of N_k's region.

    V_k = union over i = 0..r-1 of hull(c_{2r-i}, c_{r-i}) with r the
    period of node N_k's trapping region. Defined for 0 <= k <= p-1.
    """
    if not 0 <= k < tower.p:
        raise DomainError(f"V_{k} undefined for a tower with p={tower.p}")
    node = tower.node(k)
    if node.region is None:
        raise AnalysisError(f"node {k} carries no trapping region")
    r = node.region.period
    co = tower.map.critical_orbit(2 * r)
    pairs = []
    for i in range(r):
        u, v = float(co.point(2 * r - i)), float(co.point(r - i))
        pairs.append((min(u, v), max(u, v)))
    return IntervalSet.from_pairs(pairs)


@dataclass(eq=False)
class Partition:
    """The level partition U_{-1}, ..., U_p of [a, b]."""

    tower: Tower
    sets: dict = field(repr=False)
    V: list = field(repr=False)

    @property
    def p(self) -> int:
        return self.tower.p

    def piece(self, k: int) -> IntervalSet:
        return self.sets[k]

    def level(self, x: float) -> int:
        m = self.tower.map
        if not m.a <= x <= m.b:
            raise DomainError(f"{x!r} outside [{m.a!r}, {m.b!r}]")
        for k in range(self.p, -2, -1):
            if x in self.sets[k]:
                return k
        raise AnalysisError(f"{x!r} not covered by the partition")


def compute_partition(tower: Tower) -> Partition:
    """Build the level partition of [a, b] for the given tower.

    Requires the endpoint fixed point to be repelling, the critical value
    to fall short of b, and the interior fixed point to lie right of the
    critical point; otherwise the backward-orbit structure degenerates and
    AnalysisError is raised.
    """
    m = tower.map
    if tower.truncated:
        raise AnalysisError("partition of a truncated tower")
    if tower.nodes[0].kind != "repelling_cycle":
        raise AnalysisError("endpoint fixed point is not repelling")
    c1 = m.eval_raw(m.c)
    if not c1 < m.b:
        raise AnalysisError("critical value reaches the right endpoint")
    if c1 <= m.c:
        raise AnalysisError("interior fixed point does not lie right of c")
    c2 = m.eval_raw(c1)

    p = tower.p
    if p < 1:
        raise AnalysisError("tower has no interior node")

    sets: dict = {}
    sets[p] = tower.node(p).support_set()
    V = [compute_V(tower, k) for k in range(p)]
    for k in range(p - 1, 0, -1):
        deeper = union_all([sets[i] for i in range(k + 1, p + 1)])
        sets[k] = V[k - 1] - deeper

    left = IntervalSet([Piece(m.a, c2, True, False)]) if m.a < c2 else IntervalSet.empty()
    if p == 1:
        sets[0] = left | (V[0] - sets[1])
    else:
        sets[0] = left
    sets[-1] = IntervalSet([Piece(c1, m.b, False, True)]) if c1 < m.b else IntervalSet.empty()
    return Partition(tower=tower, sets=sets, V=V)


def level(tower: Tower, x: float, partition: Optional[Partition] = None) -> int:
    part = compute_partition(tower) if partition is None else partition
    return part.level(x)


def salpha(
    tower: Tower,
    x: float,
    partition: Optional[Partition] = None,
    depth: Optional[int] = None,
) -> IntervalSet:
    """The special alpha-limit set of x (Cantor nodes approximated by
    cylinder covers of word length ``depth``)."""
    part = compute_partition(tower) if partition is None else partition
    k = part.level(x)
    if k == -1:
        return IntervalSet.empty()
    if k < tower.p:
        return union_all([tower.node(i).support_set(depth) for i in range(k + 1)])
    return union_all([nd.omega_set(depth) for nd in tower.nodes])


def omega_candidates(
    tower: Tower, x: float, partition: Optional[Partition] = None
) -> set:
    """Indices of nodes that can contain the omega-limit of a point whose
    backward orbit tree is rooted at x's level."""
    part = compute_partition(tower) if partition is None else partition
    k = part.level(x)
    return set(range(max(k, 0), tower.p + 1))
