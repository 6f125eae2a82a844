"""Finite unions of intervals with per-endpoint open/closed flags.

This is the carrier type for every set-valued result in the package
(V_k, U_k, special alpha-limits, node supports, band attractors).
Endpoint bookkeeping is exact: no tolerance is applied anywhere in this
module, so ``[x, p) | (p, y]`` stays two pieces while ``[x, p] | (p, y]``
merges to ``[x, y]``. Tolerance-aware comparisons belong to the callers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Tuple


@dataclass(frozen=True, order=True)
class Piece:
    """A single interval with endpoint openness flags.

    A degenerate piece (``lo == hi``) must be closed on both sides and
    represents an isolated point.
    """

    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self) -> None:
        if not (self.lo <= self.hi):
            raise ValueError(f"piece bounds out of order: {self.lo!r} > {self.hi!r}")
        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            raise ValueError("degenerate piece must be closed on both sides")

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        if self.lo < x < self.hi:
            return True
        if x == self.lo and self.lo_closed:
            return True
        if x == self.hi and self.hi_closed:
            return True
        return False

    def __str__(self) -> str:
        if self.is_point:
            return f"{{{self.lo:.12g}}}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo:.12g}, {self.hi:.12g}{right}"


def _merge_sorted(pieces: list[Piece]) -> Tuple[Piece, ...]:
    """Merge an lo-sorted piece list into canonical (maximal) form.

    Two pieces merge exactly when their set union is again an interval:
    they overlap, or they touch at a point that at least one of them
    contains.
    """
    out: list[Piece] = []
    for nxt in pieces:
        if not out:
            out.append(nxt)
            continue
        cur = out[-1]
        touch = nxt.lo == cur.hi and (nxt.lo_closed or cur.hi_closed)
        if nxt.lo < cur.hi or touch:
            if nxt.hi > cur.hi:
                hi, hc = nxt.hi, nxt.hi_closed
            elif nxt.hi == cur.hi:
                hi, hc = cur.hi, cur.hi_closed or nxt.hi_closed
            else:
                hi, hc = cur.hi, cur.hi_closed
            lc = cur.lo_closed or (nxt.lo == cur.lo and nxt.lo_closed)
            out[-1] = Piece(cur.lo, hi, lc, hc)
        else:
            out.append(nxt)
    return tuple(out)


class IntervalSet:
    """An immutable, canonically-merged finite union of :class:`Piece`."""

    __slots__ = ("pieces",)

    pieces: Tuple[Piece, ...]

    def __init__(self, pieces: Iterable[Piece] = ()) -> None:
        cleaned = [p for p in pieces if not (p.lo == p.hi and not p.lo_closed)]
        cleaned.sort(key=lambda p: (p.lo, not p.lo_closed, p.hi))
        object.__setattr__(self, "pieces", _merge_sorted(cleaned))

    # -- constructors -------------------------------------------------

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls(())

    @classmethod
    def point(cls, x: float) -> "IntervalSet":
        return cls((Piece(x, x),))

    @classmethod
    def closed(cls, lo: float, hi: float) -> "IntervalSet":
        return cls((Piece(lo, hi),))

    @classmethod
    def interval(cls, lo: float, hi: float, lo_closed: bool, hi_closed: bool) -> "IntervalSet":
        if lo == hi and not (lo_closed and hi_closed):
            return cls.empty()
        return cls((Piece(lo, hi, lo_closed, hi_closed),))

    @classmethod
    def from_points(cls, xs: Iterable[float]) -> "IntervalSet":
        return cls(tuple(Piece(x, x) for x in xs))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[float, float]]) -> "IntervalSet":
        """Closed intervals from (lo, hi) pairs; pairs may be unordered."""
        return cls(tuple(Piece(min(a, b), max(a, b)) for a, b in pairs))

    # -- basic queries ------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    @property
    def n_pieces(self) -> int:
        return len(self.pieces)

    @property
    def total_length(self) -> float:
        return math.fsum(p.length for p in self.pieces)

    def is_closed(self) -> bool:
        """True iff every piece is closed at both ends."""
        return all(p.lo_closed and p.hi_closed for p in self.pieces)

    def contains(self, x: float) -> bool:
        return any(p.contains(x) for p in self.pieces)

    __contains__ = contains

    def hull(self) -> Tuple[float, float]:
        if self.is_empty:
            raise ValueError("hull of empty set")
        return self.pieces[0].lo, self.pieces[-1].hi

    def closure(self) -> "IntervalSet":
        return IntervalSet(tuple(Piece(p.lo, p.hi) for p in self.pieces))

    def __iter__(self) -> Iterator[Piece]:
        return iter(self.pieces)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self.pieces == other.pieces

    def __hash__(self) -> int:
        return hash(self.pieces)

    def __repr__(self) -> str:
        if self.is_empty:
            return "IntervalSet()"
        return " U ".join(str(p) for p in self.pieces)

    # -- set algebra ---------------------------------------------------

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self.pieces + other.pieces)

    __or__ = union

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        out: list[Piece] = []
        for a in self.pieces:
            for b in other.pieces:
                if b.lo > a.hi:
                    break
                if b.hi < a.lo:
                    continue
                if a.lo > b.lo:
                    lo, lc = a.lo, a.lo_closed
                elif a.lo < b.lo:
                    lo, lc = b.lo, b.lo_closed
                else:
                    lo, lc = a.lo, a.lo_closed and b.lo_closed
                if a.hi < b.hi:
                    hi, hc = a.hi, a.hi_closed
                elif a.hi > b.hi:
                    hi, hc = b.hi, b.hi_closed
                else:
                    hi, hc = a.hi, a.hi_closed and b.hi_closed
                if lo < hi or (lo == hi and lc and hc):
                    out.append(Piece(lo, hi, lc, hc))
        return IntervalSet(out)

    __and__ = intersect

    def subtract(self, other: "IntervalSet") -> "IntervalSet":
        """Exact set difference; endpoint openness flips across each cut."""
        result: list[Piece] = []
        for a in self.pieces:
            frags = [a]
            for b in other.pieces:
                nxt: list[Piece] = []
                for f in frags:
                    if b.hi < f.lo or b.lo > f.hi:
                        nxt.append(f)
                        continue
                    # left remainder of f below b; the cut keeps b.lo only
                    # if f contains it and b does not
                    if f.lo < b.lo or (f.lo == b.lo and f.lo_closed and not b.lo_closed):
                        lo, lc = f.lo, f.lo_closed
                        if b.lo == f.hi:
                            hi, hc = f.hi, f.hi_closed and not b.lo_closed
                        else:
                            hi, hc = b.lo, not b.lo_closed
                        if lo < hi or (lo == hi and lc and hc):
                            nxt.append(Piece(lo, hi, lc, hc))
                    # right remainder of f above b, mirrored
                    if f.hi > b.hi or (f.hi == b.hi and f.hi_closed and not b.hi_closed):
                        if b.hi == f.lo:
                            lo, lc = f.lo, f.lo_closed and not b.hi_closed
                        else:
                            lo, lc = b.hi, not b.hi_closed
                        hi, hc = f.hi, f.hi_closed
                        if lo < hi or (lo == hi and lc and hc):
                            nxt.append(Piece(lo, hi, lc, hc))
                frags = nxt
                if not frags:
                    break
            result.extend(frags)
        return IntervalSet(result)

    __sub__ = subtract

    # -- metric helpers ------------------------------------------------

    def distance(self, x: float) -> float:
        """Distance from ``x`` to the closure of the set (0 if inside)."""
        best = math.inf
        for p in self.pieces:
            if p.lo <= x <= p.hi:
                return 0.0
            best = min(best, abs(x - p.lo), abs(x - p.hi))
        return best

    def directed_hausdorff(self, other: "IntervalSet") -> float:
        """sup over this set of the distance to ``other`` (closures).

        Exact for finite interval unions: the supremum is attained either at
        an endpoint of this set or at a midpoint of a gap of ``other`` that
        this set covers.
        """
        if self.is_empty:
            return 0.0
        if other.is_empty:
            return math.inf
        cands: list[float] = []
        for p in self.pieces:
            cands.append(p.lo)
            cands.append(p.hi)
        gaps: list[float] = []
        for q1, q2 in zip(other.pieces, other.pieces[1:]):
            gaps.append(0.5 * (q1.hi + q2.lo))
        for g in gaps:
            for p in self.pieces:
                if p.lo <= g <= p.hi:
                    cands.append(g)
                    break
        return max(other.distance(x) for x in cands)

    def hausdorff(self, other: "IntervalSet") -> float:
        return max(self.directed_hausdorff(other), other.directed_hausdorff(self))


def union_all(sets: Sequence[IntervalSet]) -> IntervalSet:
    pieces: list[Piece] = []
    for s in sets:
        pieces.extend(s.pieces)
    return IntervalSet(pieces)
