"""Symbolic dynamics on the Cantor repellers.

A Cantor node sits between its parent trapping region and its own: the
return map g = f^r (r the parent-region period) restricted to the central
interval, with the new region's interiors removed, leaves finitely many
closed cells on which g is monotone and exactly Markov. Orbits that never
enter the removed interiors are coded by their cell itineraries, giving a
shift of finite type. This module builds the cell partition, the subshift
descriptor (transition matrix, minimal forbidden words, word counts), and
the inverse constructions: cylinder intervals for words, and backward
orbits whose symbol tails sweep out every admissible word.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .config import TOL_GEOM
from .errors import (
    AnalysisError,
    DomainError,
    InadmissibleWordError,
    NoDenseOrbitError,
)
from .intervals import IntervalSet

_SYMS = "0123456789abcdefghijklmnopqrstuvwxyz"
_BISECT_ITERS = 80


@dataclass(eq=False)
class ItineraryPartition:
    """Markov cells of a Cantor node under the return map g = f^r."""

    map: object = field(repr=False)
    r: int
    cells: tuple
    orientations: tuple

    @classmethod
    def from_node(cls, node) -> "ItineraryPartition":
        if node.kind != "cantor":
            raise AnalysisError("symbolic cells require a Cantor node")
        m = node.map
        r = node.parent_region.period
        u = float(m.iterate(m.c, r))
        v = float(m.iterate(m.c, 2 * r))
        universe = IntervalSet.closed(min(u, v), max(u, v))
        from .intervals import Piece

        holes = []
        for j, (lo, hi) in enumerate(node.region.intervals):
            if j % r == 0 and lo < hi:
                holes.append(Piece(lo, hi, False, False))
        left = universe - IntervalSet(holes)
        cells = tuple(
            (pc.lo, pc.hi) for pc in left if pc.hi - pc.lo > TOL_GEOM
        )
        if not cells:
            raise AnalysisError("no symbolic cells survive the region removal")
        if len(cells) > len(_SYMS):
            raise AnalysisError(f"too many cells ({len(cells)}) to code")
        g = lambda x: float(m.iterate(x, r))
        orient = tuple(1 if g(hi) >= g(lo) else -1 for lo, hi in cells)
        return cls(map=m, r=r, cells=cells, orientations=orient)

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    def g(self, x: float) -> float:
        return float(self.map.iterate(x, self.r))

    def symbol(self, i: int) -> str:
        return _SYMS[i]

    def cell_of(self, x: float, slack: float = 1e-8) -> int:
        best, dist = -1, np.inf
        for i, (lo, hi) in enumerate(self.cells):
            d = max(lo - x, x - hi, 0.0)
            if d < dist:
                best, dist = i, d
        if dist > slack:
            raise AnalysisError(f"{x!r} lies {dist:.3g} outside every cell")
        return best

    def itinerary(self, x: float, n: int, slack: float = 1e-8) -> str:
        out = []
        y = x
        for _ in range(n):
            i = self.cell_of(y, slack)
            out.append(_SYMS[i])
            y = self.g(y)
        return "".join(out)

    def image_hull(self, i: int) -> tuple:
        lo, hi = self.cells[i]
        va, vb = self.g(lo), self.g(hi)
        return (min(va, vb), max(va, vb))

    def transition_matrix(self) -> tuple:
        """Adjacency over cells; verifies the partition is exactly Markov."""
        rows = []
        for i in range(self.n_cells):
            ilo, ihi = self.image_hull(i)
            row = []
            for j, (lo, hi) in enumerate(self.cells):
                overlap = min(ihi, hi) - max(ilo, lo)
                frac = max(overlap, 0.0) / (hi - lo)
                if frac > 0.999:
                    row.append(1)
                elif frac < 0.001:
                    row.append(0)
                else:
                    raise AnalysisError(
                        "cell image partially covers a cell: not Markov",
                        diagnostics={"from": i, "to": j, "fraction": frac},
                    )
            rows.append(tuple(row))
        return tuple(rows)

    def _solve_in_cell(self, y: float, i: int) -> Optional[float]:
        lo, hi = self.cells[i]
        ilo, ihi = self.image_hull(i)
        if y < ilo - 1e-9 or y > ihi + 1e-9:
            return None
        y = min(max(y, ilo), ihi)
        a, b = (lo, hi) if self.orientations[i] > 0 else (hi, lo)
        for _ in range(_BISECT_ITERS):
            mid = 0.5 * (a + b)
            if mid == a or mid == b:
                break
            if self.g(mid) < y:
                a = mid
            else:
                b = mid
        return 0.5 * (a + b)

    def pull_back_point(self, y: float, i: int) -> float:
        x = self._solve_in_cell(y, i)
        if x is None:
            raise AnalysisError(f"{y!r} has no preimage in cell {i}")
        return x

    def pull_back_interval(self, span: tuple, i: int) -> Optional[tuple]:
        ilo, ihi = self.image_hull(i)
        lo = max(span[0], ilo)
        hi = min(span[1], ihi)
        if hi < lo:
            return None
        u = self._solve_in_cell(lo, i)
        v = self._solve_in_cell(hi, i)
        if u is None or v is None:
            return None
        return (min(u, v), max(u, v))

    def cylinder(self, word: str) -> Optional[tuple]:
        """The interval of points whose itinerary starts with ``word``."""
        idx = [_SYMS.index(s) for s in word]
        if any(i >= self.n_cells for i in idx):
            raise DomainError(f"word {word!r} uses symbols beyond the cells")
        span = self.cells[idx[-1]]
        for i in reversed(idx[:-1]):
            span = self.pull_back_interval(span, i)
            if span is None:
                return None
        return span


def itinerary_partition(node) -> ItineraryPartition:
    return ItineraryPartition.from_node(node)


def itinerary(partition: ItineraryPartition, x: float, n: int) -> str:
    return partition.itinerary(x, n)


def invert_itinerary(partition: ItineraryPartition, word: str) -> tuple:
    """The closed cylinder interval I_word; raises if the word is empty."""
    if not word:
        raise DomainError("empty word")
    span = partition.cylinder(word)
    if span is None:
        raise InadmissibleWordError(f"word {word!r} codes no orbit segment")
    return span


# -- shifts of finite type -------------------------------------------------


def _mat_mul(a, b):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


def _mat_pow(a, k):
    n = len(a)
    out = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    base = [list(row) for row in a]
    while k:
        if k & 1:
            out = _mat_mul(out, base)
        base = _mat_mul(base, base)
        k >>= 1
    return out


@dataclass(eq=False)
class SftDescriptor:
    """A shift of finite type over cell symbols.

    ``matrix`` is the symbol transition matrix; ``forbidden`` the minimal
    forbidden words. Words, counts, connectors, and irreducibility all run
    on one internal automaton whose states are the admissible words of
    length max(1, L-1), L the longest forbidden word.
    """

    symbols: str
    matrix: tuple
    forbidden: tuple = ()

    def __post_init__(self):
        lmax = max([len(w) for w in self.forbidden], default=2)
        self._state_len = max(1, lmax - 1)
        states = [w for w in self._enumerate(self._state_len)]
        self._states = states
        self._index = {w: i for i, w in enumerate(states)}
        n = len(states)
        auto = [[0] * n for _ in range(n)]
        step = {}
        for i, u in enumerate(states):
            for s in self.symbols:
                w = u + s
                if self._clean(w):
                    v = w[-self._state_len:]
                    j = self._index.get(v)
                    if j is not None:
                        auto[i][j] = 1
                        step[(i, s)] = j
        self._auto = auto
        self._step = step

    # word-level admissibility: no forbidden factor, matrix edges hold
    def _clean(self, word: str) -> bool:
        for i in range(len(word) - 1):
            a, b = self.symbols.index(word[i]), self.symbols.index(word[i + 1])
            if not self.matrix[a][b]:
                return False
        for f in self.forbidden:
            if len(f) > 2 and f in word:
                return False
        return True

    def is_admissible(self, word: str) -> bool:
        if any(s not in self.symbols for s in word):
            return False
        return self._clean(word)

    def _enumerate(self, n: int) -> Iterator[str]:
        def rec(prefix: str) -> Iterator[str]:
            if len(prefix) == n:
                yield prefix
                return
            for s in self.symbols:
                w = prefix + s
                if self._clean(w):
                    yield from rec(w)

        yield from rec("")

    def words(self, n: int) -> Iterator[str]:
        """All admissible words of length n, lexicographically."""
        if n <= 0:
            return iter([""])
        return self._enumerate(n)

    def count_words(self, n: int) -> int:
        """Number of admissible words of length n (exact integer)."""
        if n <= 0:
            return 1
        if n <= self._state_len:
            return sum(1 for _ in self._enumerate(n))
        power = _mat_pow(self._auto, n - self._state_len)
        return sum(sum(row) for row in power)

    def irreducible(self) -> bool:
        n = len(self._states)
        if n == 0:
            return False

        def reach(adj):
            seen = {0}
            dq = deque([0])
            while dq:
                u = dq.popleft()
                for v in range(n):
                    if adj[u][v] and v not in seen:
                        seen.add(v)
                        dq.append(v)
            return seen

        back = [[self._auto[v][u] for v in range(n)] for u in range(n)]
        return len(reach(self._auto)) == n and len(reach(back)) == n

    def _can_append(self, state: int, word: str) -> bool:
        s = state
        for sym in word:
            nxt = self._step.get((s, sym))
            if nxt is None:
                return False
            s = nxt
        return True

    def connector(self, u: str, v: str) -> str:
        """Shortest (lex-least) word w with u + w + v admissible."""
        if not (self.is_admissible(u) and self.is_admissible(v)):
            raise InadmissibleWordError(f"{u!r} or {v!r} is not admissible")
        if len(u) < self._state_len:
            # extend u backward minimally so a state exists
            for pre in self._enumerate(self._state_len - len(u)):
                if self._clean(pre + u):
                    u = pre + u
                    break
            else:
                raise InadmissibleWordError(f"{u!r} extends to no state")
        start = self._index.get(u[-self._state_len:])
        if start is None:
            raise InadmissibleWordError(f"{u!r} reaches no automaton state")
        seen = {start}
        dq = deque([(start, "")])
        while dq:
            state, path = dq.popleft()
            if self._can_append(state, v):
                return path
            for sym in self.symbols:
                nxt = self._step.get((state, sym))
                if nxt is not None and nxt not in seen:
                    seen.add(nxt)
                    dq.append((nxt, path + sym))
        raise NoDenseOrbitError(f"no connector from {u!r} to {v!r}")


def sft_from_partition(
    partition: ItineraryPartition, word_len: int = 6
) -> SftDescriptor:
    """The subshift coded by the cells, with minimal forbidden words checked
    against cylinder emptiness up to length ``word_len``."""
    matrix = partition.transition_matrix()
    n = partition.n_cells
    symbols = _SYMS[:n]
    forbidden = [
        symbols[i] + symbols[j]
        for i in range(n)
        for j in range(n)
        if not matrix[i][j]
    ]
    probe = SftDescriptor(symbols=symbols, matrix=matrix)
    for length in range(3, word_len + 1):
        for w in probe.words(length):
            span = partition.cylinder(w)
            if span is None or span[1] - span[0] < 1e-13:
                if not any(f in w for f in forbidden):
                    forbidden.append(w)
    return SftDescriptor(
        symbols=symbols, matrix=matrix, forbidden=tuple(sorted(forbidden, key=lambda w: (len(w), w)))
    )


def sft_from_node(node, word_len: int = 6) -> SftDescriptor:
    return sft_from_partition(itinerary_partition(node), word_len)


# -- dense backward constructions ------------------------------------------


@dataclass(frozen=True)
class BiSequence:
    """A two-sided symbol sequence around an anchor point: ``past`` runs
    toward the anchor (rightmost symbol is time -1), ``future`` from it."""

    past: str
    future: str
    origin: float

    def __str__(self) -> str:
        return f"{self.past}.{self.future}"


def backward_dense_tail(
    partition: ItineraryPartition,
    x: float,
    depth_words: int,
    sft: Optional[SftDescriptor] = None,
) -> BiSequence:
    """An admissible past for x containing every admissible word of length
    ``depth_words`` as a factor: the lexicographic word list spliced with
    shortest connectors, ending in a connector into x's own itinerary."""
    if sft is None:
        sft = sft_from_partition(partition, word_len=2)
    if not sft.irreducible():
        raise NoDenseOrbitError("subshift is not irreducible")
    future = partition.itinerary(x, 8)
    pieces = list(sft.words(depth_words))
    if not pieces:
        raise NoDenseOrbitError(f"no admissible words of length {depth_words}")
    keep = sft._state_len
    tail = pieces[0]
    for w in pieces[1:]:
        tail += sft.connector(tail[-keep:], w[0]) + w
    tail += sft.connector(tail[-keep:], future[0])
    return BiSequence(past=tail, future=future, origin=x)


def backward_dense_bitrajectory(
    partition: ItineraryPartition,
    x: float,
    depth: int,
    sft: Optional[SftDescriptor] = None,
):
    """A backward orbit of length ``depth`` from x whose symbol tail sweeps
    every admissible word of the largest length that fits.

    Returns (points, biseq): points[k] is the orbit point at time k - depth
    (so points[-1] == x), biseq the symbol record.
    """
    if depth < 1:
        raise DomainError("depth must be positive")
    if sft is None:
        sft = sft_from_partition(partition, word_len=2)
    if not sft.irreducible():
        raise NoDenseOrbitError("subshift is not irreducible")
    future = partition.itinerary(x, 8)

    chosen = None
    for d in range(1, 17):
        try:
            cand = backward_dense_tail(partition, x, d, sft=sft)
        except NoDenseOrbitError:
            break
        if len(cand.past) <= depth:
            chosen = cand
        else:
            break
    if chosen is None:
        # even one word exceeds depth: walk edges only
        tail = ""
        first = future[0]
        while len(tail) < depth:
            sym = next(
                s for s in sft.symbols
                if sft.matrix[sft.symbols.index(s)][sft.symbols.index(tail[0] if tail else first)]
            )
            tail = sym + tail
        chosen = BiSequence(past=tail, future=future, origin=x)

    tail = chosen.past
    while len(tail) < depth:
        first = tail[0]
        sym = next(
            s for s in sft.symbols
            if sft.matrix[sft.symbols.index(s)][sft.symbols.index(first)]
        )
        tail = sym + tail
    tail = tail[-depth:] if len(tail) > depth else tail

    pts = np.empty(depth + 1, dtype=np.float64)
    pts[depth] = x
    y = x
    for k in range(depth - 1, -1, -1):
        i = _SYMS.index(tail[k])
        y = partition.pull_back_point(y, i)
        pts[k] = y
    return pts, BiSequence(past=tail, future=future, origin=x)


# -- Cantor covers ----------------------------------------------------------


def cantor_cover(node, depth: int, max_words: int = 4096):
    """Cover of a Cantor node by cylinder intervals of words of length
    ``depth`` (shallower if the word count would exceed ``max_words``).

    Returns (cover, bound): the union of cylinders and the largest cylinder
    width, an upper bound on the Hausdorff distance to the true set.
    """
    part = node._cache.get("partition")
    if part is None:
        part = itinerary_partition(node)
        node._cache["partition"] = part
    matrix = part.transition_matrix()
    n = part.n_cells
    level = {(_SYMS[i],): part.cells[i] for i in range(n)}
    # keys as symbol tuples; extend by prepending while in budget
    for _ in range(depth - 1):
        nxt = {}
        for word, span in level.items():
            first = _SYMS.index(word[0])
            for i in range(n):
                if matrix[i][first]:
                    pulled = part.pull_back_interval(span, i)
                    if pulled is not None:
                        nxt[(_SYMS[i],) + word] = pulled
        if not nxt or len(nxt) > max_words:
            break
        level = nxt
    cover = IntervalSet.from_pairs(level.values())
    bound = max(hi - lo for lo, hi in level.values())
    return cover, bound
