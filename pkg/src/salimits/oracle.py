"""Brute-force oracles: grid chain recurrence and backward sampling.

These routines know nothing about towers, regions, or symbolic cells. They
discretize the interval and the edge relation |f(x_i) - x_j| < eps + h
(pseudo-orbit jumps), or walk raw preimage branches, and so provide an
independent check of the structural computations: strongly connected
classes of the grid graph against tower nodes, and backward-trail alpha
limits against the special alpha-limit sets.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from . import _kernels as K
from .errors import DomainError, LimitError
from .intervals import IntervalSet
from .maps import UnimodalMap


class GridSystem:
    """The directed graph on grid cells x_i = a + i*h, i = 0..n-1, with an
    edge i -> j iff |f(x_i) - x_j| < eps + h (strict)."""

    def __init__(self, m: UnimodalMap, n: int = 8192, eps: float = 0.0):
        if n < 2:
            raise DomainError("grid needs at least two cells")
        self.map = m
        self.n = int(n)
        self.eps = float(eps)
        self.h = (m.b - m.a) / self.n
        self.eps_eff = self.eps + self.h
        if m.kernel_code is not None:
            indptr, indices = K.grid_edges(
                m.kernel_code, m.mu, m.a, m.b, self.n, self.eps
            )
        else:
            indptr, indices = self._edges_generic()
        self.indptr = indptr
        self.indices = indices
        self.xs = m.a + self.h * np.arange(self.n)

    def _edges_generic(self):
        a, h, n = self.map.a, self.h, self.n
        ys = np.array(
            [self.map.eval_raw(a + h * i) for i in range(n)], dtype=np.float64
        )
        eps_eff = self.eps + h
        jlo = np.clip(np.floor((ys - a - eps_eff) / h).astype(np.int64) + 1, 0, n)
        jhi = np.clip(np.ceil((ys - a + eps_eff) / h).astype(np.int64) - 1, -1, n - 1)
        counts = np.maximum(jhi - jlo + 1, 0)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        indices = np.empty(int(indptr[-1]), dtype=np.int64)
        for i in range(n):
            s, e = indptr[i], indptr[i + 1]
            if e > s:
                indices[s:e] = np.arange(jlo[i], jhi[i] + 1)
        return indptr, indices

    def successors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]: self.indptr[i + 1]]

    def csr(self) -> csr_matrix:
        data = np.ones(len(self.indices), dtype=np.int8)
        return csr_matrix(
            (data, self.indices, self.indptr), shape=(self.n, self.n)
        )

    def cell_of(self, x: float) -> int:
        i = int(math.floor((x - self.map.a) / self.h))
        return min(max(i, 0), self.n - 1)

    def cells_support(self, cells) -> IntervalSet:
        xs = self.xs
        return IntervalSet.from_pairs(
            (float(xs[i]), float(xs[i]) + self.h) for i in np.asarray(cells)
        )

    def _self_loops(self) -> np.ndarray:
        out = np.zeros(self.n, dtype=bool)
        for i in range(self.n):
            row = self.successors(i)
            k = np.searchsorted(row, i)
            out[i] = k < len(row) and row[k] == i
        return out

    def _components(self):
        n_comp, labels = connected_components(
            self.csr(), directed=True, connection="strong", return_labels=True
        )
        return n_comp, labels

    def chain_recurrent_cells(self) -> np.ndarray:
        """Cells on a cyclic pseudo-orbit: in a size->=2 strong component or
        carrying a self-loop."""
        n_comp, labels = self._components()
        sizes = np.bincount(labels, minlength=n_comp)
        mask = (sizes[labels] >= 2) | self._self_loops()
        return np.nonzero(mask)[0]

    def node_classes(self):
        """Recurrent strong components in topological (upstream-first)
        order, with components occupying adjacent cell runs merged."""
        n_comp, labels = self._components()
        sizes = np.bincount(labels, minlength=n_comp)
        loops = self._self_loops()
        recurrent = set(np.nonzero(sizes >= 2)[0].tolist())
        recurrent.update(labels[i] for i in np.nonzero(loops)[0])

        # condensation edges and Kahn order (deterministic by min cell)
        edges = set()
        for i in range(self.n):
            cu = labels[i]
            for j in self.successors(i):
                cv = labels[j]
                if cu != cv:
                    edges.add((cu, int(cv)))
        indeg = np.zeros(n_comp, dtype=np.int64)
        out = [[] for _ in range(n_comp)]
        for u, v in edges:
            out[u].append(v)
            indeg[v] += 1
        min_cell = np.full(n_comp, self.n, dtype=np.int64)
        for i in range(self.n):
            min_cell[labels[i]] = min(min_cell[labels[i]], i)
        heap = [(int(min_cell[c]), c) for c in range(n_comp) if indeg[c] == 0]
        heapq.heapify(heap)
        rank = {}
        while heap:
            _, u = heapq.heappop(heap)
            rank[u] = len(rank)
            for v in out[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    heapq.heappush(heap, (int(min_cell[v]), v))
        if len(rank) != n_comp:
            raise LimitError("condensation is not acyclic")  # pragma: no cover

        # One node often discretizes to several interleaved components whose
        # cells abut; union recurrent components with cells at index
        # distance <= 1 to recover one class per node.
        rec_cells = np.array(
            sorted(i for i in range(self.n) if labels[i] in recurrent),
            dtype=np.int64,
        )
        parent = {c: c for c in recurrent}

        def find(c):
            while parent[c] != c:
                parent[c] = parent[parent[c]]
                c = parent[c]
            return c

        for prev, cur in zip(rec_cells[:-1], rec_cells[1:]):
            if cur - prev <= 1:
                ra, rb = find(labels[prev]), find(labels[cur])
                if ra != rb:
                    parent[rb] = ra
        groups = {}
        for i in rec_cells.tolist():
            groups.setdefault(find(labels[i]), []).append(i)
        classes = [np.array(v, dtype=np.int64) for v in groups.values()]
        class_rank = [
            min(rank[labels[i]] for i in cls.tolist()) for cls in classes
        ]
        order = sorted(range(len(classes)), key=lambda k: class_rank[k])
        return [classes[k] for k in order]

    def upstream(self, cells) -> np.ndarray:
        """All cells with a directed path into ``cells`` (inclusive)."""
        rev = self.csr().transpose().tocsr()
        seen = np.zeros(self.n, dtype=bool)
        stack = [int(i) for i in np.asarray(cells)]
        for i in stack:
            seen[i] = True
        while stack:
            u = stack.pop()
            row = rev.indices[rev.indptr[u]: rev.indptr[u + 1]]
            for v in row:
                if not seen[v]:
                    seen[v] = True
                    stack.append(int(v))
        return np.nonzero(seen)[0]


# -- backward sampling ------------------------------------------------------


@dataclass(eq=False)
class BackwardSample:
    """Random backward trails from x: trail t runs x = t[0], t[1], ... with
    f(t[k+1]) = t[k], each step drawn uniformly over the continuable
    preimages (those not exceeding the critical value)."""

    x: float
    depth: int
    trails: int
    seed: int
    flat: np.ndarray = field(repr=False)
    lengths: np.ndarray = field(repr=False)

    def trail(self, t: int) -> np.ndarray:
        s = t * (self.depth + 1)
        return self.flat[s: s + int(self.lengths[t])]

    @property
    def full_depth(self) -> np.ndarray:
        return np.nonzero(self.lengths == self.depth + 1)[0]

    def deepest_points(self, tail_frac: float = 0.25) -> np.ndarray:
        cut = int(math.floor((1.0 - tail_frac) * (self.depth + 1)))
        segs = [self.trail(t)[cut:] for t in self.full_depth]
        if not segs:
            return np.empty(0, dtype=np.float64)
        return np.concatenate(segs)


def sample_backward(
    m: UnimodalMap, x: float, depth: int = 500, trails: int = 200, seed: int = 0
) -> BackwardSample:
    if not m.a <= x <= m.b:
        raise DomainError(f"{x!r} outside [{m.a!r}, {m.b!r}]")
    if m.kernel_code is not None:
        flat, lengths = K.backward_trails(
            m.kernel_code, m.mu, x, depth, trails, seed
        )
    else:
        flat, lengths = _backward_generic(m, x, depth, trails, seed)
    return BackwardSample(
        x=x, depth=depth, trails=trails, seed=seed, flat=flat, lengths=lengths
    )


def _backward_generic(m, x, depth, trails, seed):
    from ._kernels.pure import _GAMMA, _mix, splitmix_outputs

    c1 = m.eval_raw(m.c)
    flat = np.zeros(trails * (depth + 1), dtype=np.float64)
    lengths = np.ones(trails, dtype=np.int64)
    states = splitmix_outputs(seed, trails).copy()
    for t in range(trails):
        flat[t * (depth + 1)] = x
        y = x
        st = states[t: t + 1]
        for k in range(depth):
            cands = [r for r in m.preimages(y) if r <= c1]
            if not cands:
                break
            if len(cands) == 1:
                y = cands[0]
            else:
                st += _GAMMA
                u = float(_mix(st)[0] >> np.uint64(11)) * (1.0 / 9007199254740992.0)
                y = cands[0] if u < 0.5 else cands[1]
            flat[t * (depth + 1) + k + 1] = y
            lengths[t] += 1
    return flat, lengths


def exhaustive_backward(
    m: UnimodalMap, x: float, depth: int, max_nodes: int = 1 << 20
):
    """Every backward orbit branch from x, level by level: levels[k] holds
    all k-th preimages of x (with multiplicity of distinct branches)."""
    if depth > 24:
        raise LimitError("exhaustive backward tree capped at depth 24")
    levels = [np.array([x], dtype=np.float64)]
    total = 1
    for _ in range(depth):
        nxt = []
        for y in levels[-1]:
            nxt.extend(m.preimages(float(y)))
        total += len(nxt)
        if total > max_nodes:
            raise LimitError(f"backward tree exceeds {max_nodes} nodes")
        if not nxt:
            levels.append(np.empty(0, dtype=np.float64))
            break
        levels.append(np.array(nxt, dtype=np.float64))
    return levels


def alpha_limit_estimate(
    sample: BackwardSample,
    tail_frac: float = 0.25,
    tol_cluster: float = 1e-4,
) -> np.ndarray:
    """Cluster representatives of the deepest trail points: the deepest
    ``tail_frac`` of every full-depth trail, sorted and split at gaps wider
    than ``tol_cluster``; returns the cluster means."""
    pts = np.sort(sample.deepest_points(tail_frac))
    if len(pts) == 0:
        return pts
    cuts = np.nonzero(np.diff(pts) > tol_cluster)[0]
    out = []
    start = 0
    for cut in list(cuts) + [len(pts) - 1]:
        out.append(float(np.mean(pts[start: cut + 1])))
        start = cut + 1
    return np.array(out, dtype=np.float64)


def trail_rows(sample: BackwardSample):
    """(trail, step, point) rows for CSV export."""
    for t in range(sample.trails):
        tr = sample.trail(t)
        for k, v in enumerate(tr):
            yield t, k, float(v)
