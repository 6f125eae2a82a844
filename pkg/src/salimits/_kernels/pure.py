"""numpy implementation of the iteration kernels.

This module and ``_core.pyx`` implement the same contract with the same
floating-point expression order; the extension is compiled with FP
contraction disabled, so the two backends are bit-identical and the test
suite enforces that. Transcendental steps (the sine family) stay on
``math``/libm scalar calls here because numpy's vectorized transcendentals
may round differently from libm.

Family codes: 0 = logistic ``mu*x*(1-x)``, 1 = sine ``mu*sin(pi*x)``.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "pure"

LOGISTIC = 0
SINE = 1

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_U01 = 1.0 / 9007199254740992.0  # 2**-53


def _mix(state):
    z = state
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def splitmix_outputs(seed: int, n: int) -> np.ndarray:
    """First ``n`` outputs of the splitmix64 stream started at ``seed``."""
    steps = np.arange(1, n + 1, dtype=np.uint64)
    return _mix(np.uint64(seed) + steps * _GAMMA)


def _check_code(code: int) -> None:
    if code not in (LOGISTIC, SINE):
        raise ValueError(f"unknown family code {code}")


def _step(code: int, mu: float, x: float) -> float:
    if code == LOGISTIC:
        return mu * x * (1.0 - x)
    return mu * math.sin(math.pi * x)


def iterate_scalar(code: int, mu: float, x: float, n: int) -> float:
    _check_code(code)
    for _ in range(n):
        x = _step(code, mu, x)
    return x


def orbit_array(code: int, mu: float, x: float, n: int) -> np.ndarray:
    """``[x, f(x), ..., f^n(x)]`` as a float64 array of length n+1."""
    _check_code(code)
    out = np.empty(n + 1, dtype=np.float64)
    out[0] = x
    for i in range(n):
        x = _step(code, mu, x)
        out[i + 1] = x
    return out


def iterate_array(code: int, mu: float, xs, n: int) -> np.ndarray:
    """Apply f^n elementwise."""
    _check_code(code)
    out = np.array(xs, dtype=np.float64, copy=True)
    if code == LOGISTIC:
        for _ in range(n):
            out = mu * out * (1.0 - out)
        return out
    flat = out.ravel()
    for i in range(flat.size):
        flat[i] = iterate_scalar(code, mu, float(flat[i]), n)
    return out


def grid_edges(code: int, mu: float, a: float, b: float, n: int, eps: float):
    """CSR adjacency of the eps-coarsened grid system.

    Cell i is represented by its left endpoint ``x_i = a + h*i`` with
    ``h = (b-a)/n``; there is an edge i -> j iff ``|f(x_i) - x_j| < eps + h``
    (strict). Returns ``(indptr, indices)`` as int64 arrays.
    """
    _check_code(code)
    h = (b - a) / n
    eps_eff = eps + h
    xs = a + h * np.arange(n, dtype=np.float64)
    if code == LOGISTIC:
        ys = mu * xs * (1.0 - xs)
    else:
        ys = np.array([_step(code, mu, float(x)) for x in xs], dtype=np.float64)
    jlo = np.floor((ys - a - eps_eff) / h).astype(np.int64) + 1
    jhi = np.ceil((ys - a + eps_eff) / h).astype(np.int64) - 1
    np.clip(jlo, 0, n, out=jlo)
    np.clip(jhi, -1, n - 1, out=jhi)
    counts = np.maximum(jhi - jlo + 1, 0)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    total = int(indptr[-1])
    indices = np.empty(total, dtype=np.int64)
    nz = counts > 0
    reps = counts[nz]
    offsets = np.arange(total, dtype=np.int64) - np.repeat(indptr[:-1][nz], reps)
    indices[:] = np.repeat(jlo[nz], reps) + offsets
    return indptr, indices


def preimages_scalar(code: int, mu: float, y: float) -> tuple:
    """Closed-form/libm preimages of ``y``, ascending; () if none."""
    _check_code(code)
    if code == LOGISTIC:
        disc = 1.0 - 4.0 * y / mu
        if disc < 0.0:
            return ()
        s = math.sqrt(disc)
        if s == 0.0:
            return ((1.0 - s) * 0.5,)
        return ((1.0 - s) * 0.5, (1.0 + s) * 0.5)
    t = y / mu
    if t > 1.0 or t < 0.0:
        return ()
    v0 = math.asin(t) / math.pi
    v1 = 1.0 - v0
    if v1 == v0:
        return (v0,)
    return (v0, v1)


def backward_trails(code: int, mu: float, x: float, depth: int, trails: int, seed: int):
    """Random backward orbits from ``x``.

    Returns ``(flat, lengths)``: trail t occupies
    ``flat[t*(depth+1) : t*(depth+1) + lengths[t]]`` and starts at ``x``.
    Each step picks uniformly among the *continuable* preimages of the
    current point -- those ``<= f(c)``, i.e. with nonempty preimage sets of
    their own -- and the trail stops early when there are none. Trail t
    consumes the splitmix64 sub-stream seeded by the t-th output of the
    master stream at ``seed``; exactly one draw is consumed per step where
    two candidates are available.
    """
    _check_code(code)
    stride = depth + 1
    flat = np.zeros(trails * stride, dtype=np.float64)
    lengths = np.ones(trails, dtype=np.int64)
    rows = np.arange(trails, dtype=np.int64)
    flat[rows * stride] = x
    states = splitmix_outputs(seed, trails)

    if code == SINE:
        _backward_scalar(code, mu, depth, flat, lengths, states, stride)
        return flat, lengths

    c1 = mu * 0.25
    cur = np.full(trails, x, dtype=np.float64)
    active = np.ones(trails, dtype=bool)
    for _ in range(depth):
        idx = rows[active]
        if idx.size == 0:
            break
        y = cur[idx]
        disc = 1.0 - 4.0 * y / mu
        has = disc >= 0.0
        s = np.sqrt(np.where(has, disc, 0.0))
        v0 = (1.0 - s) * 0.5
        v1 = (1.0 + s) * 0.5
        cand0 = has & (v0 <= c1)
        cand1 = has & (v1 <= c1) & (s > 0.0)
        k = cand0.astype(np.int64) + cand1.astype(np.int64)
        chosen = np.where(cand0, v0, v1)
        two = k == 2
        if np.any(two):
            sub = idx[two]
            states[sub] = states[sub] + _GAMMA
            u = (_mix(states[sub]) >> np.uint64(11)).astype(np.float64) * _U01
            chosen[two] = np.where(u < 0.5, v0[two], v1[two])
        alive = k > 0
        tgt = idx[alive]
        cur[tgt] = chosen[alive]
        flat[tgt * stride + lengths[tgt]] = chosen[alive]
        lengths[tgt] += 1
        active[idx[~alive]] = False
    return flat, lengths


def _backward_scalar(code, mu, depth, flat, lengths, states, stride):
    c1 = mu * 0.25 if code == LOGISTIC else mu
    for t in range(lengths.shape[0]):
        st = states[t : t + 1]
        cur = flat[t * stride]
        m = 1
        for _ in range(depth):
            roots = _preimages_cont(code, mu, cur, c1)
            if not roots:
                break
            if len(roots) == 2:
                st += _GAMMA
                u = float(_mix(st)[0] >> np.uint64(11)) * _U01
                cur = roots[0] if u < 0.5 else roots[1]
            else:
                cur = roots[0]
            flat[t * stride + m] = cur
            m += 1
        lengths[t] = m


def _preimages_cont(code, mu, y, c1):
    return tuple(v for v in preimages_scalar(code, mu, y) if v <= c1)
