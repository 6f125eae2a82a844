"""Timing comparison of the numpy kernels and the compiled extension.

Run as ``python -m salimits.benchmark``. Both backends compute identical
bits; this prints how long each takes on the hot paths so the extension's
worth is visible on the machine at hand.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ._kernels import LOGISTIC, pure

try:
    from ._kernels import _core
except ImportError:  # pragma: no cover - extension not built
    _core = None


def _best(fn, reps):
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _workloads(scale):
    mu = 3.84
    xs = np.linspace(0.01, 0.99, 50_000 * scale)
    return [
        (
            "iterate_array (%d pts x 100)" % len(xs),
            lambda b: b.iterate_array(LOGISTIC, mu, xs, 100),
        ),
        (
            "orbit_array (%d steps)" % (200_000 * scale),
            lambda b: b.orbit_array(LOGISTIC, mu, 0.1, 200_000 * scale),
        ),
        (
            "grid_edges (n=%d)" % (8_192 * scale),
            lambda b: b.grid_edges(LOGISTIC, mu, 0.0, 1.0, 8_192 * scale, 0.0),
        ),
        (
            "backward_trails (200 x 500)",
            lambda b: b.backward_trails(LOGISTIC, mu, 0.5, 500, 200, 0),
        ),
    ]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="python -m salimits.benchmark")
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--scale", type=int, default=2, help="workload multiplier")
    args = ap.parse_args(argv)

    backends = [("numpy", pure)]
    if _core is not None:
        backends.append(("compiled", _core))
    else:
        print("compiled extension not available; timing the numpy backend only")

    rows = []
    for name, fn in _workloads(max(1, args.scale)):
        times = {bname: _best(lambda b=b: fn(b), args.reps) for bname, b in backends}
        rows.append((name, times))

    width = max(len(r[0]) for r in rows)
    header = f"{'kernel':<{width}}  " + "".join(
        f"{bname:>12}" for bname, _ in backends
    )
    if _core is not None:
        header += f"{'speedup':>10}"
    print(header)
    for name, times in rows:
        line = f"{name:<{width}}  " + "".join(
            f"{times[bname] * 1e3:>10.2f}ms" for bname, _ in backends
        )
        if _core is not None:
            line += f"{times['numpy'] / times['compiled']:>9.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
