"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 analysis failure (a computation
could not certify its result), 3 success but the tower hit a depth or
period cap (truncated).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager

import numpy as np

from .config import Settings, default_workers
from .errors import SalimitsError
from .maps import FAMILIES, make_map
from .oracle import GridSystem, alpha_limit_estimate, sample_backward, trail_rows
from .partition import compute_partition, level as partition_level, salpha
from .symbolic import itinerary, itinerary_partition, sft_from_node
from .tower import build_tower


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@contextmanager
def _out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w") as f:
            yield f


def _settings(args, parser) -> Settings:
    if not args.config:
        return Settings()
    try:
        return Settings.from_file(args.config)
    except (OSError, ValueError) as e:
        parser.error(f"cannot load config: {e}")


def _make_map(args, s: Settings, parser):
    family = args.family if args.family else s.family_id
    mu = args.mu if args.mu is not None else s.mu
    if mu is None:
        parser.error("--mu is required (or set mu in --config)")
    return make_map(family, mu), family


def _tower_kwargs(args, s: Settings) -> dict:
    kw = {}
    scan_n = getattr(args, "scan_n", None)
    kw["scan_n"] = scan_n if scan_n is not None else s.scan_n
    md = getattr(args, "max_depth", None)
    kw["max_depth"] = md if md is not None else s.max_depth
    mp = getattr(args, "max_period", None)
    kw["max_period"] = mp if mp is not None else s.max_period
    return kw


def _dump(payload, f) -> None:
    print(json.dumps(payload, sort_keys=True, allow_nan=False), file=f)


# -- payload builders -------------------------------------------------------


def _cycle_payload(cyc):
    return {
        "period": cyc.period,
        "points": [float(v) for v in cyc.points],
        "multiplier": float(cyc.multiplier),
        "stability": cyc.stability,
    }


def _region_payload(reg):
    return {
        "period": reg.period,
        "flip": bool(reg.flip),
        "intervals": [[float(lo), float(hi)] for lo, hi in reg.intervals],
        "qs": [float(q) for q in reg.qs],
        "margins": {
            k: float(v)
            for k, v in sorted(reg.margins.items())
            if math.isfinite(v)
        },
    }


def _set_pairs(iset):
    return [[float(p.lo), float(p.hi)] for p in iset.pieces]


def _tower_payload(t, family):
    nodes = []
    for nd in t.nodes:
        nodes.append(
            {
                "index": nd.index,
                "kind": nd.kind,
                "attracting_type": nd.attracting_type,
                "cycle": _cycle_payload(nd.cycle) if nd.cycle else None,
                "region": _region_payload(nd.region) if nd.region else None,
                "bands": _set_pairs(nd.bands) if nd.bands is not None else None,
            }
        )
    return {
        "schema": "salimits/tower/1",
        "family": family,
        "mu": float(t.map.mu),
        "p": t.p,
        "truncated": bool(t.truncated),
        "nodes": nodes,
    }


# -- commands ---------------------------------------------------------------


def _cmd_tower(args, parser):
    s = _settings(args, parser)
    m, family = _make_map(args, s, parser)
    t = build_tower(m, **_tower_kwargs(args, s))
    with _out(args.output) as f:
        _dump(_tower_payload(t, family), f)
    return 3 if t.truncated else 0


def _cmd_salpha(args, parser):
    s = _settings(args, parser)
    m, family = _make_map(args, s, parser)
    t = build_tower(m, **_tower_kwargs(args, s))
    part = compute_partition(t)
    lv = partition_level(t, args.x, partition=part)
    sal = salpha(t, args.x, partition=part, depth=args.depth)
    payload = {
        "schema": "salimits/salpha/1",
        "family": family,
        "mu": float(m.mu),
        "x": float(args.x),
        "level": lv,
        "closed": bool(sal.is_closed()),
        "pieces": [
            {
                "lo": float(p.lo),
                "hi": float(p.hi),
                "lo_closed": bool(p.lo_closed),
                "hi_closed": bool(p.hi_closed),
            }
            for p in sal.pieces
        ],
    }
    with _out(args.output) as f:
        _dump(payload, f)
    return 0


def _bifurcation_rows(family, mu, args, s):
    m = make_map(family, mu)
    rows = []
    cloud = m.orbit(m.c, args.transient + args.points)[args.transient + 1:]
    rows.extend((mu, float(x), "attractor") for x in cloud)
    for k in range(1, args.critical_lines + 1):
        rows.append((mu, float(m.iterate(m.c, k)), f"critical_line_{k}"))
    if args.tower:
        try:
            t = build_tower(m, **_tower_kwargs(args, s))
        except SalimitsError as e:
            print(f"mu={mu!r}: tower failed: {e}", file=sys.stderr)
            return rows
        for nd in t.nodes:
            if nd.kind == "repelling_cycle":
                rows.extend((mu, float(x), "cycle_node") for x in nd.points())
            elif nd.kind == "cantor":
                rows.extend((mu, float(x), "cantor_node") for x in nd.points())
            elif nd.cycle is not None:
                rows.extend((mu, float(x), "attractor") for x in nd.points())
            elif nd.bands is not None:
                for piece in nd.bands.pieces:
                    rows.append((mu, float(piece.lo), "attractor"))
                    rows.append((mu, float(piece.hi), "attractor"))
    return rows


def _partition_report(family, mu, args, s):
    m = make_map(family, mu)
    try:
        t = build_tower(m, **_tower_kwargs(args, s))
        part = compute_partition(t)
    except SalimitsError as e:
        return mu, False, f"{type(e).__name__}: {e}"
    pieces = sum(part.sets[k].n_pieces for k in part.sets)
    return mu, True, f"ok p={t.p} pieces={pieces}"


def _cmd_bifurcation(args, parser):
    s = _settings(args, parser)
    family = args.family if args.family else s.family_id
    if family not in FAMILIES:
        parser.error(f"unknown family {family!r}")
    mus = np.linspace(args.mu_min, args.mu_max, args.samples)
    workers = args.workers or s.workers or default_workers()

    if args.partition:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            reports = list(
                ex.map(lambda mu: _partition_report(family, float(mu), args, s), mus)
            )
        bad = 0
        for mu, ok, msg in reports:
            print(f"mu={mu!r}: {msg}", file=sys.stderr)
            bad += 0 if ok else 1
        return 2 if bad else 0

    with ThreadPoolExecutor(max_workers=workers) as ex:
        chunks = list(
            ex.map(lambda mu: _bifurcation_rows(family, float(mu), args, s), mus)
        )
    with _out(args.output) as f:
        print("mu,x,class", file=f)
        for chunk in chunks:
            for mu, x, cls in chunk:
                print(f"{mu!r},{x!r},{cls}", file=f)
    return 0


def _cmd_oracle_classes(args, parser):
    s = _settings(args, parser)
    m, family = _make_map(args, s, parser)
    g = GridSystem(m, n=args.n, eps=args.eps)
    classes = g.node_classes()
    payload = {
        "schema": "salimits/classes/1",
        "family": family,
        "mu": float(m.mu),
        "n": g.n,
        "eps": float(g.eps),
        "classes": [
            {
                "index": i,
                "cells": int(len(cls)),
                "runs": _set_pairs(g.cells_support(cls)),
            }
            for i, cls in enumerate(classes)
        ],
    }
    with _out(args.output) as f:
        _dump(payload, f)
    return 0


def _cmd_oracle_backward(args, parser):
    s = _settings(args, parser)
    m, _family = _make_map(args, s, parser)
    sample = sample_backward(
        m, args.x, depth=args.depth, trails=args.trails, seed=args.seed
    )
    if args.alpha:
        est = alpha_limit_estimate(
            sample, tail_frac=args.tail_frac, tol_cluster=args.tol_cluster
        )
        payload = {
            "x": float(args.x),
            "depth": args.depth,
            "trails": args.trails,
            "seed": args.seed,
            "tail_frac": args.tail_frac,
            "tol_cluster": args.tol_cluster,
            "estimate": [float(v) for v in est],
        }
        with _out(args.output) as f:
            _dump(payload, f)
        return 0
    with _out(args.output) as f:
        print("trail,step,x", file=f)
        for t, k, v in trail_rows(sample):
            print(f"{t},{k},{v!r}", file=f)
    return 0


def _cmd_symbolic_itinerary(args, parser):
    s = _settings(args, parser)
    m, family = _make_map(args, s, parser)
    t = build_tower(m, **_tower_kwargs(args, s))
    if args.node is not None:
        node = t.node(args.node)
        k = args.node
    else:
        k = next((nd.index for nd in t.nodes if nd.kind == "cantor"), None)
        if k is None:
            from .errors import AnalysisError

            raise AnalysisError("tower has no Cantor node")
        node = t.node(k)
    part = itinerary_partition(node)
    word = itinerary(part, args.x, args.length)
    sft = sft_from_node(node, word_len=args.word_len)
    payload = {
        "schema": "salimits/itinerary/1",
        "family": family,
        "mu": float(m.mu),
        "x": float(args.x),
        "node": k,
        "symbols": sft.symbols,
        "itinerary": word,
        "matrix": [list(row) for row in sft.matrix],
        "forbidden": list(sft.forbidden),
    }
    with _out(args.output) as f:
        _dump(payload, f)
    return 0


# -- parser -----------------------------------------------------------------


def _add_common(p):
    p.add_argument("--config", help="JSON settings file")
    p.add_argument("--family", help="map family name")
    p.add_argument("--mu", type=float, help="family parameter")
    p.add_argument("-o", "--output", default="-", help="output path (default stdout)")


def _add_tower_opts(p):
    p.add_argument("--scan-n", type=int, dest="scan_n")
    p.add_argument("--max-depth", type=int, dest="max_depth")
    p.add_argument("--max-period", type=int, dest="max_period")


def _build_parser() -> _Parser:
    parser = _Parser(prog="salimits", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("tower", help="chain-recurrent node tower as JSON")
    _add_common(p)
    _add_tower_opts(p)
    p.set_defaults(func=_cmd_tower)

    p = sub.add_parser("salpha", help="special alpha-limit set of a point")
    _add_common(p)
    _add_tower_opts(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--depth", type=int, help="Cantor cover word length")
    p.set_defaults(func=_cmd_salpha)

    p = sub.add_parser("bifurcation", help="parameter sweep as CSV")
    _add_common(p)
    _add_tower_opts(p)
    p.add_argument("--mu-min", type=float, required=True, dest="mu_min")
    p.add_argument("--mu-max", type=float, required=True, dest="mu_max")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--transient", type=int, default=1024)
    p.add_argument("--points", type=int, default=64)
    p.add_argument("--critical-lines", type=int, default=0, dest="critical_lines")
    p.add_argument("--tower", action="store_true", help="add node rows per mu")
    p.add_argument(
        "--partition",
        action="store_true",
        help="validate the partition per mu instead of writing CSV",
    )
    p.add_argument("--workers", type=int)
    p.set_defaults(func=_cmd_bifurcation)

    po = sub.add_parser("oracle", help="grid and backward-sampling oracles")
    osub = po.add_subparsers(dest="oracle_command", required=True, parser_class=_Parser)

    p = osub.add_parser("classes", help="recurrent grid classes as JSON")
    _add_common(p)
    p.add_argument("--n", type=int, default=8192)
    p.add_argument("--eps", type=float, default=0.0)
    p.set_defaults(func=_cmd_oracle_classes)

    p = osub.add_parser("backward", help="random backward trails as CSV")
    _add_common(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--depth", type=int, default=500)
    p.add_argument("--trails", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--alpha", action="store_true", help="print the clustered alpha estimate"
    )
    p.add_argument("--tail-frac", type=float, default=0.25, dest="tail_frac")
    p.add_argument("--tol-cluster", type=float, default=1e-4, dest="tol_cluster")
    p.set_defaults(func=_cmd_oracle_backward)

    ps = sub.add_parser("symbolic", help="symbolic dynamics of a Cantor node")
    ssub = ps.add_subparsers(
        dest="symbolic_command", required=True, parser_class=_Parser
    )

    p = ssub.add_parser("itinerary", help="itinerary and shift data as JSON")
    _add_common(p)
    _add_tower_opts(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--length", type=int, default=12)
    p.add_argument("--node", type=int, help="node index (default: first Cantor node)")
    p.add_argument("--word-len", type=int, default=6, dest="word_len")
    p.set_defaults(func=_cmd_symbolic_itinerary)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except SalimitsError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
