"""Command-line interface: ``hcs <command> [options]``.

Exit codes: 0 success, 1 verification failure, 2 invalid parameters,
3 numerical failure. CSV files have one header row and full-precision
(.17g) floats; JSON reports carry ``"schema_version": "1"``.
"""

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import coherent, observables, verify
from .errors import ConvergenceError, DivergentSeriesError, HCSError, InadmissibleParameterError
from .geometry import parse_complex_vector, point, validate
from .quadrature import DEFAULT_ORDERS

SCHEMA_VERSION = "1"

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2, 3


class InvalidParameters(Exception):
    pass


class NumericalFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InvalidParameters(message)


def _fmt(x):
    return format(float(x), ".17g")


def parse_grid(text):
    """Parse ``axis:start:stop:count`` items joined by commas.

    Missing axes default to the single value 0. A count of 1 means the single
    value ``start``.
    """
    axes = {"x": np.array([0.0]), "y": np.array([0.0]), "z": np.array([0.0])}
    seen = set()
    for item in text.split(","):
        parts = item.strip().split(":")
        if len(parts) != 4 or parts[0] not in axes:
            raise ValueError(f"bad grid item {item!r}; expected axis:start:stop:count")
        name = parts[0]
        if name in seen:
            raise ValueError(f"axis {name} given twice")
        seen.add(name)
        start, stop = float(parts[1]), float(parts[2])
        count = int(parts[3])
        if count < 1:
            raise ValueError(f"grid count must be >= 1, got {count}")
        axes[name] = np.array([start]) if count == 1 else np.linspace(start, stop, count)
    return axes


def _grid_points(axes):
    # z-major: z outermost, then y, then x
    zz, yy, xx = np.meshgrid(axes["z"], axes["y"], axes["x"], indexing="ij")
    return point(xx.ravel(), yy.ravel(), zz.ravel())


def parse_real_vector(text, length=3):
    vals = parse_complex_vector(text, length)
    if np.any(vals.imag != 0):
        raise ValueError(f"expected a real vector, got {text!r}")
    return vals.real


def parse_orders(text):
    parts = [int(p) for p in text.split(",")]
    if len(parts) != 3 or min(parts) < 1:
        raise ValueError("orders must be three positive integers N_s,N_t,M")
    return tuple(parts)


def _parse_complex_scalar(text):
    return complex(parse_complex_vector(text, 1)[0])


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _emit(text, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _json_text(obj):
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _rows_to_json(header, rows):
    return _json_text({"schema_version": SCHEMA_VERSION, "columns": header, "rows": [[float(v) for v in r] for r in rows]})


def _table(args, header, rows):
    if args.format == "json":
        return _rows_to_json(header, rows)
    return _csv_text(header, rows)


# ---------------------------------------------------------------- commands


def cmd_amplitude(args):
    u = parse_complex_vector(args.u, 3)
    axes = parse_grid(args.grid)
    try:
        validate(u)
    except InadmissibleParameterError as exc:
        raise InvalidParameters(str(exc)) from exc
    p = _grid_points(axes)
    amp = np.atleast_1d(coherent.amplitude_normalized(u, p))
    rows = zip(np.ravel(p.x), np.ravel(p.y), np.ravel(p.z), amp.real, amp.imag, np.abs(amp))
    _emit(_table(args, ["x", "y", "z", "re", "im", "abs"], rows), args.out)
    return EXIT_OK


def cmd_series_check(args):
    l1 = _parse_complex_scalar(args.lambda1)
    l2 = _parse_complex_scalar(args.lambda2)
    axes = parse_grid(args.grid)
    lp = coherent.LambdaPair(l1, l2)
    if max(abs(l1), abs(l2)) >= 1:
        raise InvalidParameters("series needs |lambda1|, |lambda2| < 1")
    p = _grid_points(axes)
    ref = coherent.reference_point()
    ser = np.atleast_1d(coherent.series_amplitude(lp, p, tol=args.series_tol))
    closed = np.atleast_1d(coherent.amplitude_closed(lp, p))
    aligned, ratio = coherent.align_phase(
        ser, coherent.series_amplitude(lp, ref, tol=args.series_tol), coherent.amplitude_closed(lp, ref)
    )
    diff = np.abs(aligned - closed)
    rows = zip(np.ravel(p.x), np.ravel(p.y), np.ravel(p.z), aligned.real, aligned.imag, closed.real, closed.imag, diff)
    header = ["x", "y", "z", "series_re", "series_im", "closed_re", "closed_im", "abs_diff"]
    if args.out:
        _emit(_table(args, header, rows), args.out)
    max_diff = float(np.max(diff))
    summary = {
        "schema_version": SCHEMA_VERSION,
        "lambda1": [l1.real, l1.imag],
        "lambda2": [l2.real, l2.imag],
        "phase_ratio": [ratio.real, ratio.imag],
        "max_abs_diff": max_diff,
        "tolerance": args.tol,
        "pass": max_diff < args.tol and abs(abs(ratio) - 1) < args.tol,
    }
    sys.stdout.write(_json_text(summary))
    return EXIT_OK if summary["pass"] else EXIT_FAIL


def cmd_trajectory(args):
    k = parse_real_vector(args.k)
    m = parse_real_vector(args.m)
    if abs(k @ m) > 1e-10:
        raise InvalidParameters(f"k and m must be orthogonal (k.m = {k @ m:.3g})")
    if args.samples < 1:
        raise InvalidParameters("samples must be >= 1")
    kmt = observables.KMTheta(k, m, args.theta)
    try:
        thetas, pos = observables.trajectory(kmt, args.samples)
    except InadmissibleParameterError as exc:
        raise NumericalFailure(str(exc)) from exc
    rows = [(th, *x) for th, x in zip(thetas, pos)]
    _emit(_table(args, ["theta", "x", "y", "z"], rows), args.out)
    if args.samples >= 2:
        a, b, residual = observables.fit_ellipse(thetas, pos)
    else:
        a, b, residual = pos[0], np.zeros(3), 0.0
    sidecar = {
        "schema_version": SCHEMA_VERSION,
        "semi_axes": [float(np.linalg.norm(a)), float(np.linalg.norm(b))],
        "A": [float(v) for v in a],
        "B": [float(v) for v in b],
        "residual": float(residual),
    }
    if args.out and args.out != "-":
        with open(args.out + ".json", "w", encoding="utf-8") as fh:
            fh.write(_json_text(sidecar))
    else:
        sys.stderr.write(_json_text(sidecar))
    return EXIT_OK


def cmd_verify(args):
    names = [s.strip() for item in (args.suite or ["all"]) for s in item.split(",") if s.strip()]
    unknown = [n for n in names if n != "all" and n not in verify.SUITES]
    if unknown:
        raise InvalidParameters(f"unknown suite(s): {', '.join(unknown)}")
    cfg = verify.SuiteConfig(
        seed=args.seed, tol=args.tol, orders=args.orders, cutoff=args.cutoff, workers=verify.thread_count()
    )
    cases = verify.run_suites(names, cfg)
    ok = all(c["pass"] for c in cases)
    report = {
        "schema_version": SCHEMA_VERSION,
        "seed": args.seed,
        "rng": verify.RNG_NAME,
        "suites": names,
        "pass": ok,
        "cases": cases,
    }
    _emit(_json_text(report), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_limit(args):
    q = parse_real_vector(args.q)
    if abs(np.linalg.norm(q) - 1.0) > 1e-12:
        raise InvalidParameters("q must be a unit vector")
    rhos = [float(r) for r in args.rho_list.split(",")]
    if any(not 0 < r < 1 for r in rhos):
        raise InvalidParameters("each rho must lie in (0, 1)")
    pts = verify.limit_points(args.seed)
    rows = [(rho, coherent.quasiclassical_ratio(q, rho, pts), observables.expect_r(rho * q)) for rho in rhos]
    _emit(_table(args, ["rho", "flatness", "expect_r"], rows), args.out)
    return EXIT_OK


def cmd_overlap(args):
    u = parse_complex_vector(args.u, 3)
    v = parse_complex_vector(args.v, 3)
    try:
        validate(u)
        validate(v)
    except InadmissibleParameterError as exc:
        raise InvalidParameters(str(exc)) from exc
    val = coherent.overlap(u, v)
    quad = coherent.overlap_quadrature(u, v, args.orders)
    out = {
        "schema_version": SCHEMA_VERSION,
        "re": val.real,
        "im": val.imag,
        "abs": abs(val),
        "quadrature_abs": abs(quad),
        "rel_err": abs(val - quad) / abs(val),
    }
    _emit(_json_text(out), args.out)
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="hcs", description="Hydrogen-atom coherent states: evaluation and verification.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, fmt=True):
        p.add_argument("--out", help="output path (default: standard output)")
        if fmt:
            p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("amplitude", help="normalized amplitude on a grid")
    p.add_argument("--u", required=True, help="complex 3-vector, e.g. 0.1+0.2i,0,0.3")
    p.add_argument("--grid", required=True, help="axis:start:stop:count,... (z-major rows)")
    common(p)
    p.set_defaults(func=cmd_amplitude)

    p = sub.add_parser("series-check", help="series against closed form on a grid")
    p.add_argument("--lambda1", required=True)
    p.add_argument("--lambda2", required=True)
    p.add_argument("--grid", default="x:-1:1:3,y:-1:1:3,z:-1:1:3")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--series-tol", type=float, default=1e-13)
    common(p)
    p.set_defaults(func=cmd_series_check)

    p = sub.add_parser("trajectory", help="<x> along the fictitious-time orbit")
    p.add_argument("--k", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--samples", type=int, default=64)
    common(p)
    p.set_defaults(func=cmd_trajectory)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", action="append", help="repeatable or comma-separated: " + ", ".join(["all", *verify.SUITES]))
    p.add_argument("--tol", type=float, default=None, help="override every suite tolerance")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--cutoff", type=int, default=8)
    p.add_argument("--orders", type=parse_orders, default=DEFAULT_ORDERS)
    common(p, fmt=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("limit", help="approach to the plane-wave limit")
    p.add_argument("--q", required=True)
    p.add_argument("--rho-list", required=True)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("overlap", help="<u|v> closed form and by quadrature")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--orders", type=parse_orders, default=DEFAULT_ORDERS)
    common(p, fmt=False)
    p.set_defaults(func=cmd_overlap)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (InvalidParameters, ValueError, DivergentSeriesError) as exc:
        sys.stderr.write(f"hcs: error: {exc}\n")
        return EXIT_INVALID
    except (NumericalFailure, ConvergenceError, ArithmeticError, HCSError) as exc:
        sys.stderr.write(f"hcs: numerical failure: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
