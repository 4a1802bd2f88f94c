"""Command-line interface: ``indexhyp {eval,transform,table,verify,calibrate}``.

Exit codes: 0 success, 1 an assert-mode check failed, 2 usage error,
3 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import sys

import numpy as np
from scipy.interpolate import CubicSpline

from . import hahn
from . import index_transform as it
from . import lambda_fn as lf
from . import quadrature as quad
from . import special_fn as sf
from . import translate_bireflected as tb
from .checks import CSV_FIELDS, REGISTRY, exit_code_for, report_row, run_suite, select
from .config import Config, load_config
from .errors import CalibrationError, IndexHypError, NonConvergenceError, UnknownCheckError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NONCONV = 0, 1, 2, 3

log = logging.getLogger("indexhyp")


class UsageError(Exception):
    pass


def _fmt(v):
    return repr(float(v))


def _value_json(v):
    v = complex(v)
    return {"re": float(v.real), "im": float(v.imag)} if v.imag else float(v.real)


def _params(items):
    """'k=v' pairs to a dict of floats (complex allowed, e.g. w=0.5+1j)."""
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError("parameters are key=value, got %r" % item)
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = float(v)
        except ValueError:
            try:
                out[k.strip()] = complex(v.replace(" ", ""))
            except ValueError:
                raise UsageError("bad number for %s: %r" % (k, v)) from None
    return out


def _need(p, *names):
    missing = [n for n in names if n not in p]
    if missing:
        raise UsageError("missing parameter(s): %s" % ", ".join(missing))
    return [p[n] for n in names]


# ---------------------------------------------------------------- eval


def _eval_loggamma(p):
    (w,) = _need(p, "w")
    return complex(sf.log_gamma(complex(w))), 0.0


def _eval_hyp2f1(p):
    b, c, s, x = _need(p, "b", "c", "s", "x")
    return complex(sf.hyp2f1_line(b, c, s, x)), 0.0


def _eval_sigma(p):
    b, c, s = _need(p, "b", "c", "s")
    return sf.weight_sigma(b, c, s), 0.0


def _eval_weight_abc(p):
    a, b, c, s = _need(p, "a", "b", "c", "s")
    return sf.weight_abc(a, b, c, s), 0.0


def _eval_tau(p):
    a, b, c, s = _need(p, "a", "b", "c", "s")
    return sf.weight_abc(a, b, c, s, normalization="tau"), 0.0


def _eval_hahn(p):
    n, a, b, c, s = _need(p, "n", "a", "b", "c", "s")
    return complex(hahn.hahn_eval(int(n), a, b, c, s)), 0.0


def _eval_lambda(p):
    a, b, c, x = _need(p, "a", "b", "c", "x")
    v = lf.lambda_eval(a, b, c, x)
    return v.value, v.error_estimate


def _eval_xi(p):
    n, a, b, c, x = _need(p, "n", "a", "b", "c", "x")
    return tb.xi_eval(int(n), a, b, c, x), math.nan


def _eval_re_lambda_half(p):
    a, x = _need(p, "a", "x")
    return lf.re_lambda_half_closed(a, x), math.nan


EVALUATORS = {
    "loggamma": _eval_loggamma,
    "hyp2f1": _eval_hyp2f1,
    "sigma": _eval_sigma,
    "weight_abc": _eval_weight_abc,
    "tau": _eval_tau,
    "hahn": _eval_hahn,
    "lambda": _eval_lambda,
    "xi": _eval_xi,
    "re_lambda_half": _eval_re_lambda_half,
}


def cmd_eval(args, out):
    p = _params(args.param)
    value, err = EVALUATORS[args.function](p)
    doc = {"function": args.function, "params": {k: _value_json(v) for k, v in sorted(p.items())},
           "value": _value_json(value), "error_estimate": None if math.isnan(err) else float(err)}
    out.write(json.dumps(doc, sort_keys=True) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------- transform


def _read_samples(path):
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].lstrip().startswith("#")]
    if rows and not _is_number(rows[0][0]):
        rows = rows[1:]
    try:
        data = np.array([[float(v) for v in r[:2]] for r in rows])
    except ValueError:
        raise UsageError("sample file must have two numeric columns") from None
    if data.ndim != 2 or data.shape[1] != 2 or len(data) < 4:
        raise UsageError("sample file needs at least 4 rows of (point, value)")
    order = np.argsort(data[:, 0])
    data = data[order]
    if np.any(np.diff(data[:, 0]) <= 0):
        raise UsageError("sample points must be distinct")
    return data[:, 0], data[:, 1]


def _is_number(text):
    try:
        float(text)
        return True
    except ValueError:
        return False


def sampled_halfline(xs, fs, decay):
    """Spline in t = arcsh sqrt x inside the samples, power tail x^{-decay} beyond."""
    if xs[0] < 0:
        raise UsageError("x samples must be >= 0")
    t = np.arcsinh(np.sqrt(xs))
    spline = CubicSpline(t, fs)
    x_end, f_end = xs[-1], fs[-1]

    def ev(x):
        x = np.asarray(x, dtype=float)
        inside = spline(np.arcsinh(np.sqrt(np.clip(x, xs[0], x_end))))
        with np.errstate(divide="ignore"):
            tail = f_end * (np.maximum(x, x_end) / x_end) ** (-decay)
        return np.where(x <= x_end, inside, tail)

    return quad.HalfLineFunction(ev, decay, "samples")


def _grid(text):
    """'start:stop:num' or a comma list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError("grid is start:stop:num")
        return np.linspace(float(parts[0]), float(parts[1]), int(parts[2]))
    try:
        return np.array([float(v) for v in text.split(",")])
    except ValueError:
        raise UsageError("bad grid %r" % text) from None


def cmd_transform(args, out):
    pts = _grid(args.points)
    xs, vs = _read_samples(args.input)
    spec = quad.DEFAULT_SPEC.with_(rel_tol=args.rel_tol)
    if args.direction == "forward":
        if args.decay is None:
            raise UsageError("forward needs --decay (power-law exponent of the tail)")
        if not args.decay > args.b:
            raise UsageError("--decay must exceed b for the transform to exist")
        f = sampled_halfline(xs, vs, args.decay)
        res = it.forward_with_error(f, args.b, args.c, pts, spec)
        header = ("s", "value", "error_estimate")
    else:
        spline = CubicSpline(xs, vs)
        s_end = xs[-1]

        def g(s):
            s = np.asarray(s, dtype=float)
            return np.where(s <= s_end, spline(np.clip(s, xs[0], s_end)), 0.0)

        res = it.inverse_with_error(g, args.b, args.c, pts, spec.with_(s_max_policy=float(s_end)))
        header = ("x", "value", "error_estimate")
    if not res.converged:
        log.warning("quadrature did not reach the requested tolerance")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for p, v, e in zip(pts, np.atleast_1d(res.value), np.atleast_1d(res.error_estimate)):
        w.writerow([_fmt(p), _fmt(np.real(v)), _fmt(e)])
    return EXIT_OK if res.converged else EXIT_NONCONV


# ---------------------------------------------------------------- table


def cmd_table(args, out):
    p = _params(args.param)
    grid = _grid(args.grid)
    w = csv.writer(out, lineterminator="\n")
    kind = args.kind
    if kind == "lambda":
        a, b, c = _need(p, "a", "b", "c")
        vals = lf.lambda_values(a, b, c, grid)[0]
        w.writerow(("x", "re", "im"))
        for x, v in zip(grid, vals):
            w.writerow([_fmt(x), _fmt(v.real), _fmt(v.imag)])
    elif kind == "xi":
        a, b, c = _need(p, "a", "b", "c")
        N = int(p.get("N", 3))
        vals = tb.BireflectedBasis(N, a, b, c).values(grid)
        w.writerow(("x",) + tuple("xi%d_%s" % (n, part) for n in range(N + 1) for part in ("re", "im")))
        for x, row in zip(grid, vals):
            w.writerow([_fmt(x)] + [_fmt(f) for v in row for f in (v.real, v.imag)])
    elif kind == "hahn":
        a, b, c = _need(p, "a", "b", "c")
        N = int(p.get("N", 4))
        w.writerow(("s",) + tuple("S%d" % n for n in range(N + 1)))
        for s in grid:
            w.writerow([_fmt(s)] + [_fmt(hahn.hahn_eval(n, a, b, c, s)) for n in range(N + 1)])
    elif kind == "sigma":
        b, c = _need(p, "b", "c")
        w.writerow(("s", "sigma"))
        for s in grid:
            w.writerow([_fmt(s), _fmt(sf.weight_sigma(b, c, s))])
    elif kind == "tau":
        a, b, c = _need(p, "a", "b", "c")
        w.writerow(("s", "tau"))
        for s in grid:
            w.writerow([_fmt(s), _fmt(sf.weight_abc(a, b, c, s, normalization="tau"))])
    return EXIT_OK


# ---------------------------------------------------------------- verify


def _config(args):
    cfg = load_config(args.config) if args.config else Config()
    if getattr(args, "workers", None):
        cfg = Config(**{**cfg.__dict__, "workers": args.workers})
    if getattr(args, "output_dir", None):
        cfg = Config(**{**cfg.__dict__, "output_dir": args.output_dir})
    return cfg


def write_reports_csv(reports, fh):
    w = csv.DictWriter(fh, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(report_row(r))


def cmd_verify(args, out):
    cfg = _config(args)
    if args.list:
        for id in select(set(args.tags) if args.tags else None):
            e = REGISTRY[id]
            out.write("%-14s %-10s %s\n" % (id, e.mode, e.description))
        return EXIT_OK
    ids = args.ids or None
    if ids:
        for id in ids:
            if id not in REGISTRY:
                raise UnknownCheckError("unknown check id %r" % id)

    def progress(id, reps):
        for r in reps:
            out.write("%-14s %-13s residual=%-12.4g tol=%-8.3g %s\n"
                      % (r.id, r.outcome.upper(), r.residual, r.tolerance, json.dumps(r.point, sort_keys=True)))
        out.flush()

    result = run_suite(set(args.tags) if args.tags else None, cfg, ids=ids, progress=None if args.quiet else progress)
    os.makedirs(cfg.output_dir, exist_ok=True)
    csv_path = args.csv or os.path.join(cfg.output_dir, "verify.csv")
    with open(csv_path, "w", newline="") as fh:
        write_reports_csv(result.reports, fh)
    summary = result.summary()
    with open(os.path.join(cfg.output_dir, "summary.json"), "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
    out.write(json.dumps(summary, sort_keys=True) + "\n")
    return exit_code_for(result.reports)


# ---------------------------------------------------------------- calibrate


def cmd_calibrate(args, out):
    cal = lf.calibrate_re_lambda_half(a=args.a)
    gen = hahn.pin_generating_exponent()
    doc = {
        "re_lambda_half": {"a": args.a, "convention": cal.convention, "constant": cal.constant,
                           "spread": cal.spread, "spreads": cal.spreads,
                           "points": list(lf.CALIBRATION_POINTS)},
        "hahn_generating_exponent": {"label": gen[0], "residual": gen[1]},
    }
    text = json.dumps(doc, indent=2, sort_keys=True)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    out.write(text + "\n")
    return EXIT_OK


# ---------------------------------------------------------------- entry


def build_parser():
    ap = argparse.ArgumentParser(prog="indexhyp", description="Index hypergeometric transform workbench.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate one special-function value")
    e.add_argument("function", choices=sorted(EVALUATORS))
    e.add_argument("param", nargs="*", help="key=value pairs")
    e.set_defaults(func=cmd_eval)

    t = sub.add_parser("transform", help="forward/inverse transform of a sampled function (CSV)")
    t.add_argument("direction", choices=("forward", "inverse"))
    t.add_argument("input", help="CSV with two columns: point, value")
    t.add_argument("--b", type=float, required=True)
    t.add_argument("--c", type=float, required=True)
    t.add_argument("--points", required=True, help="output grid, start:stop:num or comma list")
    t.add_argument("--decay", type=float, help="tail exponent alpha of the sampled function (forward)")
    t.add_argument("--rel-tol", type=float, default=1e-8)
    t.set_defaults(func=cmd_transform)

    tb_ = sub.add_parser("table", help="CSV table of Lambda, Xi, S_n, sigma or tau over a grid")
    tb_.add_argument("kind", choices=("lambda", "xi", "hahn", "sigma", "tau"))
    tb_.add_argument("param", nargs="*", help="key=value pairs (a, b, c, N)")
    tb_.add_argument("--grid", required=True, help="start:stop:num or comma list")
    tb_.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="run registry checks")
    v.add_argument("ids", nargs="*", help="check ids (default: all)")
    v.add_argument("--tags", nargs="*", help="run entries carrying any of these tags (e.g. fast)")
    v.add_argument("--config", help="INI config file")
    v.add_argument("--csv", help="CSV output path (default: <output_dir>/verify.csv)")
    v.add_argument("--output-dir")
    v.add_argument("--workers", type=int)
    v.add_argument("--list", action="store_true", help="list registered checks and exit")
    v.add_argument("-q", "--quiet", action="store_true")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("calibrate", help="pin the adjudicated constants and write a calibration file")
    c.add_argument("--a", type=float, default=2.0)
    c.add_argument("--output", help="JSON file to write")
    c.set_defaults(func=cmd_calibrate)
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args, out)
    except (NonConvergenceError, CalibrationError) as exc:
        log.error("%s", exc)
        return EXIT_NONCONV
    except (UsageError, UnknownCheckError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    except IndexHypError as exc:
        log.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
