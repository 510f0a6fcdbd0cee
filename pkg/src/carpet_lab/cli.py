"""Command-line interface: ``carpet-lab <command> ...``.

Every JSON document carries ``"schema": "carpet-lab/1"`` and is written with
sorted keys, so repeated runs with the same inputs are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .classify import Outcome, compare, profile, ve_witness_point
from .coding import Coding, check_coding, coding_of_point, pi, random_word
from .core import CarpetSpec, ell
from .errors import CarpetLabError, ConfigError
from .index import (
    CurveStream,
    Gauge,
    checkpoint_betas,
    curve_coding,
    delta_lower,
    delta_upper,
    empirical_series,
    gamma_bounds,
    monte_carlo_delta,
)
from .logforms import DEFAULT_PRECISION, decimal_str, fraction_str
from .measure import ball_measure_bounds, sandwich_checks
from .render import render_carpet
from .runlength import beta_sequence

SCHEMA = "carpet-lab/1"
PRECISION_ENV = "CARPET_LAB_PRECISION"
MIN_PRECISION = 16


# --------------------------------------------------------------------------
# input parsing


def _load_json(arg: str):
    """``arg`` is a path to a JSON file or inline JSON text."""
    path = Path(arg)
    try:
        if path.is_file():
            return json.loads(path.read_text())
        return json.loads(arg)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read JSON from {arg!r}: {exc}") from None


def load_carpet(arg: str) -> CarpetSpec:
    obj = _load_json(arg)
    try:
        return CarpetSpec.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed carpet document: {exc}") from None


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"not a rational number: {text!r}") from None


def load_coding(spec: CarpetSpec, arg: str) -> Coding:
    """A coding from a path, inline JSON, or an exact point written ``"p/q,p/q"``."""
    if "," in arg and not arg.lstrip().startswith(("{", "[")) and not Path(arg).is_file():
        parts = arg.split(",")
        if len(parts) != 2:
            raise ConfigError(f"a point needs two coordinates, got {arg!r}")
        return coding_of_point(spec, [_parse_fraction(p) for p in parts])
    obj = _load_json(arg)
    try:
        c = Coding.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed coding document: {exc}") from None
    return check_coding(spec, c)


def load_gauge(arg: str) -> Gauge:
    if arg == "neglog":
        return Gauge.neglog()
    if arg == "loglog":
        return Gauge.loglog()
    obj = _load_json(arg)
    try:
        return Gauge.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed gauge document: {exc}") from None


def _precision(value: int | None) -> int:
    if value is None:
        env = os.environ.get(PRECISION_ENV)
        try:
            value = int(env) if env else DEFAULT_PRECISION
        except ValueError:
            raise ConfigError(f"{PRECISION_ENV} must be an integer") from None
    if value < MIN_PRECISION:
        raise ConfigError(f"precision must be at least {MIN_PRECISION} digits")
    return value


# --------------------------------------------------------------------------
# output


def _dump(doc: dict) -> str:
    doc = dict(doc)
    doc["schema"] = SCHEMA
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _number(q: Fraction, precision: int) -> dict:
    return {"value": decimal_str(q, precision), "exact": fraction_str(q)}


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _check_depth(depth: int) -> int:
    if depth < 1:
        raise ConfigError("depth must be at least 1")
    return depth


# --------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    spec = load_carpet(args.carpet)
    prof = profile(spec, args.precision, _check_depth(args.depth))
    _emit(_dump({"command": "analyze", "precision": args.precision, "profile": prof.to_json()}), args.output)
    return 0


def cmd_index(args) -> int:
    spec = load_carpet(args.carpet)
    g = load_gauge(args.gauge)
    K = _check_depth(args.depth)
    p = args.precision
    if args.curve is not None:
        c = curve_coding(spec, _parse_fraction(args.curve), K, adjusted=args.adjusted)
    elif args.coding is not None:
        c = load_coding(spec, args.coding)
    else:
        raise ConfigError("give a coding or --curve")
    doc = {"command": "index", "precision": p, "gauge": g.to_json(), "depth": K}
    doc["deltaUpper"] = delta_upper(spec, c, g, K, p).to_json(p)
    if isinstance(c, Coding):
        doc["coding"] = c.to_json()
        doc["deltaLower"] = delta_lower(spec, c, g, p).to_json(p)
    doc["gamma"] = gamma_bounds(spec, c, K, p).to_json(p)
    _emit(_dump(doc), args.output)
    if args.csv:
        emp = empirical_series(spec, c, g, K)
        rows = [(k, b, repr(r)) for k, b, r, _ in emp.rows()]
        Path(args.csv).write_text(_csv(rows, ["k", "beta", "ratio"]))
    return 0


def cmd_beta(args) -> int:
    spec = load_carpet(args.carpet)
    K = _check_depth(args.depth)
    L = ell(spec, K)
    if args.seed is not None:
        y = np.array([d[1] for d in random_word(spec, args.seed, L)], dtype=np.int64)
    elif args.coding is not None:
        y = load_coding(spec, args.coding).y_digits(L)
    else:
        raise ConfigError("give a coding or --seed")
    b0, bT = beta_sequence(spec, y, K)
    rows = [(k, ell(spec, k), int(b0[k]), int(bT[k]), int(max(b0[k], bT[k]))) for k in range(1, K + 1)]
    _emit(_csv(rows, ["k", "ell", "beta0", "betaTop", "beta"]), args.output)
    return 0


def _verdict_word(flag: bool | None) -> str:
    return "n/a" if flag is None else ("pass" if flag else "fail")


def cmd_oracle(args) -> int:
    spec = load_carpet(args.carpet)
    c = load_coding(spec, args.point)
    r, rho = _parse_fraction(args.r), _parse_fraction(args.rho)
    if not 0 < rho < 1:
        raise ConfigError("rho must lie in (0, 1)")
    p = args.precision
    rep = sandwich_checks(spec, c, r, rho, depth=args.depth, precision=p)
    u = rep.u
    ball = ball_measure_bounds(spec, pi(spec, c), r, u.outer_depth)
    doc = {
        "command": "oracle",
        "precision": p,
        "coding": c.to_json(),
        "r": fraction_str(r),
        "rho": fraction_str(rho),
        "depth": u.depth,
        "kOfR": rep.k_r,
        "k0": u.k0,
        "beta": rep.beta,
        "xiSize": len(u.xi),
        "xiCertain": len(u.xi_certain),
        "ballMeasure": {"lower": _number(ball.lower, p), "upper": _number(ball.upper, p)},
        "lower": decimal_str(u.lower, p),
        "upper": decimal_str(u.upper, p),
        "lemma31": "pass" if rep.square_ratio_ok else "fail",
        "lemma32": "pass" if rep.run_length_ok else "fail",
        "checks": {
            "squareRatioUpper": _verdict_word(rep.square_ratio_upper),
            "squareRatioLower": _verdict_word(rep.square_ratio_lower),
            "runLengthUpper": _verdict_word(rep.run_length_upper),
            "runLengthLower": _verdict_word(rep.run_length_lower),
        },
    }
    _emit(_dump(doc), args.output)
    return 0


def cmd_compare(args) -> int:
    E, F = load_carpet(args.carpet_e), load_carpet(args.carpet_f)
    verdict = compare(E, F, args.precision, args.assume_t, _check_depth(args.depth))
    _emit(_dump({"command": "compare", "verdict": verdict.to_json()}), args.output)
    if args.strict and verdict.outcome is Outcome.INDETERMINATE:
        return 2
    return 0


def cmd_sample(args) -> int:
    spec = load_carpet(args.carpet)
    if args.trials < 1:
        raise ConfigError("trials must be positive")
    if args.depth < 1000:
        raise ConfigError("depth must be at least 1000")
    stats = monte_carlo_delta(spec, args.trials, args.depth, args.seed, max(1, args.jobs))
    _emit(_dump({"command": "sample", "statistics": stats.to_json()}), args.output)
    return 0


def _curve_doc(spec: CarpetSpec, stream: CurveStream, precision: int) -> dict:
    checks = checkpoint_betas(spec, stream)
    rep = delta_upper(spec, stream, Gauge.neglog(), stream.depth, precision)
    return {
        "tPrime": fraction_str(stream.t_prime),
        "depth": stream.depth,
        "adjusted": stream.adjusted,
        "seededHead": stream.seeded_head,
        "head": stream.head,
        "letters": [list(d) for d in stream.letters],
        "checkpoints": [{"p": p, "beta": b, "expected": e} for p, b, e in checks],
        "checkpointsMatch": all(b == e for _, b, e in checks),
        "tailSup": repr(rep.empirical.tail_sup),
    }


def cmd_curve(args) -> int:
    spec = load_carpet(args.carpet)
    stream = curve_coding(spec, _parse_fraction(args.t), _check_depth(args.depth), adjusted=args.adjusted)
    doc = {"command": "curve", "precision": args.precision, "stream": _curve_doc(spec, stream, args.precision)}
    _emit(_dump(doc), args.output)
    if args.csv:
        b0, bT = beta_sequence(spec, stream.y, stream.depth)
        rows = [(k, int(max(b0[k], bT[k]))) for k in range(1, stream.depth + 1)]
        Path(args.csv).write_text(_csv(rows, ["k", "beta"]))
    return 0


def cmd_render(args) -> int:
    spec = load_carpet(args.carpet)
    overlay = []
    if args.witness:
        w = ve_witness_point(spec)
        if w is not None:
            overlay.append(w)
    svg = render_carpet(spec, args.depth, overlay, places=args.places)
    _emit(svg, args.output)
    return 0


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="carpet-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=None, help=f"significant digits (env {PRECISION_ENV})")
    common.add_argument("-o", "--output", help="write to this file instead of standard output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="invariant profile of one carpet")
    p.add_argument("carpet")
    p.add_argument("--depth", type=int, default=4, help="search depth for the total-disconnectedness flag")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("index", parents=[common], help="doubling indices of a coding or an extremal stream")
    p.add_argument("carpet")
    p.add_argument("coding", nargs="?")
    p.add_argument("--curve", metavar="T", help="use the extremal stream with this t' instead of a coding")
    p.add_argument("--adjusted", action="store_true", help="adjusted extremal stream")
    p.add_argument("--gauge", default="neglog", help="neglog, loglog, or a tabulated gauge JSON")
    p.add_argument("--depth", type=int, default=1000)
    p.add_argument("--csv", help="also write (k, beta, ratio) rows here")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("beta", parents=[common], help="CSV of reverse run lengths")
    p.add_argument("carpet")
    p.add_argument("coding", nargs="?")
    p.add_argument("--seed", type=int, help="use a random uniform word from this seed")
    p.add_argument("--depth", type=int, default=100)
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser("oracle", parents=[common], help="certified ball measures and doubling quotient")
    p.add_argument("carpet")
    p.add_argument("point", help='coding JSON or "p/q,p/q"')
    p.add_argument("--r", required=True)
    p.add_argument("--rho", required=True)
    p.add_argument("--depth", type=int, default=None, help="refinement depth (default k(rho r) + 6)")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("compare", parents=[common], help="certify non-equivalence of two carpets")
    p.add_argument("carpet_e")
    p.add_argument("carpet_f")
    p.add_argument("--assume-t", choices=["yes", "no"], default=None)
    p.add_argument("--strict", action="store_true", help="exit 2 on an indeterminate verdict")
    p.add_argument("--depth", type=int, default=4)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sample", parents=[common], help="Monte Carlo run-length statistics")
    p.add_argument("carpet")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--depth", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("curve", parents=[common], help="extremal stream checkpoints")
    p.add_argument("carpet")
    p.add_argument("--t", required=True, help="t' as a fraction")
    p.add_argument("--depth", type=int, default=10**4)
    p.add_argument("--adjusted", action="store_true")
    p.add_argument("--csv", help="also write (k, beta) rows here")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("render", parents=[common], help="SVG of the rank-depth cylinders")
    p.add_argument("carpet")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--places", type=int, default=12, help="decimal places for coordinates")
    p.add_argument("--witness", action="store_true", help="mark a double-coding point")
    p.set_defaults(func=cmd_render)
    return parser


def _error(code: str, message: str) -> int:
    sys.stderr.write(json.dumps({"schema": SCHEMA, "error": {"code": code, "message": message}}, sort_keys=True) + "\n")
    return 1


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.precision = _precision(args.precision)
        return args.func(args)
    except CarpetLabError as exc:
        return _error(exc.code, str(exc))
    except (ValueError, ZeroDivisionError) as exc:
        return _error("cli/BadInput", str(exc))
    except BrokenPipeError:
        # reader closed early (e.g. `| head`); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
