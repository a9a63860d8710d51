"""Command-line front end: ``ellipk {eval,verify,monotone,coeffs}``.

Exit codes
----------
0  success
2  bad input (parse error, domain violation, unwritable output path)
3  coefficient table too short for the requested tolerance
4  a bound or monotonicity check failed
5  analytic and finite-difference derivatives disagree
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import re
import sys
from contextlib import contextmanager

import numpy as np

from . import __version__
from .bounds import FUNCTIONS, check_theorem_many
from .coeffs import cached_table
from .errors import ConsistencyError, DomainError, EllipkError, TableExhausted
from .monotonicity import DEFAULT_H, default_m1_grid, default_u_grid, verify_monotone
from .series import DEFAULT_TOL, HALF_PI, series

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_TABLE = 3
EXIT_FAILED = 4
EXIT_CONSISTENCY = 5

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"([+-]?{_NUM})(?:([+-]{_NUM})?i)?")

# column order of `verify --format csv`
VERIFY_COLUMNS = (
    ["index", "seed", "z_re", "z_im", "m_re", "m_im", "m1"]
    + [f"{f}_{c}" for f in FUNCTIONS
       for c in ("lhs", "sharp", "coarse", "margin_sharp", "margin_coarse",
                 "eval_error", "passed")]
    + ["equality_case", "passed"]
)
MONOTONE_COLUMNS = ["u", "m1", "df1", "df2", "df3", "degenerate"]


def parse_complex(text: str) -> complex:
    """Parse ``a``, ``a+bi`` or ``a-bi`` (no whitespace)."""
    match = _COMPLEX_RE.fullmatch(text)
    if match is None or (text.endswith("i") and match.group(2) is None):
        raise argparse.ArgumentTypeError(f"not a complex literal of the form a+bi: {text!r}")
    re_part = float(match.group(1))
    im_part = float(match.group(2)) if match.group(2) else 0.0
    return complex(re_part, im_part)


def _positive_float(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def _cjson(w: complex) -> dict:
    return {"re": w.real, "im": w.imag}


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), allow_nan=False)


@contextmanager
def _output(path: str):
    if path == "-":
        yield sys.stdout
        sys.stdout.flush()
        return
    try:
        fh = open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise DomainError(f"cannot write {path}: {exc}") from exc
    with fh:
        yield fh


# ---------------------------------------------------------------- eval

def cmd_eval(args) -> int:
    out = {"z": _cjson(args.z), "m": _cjson(args.m), "tol": args.tol}
    for name in FUNCTIONS:
        r = series(name, args.z, args.m, args.tol)
        out[name] = {"value": _cjson(r.value), "error_radius": r.error_radius,
                     "terms_used": r.terms_used}
    print(_dumps(out))
    return EXIT_OK


# ---------------------------------------------------------------- verify

def sample_domain(samples: int, seed: int, radius: float):
    """Area-uniform points in ``|m| <= 1`` and ``|z| <= radius``.

    NumPy's PCG64 seeded with ``seed`` draws one ``(samples, 4)`` block of
    uniforms ``(a, b, c, d)``; then ``m = sqrt(a) e^(2 pi i b)`` and
    ``z = radius sqrt(c) e^(2 pi i d)``.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    u = rng.random((samples, 4))
    m = np.sqrt(u[:, 0]) * np.exp(2j * np.pi * u[:, 1])
    z = radius * np.sqrt(u[:, 2]) * np.exp(2j * np.pi * u[:, 3])
    # rounding in exp() can push |m| a hair past 1
    while True:
        over = np.abs(m) > 1.0
        if not over.any():
            break
        m[over] *= 1.0 - 2.0 ** -52
    return z, m


class _Worst:
    def __init__(self):
        self.value = math.inf
        self.where = None

    def offer(self, value, function, report):
        if value < self.value:
            self.value = value
            self.where = (function, report)

    def to_json_obj(self):
        if self.where is None:
            return None
        function, rep = self.where
        return {"value": self.value, "function": function, "index": rep.index,
                "z": _cjson(rep.z), "m": _cjson(rep.m)}


def _verify_csv_row(rep) -> list:
    row = [rep.index, rep.seed, rep.z.real, rep.z.imag, rep.m.real, rep.m.imag, rep.m1]
    for name in FUNCTIONS:
        rec = rep.record(name)
        row += [rec.lhs, rec.sharp, rec.coarse, rec.margin_sharp, rec.margin_coarse,
                rec.eval_error, rec.passed]
    return row + [rep.equality_case.value, rep.passed]


def cmd_verify(args) -> int:
    if not 0 < args.R < HALF_PI:
        raise DomainError("R must satisfy 0 < R < pi/2")
    if args.samples < 1:
        raise DomainError("samples must be >= 1")
    z, m = sample_domain(args.samples, args.seed, args.R)
    passed = 0
    worst_sharp, worst_coarse = _Worst(), _Worst()
    with _output(args.out) as fh:
        writer = None
        if args.format == "csv":
            writer = csv.writer(fh, lineterminator="\r\n")
            writer.writerow(VERIFY_COLUMNS)
        for lo in range(0, args.samples, args.batch):
            reports = check_theorem_many(z[lo:lo + args.batch], m[lo:lo + args.batch],
                                         args.tol, seed=args.seed, first_index=lo)
            lines = []
            for rep in reports:
                passed += rep.passed
                for name in FUNCTIONS:
                    rec = rep.record(name)
                    worst_sharp.offer(rec.margin_sharp, name, rep)
                    worst_coarse.offer(rec.margin_coarse, name, rep)
                if writer is not None:
                    writer.writerow(_verify_csv_row(rep))
                else:
                    lines.append(_dumps(rep.to_json_obj()))
            if lines:
                fh.write("\n".join(lines) + "\n")
            fh.flush()
        summary = {"summary": {
            "samples": args.samples, "passed": passed, "failed": args.samples - passed,
            "seed": args.seed, "R": args.R, "tol": args.tol,
            "worst_margin_sharp": worst_sharp.to_json_obj(),
            "worst_margin_coarse": worst_coarse.to_json_obj(),
        }}
        _emit_summary(fh, args.format, summary)
    return EXIT_OK if passed == args.samples else EXIT_FAILED


def _emit_summary(fh, fmt: str, summary: dict) -> None:
    # a CSV stream must stay rectangular, so its summary goes to stderr
    if fmt == "csv":
        print(_dumps(summary), file=sys.stderr)
    else:
        fh.write(_dumps(summary) + "\n")


# ---------------------------------------------------------------- monotone

def cmd_monotone(args) -> int:
    if args.u_max >= HALF_PI or args.u_max <= 0:
        raise DomainError("u-max must lie in (0, pi/2)")
    u_grid = default_u_grid(args.u_count, args.u_max)
    if args.include_zero:
        u_grid = [0.0] + u_grid
    reports = verify_monotone(u_grid, default_m1_grid(args.m1_count), args.h)
    live = [r for r in reports if not r.degenerate]
    ok = all(r.all_negative and r.sampled_decreasing for r in live)
    with _output(args.out) as fh:
        if args.format == "csv":
            writer = csv.writer(fh, lineterminator="\r\n")
            writer.writerow(MONOTONE_COLUMNS)
            for r in reports:
                for k, m1 in enumerate(r.m1_grid):
                    writer.writerow([r.u, m1, r.df1[k], r.df2[k], r.df3[k], r.degenerate])
        else:
            for r in reports:
                fh.write(_dumps(r.to_json_obj()) + "\n")
        summary = {"summary": {
            "rows": len(reports),
            "degenerate_rows": len(reports) - len(live),
            "passed_rows": sum(r.all_negative and r.sampled_decreasing for r in live),
            "min_abs_derivative": min((r.min_abs_derivative for r in live), default=None),
            "max_derivative": max((max(r.df1 + r.df2 + r.df3) for r in live), default=None),
            "all_negative": ok,
        }}
        _emit_summary(fh, args.format, summary)
    return EXIT_OK if ok else EXIT_FAILED


# ---------------------------------------------------------------- coeffs

def cmd_coeffs(args) -> int:
    if args.N < 0:
        raise DomainError("N must be >= 0")
    text = cached_table(args.N).dumps()
    with _output(args.out) as fh:
        fh.write(text)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ellipk",
        description="Jacobi sn, cn, dn for complex argument and parameter, with bound checks.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate sn, cn, dn at one point")
    e.add_argument("--z", type=parse_complex, required=True, help="argument, e.g. 0.5+0.2i")
    e.add_argument("--m", type=parse_complex, required=True, help="parameter, |m| <= 1")
    e.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", help="random sweep of the bound chains")
    v.add_argument("--R", type=float, default=1.5, help="sample |z| <= R (R < pi/2)")
    v.add_argument("--samples", type=int, default=100_000)
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    v.add_argument("--format", choices=("json-lines", "csv"), default="json-lines")
    v.add_argument("--out", default="-", help="output path, '-' for stdout")
    v.add_argument("--batch", type=int, default=8192, help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)

    mo = sub.add_parser("monotone", help="parameter monotonicity on a grid")
    mo.add_argument("--u-count", type=int, default=15)
    mo.add_argument("--m1-count", type=int, default=21)
    mo.add_argument("--u-max", type=float, default=1.5)
    mo.add_argument("--include-zero", action="store_true", help="add the degenerate u = 0 row")
    mo.add_argument("--h", type=_positive_float, default=DEFAULT_H,
                    help="finite-difference stride")
    mo.add_argument("--format", choices=("json-lines", "csv"), default="json-lines")
    mo.add_argument("--out", default="-")
    mo.set_defaults(func=cmd_monotone)

    c = sub.add_parser("coeffs", help="export the exact coefficient table as JSON")
    c.add_argument("--N", type=int, default=40)
    c.add_argument("--out", default="-")
    c.set_defaults(func=cmd_coeffs)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TableExhausted as exc:
        print(f"ellipk: {exc}", file=sys.stderr)
        return EXIT_TABLE
    except ConsistencyError as exc:
        print(f"ellipk: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (EllipkError, ValueError) as exc:
        print(f"ellipk: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
