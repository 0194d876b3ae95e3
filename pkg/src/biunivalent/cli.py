"""Command-line front end.

Every subcommand prints one report on standard output; diagnostics go to
standard error.  Exit status is 0 on success, 2 on invalid arguments and 1
on computation errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from typing import Sequence

import numpy as np

from . import series as ser
from .bounds import COROLLARIES, COROLLARY_ALIASES, BoundReport, bounds_for, corollary_bounds, phi23
from .classes import ClassParams, inverse_transforms, membership_check, transform
from .errors import BiunivalentError, ParameterError
from .extremal import extremal_search
from .hypergeom import (
    HohlovParams,
    bernardi_apply,
    gauss_2f1_series,
    hohlov_apply,
    named_operator,
    phi_sequence,
)

GRID_LAMBDA = (0.0, 0.25, 0.5, 0.75, 1.0)
GRID_BETA = (0.0, 0.3, 0.7)
GRID_M = (2.0, 3.0, 4.0)
GRID_GAMMA = (1 + 0j, 2j, 0.5 + 0.5j)
GRID_HOHLOV = ((1.0, 1.0, 1.0), (1.0, 2.0, 3.0), (2.0, 1.0, 5.0))


class UsageError(ParameterError):
    pass


def parse_complex(text: str) -> complex:
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RE,IM but got {text!r}") from None
    if len(parts) == 1:
        parts.append(0.0)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected RE,IM but got {text!r}")
    value = complex(*parts)
    if value == 0:
        raise argparse.ArgumentTypeError("gamma must be nonzero")
    return value


def parse_floats(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}") from None


def _add_format(p: argparse.ArgumentParser, default: str = "json") -> None:
    p.add_argument("--format", choices=("json", "csv", "plain"), default=default, help="output mode")


def _add_hohlov(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a", type=float, default=None, help="Hohlov parameter a > 0 (default 1)")
    p.add_argument("--b", type=float, default=None, help="Hohlov parameter b > 0 (default 1)")
    p.add_argument("--c", type=float, default=None, help="Hohlov parameter c > 0 (default 1)")


def _add_class(p: argparse.ArgumentParser) -> None:
    p.add_argument("--class", dest="kind", choices=("s", "k"), required=True)
    p.add_argument("--gamma", type=parse_complex, default=None, help="complex order RE,IM (nonzero)")
    p.add_argument("--lambda", dest="lam", type=float, default=None, help="weight in [0, 1]")
    p.add_argument("--beta", type=float, default=None, help="order bound in [0, 1) (default 0)")
    p.add_argument("--m", type=float, default=None, help="class index m >= 2 (default 2)")
    _add_hohlov(p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biunivalent", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phi", help="Hohlov multipliers phi_1..phi_n")
    _add_hohlov(p)
    p.add_argument("--n", type=int, required=True)
    _add_format(p)

    p = sub.add_parser("f21", help="Taylor coefficients of 2F1(a,b;c;z)")
    _add_hohlov(p)
    p.add_argument("--order", type=int, default=ser.DEFAULT_ORDER)
    _add_format(p)

    p = sub.add_parser("apply", help="apply a convolution operator to a coefficient file")
    p.add_argument("--op", choices=("hohlov", "bernardi", "alexander", "libera", "carlson", "identity"), required=True)
    p.add_argument("--input", required=True)
    _add_hohlov(p)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--order", type=int, default=None)
    _add_format(p)

    p = sub.add_parser("revert", help="compositional inverse of a normalized function")
    p.add_argument("--input", required=True)
    p.add_argument("--order", type=int, default=None)
    _add_format(p)

    p = sub.add_parser("transform", help="class-defining transform series")
    _add_class(p)
    p.add_argument("--input", required=True)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--inverse", action="store_true", help="transform f^{-1} instead of f")
    _add_format(p)

    p = sub.add_parser("membership", help="P_m(beta) integral criterion on both transforms")
    _add_class(p)
    p.add_argument("--input", required=True)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--radii", type=parse_floats, default=[0.5, 0.9, 0.99])
    p.add_argument("--grid", type=int, default=4096)
    _add_format(p)

    p = sub.add_parser("bound", help="closed-form |a2|, |a3| bounds")
    _add_class(p)
    p.add_argument("--corollary", choices=tuple(COROLLARY_ALIASES), default=None)
    _add_format(p)

    p = sub.add_parser("verify", help="brute-force feasibility search against the bounds")
    _add_class(p)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--grid", action="store_true", help="run the full built-in parameter grid")
    _add_format(p)

    p = sub.add_parser("sweep", help="bound curves along one parameter")
    _add_class(p)
    p.add_argument("--vary", choices=("lambda", "beta", "m"), required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    _add_format(p, default="csv")
    return parser


# helpers -----------------------------------------------------------------


def _hohlov(args) -> HohlovParams:
    return HohlovParams(*(1.0 if v is None else v for v in (args.a, args.b, args.c)))


def _class(args, lam: float | None = None) -> ClassParams:
    if args.gamma is None:
        raise UsageError("--gamma is required (RE,IM, nonzero)")
    lam = args.lam if lam is None else lam
    if lam is None:
        raise UsageError("--lambda is required (a real in [0, 1])")
    beta = 0.0 if args.beta is None else args.beta
    m = 2.0 if args.m is None else args.m
    return ClassParams(args.gamma, lam, beta, m)


def _read_function(path: str, order: int | None) -> ser.NormalizedFunction:
    try:
        s = ser.load(path)
    except OSError as exc:
        raise UsageError(f"--input: cannot read {path!r}: {exc.strerror}") from None
    if order is not None:
        if order < 1:
            raise UsageError(f"--order must be >= 1, got {order}")
        s = s.with_order(order)
    return ser.NormalizedFunction.coerce(s)


def _csv(rows: Sequence[Sequence], header: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _plain(d: dict, prefix: str = "") -> str:
    lines = []
    for key, value in d.items():
        if isinstance(value, dict):
            lines.append(_plain(value, f"{prefix}{key}."))
        else:
            lines.append(f"{prefix}{key}: {json.dumps(value)}")
    return "\n".join(lines)


def _emit_dict(d: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(d)
    if fmt == "plain":
        return _plain(d)
    flat = {}
    for key, value in d.items():
        if not isinstance(value, dict):
            flat[key] = json.dumps(value) if isinstance(value, list) else value
    return _csv([list(flat.values())], list(flat.keys()))


def _emit_series(s: ser.TruncatedSeries, fmt: str) -> str:
    if fmt == "json":
        return ser.dumps(s)
    rows = [(k, float(c.real), float(c.imag)) for k, c in enumerate(s.coeffs)]
    if fmt == "csv":
        return _csv(rows, ("k", "re", "im"))
    return "\n".join(f"{k}: {re!r} {im!r}" for k, re, im in rows)


def _bound_row(value: float, rep: BoundReport) -> list:
    num = lambda x: "inf" if math.isinf(x) else repr(x)  # noqa: E731
    return (
        [repr(value)]
        + [num(b) for b in rep.a2_branches]
        + [num(rep.a2_bound), rep.a2_argmin]
        + [num(b) for b in rep.a3_branches]
        + [num(rep.a3_bound), rep.a3_argmin]
    )


# subcommands ---------------------------------------------------------------


def cmd_phi(args) -> str:
    hp = _hohlov(args)
    if args.n < 1:
        raise UsageError(f"--n must be >= 1, got {args.n}")
    phi = phi_sequence(hp, args.n).tolist()
    if args.format == "csv":
        return _csv([(n, v) for n, v in enumerate(phi, 1)], ("n", "phi"))
    return _emit_dict({"phi": phi}, args.format)


def cmd_f21(args) -> str:
    hp = _hohlov(args)
    if args.order < 0:
        raise UsageError(f"--order must be >= 0, got {args.order}")
    return _emit_series(gauss_2f1_series(hp, args.order), args.format)


def cmd_apply(args) -> str:
    f = _read_function(args.input, args.order)
    op = args.op
    needs_abc = op in ("hohlov",)
    if op == "bernardi":
        if args.delta is None:
            raise UsageError("--op bernardi needs --delta")
        if any(v is not None for v in (args.a, args.b, args.c)):
            raise UsageError("--op bernardi takes --delta, not --a/--b/--c")
        return _emit_series(bernardi_apply(f, args.delta), args.format)
    if args.delta is not None:
        raise UsageError(f"--delta only applies to --op bernardi, not {op}")
    if needs_abc:
        hp = _hohlov(args)
    elif op == "carlson":
        if args.a is None or args.c is None:
            raise UsageError("--op carlson needs --a and --c")
        if args.b is not None:
            raise UsageError("--op carlson fixes b = 1; drop --b")
        hp = named_operator("carlson_shaffer", a=args.a, c=args.c)
    elif op == "identity":
        hp = named_operator("identity", a=args.a)
    else:
        if any(v is not None for v in (args.a, args.b, args.c)):
            raise UsageError(f"--op {op} has fixed parameters; drop --a/--b/--c")
        hp = named_operator(op)
    return _emit_series(hohlov_apply(hp, f), args.format)


def cmd_revert(args) -> str:
    f = _read_function(args.input, args.order)
    return _emit_series(ser.revert(f), args.format)


def cmd_transform(args) -> str:
    cp, hp = _class(args), _hohlov(args)
    f = _read_function(args.input, args.order)
    if args.inverse:
        out = inverse_transforms(f, cp, hp, kind=args.kind)
    else:
        out = transform(args.kind, f, cp, hp)
    return _emit_series(out, args.format)


def cmd_membership(args) -> str:
    cp, hp = _class(args), _hohlov(args)
    if args.grid < 64:
        raise UsageError(f"--grid must be >= 64, got {args.grid}")
    if not args.radii or any(not 0 < r < 1 for r in args.radii):
        raise UsageError(f"--radii must be reals in (0, 1), got {args.radii}")
    f = _read_function(args.input, args.order)
    report = membership_check(f, cp, hp, args.kind, args.radii, args.grid)
    return _emit_dict(report.to_dict(), args.format)


def cmd_bound(args) -> str:
    hp = _hohlov(args)
    if args.corollary is None:
        return _emit_dict(bounds_for(args.kind, _class(args), hp).to_dict(), args.format)
    name = COROLLARY_ALIASES[args.corollary]
    kind, lam = COROLLARIES[name]
    if kind != args.kind:
        raise UsageError(f"--corollary {args.corollary} belongs to --class {kind}, not {args.kind}")
    if args.lam is not None and args.lam != lam:
        raise UsageError(f"--corollary {args.corollary} fixes lambda = {lam:g}; got --lambda {args.lam:g}")
    cp = _class(args, lam=lam)
    return _emit_dict(corollary_bounds(name, cp, *phi23(hp)).to_dict(), args.format)


def cmd_verify(args) -> str:
    if args.samples < 10_000:
        raise UsageError(f"--samples must be >= 10000, got {args.samples}")
    if args.workers < 1:
        raise UsageError(f"--workers must be >= 1, got {args.workers}")
    if not args.grid:
        cp, hp = _class(args), _hohlov(args)
        report = extremal_search(args.kind, cp, hp, args.samples, args.seed, workers=args.workers)
        return _emit_dict(report.to_dict(), args.format)
    given = [f for f in ("gamma", "lam", "beta", "m", "a", "b", "c") if getattr(args, f) is not None]
    if given:
        raise UsageError(f"--grid conflicts with explicit class flags: {', '.join(given)}")
    rows = []
    grid = itertools.product(GRID_LAMBDA, GRID_BETA, GRID_M, GRID_GAMMA, GRID_HOHLOV)
    for i, (lam, beta, m, gamma, abc) in enumerate(grid):
        rep = extremal_search(
            args.kind, ClassParams(gamma, lam, beta, m), HohlovParams(*abc), args.samples, args.seed + i,
            workers=args.workers,
        )
        rows.append(rep.to_dict())
    summary = {
        "kind": args.kind,
        "configurations": len(rows),
        "all_dominated": all(r["dominated"] for r in rows),
        "max_a2_ratio": max(r["a2_ratio"] for r in rows),
        "max_a3_ratio": max(r["a3_ratio"] for r in rows),
    }
    if args.format == "csv":
        keys = ("kind", "seed", "samples", "feasible_count", "max_a2", "a2_bound", "a2_ratio", "max_a3",
                "a3_bound", "a3_ratio", "dominated")
        extra = ("lambda", "beta", "m", "gamma", "hohlov")
        body = [[r[k] for k in keys] + [json.dumps(r["bounds"]["params"][k]) for k in extra] for r in rows]
        return _csv(body, keys + extra)
    if args.format == "plain":
        return _plain(summary)
    return json.dumps({"summary": summary, "reports": rows})


def cmd_sweep(args) -> str:
    if args.steps < 1:
        raise UsageError(f"--steps must be >= 1, got {args.steps}")
    hp = _hohlov(args)
    flag = {"lambda": "lam", "beta": "beta", "m": "m"}[args.vary]
    if getattr(args, flag) is not None:
        raise UsageError(f"--vary {args.vary} conflicts with an explicit --{args.vary}")
    if args.gamma is None:
        raise UsageError("--gamma is required (RE,IM, nonzero)")
    if flag != "lam" and args.lam is None:
        raise UsageError("--lambda is required unless --vary lambda")
    values = np.linspace(args.start, args.stop, args.steps).tolist()
    fixed = {"lam": args.lam, "beta": 0.0 if args.beta is None else args.beta, "m": 2.0 if args.m is None else args.m}
    params = []
    for v in values:
        try:
            params.append(ClassParams(args.gamma, **(fixed | {flag: v})))
        except ParameterError as exc:
            raise UsageError(f"--vary {args.vary}: value {v!r} is out of range ({exc})") from None
    reports = [bounds_for(args.kind, cp, hp) for cp in params]
    n2, n3 = len(reports[0].a2_branches), len(reports[0].a3_branches)
    header = (
        [args.vary]
        + [f"a2_branch{i}" for i in range(n2)]
        + ["a2_bound", "a2_argmin"]
        + [f"a3_branch{i}" for i in range(n3)]
        + ["a3_bound", "a3_argmin"]
    )
    rows = [_bound_row(v, rep) for v, rep in zip(values, reports)]
    if args.format == "csv":
        return _csv(rows, header)
    data = {"vary": args.vary, "rows": [rep.to_dict() | {args.vary: v} for v, rep in zip(values, reports)]}
    if args.format == "plain":
        return "\n".join(" ".join(str(c) for c in row) for row in [header] + rows)
    return json.dumps(data)


COMMANDS = {
    "phi": cmd_phi,
    "f21": cmd_f21,
    "apply": cmd_apply,
    "revert": cmd_revert,
    "transform": cmd_transform,
    "membership": cmd_membership,
    "bound": cmd_bound,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = COMMANDS[args.command](args)
    except ParameterError as exc:
        print(f"biunivalent {args.command}: error: {exc}", file=stderr)
        return 2
    except (BiunivalentError, ArithmeticError) as exc:
        print(f"biunivalent {args.command}: computation failed: {exc}", file=stderr)
        return 1
    print(out, file=stdout)
    return 0


def main() -> None:
    sys.exit(run())
