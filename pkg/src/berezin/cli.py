"""Command-line front end: closed forms with quadrature cross-checks,
parameter sweeps, and verification suites.

Every command prints a single-line JSON run record to stdout; human-readable
tables go to stderr.  Numbers serialize via Python's shortest round-trip
representation, so parsing the record recovers the exact float values.
Exit codes: 0 success, 2 usage error, 3 numeric-contract violation,
4 internal error.

The `verify` record intentionally omits the timestamp so that two identical
invocations produce byte-identical JSON; all other commands include an
ISO-8601 UTC timestamp (their determinism contract covers the `results`
field).  The BEREZIN_SEED environment variable supplies the default seed.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import __version__, bergman_space, oscillator, quadrature, semiclassics, verify
from .gaussian_calculus import (
    ComplexPoint,
    GaussianSymbol,
    QuantParams,
    berezin_transform_closed,
    evaluate,
    taylor_remainder,
)

__all__ = ["RunRecord", "entry", "main", "parse_grid", "parse_point"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONTRACT = 3
EXIT_INTERNAL = 4

TRANSFORM_DEVIATION_LIMIT = 1e-6
TRACE_DEVIATION_LIMIT = 1e-6
UNCERTAINTY_RATIO_LIMIT = 1e-9


@dataclass
class RunRecord:
    """One JSON-serializable record per invocation."""

    command: str
    parameters: dict
    results: dict
    seed: int | None = None
    tool_version: str = __version__
    timestamp: str | None = None

    def to_dict(self) -> dict:
        data = {
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "seed": self.seed,
            "tool_version": self.tool_version,
        }
        if self.timestamp is not None:
            data["timestamp"] = self.timestamp
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"), allow_nan=False)

    @classmethod
    def from_dict(cls, data: dict) -> "RunRecord":
        return cls(
            command=data["command"],
            parameters=data["parameters"],
            results=data["results"],
            seed=data["seed"],
            tool_version=data["tool_version"],
            timestamp=data.get("timestamp"),
        )


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _complex_json(value: complex) -> dict:
    return {"re": value.real, "im": value.imag}


def parse_point(text: str) -> ComplexPoint:
    """Parse 're,im;re,im;...' into a point (one 're,im' pair per coordinate)."""
    coords = []
    for chunk in text.split(";"):
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ValueError(f"coordinate {chunk!r} is not of the form re,im")
        coords.append(complex(float(parts[0]), float(parts[1])))
    return ComplexPoint(tuple(coords))


def parse_grid(text: str) -> list[float]:
    """Parse a comma list, 'logspace:a:b:num', or 'linspace:a:b:num'."""
    if text.startswith(("logspace:", "linspace:")):
        kind, start, stop, num = text.split(":")
        count = int(num)
        if count < 1:
            raise ValueError("grid needs at least one value")
        fn = np.logspace if kind == "logspace" else np.linspace
        return [float(v) for v in fn(float(start), float(stop), count)]
    values = [float(v) for v in text.split(",")]
    if not values:
        raise ValueError("empty grid")
    return values


def _default_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("BEREZIN_SEED")
    return int(env) if env else 0


def _positive(kind):
    def convert(text):
        value = kind(text)
        if value <= 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return value

    return convert


def _non_negative_float(text):
    value = float(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {text}")
    return value


def _emit(record: RunRecord) -> None:
    sys.stdout.write(record.to_json() + "\n")


# -- commands -----------------------------------------------------------------


def cmd_transform(args) -> int:
    q = QuantParams(args.alpha)
    symbol = GaussianSymbol(dim=args.n, amplitude=args.amplitude, compression=args.lam)
    closed = berezin_transform_closed(symbol, q)
    results = {
        "lambda_prime": closed.compression,
        "amplitude_prime": closed.amplitude,
    }
    exit_code = EXIT_OK
    if args.numeric is not None:
        point = parse_point(args.at) if args.at else ComplexPoint.origin(args.n)
        if point.dim != args.n:
            raise ValueError(f"--at has {point.dim} coordinates, expected {args.n}")
        numeric = quadrature.berezin_transform_numeric(symbol, point, q, order=args.numeric)
        reference = evaluate(closed, point)
        deviation = abs(numeric - reference)
        results["numeric_value"] = _complex_json(numeric)
        results["closed_value_at_point"] = reference
        results["deviation"] = deviation
        if deviation > TRANSFORM_DEVIATION_LIMIT:
            exit_code = EXIT_CONTRACT
    record = RunRecord(
        command="transform",
        parameters={
            "n": args.n,
            "lambda": args.lam,
            "alpha": args.alpha,
            "amplitude": args.amplitude,
            "numeric": args.numeric,
            "at": args.at,
        },
        results=results,
        timestamp=_now(),
    )
    _emit(record)
    return exit_code


def cmd_trace(args) -> int:
    q = QuantParams(args.alpha)
    report = bergman_space.purity_index(args.lam, q, dim=args.n)
    results = {
        "normalized_trace": report.normalized_trace,
        "raw_trace": report.raw_trace,
    }
    exit_code = EXIT_OK
    if not args.no_numeric:
        order = 60 if args.n == 2 else 80
        raw_numeric = bergman_space.purity_raw_numeric(args.lam, q, dim=args.n, order=order)
        normalized_numeric = raw_numeric * report.normalized_trace / report.raw_trace
        deviation = abs(normalized_numeric - report.normalized_trace)
        results["normalized_trace_numeric"] = normalized_numeric
        results["deviation"] = deviation
        if deviation > TRACE_DEVIATION_LIMIT:
            exit_code = EXIT_CONTRACT
    record = RunRecord(
        command="trace",
        parameters={"n": args.n, "lambda": args.lam, "alpha": args.alpha},
        results=results,
        timestamp=_now(),
    )
    _emit(record)
    return exit_code


def cmd_uncertainty(args) -> int:
    closed = oscillator.uncertainty_report(args.lam, args.K)
    numeric = oscillator.uncertainty_quadrature(args.lam, args.K)
    results = {
        "var_x": closed.var_x,
        "var_p": closed.var_p,
        "rhs": closed.rhs,
        "ratio": closed.ratio,
        "norm_sq": closed.norm_sq,
        "var_x_normalized": closed.var_x_normalized,
        "var_p_normalized": closed.var_p_normalized,
        "ratio_quadrature": numeric.ratio,
    }
    record = RunRecord(
        command="uncertainty",
        parameters={"lambda": args.lam, "K": args.K},
        results=results,
        timestamp=_now(),
    )
    _emit(record)
    if abs(closed.ratio - 1.0) > UNCERTAINTY_RATIO_LIMIT:
        return EXIT_CONTRACT
    return EXIT_OK


_SWEEP_QUANTITIES = (
    "normalized_trace",
    "lambda_prime",
    "amplitude_prime",
    "taylor_remainder",
    "expansion_residual",
)


def _sweep_value(quantity: str, n: int, lam: float, alpha: float) -> float:
    q = QuantParams(alpha)
    if quantity == "normalized_trace":
        return bergman_space.purity_index(lam, q, dim=n).normalized_trace
    symbol = GaussianSymbol(dim=n, amplitude=1.0, compression=lam)
    if quantity == "lambda_prime":
        return berezin_transform_closed(symbol, q).compression
    if quantity == "amplitude_prime":
        return berezin_transform_closed(symbol, q).amplitude
    if quantity == "taylor_remainder":
        return taylor_remainder(symbol, q, 0.3 + 0j)
    raise ValueError(f"unknown quantity {quantity!r}")


def cmd_sweep(args) -> int:
    lambdas = parse_grid(args.lambdas) if args.lambdas else [args.lam]
    alphas = parse_grid(args.alphas) if args.alphas else [args.alpha]
    if any(v < 0 for v in lambdas):
        raise ValueError("lambda grid values must be non-negative")
    if any(v <= 0 for v in alphas):
        raise ValueError("alpha grid values must be positive")

    results: dict = {}
    rows: list[list] = []
    header = ["lambda", "alpha", "n", args.quantity]
    if args.quantity == "expansion_residual":
        # one residual row per alpha; the slope goes into the record
        if len(alphas) < 3:
            raise ValueError("expansion_residual sweeps need at least three alphas")
        grid = (0j, 0.3 + 0j, 0.7 + 0j)
        for lam in lambdas:
            symbol = GaussianSymbol(dim=args.n, amplitude=1.0, compression=lam)
            report = semiclassics.expansion_check(symbol, alphas, grid)
            for alpha, residual in zip(report.alphas, report.residual_norms):
                rows.append([lam, alpha, args.n, residual])
            results[f"slope_lambda_{lam}"] = report.fitted_slope
    else:
        if args.quantity == "normalized_trace" and any(v <= 0 for v in lambdas):
            raise ValueError("normalized_trace needs positive lambda values")
        for lam in lambdas:
            for alpha in alphas:
                rows.append([lam, alpha, args.n, _sweep_value(args.quantity, args.n, lam, alpha)])

    with open(args.out, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row])

    results.update({"rows": len(rows), "out": args.out, "last_value": rows[-1][-1]})
    record = RunRecord(
        command="sweep",
        parameters={
            "quantity": args.quantity,
            "n": args.n,
            "lambdas": args.lambdas or repr(args.lam),
            "alphas": args.alphas or repr(args.alpha),
            "out": args.out,
        },
        results=results,
        timestamp=_now(),
    )
    _emit(record)
    return EXIT_OK


def cmd_verify(args) -> int:
    seed = _default_seed(args)
    checks = verify.run_suites(args.suite, seed=seed)
    all_passed = all(c.passed for c in checks)
    width = max(len(c.name) for c in checks)
    sys.stderr.write(f"{'suite':<12} {'check':<{width}} {'status':<6} value / bound\n")
    for c in checks:
        status = "pass" if c.passed else "FAIL"
        sys.stderr.write(f"{c.suite:<12} {c.name:<{width}} {status:<6} {c.value:.3e} / {c.bound:.3e}\n")
    sys.stderr.write(f"{'all suites passed' if all_passed else 'FAILURES PRESENT'}\n")
    record = RunRecord(
        command="verify",
        parameters={"suite": args.suite},
        results={
            "checks": [c.as_dict() for c in checks],
            "passed": sum(1 for c in checks if c.passed),
            "failed": sum(1 for c in checks if not c.passed),
            "all_passed": all_passed,
        },
        seed=seed,
        timestamp=None,  # byte-identical output for identical invocations
    )
    _emit(record)
    return EXIT_OK if all_passed else EXIT_CONTRACT


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="berezin",
        description="Gaussian-state quantization toolkit: closed forms, quadrature oracles, sweeps.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_transform = sub.add_parser("transform", help="closed-form smoothing transform of a Gaussian symbol")
    p_transform.add_argument("--n", type=_positive(int), default=1, help="complex dimension")
    p_transform.add_argument("--lambda", dest="lam", type=_non_negative_float, required=True)
    p_transform.add_argument("--alpha", type=_positive(float), required=True)
    p_transform.add_argument("--amplitude", type=_positive(float), default=1.0)
    p_transform.add_argument("--numeric", type=_positive(int), metavar="ORDER", default=None,
                             help="also evaluate by tensor quadrature at this rule order")
    p_transform.add_argument("--at", default=None, metavar="POINT",
                             help="evaluation point 're,im;re,im;...' (default: origin)")
    p_transform.set_defaults(handler=cmd_transform)

    p_trace = sub.add_parser("trace", help="normalized trace of the squared transformed symbol")
    p_trace.add_argument("--n", type=_positive(int), default=1)
    p_trace.add_argument("--lambda", dest="lam", type=_positive(float), required=True)
    p_trace.add_argument("--alpha", type=_positive(float), required=True)
    p_trace.add_argument("--no-numeric", action="store_true", help="skip the quadrature cross-check")
    p_trace.set_defaults(handler=cmd_trace)

    p_unc = sub.add_parser("uncertainty", help="variance identity of the compressed Gaussian state")
    p_unc.add_argument("--lambda", dest="lam", type=_positive(float), required=True)
    p_unc.add_argument("--K", type=_positive(float), default=1.0, help="amplitude")
    p_unc.set_defaults(handler=cmd_uncertainty)

    p_sweep = sub.add_parser("sweep", help="tabulate a quantity over parameter grids (CSV)")
    p_sweep.add_argument("--quantity", choices=_SWEEP_QUANTITIES, required=True)
    p_sweep.add_argument("--n", type=_positive(int), default=1)
    p_sweep.add_argument("--lambda", dest="lam", type=_non_negative_float, default=1.0)
    p_sweep.add_argument("--alpha", type=_positive(float), default=1.0)
    p_sweep.add_argument("--lambdas", default=None, help="grid: '0.5,1,2' or 'logspace:a:b:num'")
    p_sweep.add_argument("--alphas", default=None, help="grid: '1,10' or 'logspace:0:6:13'")
    p_sweep.add_argument("--out", required=True, help="CSV output path")
    p_sweep.set_defaults(handler=cmd_sweep)

    p_verify = sub.add_parser("verify", help="run the oracle-equivalence suites")
    p_verify.add_argument("--suite", choices=verify.SUITE_NAMES, default="all")
    p_verify.add_argument("--seed", type=int, default=None,
                          help="seed for randomized checks (default: BEREZIN_SEED or 0)")
    p_verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - defensive
        sys.stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


def entry() -> None:
    sys.exit(main())
