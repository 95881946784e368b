"""Command-line interface.

Subcommands: bound, kernel, tau, verify, zeta, omega.  Exit codes follow a
CI-friendly contract: 0 success, 2 input error, 3 mathematical violation
(a failed bound or factorization check signals a library bug, not misuse).

Numbers are printed with 17 significant digits so output is byte-stable
and floats round-trip exactly.  QUADFACT_TOL overrides the verification
tolerance (default 1e-9).
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from .bounds import CSV_HEADER, format_float
from .charode import characteristic_solution
from .errors import InputDomainError, KernelConditionError, QuadfactError
from .functions import Cosine, Exponential, Polynomial, Sine
from .rootfind import tan_fixed_point
from .rules import builtin_test_functions, parse_rule
from .zetafun import ZetaParams, zeta, zeta_derivative

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VIOLATION = 3


def _parse_interval(text: str):
    try:
        a_s, b_s = text.split(",")
        a, b = float(a_s), float(b_s)
    except ValueError as exc:
        raise InputDomainError(f"malformed interval {text!r}") from exc
    if not a < b:
        raise InputDomainError(f"need a < b, got {text!r}")
    return a, b


def _parse_function(text: str):
    head, sep, args = text.partition(":")
    if not sep:
        raise InputDomainError(f"malformed function selector {text!r}")
    try:
        if head == "poly":
            return Polynomial([float(s) for s in args.split(",")])
        if head == "exp":
            return Exponential(float(args))
        if head == "sin":
            return Sine(float(args))
        if head == "cos":
            return Cosine(float(args))
    except ValueError as exc:
        raise InputDomainError(f"malformed function selector {text!r}: {exc}") from exc
    raise InputDomainError(f"unknown function selector {text!r}")


def _out_stream(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _emit(stream, lines):
    for line in lines:
        stream.write(line + "\n")


def cmd_bound(args) -> int:
    a, b = _parse_interval(args.interval)
    rule = parse_rule(args.rule, a, b)
    f = _parse_function(args.f)
    report = rule.bound(f, args.p, validate=not args.no_validate)
    lines = (
        [report.to_json()]
        if args.format == "json"
        else [CSV_HEADER, report.to_csv_row()]
    )
    stream, close = _out_stream(args.output)
    try:
        _emit(stream, lines)
    finally:
        if close:
            stream.close()
    return EXIT_OK if report.holds else EXIT_VIOLATION


def cmd_kernel(args) -> int:
    a, b = _parse_interval(args.interval)
    rule = parse_rule(args.rule, a, b)
    if args.points < 2:
        raise InputDomainError("need at least 2 points")
    ts = np.linspace(a, b, args.points)
    lines = ["t,g"]
    for t in ts:
        g = rule.kernel(float(t), validate=not args.no_validate)
        lines.append(f"{format_float(t)},{format_float(g)}")
    stream, close = _out_stream(args.output)
    try:
        _emit(stream, lines)
    finally:
        if close:
            stream.close()
    return EXIT_OK


def cmd_tau(args) -> int:
    if args.max < 0:
        raise InputDomainError("need --max >= 0")
    lines = ["n,tau_n,residual"]
    for n in range(args.max + 1):
        tau = tan_fixed_point(n)
        residual = abs(math.tan(tau) - tau)
        lines.append(f"{n},{format_float(tau)},{format_float(residual)}")
    stream, close = _out_stream(args.output)
    try:
        _emit(stream, lines)
    finally:
        if close:
            stream.close()
    return EXIT_OK


def cmd_verify(args) -> int:
    a, b = _parse_interval(args.interval)
    rule = parse_rule(args.rule, a, b)
    tol = float(os.environ.get("QUADFACT_TOL", "1e-9"))
    funcs = builtin_test_functions()
    lines = []
    all_pass = True
    for f in funcs:
        record = rule.verify(f, tol=tol, validate=not args.no_validate)
        lines.append(record.to_json())
        all_pass = all_pass and record.passed
    stream, close = _out_stream(args.output)
    try:
        _emit(stream, lines)
    finally:
        if close:
            stream.close()
    return EXIT_OK if all_pass else EXIT_VIOLATION


def cmd_zeta(args) -> int:
    try:
        n_s, k_s, g_s = args.params.split(",")
        params = ZetaParams(int(n_s), int(k_s), float(g_s))
    except ValueError as exc:
        raise InputDomainError(f"malformed zeta params {args.params!r}: {exc}") from exc
    value = (
        zeta(params, args.t)
        if args.derivative == 0
        else zeta_derivative(params, args.derivative, args.t)
    )
    print(format_float(value))
    return EXIT_OK


def cmd_omega(args) -> int:
    a, b = _parse_interval(args.interval)
    rule = parse_rule(args.rule, a, b)
    if rule.spec is None:
        raise InputDomainError(f"rule {rule.name} has no characteristic operator")
    omega = characteristic_solution(rule.spec)
    print(format_float(omega.evaluate_real(args.t)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadfact",
        description="Kernel factorizations and sharp bounds for quadrature remainders.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_rule=True):
        if with_rule:
            p.add_argument("--rule", required=True,
                           help="trap:n | trap-multi:n1,n2,.. | simpson:w,v | "
                                "simpson-classical | zeta:n,k,gamma "
                                "(zeta:n,k picks the matching sharpened gamma)")
        p.add_argument("--interval", default="0,1", help="a,b  (default 0,1)")
        p.add_argument("--output", default=None, help="output path (default stdout)")
        p.add_argument("--no-validate", action="store_true",
                       help="skip the spectral precondition check")

    p_bound = sub.add_parser("bound", help="one Hölder bound report")
    add_common(p_bound)
    p_bound.add_argument("--f", required=True,
                         help="poly:c0,c1,.. | exp:beta | sin:beta | cos:beta")
    p_bound.add_argument("--p", default="inf", help="derivative norm exponent: 1|2|inf")
    p_bound.add_argument("--format", choices=("csv", "json"), default="csv")
    p_bound.set_defaults(fn=cmd_bound)

    p_kernel = sub.add_parser("kernel", help="dump the kernel as t,g CSV")
    add_common(p_kernel)
    p_kernel.add_argument("--points", type=int, default=101)
    p_kernel.set_defaults(fn=cmd_kernel)

    p_tau = sub.add_parser("tau", help="tangent fixed-point table")
    p_tau.add_argument("--max", type=int, default=5)
    p_tau.add_argument("--output", default=None)
    p_tau.set_defaults(fn=cmd_tau)

    p_verify = sub.add_parser("verify", help="factorization identity sweep")
    add_common(p_verify)
    p_verify.set_defaults(fn=cmd_verify)

    p_zeta = sub.add_parser("zeta", help="evaluate the series kernel function")
    p_zeta.add_argument("--params", required=True, help="n,k,gamma")
    p_zeta.add_argument("--t", type=float, required=True)
    p_zeta.add_argument("--derivative", type=int, default=0)
    p_zeta.set_defaults(fn=cmd_zeta)

    p_omega = sub.add_parser("omega", help="evaluate a rule's characteristic solution")
    add_common(p_omega)
    p_omega.add_argument("--t", type=float, required=True)
    p_omega.set_defaults(fn=cmd_omega)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (InputDomainError, KernelConditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except QuadfactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
