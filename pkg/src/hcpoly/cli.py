"""Command-line front end.

Subcommands: eval, roots, factor, jacobian, degree, verify.  Exit codes:
0 success, 1 verification-suite failure, 2 usage/parse error.  With --format
json the output is a single sorted-key JSON document with a schema marker;
identical commands with identical seeds print identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .algebra import get_algebra
from .degree import (
    RegularValueError,
    nonregular_demo,
    poly_map_degree,
    sphere_power_degree,
)
from .jacobian import exact_jacobian, jacobian_sign, row_norm_scale
from .parsing import ParseError, format_element, parse_element, parse_polynomial
from .roots import factor_linear_chain, find_roots, reconvolve
from .verify import SUITES, run_suite

SCHEMA = 1

_SIGN_NAMES = {1: "positive", 0: "zero", -1: "negative"}


def _read_source(text: str) -> str:
    if text == "-":
        return sys.stdin.read()
    return text


def _emit(args, payload: dict, text_lines) -> None:
    if args.format == "json":
        payload = {"schema": SCHEMA, **payload}
        print(json.dumps(payload, sort_keys=True, separators=(", ", ": ")))
    else:
        for line in text_lines:
            print(line)


def _cmd_eval(args) -> int:
    algebra = get_algebra(args.algebra)
    f = parse_polynomial(_read_source(args.poly), algebra)
    at = parse_element(args.at, algebra)
    value = f(at)
    _emit(
        args,
        {"command": "eval", "value": value.to_json()},
        [f"f({format_element(at)}) = {format_element(value)}"],
    )
    return 0


def _cmd_roots(args) -> int:
    algebra = get_algebra(args.algebra)
    f = parse_polynomial(_read_source(args.poly), algebra)
    records = find_roots(f) if args.tol is None else find_roots(f, tol=args.tol)
    lines = [f"{len(records)} root class(es)"]
    for rec in records:
        lines.append(
            f"  {rec.kind:<9} multiplicity {rec.multiplicity}  "
            f"value {format_element(rec.value)}  residual {rec.residual:.3e}"
        )
    _emit(
        args,
        {"command": "roots", "roots": [rec.to_json() for rec in records]},
        lines,
    )
    return 0


def _cmd_factor(args) -> int:
    algebra = get_algebra(args.algebra)
    f = parse_polynomial(_read_source(args.poly), algebra)
    leading, factors = factor_linear_chain(f)
    rebuilt = reconvolve(algebra, leading, factors, f.side)
    scale = max(1.0, float(np.max(np.abs(f.coeffs))))
    pad = max(rebuilt.coeffs.shape[0], f.coeffs.shape[0])
    a = np.zeros((pad, algebra.dim))
    b = np.zeros((pad, algebra.dim))
    a[: f.coeffs.shape[0]] = f.coeffs
    b[: rebuilt.coeffs.shape[0]] = rebuilt.coeffs
    residual = float(np.max(np.abs(a - b))) / scale
    lines = [f"leading {format_element(leading)}; chain of {len(factors)} factor(s)"]
    for index, c in enumerate(factors, start=1):
        lines.append(f"  c_{index} = {format_element(c)}")
    lines.append(f"reconvolution relative residual {residual:.3e}")
    _emit(
        args,
        {
            "command": "factor",
            "leading": leading.to_json(),
            "factors": [c.coords.tolist() for c in factors],
            "reconvolution_residual": residual,
        },
        lines,
    )
    return 0


def _cmd_jacobian(args) -> int:
    algebra = get_algebra(args.algebra)
    f = parse_polynomial(_read_source(args.poly), algebra)
    at = parse_element(args.at, algebra)
    jac = exact_jacobian(f, at)
    det = float(np.linalg.det(jac))
    sign = jacobian_sign(f, at) if args.tol is None else jacobian_sign(f, at, band=args.tol)
    lines = [
        f"J(f) at {format_element(at)}:",
        *(
            "  " + "  ".join(f"{value:12.6g}" for value in row)
            for row in jac
        ),
        f"det = {det:.12g}  (scale {row_norm_scale(jac):.6g}, sign {_SIGN_NAMES[sign]})",
    ]
    _emit(
        args,
        {
            "command": "jacobian",
            "matrix": jac.tolist(),
            "determinant": det,
            "sign": _SIGN_NAMES[sign],
        },
        lines,
    )
    return 0


def _cmd_degree(args) -> int:
    algebra = get_algebra(args.algebra)
    kind, _, spec_text = args.map.partition(":")
    if not spec_text or kind not in ("poly", "power"):
        raise ParseError("--map must look like poly:<expr> or power:<k>", 0)
    if kind == "poly":
        f = parse_polynomial(_read_source(spec_text), algebra)
        report = poly_map_degree(f, rng=np.random.default_rng(args.seed))
    else:
        report = sphere_power_degree(int(spec_text), args.r, algebra)
    lines = [
        f"map {report.map_label} over {report.algebra}: degree {report.degree} "
        f"({report.method}, {len(report.preimages)} preimage(s))"
    ]
    _emit(args, {"command": "degree", "report": report.to_json()}, lines)
    return 0


def _cmd_demo(args) -> int:
    report = nonregular_demo(samples=args.samples or 120_000,
                             rng=np.random.default_rng(args.seed))
    lines = [
        f"map {report['map']}: sampled min |f| = {report['min_abs_value']:.6f} "
        f"over {report['samples']} points",
        f"real axis: |f| in [{report['real_axis_min']}, {report['real_axis_max']}]",
    ]
    _emit(args, {"command": "demo", "report": report}, lines)
    return 0


def _cmd_verify(args) -> int:
    report = run_suite(args.suite, samples=args.samples, seed=args.seed)
    status = "pass" if report["passed"] else "FAIL"
    lines = [f"suite {report['suite']}: {status} ({report['samples']} samples)"]
    for key, value in report["details"].items():
        lines.append(f"  {key}: {value}")
    if report["counterexample"] is not None:
        lines.append(f"  counterexample: {report['counterexample']}")
    _emit(args, {"command": "verify", "report": report}, lines)
    return 0 if report["passed"] else 1


def _add_common(parser: argparse.ArgumentParser, with_samples=False) -> None:
    parser.add_argument("--algebra", choices=("H", "O"), default="H")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--seed", type=int, default=0, metavar="U64")
    parser.add_argument(
        "--tol", type=float, default=None,
        help="override the root residual tolerance / Jacobian zero band",
    )
    if with_samples:
        parser.add_argument("--samples", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hcpoly",
        description="Quaternion/octonion polynomial toolkit: evaluation, roots, "
        "Jacobians, topological degree, verification suites.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("eval", help="evaluate a polynomial at an element")
    p.add_argument("poly", help="polynomial text, or - for stdin")
    p.add_argument("--at", required=True, metavar="ELEMENT")
    _add_common(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("roots", help="enumerate and classify root classes")
    p.add_argument("poly")
    _add_common(p)
    p.set_defaults(func=_cmd_roots)

    p = sub.add_parser("factor", help="factor into a linear chain")
    p.add_argument("poly")
    _add_common(p)
    p.set_defaults(func=_cmd_factor)

    p = sub.add_parser("jacobian", help="Jacobian matrix, determinant, sign")
    p.add_argument("poly")
    p.add_argument("--at", required=True, metavar="ELEMENT")
    _add_common(p)
    p.set_defaults(func=_cmd_jacobian)

    p = sub.add_parser("degree", help="topological degree of a map")
    p.add_argument("--map", required=True, metavar="poly:<expr>|power:<k>")
    p.add_argument("--r", type=float, default=0.5, help="target radius for power maps")
    _add_common(p)
    p.set_defaults(func=_cmd_degree)

    p = sub.add_parser("demo", help="sampled no-root demo for the flat monomial sum")
    _add_common(p, with_samples=True)
    p.set_defaults(func=_cmd_demo)

    p = sub.add_parser("verify", help="run a named property suite")
    p.add_argument("suite", choices=sorted(SUITES))
    _add_common(p, with_samples=True)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except RegularValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
