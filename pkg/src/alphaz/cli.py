"""Command-line front end: single-point evaluation, grid sweeps to CSV,
matrix dumps, and the certification suites.

Exit codes: 0 success (all checks passed for `verify`), 1 verification
failure, 2 malformed input or I/O error, 3 domain error (z = 0, p out of
range, unsupported support configuration).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import divergences as dv
from .analysis import CurveSpec, SweepSpec, sweep
from .linalg import DomainError, NotPSDError
from .matrixio import SpecError, dump_matrix, resolve_state_spec
from .suites import SUITE_NAMES, run_suites

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3


def _fmt(x: float) -> str:
    """12 significant digits, lowercase inf/nan, no locale."""
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(float(x), ".12g")


def _fmt_divergence(x: float) -> str:
    """Divergence values below the pipeline noise floor print as 0."""
    return "0" if abs(x) <= 1e-12 else _fmt(x)


def _parse_grid(text: str) -> tuple[float, ...]:
    parts = text.split(":")
    if len(parts) != 3:
        raise SpecError(f"grid must be lo:hi:n, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise SpecError(f"bad grid {text!r}: {exc}") from exc
    if n < 1:
        raise SpecError(f"grid needs at least one point, got {n}")
    return tuple(float(v) for v in np.linspace(lo, hi, n))


CURVE_NAMES = {
    "sandwiched": CurveSpec.identity,
    "petz": lambda: CurveSpec.constant(1.0),
    "exponential": CurveSpec.exponential,
}


def _parse_curve(text: str) -> CurveSpec:
    parts = text.split(":")
    name = parts[0]
    if name in CURVE_NAMES and len(parts) == 1:
        return CURVE_NAMES[name]()
    try:
        if name == "constant" and len(parts) == 2:
            return CurveSpec.constant(float(parts[1]))
        if name == "affine" and len(parts) == 3:
            return CurveSpec.affine(float(parts[1]), float(parts[2]))
    except ValueError as exc:
        raise SpecError(f"bad curve parameters in {text!r}: {exc}") from exc
    known = sorted(CURVE_NAMES) + ["constant:Z0", "affine:A:B"]
    raise SpecError(f"unknown curve {text!r}; known: {', '.join(known)}")


def _load_pair(args) -> tuple[np.ndarray, np.ndarray]:
    if getattr(args, "example1", None) is not None:
        raw = args.example1
        p = float(raw[2:] if raw.startswith("p=") else raw)
        from .states import example1_pair

        return example1_pair(p)
    if args.rho is None or args.sigma is None:
        raise SpecError("either --example1 or both --rho and --sigma are required")
    return (resolve_state_spec(args.rho, "rho"),
            resolve_state_spec(args.sigma, "sigma"))


def cmd_compute(args) -> int:
    rho, sigma = _load_pair(args)
    alpha = args.alpha
    if args.family == "alphaz":
        if args.z is None:
            raise SpecError("--z is required for the alphaz family")
        value = dv.alpha_z_divergence(rho, sigma, alpha, args.z)
    elif args.family == "petz":
        value = dv.petz_divergence(rho, sigma, alpha)
    elif args.family == "sandwiched":
        value = dv.sandwiched_divergence(rho, sigma, alpha)
    else:
        value = dv.mosonyi_ogawa_divergence(rho, sigma, alpha)
    if not value.is_finite:
        print(f"inf {value.infinity_reason}")
    else:
        print(_fmt_divergence(value.in_bits() if args.bits else value.value))
    return EXIT_OK


def cmd_sweep(args) -> int:
    rho, sigma = _load_pair(args)
    alphas = _parse_grid(args.alpha_grid)
    if args.z_grid.startswith("curve:"):
        spec = SweepSpec(alphas=alphas, curve=_parse_curve(args.z_grid[len("curve:"):]))
    else:
        spec = SweepSpec(alphas=alphas, zs=_parse_grid(args.z_grid))
    rows = sweep(rho, sigma, spec)
    lines = ["alpha,z,divergence_nats,trace_functional,finite"]
    for row in rows:
        d = "inf" if not row.finite else _fmt_divergence(row.divergence.value)
        lines.append(
            f"{_fmt(row.alpha)},{_fmt(row.z)},{d},{_fmt(row.trace_value)},"
            f"{'true' if row.finite else 'false'}"
        )
    text = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise SpecError(f"cannot write {args.out}: {exc}") from exc
    return EXIT_OK


def cmd_dump(args) -> int:
    matrix = resolve_state_spec(args.state, args.role)
    try:
        dump_matrix(matrix, args.out)
    except OSError as exc:
        raise SpecError(f"cannot write {args.out}: {exc}") from exc
    return EXIT_OK


def cmd_verify(args) -> int:
    bias = 0.01 if args.self_test_perturb else 0.0
    reports = run_suites([args.suite], n_seeds=args.seeds, bias=bias)
    width = max(len(r.name) for r in reports)
    for rep in reports:
        status = "PASS" if rep.passed else "FAIL"
        print(f"{status}  {rep.name:<{width}}  residual={rep.max_residual:.3e}")
    failures = [r for r in reports if not r.passed]
    print(f"{len(reports) - len(failures)}/{len(reports)} checks passed "
          f"(suite={args.suite}, seeds={args.seeds})")
    if args.json is not None:
        doc = {
            "suite": args.suite,
            "seeds": args.seeds,
            "passed": not failures,
            "checks": [r.to_dict() for r in reports],
        }
        with open(args.json, "w") as fh:
            json.dump(doc, fh, indent=2, default=float)
            fh.write("\n")
    if failures:
        first = failures[0]
        print(f"first failure: {first.name} residual={first.max_residual:.6e}",
              file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alphaz",
        description="alpha-z quantum Renyi divergence numerics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    spec_help = ("state spec: a matrix JSON path, or inline JSON like "
                 '\'{"generator": "density", "seed": 7, "dim": 4}\' or '
                 '\'{"example1": {"p": 0.25}}\'')

    p_compute = sub.add_parser("compute", help="evaluate one divergence value")
    p_compute.add_argument("--rho", help=spec_help)
    p_compute.add_argument("--sigma", help=spec_help)
    p_compute.add_argument("--example1", metavar="P",
                           help="use the rank-1-vs-diagonal pair with this p "
                                "(accepts 0.25 or p=0.25)")
    p_compute.add_argument("--alpha", type=float, required=True)
    p_compute.add_argument("--z", type=float, help="required for --family alphaz")
    p_compute.add_argument("--family", default="alphaz",
                           choices=["alphaz", "petz", "sandwiched", "mo"])
    p_compute.add_argument("--bits", action="store_true",
                           help="report in bits instead of nats")
    p_compute.set_defaults(func=cmd_compute)

    p_sweep = sub.add_parser("sweep", help="write a divergence grid as CSV")
    p_sweep.add_argument("--rho", help=spec_help)
    p_sweep.add_argument("--sigma", help=spec_help)
    p_sweep.add_argument("--example1", metavar="P", help="pair shortcut as in compute")
    p_sweep.add_argument("--alpha-grid", required=True, metavar="LO:HI:N")
    p_sweep.add_argument("--z-grid", required=True, metavar="LO:HI:N|curve:NAME",
                         help="fixed z grid, or curve:sandwiched / curve:petz / "
                              "curve:exponential / curve:constant:Z0 / curve:affine:A:B")
    p_sweep.add_argument("--out", required=True, help="output CSV path, - for stdout")
    p_sweep.set_defaults(func=cmd_sweep)

    p_dump = sub.add_parser("dump", help="write a state-spec matrix as JSON")
    p_dump.add_argument("--state", required=True, help=spec_help)
    p_dump.add_argument("--role", default="rho", choices=["rho", "sigma"])
    p_dump.add_argument("--out", required=True)
    p_dump.set_defaults(func=cmd_dump)

    p_verify = sub.add_parser("verify", help="run the certification suites")
    p_verify.add_argument("--suite", default="all", choices=list(SUITE_NAMES))
    p_verify.add_argument("--seeds", type=int, default=10,
                          help="number of seeded test pairs per check")
    p_verify.add_argument("--json", help="also write a machine-readable summary here")
    p_verify.add_argument("--self-test-perturb", action="store_true",
                          help=argparse.SUPPRESS)
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, NotPSDError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (SpecError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
