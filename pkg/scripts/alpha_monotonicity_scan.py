#!/usr/bin/env python3
"""Exploratory scan of divergence monotonicity in alpha at fixed z.

Monotonicity in alpha is conjectured but unproven, so this script only
counts and reports violations across seeded pairs; it never asserts.
"""

import argparse

import numpy as np

from alphaz.analysis import SweepSpec, alpha_monotonicity_violations, sweep
from alphaz.states import random_density, random_reference


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pairs", type=int, default=20)
    parser.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4, 5, 6])
    parser.add_argument("--base-seed", type=int, default=424242)
    parser.add_argument("--alpha-points", type=int, default=40)
    parser.add_argument("--alpha-max", type=float, default=4.0)
    parser.add_argument("--zs", type=float, nargs="+",
                        default=[0.5, 1.0, 2.0, 4.0])
    parser.add_argument("--slack", type=float, default=1e-10)
    args = parser.parse_args()

    alphas = tuple(np.linspace(0.05, args.alpha_max, args.alpha_points))
    total_violations = 0
    total_steps = 0
    for k in range(args.pairs):
        dim = args.dims[k % len(args.dims)]
        rho = random_density(dim, args.base_seed + 2 * k)
        sigma = random_reference(dim, args.base_seed + 2 * k + 1)
        rows = sweep(rho, sigma, SweepSpec(alphas=alphas, zs=tuple(args.zs)))
        violations = alpha_monotonicity_violations(rows, slack=args.slack)
        total_violations += violations
        total_steps += (len(alphas) - 1) * len(args.zs)
        flag = "" if violations == 0 else f"  <-- {violations} violations"
        print(f"pair {k:3d} (dim {dim}): {violations} decreasing steps{flag}")
    print(f"\n{total_violations} violations out of {total_steps} alpha-steps "
          f"across {args.pairs} pairs (slack {args.slack:g})")
    print("reported only; monotonicity in alpha stays a conjecture")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
