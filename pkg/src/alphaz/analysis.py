"""Numerical certification of the alpha-z family's analytic properties.

Checks implemented here:
  * limits of D(a, g(a)) as a -> 1 along curves with g(1) != 0, converging
    to the relative entropy;
  * the first derivative of both the z=1 and z=a families at a=1, which
    equals half the relative entropy variance;
  * the second derivatives at a=1 for the rank-1-vs-diagonal pair family,
    where the two specializations disagree (0 versus -(ln p - ln(1-p))^2/4),
    so the piecewise family has no second derivative there;
  * monotonicity of z -> D(a, z) (decreasing for a > 1, increasing for a < 1);
  * the vanishing of dT/dz as a -> 1, T being the trace functional.

Each verification returns a CheckReport with a pass flag, a headline
residual, and a row-per-point trend table that serializes to JSON.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import divergences as dv
from .linalg import DomainError

FD_ORDERS = ("central2", "central4", "richardson")


@dataclass(frozen=True)
class FdScheme:
    """Finite-difference step and stencil order."""

    h: float = 1e-4
    order: str = "central2"

    def __post_init__(self):
        if not 1e-7 <= self.h <= 1e-1:
            raise ValueError(f"step must lie in [1e-7, 1e-1], got {self.h}")
        if self.order not in FD_ORDERS:
            raise ValueError(f"order must be one of {FD_ORDERS}, got {self.order!r}")


def _sample(f: Callable[[float], float], x: float) -> float:
    y = float(f(x))
    if not math.isfinite(y):
        raise ArithmeticError(f"non-finite sample f({x!r}) = {y!r} on the stencil")
    return y


def _central2_d1(f, x0: float, h: float) -> float:
    return (_sample(f, x0 + h) - _sample(f, x0 - h)) / (2.0 * h)


def _central2_d2(f, x0: float, h: float) -> float:
    return (_sample(f, x0 + h) - 2.0 * _sample(f, x0) + _sample(f, x0 - h)) / (h * h)


def fd_derivative(f: Callable[[float], float], x0: float,
                  scheme: FdScheme = FdScheme()) -> float:
    """First derivative of f at x0 by the scheme's central stencil."""
    h = scheme.h
    if scheme.order == "central2":
        return _central2_d1(f, x0, h)
    if scheme.order == "central4":
        return (
            -_sample(f, x0 + 2 * h) + 8 * _sample(f, x0 + h)
            - 8 * _sample(f, x0 - h) + _sample(f, x0 - 2 * h)
        ) / (12.0 * h)
    coarse = _central2_d1(f, x0, h)
    fine = _central2_d1(f, x0, h / 2.0)
    return (4.0 * fine - coarse) / 3.0


def fd_second_derivative(f: Callable[[float], float], x0: float,
                         scheme: FdScheme = FdScheme(1e-3)) -> float:
    """Second derivative of f at x0 by a symmetric stencil."""
    h = scheme.h
    if scheme.order == "central2":
        return _central2_d2(f, x0, h)
    if scheme.order == "central4":
        return (
            -_sample(f, x0 + 2 * h) + 16 * _sample(f, x0 + h) - 30 * _sample(f, x0)
            + 16 * _sample(f, x0 - h) - _sample(f, x0 - 2 * h)
        ) / (12.0 * h * h)
    coarse = _central2_d2(f, x0, h)
    fine = _central2_d2(f, x0, h / 2.0)
    return (4.0 * fine - coarse) / 3.0


@dataclass(frozen=True)
class CurveSpec:
    """A z = g(alpha) curve with g(1) != 0, enforced at construction.

    kinds: "constant" (params z0), "identity" (g = alpha), "affine"
    (params a, b for g = a*alpha + b), "exponential" (g = e^(alpha-1)).
    """

    kind: str
    params: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in ("constant", "identity", "affine", "exponential"):
            raise ValueError(f"unknown curve kind {self.kind!r}")
        if self.kind == "constant" and len(self.params) != 1:
            raise ValueError("constant curve needs one parameter z0")
        if self.kind == "affine" and len(self.params) != 2:
            raise ValueError("affine curve needs parameters (a, b)")
        if abs(self.g(1.0)) <= 1e-12:
            raise DomainError(f"curve {self.label()} has g(1) = 0")

    @classmethod
    def constant(cls, z0: float) -> "CurveSpec":
        return cls("constant", (float(z0),))

    @classmethod
    def identity(cls) -> "CurveSpec":
        return cls("identity")

    @classmethod
    def affine(cls, a: float, b: float) -> "CurveSpec":
        return cls("affine", (float(a), float(b)))

    @classmethod
    def exponential(cls) -> "CurveSpec":
        return cls("exponential")

    def g(self, alpha: float) -> float:
        if self.kind == "constant":
            return self.params[0]
        if self.kind == "identity":
            return alpha
        if self.kind == "affine":
            a, b = self.params
            return a * alpha + b
        return math.exp(alpha - 1.0)

    def g_prime(self, alpha: float) -> float:
        if self.kind == "constant":
            return 0.0
        if self.kind == "identity":
            return 1.0
        if self.kind == "affine":
            return self.params[0]
        return math.exp(alpha - 1.0)

    def label(self) -> str:
        if self.kind == "constant":
            return f"z={self.params[0]:g}"
        if self.kind == "identity":
            return "z=alpha"
        if self.kind == "affine":
            a, b = self.params
            return f"z={a:g}*alpha{b:+g}"
        return "z=exp(alpha-1)"


@dataclass(frozen=True)
class TraceFunctional:
    """The pair (rho, sigma) behind T(a, z) = Tr[F(a, z)^z]; requires
    dominance so all checked quantities are smooth near a = 1."""

    rho: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        rho = dv.check_density(self.rho)
        sigma = dv.check_reference(self.sigma)
        if not dv.dominates(sigma, rho):
            raise DomainError("trace functional requires sigma to dominate rho")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "sigma", sigma)

    def value(self, alpha: float, z: float) -> float:
        """T(alpha, z); equals 1 at alpha = 1 for every z."""
        return dv.alpha_z_trace(self.rho, self.sigma, alpha, z, validate=False)

    def divergence(self, alpha: float, z: float) -> float:
        """Finite alpha-z divergence value (dominance guarantees finiteness)."""
        return dv.alpha_z_divergence(self.rho, self.sigma, alpha, z).value

    def relative_entropy(self) -> float:
        return dv.relative_entropy(self.rho, self.sigma).value

    def variance(self) -> float:
        return dv.relative_entropy_variance(self.rho, self.sigma)


def trace_functional(tf: TraceFunctional, alpha: float, z: float) -> float:
    """Module-level alias for TraceFunctional.value."""
    return tf.value(alpha, z)


@dataclass
class CheckReport:
    """Outcome of one verification: pass flag, headline residual, and a
    per-point table for the trend."""

    name: str
    passed: bool
    max_residual: float
    rows: list[dict] = field(default_factory=list)
    notes: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": bool(self.passed),
            "max_residual": float(self.max_residual),
            "rows": self.rows,
            "notes": self.notes,
        }


# dyadic refinement 1 +/- 0.1 * 2^-k closed by a final offset of 1e-5
LIMIT_LEVELS = 11
LIMIT_BASE_OFFSET = 0.1
LIMIT_FINAL_OFFSET = 1e-5
LIMIT_TOL = 1e-3
_TREND_SLACK = 1e-12
# below this the residual is numerical noise and trend checks stop binding
_TREND_NOISE_FLOOR = 1e-9


def dyadic_offsets(levels: int = LIMIT_LEVELS,
                   base: float = LIMIT_BASE_OFFSET,
                   final: float | None = LIMIT_FINAL_OFFSET) -> list[float]:
    """Decreasing |alpha - 1| offsets: base * 2^-k plus an optional final one."""
    offsets = [base * 2.0**-k for k in range(levels)]
    if final is not None:
        offsets.append(final)
    return offsets


def verify_curve_limit(tf: TraceFunctional, curve: CurveSpec,
                       offsets: list[float] | None = None,
                       bias: float = 0.0) -> CheckReport:
    """Check D(a, g(a)) -> relative entropy as a -> 1 along the curve.

    Passes iff the error at the tightest offset is <= 1e-3 on both sides
    and the error decays monotonically over the last three dyadic
    refinements. `bias` shifts every measured divergence (self-test hook).
    """
    offsets = dyadic_offsets() if offsets is None else sorted(offsets, reverse=True)
    target = tf.relative_entropy()
    rows = []
    errors = {+1: [], -1: []}
    for side in (+1, -1):
        for off in offsets:
            alpha = 1.0 + side * off
            z = curve.g(alpha)
            d = tf.divergence(alpha, z) + bias
            err = abs(d - target)
            errors[side].append(err)
            rows.append({"alpha": alpha, "z": z, "divergence": d, "error": err})
    final_err = max(errors[+1][-1], errors[-1][-1])
    trend_ok = True
    for side in (+1, -1):
        tail = errors[side][-5:-1]  # the last three dyadic refinement steps
        trend_ok &= all(b <= max(a + _TREND_SLACK, _TREND_NOISE_FLOOR)
                        for a, b in zip(tail, tail[1:]))
    passed = final_err <= LIMIT_TOL and trend_ok
    return CheckReport(
        name=f"limit along {curve.label()}",
        passed=passed,
        max_residual=final_err,
        rows=rows,
        notes=f"target D = {target:.12g}, trend_ok = {trend_ok}",
    )


DERIVATIVE_REL_TOL = 1e-3
FAMILY_AGREEMENT_TOL = 1e-5
SLOPE_FLOOR = -1e-6

FAMILIES = {"z_equals_1": lambda a: (a, 1.0), "z_equals_alpha": lambda a: (a, a)}


def verify_derivative_at_one(tf: TraceFunctional,
                             scheme: FdScheme = FdScheme(1e-4, "central2"),
                             family: str = "both") -> CheckReport:
    """Check that the slope of both divergence families at a = 1 equals half
    the relative entropy variance.

    Passes iff each requested family's relative error is <= 1e-3, the two
    family estimates agree within 1e-5 (when both run), and no slope dips
    below -1e-6 (the variance is non-negative).
    """
    names = list(FAMILIES) if family == "both" else [family]
    if any(n not in FAMILIES for n in names):
        raise ValueError(f"unknown family {family!r}")
    target = 0.5 * tf.variance()
    # relative residual against a meaningful target, absolute once the target
    # sits below the finite-difference noise scale (e.g. rho = sigma)
    denom = abs(target) if abs(target) >= 1e-6 else 1.0
    rows = []
    slopes = {}
    for name in names:
        line = FAMILIES[name]
        slope = fd_derivative(lambda a: tf.divergence(*line(a)), 1.0, scheme)
        slopes[name] = slope
        rows.append({
            "family": name,
            "slope": slope,
            "half_variance": target,
            "rel_error": abs(slope - target) / denom,
        })
    max_rel = max(r["rel_error"] for r in rows)
    cross = abs(slopes["z_equals_1"] - slopes["z_equals_alpha"]) if len(slopes) == 2 else 0.0
    passed = (
        max_rel <= DERIVATIVE_REL_TOL
        and cross <= FAMILY_AGREEMENT_TOL
        and all(s >= SLOPE_FLOOR for s in slopes.values())
    )
    return CheckReport(
        name="derivative at alpha=1 vs half-variance",
        passed=passed,
        max_residual=max_rel,
        rows=rows,
        notes=f"cross-family |diff| = {cross:.3e}",
    )


def example1_closed_form(p: float, alpha: float, z: float) -> float:
    """Closed-form divergence of the rank-1-vs-diagonal pair:
    z/(a-1) * ln((p^((1-a)/z) + (1-p)^((1-a)/z)) / 2), with the a -> 1
    limit -(ln p + ln(1-p))/2, which is the pair's relative entropy."""
    p = float(p)
    if not 0.0 < p < 1.0:
        raise DomainError(f"p must lie in (0, 1), got {p}")
    z = float(z)
    if z == 0.0:
        raise DomainError("z = 0 is excluded")
    alpha = float(alpha)
    if abs(alpha - 1.0) <= dv.ALPHA_ONE_TOL:
        return -0.5 * (math.log(p) + math.log(1.0 - p))
    u = (1.0 - alpha) / z
    mean_pow = (p**u + (1.0 - p) ** u) / 2.0
    return z / (alpha - 1.0) * math.log(mean_pow)


SECOND_DERIV_ABS_TOL = 1e-3   # for the z=1 family, whose curvature is 0
SECOND_DERIV_REL_TOL = 1e-3   # for the z=alpha family
STENCIL_AGREEMENT_TOL = 1e-9


def verify_second_derivative_example1(p: float,
                                      scheme: FdScheme = FdScheme(1e-3, "central2")
                                      ) -> CheckReport:
    """Second derivatives at a = 1 for the rank-1-vs-diagonal pair.

    The z=1 family must have curvature 0 (within 1e-3) and the z=alpha
    family curvature -(ln p - ln(1-p))^2 / 4 (within 1e-3 relative); each
    is computed through both the closed form and the matrix pipeline, which
    must agree within 1e-9 at every stencil point.
    """
    from .states import example1_pair

    rho, sigma = example1_pair(p)
    tf = TraceFunctional(rho, sigma)
    curvature_target = -0.25 * (math.log(p) - math.log(1.0 - p)) ** 2
    rows = []
    stencil_gap = 0.0
    results = {}
    for name, z_of in (("z_equals_1", lambda a: 1.0), ("z_equals_alpha", lambda a: a)):
        gaps = []

        def pipeline(a, z_of=z_of, gaps=gaps):
            m = tf.divergence(a, z_of(a))
            c = example1_closed_form(p, a, z_of(a))
            gaps.append(abs(m - c))
            return m

        d2_matrix = fd_second_derivative(pipeline, 1.0, scheme)
        d2_closed = fd_second_derivative(
            lambda a, z_of=z_of: example1_closed_form(p, a, z_of(a)), 1.0, scheme)
        stencil_gap = max(stencil_gap, max(gaps))
        results[name] = (d2_matrix, d2_closed)
        rows.append({
            "family": name,
            "second_derivative_matrix": d2_matrix,
            "second_derivative_closed_form": d2_closed,
            "max_stencil_gap": max(gaps),
        })
    z1_residual = max(abs(v) for v in results["z_equals_1"])
    za_residual = max(
        abs(v - curvature_target) for v in results["z_equals_alpha"]
    ) / abs(curvature_target)
    passed = (
        z1_residual <= SECOND_DERIV_ABS_TOL
        and za_residual <= SECOND_DERIV_REL_TOL
        and stencil_gap <= STENCIL_AGREEMENT_TOL
    )
    return CheckReport(
        name=f"second derivatives at alpha=1, p={p:g}",
        passed=passed,
        max_residual=max(z1_residual, za_residual),
        rows=rows,
        notes=(
            f"z=alpha curvature target {curvature_target:.12g}, "
            f"stencil agreement {stencil_gap:.3e}"
        ),
    )


Z_MONOTONICITY_SLACK = 1e-10


def verify_z_monotonicity(tf: TraceFunctional, alpha: float,
                          zs: list[float]) -> CheckReport:
    """Check the sampled sequence z -> D(alpha, z) is non-increasing for
    alpha > 1 and non-decreasing for alpha < 1, with 1e-10 slack per step."""
    alpha = float(alpha)
    if abs(alpha - 1.0) <= dv.ALPHA_ONE_TOL:
        raise DomainError("alpha = 1 has no z dependence to check")
    zs = [float(z) for z in zs]
    if any(z <= 0.0 for z in zs) or list(zs) != sorted(zs):
        raise ValueError("zs must be positive and ascending")
    values = [tf.divergence(alpha, z) for z in zs]
    sign = -1.0 if alpha > 1.0 else 1.0
    worst = 0.0
    rows = []
    for (z0, v0), (z1, v1) in zip(zip(zs, values), zip(zs[1:], values[1:])):
        violation = sign * (v0 - v1)  # > 0 means the wrong direction
        worst = max(worst, violation)
        rows.append({"z_from": z0, "z_to": z1, "step": v1 - v0, "violation": violation})
    passed = worst <= Z_MONOTONICITY_SLACK
    direction = "non-increasing" if alpha > 1.0 else "non-decreasing"
    return CheckReport(
        name=f"z-monotonicity at alpha={alpha:g} ({direction})",
        passed=passed,
        max_residual=worst,
        rows=rows,
    )


DZ_TRACE_TOL = 1e-4
DZ_TRACE_OFFSETS = (1e-1, 1e-2, 1e-3, 1e-4)


def verify_dz_trace_vanishes(tf: TraceFunctional, z0: float,
                             offsets: tuple[float, ...] = DZ_TRACE_OFFSETS,
                             scheme: FdScheme = FdScheme(1e-4, "central2")
                             ) -> CheckReport:
    """Check dT/dz(alpha, z0) -> 0 as alpha -> 1.

    Passes iff |dT/dz| decays (within slack) along the offset ladder on
    both sides of 1, is <= 1e-4 at the tightest offset, and is <= 1e-8 at
    alpha = 1 exactly (where T is identically 1 in z).
    """
    z0 = float(z0)
    if z0 == 0.0:
        raise DomainError("z = 0 is excluded")
    offsets = tuple(sorted((float(o) for o in offsets), reverse=True))
    rows = []
    passed = True
    final_mag = 0.0
    for side in (+1, -1):
        mags = []
        for off in offsets:
            alpha = 1.0 + side * off
            d = fd_derivative(lambda z: tf.value(alpha, z), z0, scheme)
            mags.append(abs(d))
            rows.append({"alpha": alpha, "dT_dz": d, "abs": abs(d)})
        passed &= all(b <= a + Z_MONOTONICITY_SLACK for a, b in zip(mags, mags[1:]))
        passed &= mags[-1] <= DZ_TRACE_TOL
        final_mag = max(final_mag, mags[-1])
    at_one = abs(fd_derivative(lambda z: tf.value(1.0, z), z0, scheme))
    rows.append({"alpha": 1.0, "dT_dz": at_one, "abs": at_one})
    passed &= at_one <= 1e-8
    return CheckReport(
        name=f"dT/dz -> 0 at z0={z0:g}",
        passed=passed,
        max_residual=final_mag,
        rows=rows,
        notes=f"|dT/dz| at alpha=1 exactly: {at_one:.3e}",
    )


@dataclass(frozen=True)
class SweepSpec:
    """Grid descriptor: alphas crossed with either fixed zs or z = g(alpha)."""

    alphas: tuple[float, ...]
    zs: tuple[float, ...] | None = None
    curve: CurveSpec | None = None

    def __post_init__(self):
        if (self.zs is None) == (self.curve is None):
            raise ValueError("exactly one of zs or curve must be given")
        if not self.alphas or (self.zs is not None and not self.zs):
            raise ValueError("grids must be non-empty")


@dataclass(frozen=True)
class SweepRow:
    alpha: float
    z: float
    divergence: dv.DivergenceValue
    trace_value: float

    @property
    def finite(self) -> bool:
        return self.divergence.is_finite


def sweep(rho: np.ndarray, sigma: np.ndarray, spec: SweepSpec) -> list[SweepRow]:
    """Evaluate the divergence and trace functional over the grid,
    alpha-major then z; infinite divergences keep their restricted-support
    trace value, and a NaN trace marks undefined-formula cells."""
    rho = dv.check_density(rho)
    sigma = dv.check_reference(sigma)
    rows = []
    for alpha in spec.alphas:
        zs = spec.zs if spec.zs is not None else (spec.curve.g(alpha),)
        for z in zs:
            value = dv.alpha_z_divergence(rho, sigma, alpha, z)
            try:
                t = dv.alpha_z_trace(rho, sigma, alpha, z, validate=False)
            except DomainError:
                t = math.nan
            rows.append(SweepRow(float(alpha), float(z), value, t))
    return rows


def alpha_monotonicity_violations(rows: list[SweepRow], slack: float = 1e-10) -> int:
    """Count decreases of the divergence along alpha at fixed z; exploratory
    only (monotonicity in alpha is conjectured, never asserted)."""
    by_z: dict[float, list[SweepRow]] = {}
    for row in rows:
        if row.finite:
            by_z.setdefault(row.z, []).append(row)
    violations = 0
    for group in by_z.values():
        group.sort(key=lambda r: r.alpha)
        for a, b in zip(group, group[1:]):
            if b.divergence.value < a.divergence.value - slack:
                violations += 1
    return violations
