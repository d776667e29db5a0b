"""Divergence measures on density operators.

Implements the classical KL and Renyi divergences, the quantum relative
entropy and its variance, and the two-parameter alpha-z family

    D(a, z) = ln Tr[(sigma^((1-a)/2z) rho^(a/z) sigma^((1-a)/2z))^z] / (a - 1)

together with its z=1 (Petz), z=a (sandwiched), and piecewise
(Mosonyi-Ogawa) specializations. All values are in nats. Every quantum
divergence returns a DivergenceValue carrying either a finite real or +inf
with a reason tag describing which support condition failed.

Support semantics for D(a, z):
  * a = 1 (within 1e-12): the relative entropy, closing the family at its
    limit point.
  * sigma dominates rho (ker sigma inside ker rho): the formula, with
    generalized powers on rank-deficient operators.
  * a > 1 without dominance: +inf, tagged support_violation.
  * a < 1 with orthogonal states: +inf, tagged orthogonal_states.
  * a < 1, overlapping but non-dominating supports: the formula restricted
    to the supports (all powers generalized), a finite value.
Negative z and negative alpha are accepted whenever the required spectral
powers are well defined; a negative exponent against a rank-deficient
operator outside the dominated case raises DomainError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    DomainError,
    as_hermitian,
    dominates,
    eigensystem,
    hermitian_part,
    log_on_support,
    matrix_power,
    orthogonal,
    support,
    trace,
    zero_cutoff,
)

INFINITY_SUPPORT = "support_violation"
INFINITY_ORTHOGONAL = "orthogonal_states"

LN2 = math.log(2.0)

# |alpha - 1| below this is dispatched to the relative-entropy limit; the
# raw formula divides ln T ~ (alpha-1) D by (alpha-1) and loses all digits
# long before this point.
ALPHA_ONE_TOL = 1e-12

# agreement tolerance for the built-in dual-route self-check
_DUAL_PATH_TOL = 1e-10

_TRACE_ATOL = 1e-10
_PROB_ATOL = 1e-12


@dataclass(frozen=True)
class DivergenceValue:
    """Extended-real divergence: a finite value in nats, or +inf with a
    reason tag (support_violation or orthogonal_states)."""

    value: float
    infinity_reason: str | None = None

    def __post_init__(self):
        if math.isinf(self.value):
            if self.value < 0:
                raise ValueError("divergence cannot be -inf")
            if self.infinity_reason not in (INFINITY_SUPPORT, INFINITY_ORTHOGONAL):
                raise ValueError(
                    f"infinite value needs a reason tag, got {self.infinity_reason!r}"
                )
        else:
            if self.infinity_reason is not None:
                raise ValueError("finite value must not carry an infinity reason")
            if math.isnan(self.value):
                raise ValueError("divergence cannot be NaN")

    @classmethod
    def finite(cls, value: float) -> "DivergenceValue":
        return cls(float(value))

    @classmethod
    def infinite(cls, reason: str) -> "DivergenceValue":
        return cls(math.inf, reason)

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.value)

    def in_bits(self) -> float:
        """Value converted from nats to bits (inf stays inf)."""
        return self.value / LN2

    def __float__(self) -> float:
        return self.value


def check_probability_vector(p) -> np.ndarray:
    """Validate a probability vector: non-negative entries summing to 1."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise ValueError(f"expected a non-empty 1-d vector, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ValueError("probability vector has non-finite entries")
    if p.min() < -_PROB_ATOL:
        raise ValueError(f"negative probability {p.min():.3e}")
    if abs(p.sum() - 1.0) > max(_PROB_ATOL, 1e-13 * p.size):
        raise ValueError(f"probabilities sum to {p.sum()!r}, not 1")
    return np.clip(p, 0.0, None)


def check_density(rho: np.ndarray) -> np.ndarray:
    """Validate a density operator: Hermitian, PSD, unit trace."""
    rho = as_hermitian(rho)
    support(rho)  # raises NotPSDError on a significantly negative spectrum
    tr = trace(rho)
    if abs(tr - 1.0) > _TRACE_ATOL:
        raise DomainError(f"density operator must have trace 1, got {tr!r}")
    return rho


def check_reference(sigma: np.ndarray) -> np.ndarray:
    """Validate a reference operator: Hermitian, PSD, nonzero."""
    sigma = as_hermitian(sigma)
    info = support(sigma)
    if info.rank == 0:
        raise DomainError("reference operator must be nonzero")
    return sigma


def classical_kl(p, q) -> DivergenceValue:
    """Kullback-Leibler divergence sum_i p_i ln(p_i/q_i), with 0 ln 0 = 0.

    Returns +inf (support_violation) when p puts mass where q has none.
    """
    p = check_probability_vector(p)
    q = check_probability_vector(q)
    if p.shape != q.shape:
        raise ValueError(f"length mismatch: {p.shape} vs {q.shape}")
    total = 0.0
    for pi, qi in zip(p, q):
        if pi <= 0.0:
            continue
        if qi <= 0.0:
            return DivergenceValue.infinite(INFINITY_SUPPORT)
        total += pi * math.log(pi / qi)
    return DivergenceValue.finite(total)


def classical_renyi(p, q, alpha: float) -> DivergenceValue:
    """Renyi divergence ln(sum_i p_i^alpha q_i^(1-alpha)) / (alpha - 1).

    Terms with p_i = 0 vanish for alpha > 0. For alpha > 1, mass of p
    outside the support of q forces +inf.
    """
    alpha = float(alpha)
    if abs(alpha - 1.0) <= ALPHA_ONE_TOL:
        raise DomainError("alpha = 1 is the KL limit; call classical_kl")
    p = check_probability_vector(p)
    q = check_probability_vector(q)
    if p.shape != q.shape:
        raise ValueError(f"length mismatch: {p.shape} vs {q.shape}")
    total = 0.0
    for pi, qi in zip(p, q):
        if pi <= 0.0:
            if alpha <= 0.0:
                raise DomainError("alpha <= 0 with zero p-entries is undefined")
            continue
        if qi <= 0.0:
            if alpha > 1.0:
                return DivergenceValue.infinite(INFINITY_SUPPORT)
            continue  # q_i^(1-alpha) = 0 for alpha < 1
        total += pi**alpha * qi ** (1.0 - alpha)
    if total <= 0.0:
        return DivergenceValue.infinite(INFINITY_ORTHOGONAL)
    return DivergenceValue.finite(math.log(total) / (alpha - 1.0))


def relative_entropy(rho: np.ndarray, sigma: np.ndarray) -> DivergenceValue:
    """Quantum relative entropy Tr[rho (ln rho - ln sigma)] in nats.

    +inf (support_violation) when sigma does not dominate rho.
    """
    rho = check_density(rho)
    sigma = check_reference(sigma)
    if not dominates(sigma, rho):
        return DivergenceValue.infinite(INFINITY_SUPPORT)
    delta = log_on_support(rho) - log_on_support(sigma)
    return DivergenceValue.finite(trace(rho @ delta))


def relative_entropy_variance(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Relative entropy variance Tr[rho d^2] - Tr[rho d]^2, d = ln rho - ln sigma.

    Requires dominance (the variance is undefined otherwise) and clamps
    the tiny negative round-off floor to 0.
    """
    rho = check_density(rho)
    sigma = check_reference(sigma)
    if not dominates(sigma, rho):
        raise DomainError("variance undefined: sigma does not dominate rho")
    delta = log_on_support(rho) - log_on_support(sigma)
    mean = trace(rho @ delta)
    second = trace(rho @ delta @ delta)
    var = second - mean * mean
    if var < -1e-12:
        raise ArithmeticError(f"variance computed as {var!r} < -1e-12")
    return max(var, 0.0)


def _generalized_powers(values: np.ndarray, exponent: float) -> np.ndarray:
    """Eigenvalue vector raised to the exponent; below-cutoff entries map to 0
    (or to 1 for exponent 0, realizing the support-projector convention)."""
    thr = zero_cutoff() * float(np.abs(values).max()) if values.size else 0.0
    mask = values > thr
    out = np.zeros_like(values)
    out[mask] = 1.0 if exponent == 0.0 else values[mask] ** exponent
    return out


def alpha_z_trace(rho: np.ndarray, sigma: np.ndarray, alpha: float, z: float,
                  validate: bool = True) -> float:
    """Trace functional T(a, z) = Tr[(sigma^((1-a)/2z) rho^(a/z) sigma^((1-a)/2z))^z].

    All powers are generalized spectral powers. The sandwich is assembled in
    the eigenbasis of sigma, where the outer factors are diagonal and scale
    matrix entries exactly; round-off then stays relative even for extreme
    exponents instead of being amplified by the factor norms. Raises
    DomainError when a negative exponent meets a rank-deficient operator
    outside the dominated case (no endorsed interpretation exists there).
    """
    alpha = float(alpha)
    z = float(z)
    if z == 0.0:
        raise DomainError("z = 0 is excluded")
    if validate:
        rho = check_density(rho)
        sigma = check_reference(sigma)
    e_sigma = (1.0 - alpha) / (2.0 * z)
    e_rho = alpha / z
    es_rho = eigensystem(rho)
    es_sigma = eigensystem(sigma)
    dim = es_rho.values.size
    if e_rho < 0.0 and np.count_nonzero(_generalized_powers(es_rho.values, 0.0)) < dim:
        raise DomainError(
            "formula undefined for this support configuration: "
            f"rho is rank-deficient and its exponent {e_rho:.6g} is negative"
        )
    if (e_sigma < 0.0
            and np.count_nonzero(_generalized_powers(es_sigma.values, 0.0)) < dim
            and not dominates(sigma, rho)):
        raise DomainError(
            "formula undefined for this support configuration: "
            f"sigma is rank-deficient and its exponent {e_sigma:.6g} is negative"
        )
    # The inner operator factors as G G† with G = diag(sigma-powers) W
    # diag(sqrt of rho-powers), W the eigenbasis overlap. Scaling the unitary
    # W row- and column-wise is exact per entry, and singular values of G give
    # the inner eigenvalues with relative accuracy ~ sqrt of what a direct
    # eigendecomposition of the assembled sandwich achieves; they are also
    # non-negative by construction, so no round-off clipping is needed here.
    overlap = es_sigma.vectors.conj().T @ es_rho.vectors
    b = _generalized_powers(es_sigma.values, e_sigma)
    half_r = _generalized_powers(es_rho.values, e_rho / 2.0)
    g = b[:, None] * overlap * half_r[None, :]
    singular = np.linalg.svd(g, compute_uv=False)
    values = singular * singular
    thr = zero_cutoff() * float(values.max()) if values.size else 0.0
    kept = values[values > thr]
    return float(np.sum(kept**z))


def alpha_z_divergence(rho: np.ndarray, sigma: np.ndarray,
                       alpha: float, z: float) -> DivergenceValue:
    """alpha-z divergence D(a, z) = ln T(a, z) / (a - 1) in nats.

    At a = 1 this returns the relative entropy, closing the family at its
    limit point; see the module docstring for the support semantics.
    """
    alpha = float(alpha)
    z = float(z)
    if z == 0.0:
        raise DomainError("z = 0 is excluded")
    rho = check_density(rho)
    sigma = check_reference(sigma)
    if abs(alpha - 1.0) <= ALPHA_ONE_TOL:
        return relative_entropy(rho, sigma)
    if not dominates(sigma, rho):
        if alpha > 1.0:
            return DivergenceValue.infinite(INFINITY_SUPPORT)
        if orthogonal(rho, sigma):
            return DivergenceValue.infinite(INFINITY_ORTHOGONAL)
    t = alpha_z_trace(rho, sigma, alpha, z, validate=False)
    if t <= 0.0:
        raise ArithmeticError(f"trace functional collapsed to {t!r}")
    return DivergenceValue.finite(math.log(t) / (alpha - 1.0))


def _assert_dual_path(label: str, family: DivergenceValue, direct: float) -> None:
    tol = _DUAL_PATH_TOL * max(1.0, abs(family.value))
    if abs(family.value - direct) > tol:
        raise ArithmeticError(
            f"{label} dual-path mismatch: alpha-z route {family.value!r} "
            f"vs direct formula {direct!r}"
        )


def petz_divergence(rho: np.ndarray, sigma: np.ndarray, alpha: float) -> DivergenceValue:
    """Petz quantum Renyi divergence of order alpha, the z = 1 member.

    Also evaluates the direct formula ln Tr[rho^a sigma^(1-a)] / (a - 1)
    through the overlap sum sum_ij |<u_i|v_j>|^2 r_i^a s_j^(1-a) (a
    cancellation-free route) and asserts the two routes agree.
    """
    alpha = float(alpha)
    value = alpha_z_divergence(rho, sigma, alpha, 1.0)
    if value.is_finite and abs(alpha - 1.0) > ALPHA_ONE_TOL:
        es_rho = eigensystem(check_density(rho))
        es_sigma = eigensystem(check_reference(sigma))
        weights = np.abs(es_rho.vectors.conj().T @ es_sigma.vectors) ** 2
        r_pow = _generalized_powers(es_rho.values, alpha)
        s_pow = _generalized_powers(es_sigma.values, 1.0 - alpha)
        t = float(r_pow @ weights @ s_pow)
        if t <= 0.0:
            raise ArithmeticError(f"Petz trace term collapsed to {t!r}")
        _assert_dual_path("Petz", value, math.log(t) / (alpha - 1.0))
    return value


def sandwiched_divergence(rho: np.ndarray, sigma: np.ndarray,
                          alpha: float) -> DivergenceValue:
    """Sandwiched quantum Renyi divergence of order alpha, the z = alpha member.

    Cross-checked against the direct formula
    ln Tr[(sigma^((1-a)/2a) rho sigma^((1-a)/2a))^a] / (a - 1).
    """
    alpha = float(alpha)
    if alpha == 0.0:
        raise DomainError("alpha = 0 puts z = 0, which is excluded")
    value = alpha_z_divergence(rho, sigma, alpha, alpha)
    if value.is_finite and abs(alpha - 1.0) > ALPHA_ONE_TOL:
        rho_h = check_density(rho)
        sigma_h = check_reference(sigma)
        e = (1.0 - alpha) / (2.0 * alpha)
        s_half = matrix_power(sigma_h, e)
        inner = hermitian_part(s_half @ rho_h @ s_half)
        values = eigensystem(inner).values
        thr = zero_cutoff() * float(np.abs(values).max()) if values.size else 0.0
        t = float(np.sum(values[values > thr] ** alpha))
        if t <= 0.0:
            raise ArithmeticError(f"sandwiched trace term collapsed to {t!r}")
        _assert_dual_path("sandwiched", value, math.log(t) / (alpha - 1.0))
    return value


def mosonyi_ogawa_divergence(rho: np.ndarray, sigma: np.ndarray,
                             alpha: float) -> DivergenceValue:
    """Piecewise divergence: Petz for alpha < 1, sandwiched for alpha > 1,
    relative entropy at alpha = 1."""
    alpha = float(alpha)
    if alpha <= 0.0:
        raise DomainError(f"order must be positive, got {alpha}")
    if abs(alpha - 1.0) <= ALPHA_ONE_TOL:
        return relative_entropy(rho, sigma)
    if alpha < 1.0:
        return petz_divergence(rho, sigma, alpha)
    return sandwiched_divergence(rho, sigma, alpha)
