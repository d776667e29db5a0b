"""Complex Hermitian linear algebra: eigendecomposition, support/kernel
logic with a single relative cutoff, and spectral functional calculus
(generalized powers, logs on the support, pinching).

All functions treat an eigenvalue as zero iff it is <= cutoff * max|eigenvalue|,
where the cutoff defaults to 1e-12 and can be overridden through the
RENYI_EPS environment variable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

DEFAULT_EPS = 1e-12

# max-abs entry tolerance accepted before an input is rejected as non-Hermitian
HERMITICITY_RTOL = 1e-8

# leak/overlap tolerance for the support-relation predicates
SUPPORT_ATOL = 1e-9


class NotPSDError(ValueError):
    """Raised when an operator required to be positive semi-definite is not."""


class DomainError(ValueError):
    """Raised for parameter/support combinations the formulas do not cover."""


def zero_cutoff() -> float:
    """Relative eigenvalue cutoff, overridable via the RENYI_EPS env variable."""
    raw = os.environ.get("RENYI_EPS")
    if raw is None:
        return DEFAULT_EPS
    try:
        eps = float(raw)
    except ValueError as exc:
        raise DomainError(f"RENYI_EPS is not a number: {raw!r}") from exc
    if not 0.0 < eps < 1.0:
        raise DomainError(f"RENYI_EPS must lie in (0, 1), got {eps}")
    return eps


def hermitian_part(a: np.ndarray) -> np.ndarray:
    """Return (A + A†)/2."""
    a = np.asarray(a, dtype=complex)
    return (a + a.conj().T) / 2.0


def as_hermitian(a: np.ndarray, rtol: float = HERMITICITY_RTOL) -> np.ndarray:
    """Validate and symmetrize a square matrix.

    Rejects non-square or non-finite input and input whose Hermiticity
    defect exceeds ``rtol`` relative to the matrix scale; otherwise returns
    the exactly Hermitian part.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] < 1:
        raise ValueError("matrix dimension must be >= 1")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    scale = max(1.0, float(np.abs(a).max()))
    defect = float(np.abs(a - a.conj().T).max())
    if defect > rtol * scale:
        raise ValueError(f"matrix is not Hermitian: max defect {defect:.3e}")
    return hermitian_part(a)


def trace(a: np.ndarray) -> float:
    """Real trace of a (Hermitian) matrix."""
    return float(np.trace(np.asarray(a)).real)


def mult(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product with a dimension check."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return a @ b


def adjoint_sandwich(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """A B A for Hermitian A, B, re-symmetrized to repair round-off."""
    return hermitian_part(mult(mult(a, b), a))


@dataclass(frozen=True)
class EigenSystem:
    """Spectral decomposition: real eigenvalues (descending) and unitary
    eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T


def eigensystem(a: np.ndarray) -> EigenSystem:
    """Eigendecompose a Hermitian matrix, eigenvalues sorted descending."""
    a = as_hermitian(a)
    try:
        values, vectors = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError(
            f"eigensolver failed to converge on a {a.shape[0]}x{a.shape[1]} "
            f"matrix with max-abs entry {np.abs(a).max():.3e}: {exc}"
        ) from exc
    order = np.argsort(values)[::-1]
    return EigenSystem(values[order].copy(), vectors[:, order].copy())


@dataclass(frozen=True)
class SupportInfo:
    """Rank, support projector, and the absolute threshold used to split
    the spectrum into support and kernel."""

    rank: int
    projector: np.ndarray
    zero_threshold: float


def _kernel_threshold(values: np.ndarray, rel_threshold: float | None) -> float:
    rel = zero_cutoff() if rel_threshold is None else float(rel_threshold)
    vmax = float(np.abs(values).max()) if values.size else 0.0
    return rel * vmax


def _psd_values(a: np.ndarray, rel_threshold: float | None) -> tuple[EigenSystem, float]:
    """Eigensystem plus kernel threshold, rejecting significantly negative spectra."""
    es = eigensystem(a)
    thr = _kernel_threshold(es.values, rel_threshold)
    vmin = float(es.values.min())
    if vmin < -thr and vmin < 0.0:
        raise NotPSDError(f"operator is not PSD: eigenvalue {vmin:.6e}")
    return es, thr


def support(a: np.ndarray, rel_threshold: float | None = None) -> SupportInfo:
    """Support data of a PSD operator; eigenvalues <= rel_threshold * max|eig|
    count as kernel. The zero operator has rank 0 and a zero projector."""
    es, thr = _psd_values(a, rel_threshold)
    keep = es.values > thr
    rank = int(np.count_nonzero(keep))
    u = es.vectors[:, keep]
    projector = hermitian_part(u @ u.conj().T)
    return SupportInfo(rank=rank, projector=projector, zero_threshold=thr)


def dominates(sigma: np.ndarray, rho: np.ndarray,
              rel_threshold: float | None = None) -> bool:
    """True iff ker(sigma) is contained in ker(rho), i.e. supp(rho) lies
    inside supp(sigma). Tested as the max-abs leak of rho through the
    kernel projector of sigma."""
    info = support(sigma, rel_threshold)
    rho = as_hermitian(rho)
    _psd_values(rho, rel_threshold)
    kernel = np.eye(rho.shape[0], dtype=complex) - info.projector
    leak = float(np.abs(kernel @ rho @ kernel).max())
    return leak <= SUPPORT_ATOL * max(1.0, float(np.abs(rho).max()))


def orthogonal(rho: np.ndarray, sigma: np.ndarray,
               rel_threshold: float | None = None) -> bool:
    """True iff the supports of rho and sigma are orthogonal subspaces."""
    p_rho = support(rho, rel_threshold).projector
    p_sigma = support(sigma, rel_threshold).projector
    return trace(p_rho @ p_sigma) <= SUPPORT_ATOL


def _spectral_apply(a: np.ndarray, fn, rel_threshold: float | None) -> np.ndarray:
    """Apply fn to the above-cutoff eigenvalues; kernel directions map to 0."""
    es, thr = _psd_values(a, rel_threshold)
    keep = es.values > thr
    out = np.zeros_like(es.values)
    out[keep] = fn(es.values[keep])
    return hermitian_part((es.vectors * out) @ es.vectors.conj().T)


def matrix_power(a: np.ndarray, p: float,
                 rel_threshold: float | None = None) -> np.ndarray:
    """Generalized spectral power of a PSD operator.

    Eigenvalues at or below the cutoff are treated as exact zeros and map to
    zero for every exponent; A**0 is the support projector, not the identity.
    """
    p = float(p)
    if p == 0.0:
        return support(a, rel_threshold).projector
    return _spectral_apply(a, lambda w: w**p, rel_threshold)


def log_on_support(a: np.ndarray, rel_threshold: float | None = None) -> np.ndarray:
    """Natural log evaluated on the support; kernel contributes nothing.
    The zero operator maps to the zero matrix."""
    return _spectral_apply(a, np.log, rel_threshold)


def pinch(a: np.ndarray, basis_of: np.ndarray,
          rel_threshold: float | None = None) -> np.ndarray:
    """Pinch A in the eigenbasis of a PSD operator: sum_i P_i A P_i over the
    spectral projectors P_i of basis_of (eigenvalues equal within tolerance
    share a block). Trace preserving and Hermiticity preserving."""
    a = as_hermitian(a)
    es, _ = _psd_values(basis_of, rel_threshold)
    if a.shape != es.vectors.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {es.vectors.shape}")
    scale = max(float(np.abs(es.values).max()), 1e-300)
    cluster_tol = 1e-8 * scale
    # eigenvalues are sorted descending; split where the gap exceeds tolerance
    splits = np.nonzero(np.abs(np.diff(es.values)) > cluster_tol)[0] + 1
    out = np.zeros_like(a)
    for block in np.split(np.arange(es.values.size), splits):
        u = es.vectors[:, block]
        proj = u @ u.conj().T
        out += proj @ a @ proj
    return hermitian_part(out)
