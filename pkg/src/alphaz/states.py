"""Deterministic seeded generators for test states.

Every generator is a pure function of (dim, seed, flags), backed by
numpy's default_rng (PCG64). Same seed and dim give bit-identical output
within one platform/build.
"""

from __future__ import annotations

import numpy as np

from .linalg import DomainError, hermitian_part

MAX_DIM = 16


def _check_dim(dim: int) -> int:
    dim = int(dim)
    if not 1 <= dim <= MAX_DIM:
        raise ValueError(f"dim must be in 1..{MAX_DIM}, got {dim}")
    return dim


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(int(seed))


def _ginibre(rng: np.random.Generator, dim: int) -> np.ndarray:
    """dim x dim matrix of independent standard complex normals."""
    return rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))


def _wishart_density(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = _ginibre(rng, dim)
    w = g @ g.conj().T
    return hermitian_part(w / np.trace(w).real)


def random_density(dim: int, seed: int) -> np.ndarray:
    """Full-rank random density operator G G† / Tr(G G†), Ginibre G."""
    dim = _check_dim(dim)
    return _wishart_density(_rng(seed), dim)


def random_unitary(dim: int, seed: int | np.random.Generator) -> np.ndarray:
    """Haar-style random unitary from the QR factorization of a Ginibre
    matrix, with the R-diagonal phases fixed for determinism."""
    dim = _check_dim(dim)
    rng = seed if isinstance(seed, np.random.Generator) else _rng(seed)
    q, r = np.linalg.qr(_ginibre(rng, dim))
    phases = np.diagonal(r).copy()
    phases /= np.abs(phases)
    return q * phases


def random_reference(dim: int, seed: int, *, full_rank: bool = True,
                     rank: int | None = None) -> np.ndarray:
    """Random reference operator, trace-normalized.

    full_rank=True gives a Wishart-style positive definite operator;
    otherwise the smallest dim-rank eigenvalues are zeroed out (rank
    defaults to dim-1).
    """
    dim = _check_dim(dim)
    if full_rank:
        if rank is not None:
            raise ValueError("inconsistent flags: full_rank=True with explicit rank")
        return _wishart_density(_rng(seed), dim)
    rank = dim - 1 if rank is None else int(rank)
    if not 1 <= rank <= dim:
        raise ValueError(f"rank must be in 1..{dim}, got {rank}")
    rng = _rng(seed)
    values = np.sort(rng.uniform(0.2, 1.0, size=dim))[::-1]
    values[rank:] = 0.0
    values /= values.sum()
    u = random_unitary(dim, rng)
    return hermitian_part((u * values) @ u.conj().T)


def random_support_pair(dim: int, seed: int, *, rank: int,
                        branch: str = "dominating") -> tuple[np.ndarray, np.ndarray]:
    """(rho, sigma) with sigma of the given rank and a controlled support
    relation.

    branch="dominating":  supp(rho) inside supp(sigma)
    branch="violating":   rho full rank, so sigma cannot dominate it,
                          but the supports overlap
    branch="orthogonal":  rho supported entirely on ker(sigma)
    """
    dim = _check_dim(dim)
    rank = int(rank)
    if not 1 <= rank < dim:
        raise ValueError(f"rank must be in 1..{dim - 1}, got {rank}")
    rng = _rng(seed)
    u = random_unitary(dim, rng)
    values = np.sort(rng.uniform(0.2, 1.0, size=rank))[::-1]
    values = np.concatenate([values / values.sum(), np.zeros(dim - rank)])
    sigma = hermitian_part((u * values) @ u.conj().T)
    if branch == "dominating":
        block = _wishart_density(rng, rank)
        basis = u[:, :rank]
        rho = hermitian_part(basis @ block @ basis.conj().T)
    elif branch == "violating":
        rho = _wishart_density(rng, dim)
    elif branch == "orthogonal":
        block = _wishart_density(rng, dim - rank)
        basis = u[:, rank:]
        rho = hermitian_part(basis @ block @ basis.conj().T)
    else:
        raise ValueError(f"unknown branch {branch!r}")
    return rho, sigma


def commuting_pair(dim: int, seed: int) -> tuple[np.ndarray, np.ndarray,
                                                 np.ndarray, np.ndarray]:
    """(rho, sigma, p, q): a commuting pair sharing a random eigenbasis,
    plus the probability vectors on the diagonal.

    Spectra are drawn with bounded dynamic range (p from uniform [0.1, 1],
    q from uniform [0.3, 1], both normalized) so spectral-calculus noise
    stays far below the classical-reduction tolerances even at extreme
    (alpha, z) exponents.
    """
    dim = _check_dim(dim)
    rng = _rng(seed)
    u = random_unitary(dim, rng)
    p = rng.uniform(0.1, 1.0, size=dim)
    p /= p.sum()
    q = rng.uniform(0.3, 1.0, size=dim)
    q /= q.sum()
    rho = hermitian_part((u * p) @ u.conj().T)
    sigma = hermitian_part((u * q) @ u.conj().T)
    return rho, sigma, p, q


def example1_pair(p: float) -> tuple[np.ndarray, np.ndarray]:
    """The rank-1 rho = |+><+| against sigma = diag(p, 1-p), p in (0,1)
    excluding 1/2 (the two families' curvatures coincide there)."""
    p = float(p)
    if not 0.0 < p < 1.0 or abs(p - 0.5) <= 1e-12:
        raise DomainError(f"p must lie in (0,1) excluding 1/2, got {p}")
    rho = np.full((2, 2), 0.5, dtype=complex)
    sigma = np.diag([p, 1.0 - p]).astype(complex)
    return rho, sigma
