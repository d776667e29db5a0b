"""Numerics for the two-parameter alpha-z family of quantum Renyi divergences."""

from .divergences import (
    INFINITY_ORTHOGONAL,
    INFINITY_SUPPORT,
    DivergenceValue,
    alpha_z_divergence,
    alpha_z_trace,
    classical_kl,
    classical_renyi,
    mosonyi_ogawa_divergence,
    petz_divergence,
    relative_entropy,
    relative_entropy_variance,
    sandwiched_divergence,
)
from .linalg import (
    DomainError,
    EigenSystem,
    NotPSDError,
    SupportInfo,
    adjoint_sandwich,
    dominates,
    eigensystem,
    hermitian_part,
    log_on_support,
    matrix_power,
    orthogonal,
    pinch,
    support,
    trace,
    zero_cutoff,
)
from .analysis import (
    CheckReport,
    CurveSpec,
    FdScheme,
    SweepRow,
    SweepSpec,
    TraceFunctional,
    example1_closed_form,
    fd_derivative,
    fd_second_derivative,
    sweep,
    trace_functional,
    verify_curve_limit,
    verify_derivative_at_one,
    verify_dz_trace_vanishes,
    verify_second_derivative_example1,
    verify_z_monotonicity,
)
from .states import (
    commuting_pair,
    example1_pair,
    random_density,
    random_reference,
    random_support_pair,
    random_unitary,
)

__version__ = "0.1.0"

__all__ = [
    "DivergenceValue",
    "INFINITY_SUPPORT",
    "INFINITY_ORTHOGONAL",
    "classical_kl",
    "classical_renyi",
    "relative_entropy",
    "relative_entropy_variance",
    "alpha_z_divergence",
    "alpha_z_trace",
    "petz_divergence",
    "sandwiched_divergence",
    "mosonyi_ogawa_divergence",
    "EigenSystem",
    "SupportInfo",
    "DomainError",
    "NotPSDError",
    "eigensystem",
    "support",
    "dominates",
    "orthogonal",
    "matrix_power",
    "log_on_support",
    "pinch",
    "trace",
    "hermitian_part",
    "adjoint_sandwich",
    "zero_cutoff",
    "TraceFunctional",
    "CurveSpec",
    "FdScheme",
    "CheckReport",
    "SweepSpec",
    "SweepRow",
    "fd_derivative",
    "fd_second_derivative",
    "trace_functional",
    "example1_closed_form",
    "sweep",
    "verify_curve_limit",
    "verify_derivative_at_one",
    "verify_second_derivative_example1",
    "verify_z_monotonicity",
    "verify_dz_trace_vanishes",
    "random_density",
    "random_reference",
    "random_support_pair",
    "random_unitary",
    "commuting_pair",
    "example1_pair",
]
