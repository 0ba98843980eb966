"""Exact Hermite-Gaussian beam solutions of the full wave equation.

Closed-form evaluators for the exact beam family, the standard paraxial
family and the complex-source Gaussian family, constrained densities
with their far-field angular limits, a finite-difference/quadrature
verification engine, and a CLI for grid exports and verification runs.
"""

__version__ = "0.1.0"

from .beam import (
    BeamParams,
    ComplexAmplitude,
    ModeIndex,
    NormalizationTable,
    SpaceTimePoint,
    alternate_exact_psi,
    bateman_gaussian_psi,
    envelope_phi,
    exact_psi,
    field_function,
    gouy_phase,
    normalization_constant,
    paraxial_psi,
    paraxial_schrodinger_psi,
    spot_radius,
)
from .constraint import (
    EXACT_FE,
    PARAXIAL_FP,
    AngularDensity,
    ConstraintKind,
    asymptotic_F,
    constraint_time,
    delta_reduced_time_integral,
    density_D,
    eval_constraint,
    time_jacobian,
)
from .errors import (
    BranchCutWarning,
    ConfigError,
    ConstraintViolationError,
    GouyPathError,
    NonFiniteSampleError,
    NumericOverflowError,
    QuadratureConvergenceError,
    UnsupportedOrderError,
)
from .gridio import AxisSpec, FieldGrid
from .numerics import (
    QuadratureSpec,
    StencilSpec,
    first_derivative,
    hermite,
    integrate_1d,
    integrate_2d,
    second_derivative,
)
from .verify import (
    AlternateComparisonReport,
    GouyFitReport,
    OrthoReport,
    ResidualReport,
    alternate_correspondence_sweep,
    check_symmetry,
    compare_alternate,
    compute_normalization,
    default_wave_steps,
    fit_gouy,
    gouy_phase_samples,
    hermite_ridge_offset,
    residual_convergence_sweep,
    residual_full_wave,
    residual_reduced,
    sample_paraxial_points,
    sample_points,
    transverse_gram,
)

__all__ = [
    "AlternateComparisonReport",
    "AngularDensity",
    "AxisSpec",
    "BeamParams",
    "BranchCutWarning",
    "ComplexAmplitude",
    "ConfigError",
    "ConstraintKind",
    "ConstraintViolationError",
    "EXACT_FE",
    "FieldGrid",
    "GouyFitReport",
    "GouyPathError",
    "ModeIndex",
    "NonFiniteSampleError",
    "NormalizationTable",
    "NumericOverflowError",
    "OrthoReport",
    "PARAXIAL_FP",
    "QuadratureConvergenceError",
    "QuadratureSpec",
    "ResidualReport",
    "SpaceTimePoint",
    "StencilSpec",
    "UnsupportedOrderError",
    "alternate_correspondence_sweep",
    "alternate_exact_psi",
    "asymptotic_F",
    "bateman_gaussian_psi",
    "check_symmetry",
    "compare_alternate",
    "compute_normalization",
    "constraint_time",
    "default_wave_steps",
    "delta_reduced_time_integral",
    "density_D",
    "envelope_phi",
    "eval_constraint",
    "exact_psi",
    "field_function",
    "first_derivative",
    "fit_gouy",
    "gouy_phase",
    "gouy_phase_samples",
    "hermite",
    "hermite_ridge_offset",
    "integrate_1d",
    "integrate_2d",
    "normalization_constant",
    "paraxial_psi",
    "paraxial_schrodinger_psi",
    "residual_convergence_sweep",
    "residual_full_wave",
    "residual_reduced",
    "sample_paraxial_points",
    "sample_points",
    "second_derivative",
    "spot_radius",
    "time_jacobian",
    "transverse_gram",
]
