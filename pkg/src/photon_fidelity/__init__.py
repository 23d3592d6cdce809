"""Numerics for photon wavefunctions: momentum, position, and coherent-state
fidelity measures, transformation phases, and localization extensions."""

from .errors import (
    AmbiguousRootError,
    AxisSingularityError,
    BranchUndefinedError,
    ConvergenceError,
    DegenerateStateError,
    IncompatibleGridError,
    InconsistentTransformError,
    InvalidParameterError,
    NoCrossingError,
    PhotonFidelityError,
    ResourceLimitError,
    UndefinedPhaseError,
)
from .localization import (
    CurveRequest,
    ExtensionQuery,
    coherent_phase_fidelity,
    emit_curve,
    extension,
    fidelity_of_shift,
)
from .momentum_fidelity import (
    CoherentStateSpec,
    FidelityReport,
    fidelity_c,
    fidelity_m,
    inner_product_m,
    norm_m,
    phase_diff,
)
from .poincare import (
    PoincareTransform,
    apply_transform,
    boost_along_y,
    rotation_about_y,
    theta_boost_y,
    theta_general,
    theta_rotation_y,
)
from .position_space import (
    PlaneWaveSolution,
    PositionField,
    SpatialGrid,
    fidelity_p,
    field_to_csv,
    grid_fidelity_p,
    inner_product_p,
    maxwell_residual,
    maxwell_residual_parts,
    momentum_side_overlap,
    nonlocal_inner_product,
    photon_number_norm,
    polarization_vector,
    rs_field,
    rs_field_time_derivative,
    synthesize_at_points,
    synthesize_position,
    whittaker_field,
)
from .quadrature import IntegralResult, QuadratureSpec, integrate_spherical
from .wavefunctions import (
    DEFAULT_CONSTANTS,
    HelicityDoublet,
    PhysicalConstants,
    example_state,
    global_phase,
    time_shift,
    translate,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousRootError", "AxisSingularityError", "BranchUndefinedError",
    "ConvergenceError", "DegenerateStateError", "IncompatibleGridError",
    "InconsistentTransformError", "InvalidParameterError", "NoCrossingError",
    "PhotonFidelityError", "ResourceLimitError", "UndefinedPhaseError",
    "CurveRequest", "ExtensionQuery", "coherent_phase_fidelity", "emit_curve",
    "extension", "fidelity_of_shift",
    "CoherentStateSpec", "FidelityReport", "fidelity_c", "fidelity_m",
    "inner_product_m", "norm_m", "phase_diff",
    "PoincareTransform", "apply_transform", "boost_along_y",
    "rotation_about_y", "theta_boost_y", "theta_general", "theta_rotation_y",
    "PlaneWaveSolution", "PositionField", "SpatialGrid", "fidelity_p",
    "field_to_csv", "grid_fidelity_p", "inner_product_p", "maxwell_residual",
    "maxwell_residual_parts", "momentum_side_overlap", "nonlocal_inner_product",
    "photon_number_norm", "polarization_vector", "rs_field",
    "rs_field_time_derivative", "synthesize_at_points", "synthesize_position",
    "whittaker_field",
    "IntegralResult", "QuadratureSpec", "integrate_spherical",
    "DEFAULT_CONSTANTS", "HelicityDoublet", "PhysicalConstants",
    "example_state", "global_phase", "time_shift", "translate",
    "__version__",
]
