"""Steady-state quantum covariance and mirror-mirror entanglement of two
optomechanical cavities with intracavity parametric amplifiers,
squeezed-vacuum injection, photon hopping and phonon tunneling."""

from .__about__ import __version__
from .dynamics import (
    QUADRATURES,
    StabilityReport,
    build_drift,
    build_noise,
    matrix_from_text,
    matrix_to_text,
    stability_check,
)
from .entanglement import (
    EntanglementResult,
    log_negativity,
    pt_symplectic_minimum,
    reduce_covariance,
)
from .errors import (
    ConfigParseError,
    DomainError,
    EigendecompositionFailure,
    IllConditionedWarning,
    NoConvergence,
    NoCrossing,
    SingularDenominator,
    UnknownPreset,
    UnphysicalCovariance,
    UnstableSystem,
)
from .params import (
    DerivedQuantities,
    MeanFields,
    PhysicalParams,
    coupling_strength,
    derive,
    laser_phase,
    mean_fields,
    thermal_occupation,
)
from .steady_state import (
    integrate_to_steady_state,
    lyapunov_residual,
    solve_lyapunov,
    symplectic_eigenvalues,
    symplectic_form,
)
from .sweep import (
    SweepAxis,
    SweepRecord,
    SweepResult,
    SweepSpec,
    ThresholdReport,
    csv_bytes,
    evaluate_point,
    figure_base,
    find_threshold,
    preset,
    preset_names,
    run_sweep,
    write_csv,
)

__all__ = [
    "__version__",
    "QUADRATURES",
    "StabilityReport",
    "build_drift",
    "build_noise",
    "matrix_from_text",
    "matrix_to_text",
    "stability_check",
    "EntanglementResult",
    "log_negativity",
    "pt_symplectic_minimum",
    "reduce_covariance",
    "ConfigParseError",
    "DomainError",
    "EigendecompositionFailure",
    "IllConditionedWarning",
    "NoConvergence",
    "NoCrossing",
    "SingularDenominator",
    "UnknownPreset",
    "UnphysicalCovariance",
    "UnstableSystem",
    "DerivedQuantities",
    "MeanFields",
    "PhysicalParams",
    "coupling_strength",
    "derive",
    "laser_phase",
    "mean_fields",
    "thermal_occupation",
    "integrate_to_steady_state",
    "lyapunov_residual",
    "solve_lyapunov",
    "symplectic_eigenvalues",
    "symplectic_form",
    "SweepAxis",
    "SweepRecord",
    "SweepResult",
    "SweepSpec",
    "ThresholdReport",
    "csv_bytes",
    "evaluate_point",
    "figure_base",
    "find_threshold",
    "preset",
    "preset_names",
    "run_sweep",
    "write_csv",
]
