"""Python bindings for the qradar simulation library."""

from ._core import (
    NumericalError,
    QradarError,
    ValidationError,
    eom_threshold_temperature,
    evaluate,
    lambda_sph,
    n_eff,
    oe_threshold_temperature,
    preset_names,
    preset_text,
    run_config,
    scattering_matrix,
    symplectic_eigenvalues,
    tmsv_cov,
    two_eta,
    validate_config,
)

__all__ = [
    "NumericalError",
    "QradarError",
    "ValidationError",
    "eom_threshold_temperature",
    "evaluate",
    "lambda_sph",
    "n_eff",
    "oe_threshold_temperature",
    "preset_names",
    "preset_text",
    "run_config",
    "scattering_matrix",
    "symplectic_eigenvalues",
    "tmsv_cov",
    "two_eta",
    "validate_config",
]
