"""Pseudo-spectral half-Laplacian toolkit.

Fractional operators on a periodic truncation of the line, critical-level
experiments with truncated-logarithm concentration families, and
Nehari/mountain-pass ground-state solvers.
"""

from ._fracmp import (  # noqa: F401
    ConfigurationError,
    EnergyContext,
    Field,
    Functional,
    Grid1D,
    ModelSpec,
    MoserFamily,
    NonlinearityMode,
    NumericalError,
    catalog,
    catalog_model,
    critical_level_verdict,
    descend_to_solution,
    energy_I,
    energy_J,
    eval_H,
    eval_M,
    eval_h,
    eval_m,
    extension_dtn_check,
    find_negative_endpoint,
    frac_laplacian,
    gradient,
    integrate,
    lambda_1,
    lions_exponent,
    moser_energy_2d,
    mountain_pass,
    mt_functional,
    nehari_minimize,
    nehari_scale,
    ozawa_ratio,
    ray_max,
    run_command,
    singular_integral_oracle,
    v_norm_sq,
    validate_assumptions,
    weak_residual,
)

__version__ = "0.1.0"
