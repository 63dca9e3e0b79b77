"""Separability analysis of two-mode Gaussian states from covariance matrices.

Closed-form EPR-like separability indicators (normalized product and sum of
variances, regularized sums), symplectic spectra and the PPT criterion,
plus an independent brute-force minimizer that verifies every closed form.
"""

from .errors import DegenerateBranch, EprSepError, InvalidInput, NumericalFailure
from .families import Family, FamilySpec, randomize_cm, sample_params
from .indicators import (
    Classification,
    IndicatorReport,
    Verdict,
    classify,
    e_function,
    e_m_closed,
    f_function,
    f_m_closed,
    g_function,
    g_m_closed,
    hessian_e,
    hessian_f,
    hessian_g,
    indicator_report,
)
from .oracle import MinimizationResult, backend_name, minimize, minimize_e, minimize_f, minimize_g
from .standard_form_ii import (
    StandardFormIISolution,
    classicality_check,
    f_uu,
    h_map,
    k_function,
    phi,
    ppt_equivalence_residual,
    solve_standard_form_ii,
)
from .symplectic import (
    J,
    PhysicalityReport,
    ScalingFactors,
    StandardFormParams,
    SymplecticSpectrum,
    apply_local_symplectic,
    build_scaled_standard_cm,
    extract_standard_params,
    partial_transpose_cm,
    partial_transpose_params,
    spectrum,
    symplectic_eigenvalues,
    tmsv_cm,
    vacuum_cm,
    validate,
)
from .tolerances import DEFAULT, Tolerances

__version__ = "0.1.0"
