"""Full analysis pipeline for one covariance matrix.

Runs validation, parameter extraction, spectra, the three closed-form
indicators, the standard-form-II solve and the equivalence identity, and
records every internal cross-check with its residual so a report is either
fully self-consistent or explicit about what failed.
"""

import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import InvalidInput
from .indicators import IndicatorReport, indicator_report
from .io import cm_to_dict, params_to_dict
from .standard_form_ii import (
    StandardFormIISolution,
    classicality_check,
    ppt_equivalence_residual,
    solve_standard_form_ii,
)
from .symplectic import (
    PhysicalityReport,
    StandardFormParams,
    SymplecticSpectrum,
    extract_standard_params,
    spectrum,
    validate,
)
from .tolerances import DEFAULT, Tolerances

__all__ = ["Check", "AnalysisReport", "analyze_matrix"]


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    residual: float


@dataclass(frozen=True)
class AnalysisReport:
    input_matrix: list
    physicality: PhysicalityReport
    params: StandardFormParams
    spectrum: SymplecticSpectrum
    indicators: IndicatorReport
    standard_form_ii: StandardFormIISolution
    equivalence_residual: float
    checks: tuple

    @property
    def all_checks_pass(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "input": {"ordering": "q1p1q2p2", "matrix": self.input_matrix},
            "physicality": asdict(self.physicality),
            "standard_form": params_to_dict(self.params),
            "spectrum": asdict(self.spectrum),
            "indicators": asdict(self.indicators),
            "standard_form_ii": asdict(self.standard_form_ii),
            "equivalence_residual": self.equivalence_residual,
            "checks": [asdict(c) for c in self.checks],
            "summary": {
                "verdict": self.indicators.verdict,
                "boundary": self.indicators.boundary,
                "d_pt": self.spectrum.d_pt,
                "kappa_minus_pt": self.spectrum.kappa_minus_pt,
                "f_tilde": self.standard_form_ii.f_tilde,
                "all_checks_pass": self.all_checks_pass,
            },
        }


def _sign_band(value: float, band: float) -> int:
    if value > band:
        return 1
    if value < -band:
        return -1
    return 0


def analyze_matrix(
    cm: np.ndarray, eps_phys: float | None = None, tol: Tolerances = DEFAULT
) -> AnalysisReport:
    """Run the whole pipeline; raises InvalidInput for unphysical matrices."""
    report = validate(cm, eps_phys, tol)
    if not report.ok:
        raise InvalidInput(f"unphysical covariance matrix: {report}")
    p = extract_standard_params(cm, tol)
    sp = spectrum(p, tol)
    ind = indicator_report(p, tol)
    sol = solve_standard_form_ii(p, tol)
    equiv = ppt_equivalence_residual(p, sol, tol)

    checks = []
    kp2 = sp.kappa_minus_pt**2
    r = abs(ind.e_m - kp2) / max(kp2, 1e-30)
    checks.append(Check("product_value_identity", r <= tol.identity_rel, r))
    r = abs(ind.f_m - 2.0 * sp.kappa_minus_pt) / max(2.0 * sp.kappa_minus_pt, 1e-30)
    checks.append(Check("sum_value_identity", r <= tol.identity_rel, r))
    if ind.g_m is not None:
        agree = _sign_band(ind.g_m, tol.boundary_ftilde) * _sign_band(sp.d_pt, tol.boundary_dpt) >= 0
        checks.append(Check("regularized_sign_agreement", agree, float(not agree)))
    s = math.sqrt(sol.u1_tilde * sol.u2_tilde)
    twin_b = sol.f_tilde_double_prime - 8.0 * abs(p.d) / s
    r = abs(sol.f_tilde - twin_b)
    checks.append(Check("twin_formula_agreement", r <= tol.identity_rel, r))
    agree = _sign_band(sol.f_tilde, tol.boundary_ftilde) * _sign_band(sp.d_pt, tol.boundary_dpt) >= 0
    checks.append(Check("indicator_sign_agreement", agree, float(not agree)))
    lhs = sp.d_inv if p.d > 0.0 else sp.d_pt if p.d < 0.0 else 0.5 * (sp.d_inv + sp.d_pt)
    r = equiv / (abs(lhs) + 1e-12)
    checks.append(Check("equivalence_identity", r <= tol.identity_rel, r))
    checks.append(Check("eq1_residual", sol.residual_eq1 <= tol.identity_rel, sol.residual_eq1))
    checks.append(Check("eq3_residual", sol.residual_eq3 <= tol.identity_rel, sol.residual_eq3))
    classical = classicality_check(p, sol, tol)
    agree = classical == (sol.f_tilde >= -tol.identity_rel)
    checks.append(Check("classicality_agreement", agree, float(not agree)))

    return AnalysisReport(
        input_matrix=cm_to_dict(cm)["matrix"],
        physicality=report,
        params=p,
        spectrum=sp,
        indicators=ind,
        standard_form_ii=sol,
        equivalence_residual=equiv,
        checks=tuple(checks),
    )
