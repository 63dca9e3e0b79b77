"""Batch verification suite: every closed form against its independent check.

Used by the command-line ``verify`` command.  Each check runs over seeded
random parameter sets and reports its worst residual against the pinned
tolerance; the suite passes only if every check does.  A fault name can be
injected to corrupt one closed form on purpose (negative control for the
harness itself).
"""

import math
from dataclasses import asdict, dataclass

import numpy as np

from .families import Family, FamilySpec, randomize_cm, sample_params
from .indicators import (
    e_m_closed,
    e_stationarity_residuals,
    f_m_closed,
    f_stationarity_residuals,
    g_m_closed,
    g_m_sum_form,
    hessian_e,
    hessian_f,
    hessian_g,
    indicator_report,
)
from .oracle import backend_name, minimize_e, minimize_f, minimize_g
from .standard_form_ii import (
    boundary_scaling,
    phi,
    ppt_equivalence_residual,
    solve_standard_form_ii,
)
from .symplectic import (
    J,
    build_scaled_standard_cm,
    extract_standard_params,
    partial_transpose_cm,
    spectrum,
    symplectic_eigenvalues,
    validate,
)
from .tolerances import DEFAULT, Tolerances

__all__ = ["CheckResult", "run_suite", "FAULTS"]

FAULTS = ("e_m", "f_m", "g_m", "f_tilde")


@dataclass(frozen=True)
class CheckResult:
    name: str
    samples: int
    max_residual: float
    tolerance: float
    passed: bool


def _result(name, samples, worst, tolerance):
    return CheckResult(name, samples, float(worst), tolerance, bool(worst <= tolerance))


def _sign_band(value, band):
    return 1 if value > band else -1 if value < -band else 0


def _fault_factor(fault, name):
    return 1.0 + 1e-3 if fault == name else 1.0


def check_physicality(states, tol):
    worst = 0.0
    for p in states:
        rep = validate(build_scaled_standard_cm(p), tol=tol)
        worst = max(worst, 0.5 - rep.kappa_minus)
    return _result("sample_physicality", len(states), worst, tol.eps_phys)


def check_spectrum_vs_eigensolve(states, tol):
    worst = 0.0
    for p in states:
        sp = spectrum(p, tol)
        cm = build_scaled_standard_cm(p)
        kp, km = symplectic_eigenvalues(cm, tol)
        kp_pt, km_pt = symplectic_eigenvalues(partial_transpose_cm(cm), tol)
        for closed, solved in (
            (sp.kappa_plus, kp),
            (sp.kappa_minus, km),
            (sp.kappa_plus_pt, kp_pt),
            (sp.kappa_minus_pt, km_pt),
        ):
            worst = max(worst, abs(closed - solved) / max(closed, 1e-30))
    return _result("spectrum_vs_eigensolve", len(states), worst, tol.identity_rel)


def check_extraction_roundtrip(states, tol, seed):
    worst = 0.0
    for i, p in enumerate(states):
        cm = randomize_cm(p, seed + i)
        q = extract_standard_params(cm, tol)
        for a, b in zip(p.as_tuple(), q.as_tuple()):
            worst = max(worst, abs(a - b) / max(1.0, abs(a)))
    return _result("extraction_roundtrip", len(states), worst, tol.identity_rel)


def check_appendix_identities(states, tol):
    worst = 0.0
    for p in states:
        b1, b2, c, d = p.as_tuple()
        sp = spectrum(p, tol)
        scale = max(1.0, b1 * b1 * (b1 * b2) ** 2)
        for k2 in (sp.kappa_plus_pt**2, sp.kappa_minus_pt**2):
            bc = b1 * b2 - c * c
            bd = b1 * b2 - d * d
            pairs = (
                ((b1 * bc - b2 * k2) * (b2 * bc - b1 * k2), (c * k2 - d * bc) ** 2),
                ((b1 * bd - b2 * k2) * (b2 * bd - b1 * k2), (c * bd - d * k2) ** 2),
                ((b1 * bc - b2 * k2) * (b2 * bd - b1 * k2), (b1 * c - b2 * d) ** 2 * k2),
                ((b1 * bd - b2 * k2) * (b2 * bc - b1 * k2), (b2 * c - b1 * d) ** 2 * k2),
            )
            for lhs, rhs in pairs:
                worst = max(worst, abs(lhs - rhs) / scale)
            biq = k2 * k2 - (b1 * b1 + b2 * b2 - 2.0 * c * d) * k2 + sp.det_v
            worst = max(worst, abs(biq) / scale)
        q = b2 * b2 - 0.25
        mc = b2 * (b1 * b2 - c * c) - 0.25 * b1
        md = b2 * (b1 * b2 - d * d) - 0.25 * b1
        a10 = 4.0 * mc * md - (q - c * d) ** 2 - 4.0 * q * sp.d_pt
        worst = max(worst, abs(a10) / scale)
        worst = max(worst, abs(sp.d_pt - sp.d_inv - c * d) / max(1.0, abs(sp.d_pt)))
    return _result("appendix_identities", len(states), worst, tol.identity_rel)


def check_product_oracle(states, tol, fault=None, backend=None):
    worst = 0.0
    for p in states:
        closed = e_m_closed(p, tol).value * _fault_factor(fault, "e_m")
        res = minimize_e(p, backend=backend)
        worst = max(worst, abs(closed - res.value) / abs(closed))
    return _result("product_closed_vs_oracle", len(states), worst, tol.closed_vs_oracle_rel)


def check_sum_oracle(states, tol, fault=None, backend=None):
    worst = 0.0
    for p in states:
        closed = f_m_closed(p, tol).value * _fault_factor(fault, "f_m")
        res = minimize_f(p, backend=backend)
        worst = max(worst, abs(closed - res.value) / abs(closed))
    return _result("sum_closed_vs_oracle", len(states), worst, 10.0 * tol.closed_vs_oracle_rel)


def check_regularized_oracle(states, tol, fault=None, backend=None):
    worst = 0.0
    for p in states:
        closed = g_m_closed(p, tol).value + (1e-3 if fault == "g_m" else 0.0)
        res = minimize_g(p, backend=backend)
        worst = max(worst, abs(closed - res.value))
    return _result("regularized_closed_vs_oracle", len(states), worst, tol.closed_vs_oracle_rel)


def check_stationarity(states, tol):
    worst = 0.0
    for p in states:
        em = e_m_closed(p, tol)
        worst = max(worst, *e_stationarity_residuals(p, em.lambda_m, em.mu_m))
        fm = f_m_closed(p, tol)
        worst = max(worst, *f_stationarity_residuals(p, fm.alpha_sq, fm.u1, fm.u2))
    return _result("stationarity_residuals", len(states), worst, 1e-8)


def check_hessians(states, tol):
    worst = 0.0
    for p in states:
        for check in (hessian_e(p, tol), hessian_f(p, tol), hessian_g(p, tol)):
            worst = max(worst, check.max_rel_err)
            if not check.positive_definite:
                worst = max(worst, 1.0)
    return _result("hessians_vs_finite_differences", len(states), worst, 1e-4)


def check_regularized_forms(states, tol):
    worst = 0.0
    for p in states:
        gm = g_m_closed(p, tol).value
        worst = max(worst, abs(gm - g_m_sum_form(p)) / max(1.0, abs(gm)))
    return _result("regularized_two_forms", len(states), worst, 1e-10)


def check_duan_system(states, tol):
    worst = 0.0
    for p in states:
        sol = solve_standard_form_ii(p, tol)
        worst = max(worst, sol.residual_eq1, sol.residual_eq3)
        worst = max(worst, phi(p, 1.0), -phi(p, 2.0 * p.b1))
        if not (1.0 - 1e-12 <= sol.u1_tilde <= 2.0 * p.b1 + 1e-12):
            worst = max(worst, 1.0)
        if not (1.0 - 1e-12 <= sol.u2_tilde <= 2.0 * p.b2 + 1e-12):
            worst = max(worst, 1.0)
    return _result("duan_system_residuals", len(states), worst, tol.identity_rel)


def check_sign_chain(states, tol, fault=None):
    mismatches = 0
    for p in states:
        sp = spectrum(p, tol)
        ref = _sign_band(sp.d_pt, tol.boundary_dpt)
        sol = solve_standard_form_ii(p, tol)
        f_tilde = sol.f_tilde * _fault_factor(fault, "f_tilde") + (
            2e-10 if fault == "f_tilde" else 0.0
        )
        signs = [_sign_band(f_tilde, tol.boundary_ftilde)]
        if p.d >= 0.0 and signs[0] < 0:
            mismatches += 1
        if p.d < 0.0 and p.c > 0.0:
            signs.append(_sign_band(e_m_closed(p, tol).value - 0.25, tol.boundary_dpt))
            signs.append(_sign_band(f_m_closed(p, tol).value - 1.0, tol.boundary_dpt))
            signs.append(_sign_band(g_m_closed(p, tol).value, tol.boundary_ftilde))
            mismatches += sum(1 for s in signs if s * ref < 0)
    return _result("threshold_sign_chain", len(states), float(mismatches), 0.0)


def check_equivalence_identity(states, tol):
    worst = 0.0
    for p in states:
        sp = spectrum(p, tol)
        sol = solve_standard_form_ii(p, tol)
        resid = ppt_equivalence_residual(p, sol, tol)
        lhs = sp.d_inv if p.d > 0 else sp.d_pt if p.d < 0 else 0.5 * (sp.d_inv + sp.d_pt)
        worst = max(worst, resid / (abs(lhs) + 1e-12))
    return _result("equivalence_identity", len(states), worst, tol.identity_rel)


def check_special_families(rng, tol, per_family):
    worst = 0.0
    count = 0
    for fam in (Family.THERMAL, Family.MTS, Family.STS):
        for _ in range(per_family):
            p = sample_params(FamilySpec(family=fam), rng)
            sol = solve_standard_form_ii(p, tol)
            worst = max(worst, abs(sol.u1_tilde - 1.0), abs(sol.u2_tilde - 1.0))
            count += 1
    for _ in range(per_family):
        p = sample_params(FamilySpec(family=Family.SYMMETRIC), rng)
        sol = solve_standard_form_ii(p, tol)
        if p.c > abs(p.d):
            expected = math.sqrt((p.b1 - abs(p.d)) / (p.b1 - p.c))
            worst = max(worst, abs(sol.u1_tilde - expected))
        count += 1
    for _ in range(per_family):
        p = sample_params(FamilySpec(family=Family.SEPARABILITY_THRESHOLD), rng)
        sol = solve_standard_form_ii(p, tol)
        worst = max(worst, abs(sol.f_tilde) / 100.0)  # |f~| <= 1e-8 at threshold
        u1b, u2b = boundary_scaling(p)
        worst = max(worst, abs(sol.u1_tilde - u1b) / 10.0, abs(sol.u2_tilde - u2b) / 10.0)
        count += 1
    return _result("special_families", count, worst, 1e-9)


def check_local_invariance(states, tol, seed):
    worst = 0.0
    for i, p in enumerate(states):
        cm = randomize_cm(p, seed + 7919 * i)
        q = extract_standard_params(cm, tol)
        a = indicator_report(p, tol)
        b = indicator_report(q, tol)
        for x, y in ((a.e_m, b.e_m), (a.f_m, b.f_m)):
            worst = max(worst, abs(x - y) / max(1.0, abs(x)))
        if a.g_m is not None and b.g_m is not None:
            worst = max(worst, abs(a.g_m - b.g_m) / max(1.0, abs(a.g_m)))
        sa = solve_standard_form_ii(p, tol)
        sb = solve_standard_form_ii(q, tol)
        worst = max(worst, abs(sa.f_tilde - sb.f_tilde) / max(1.0, abs(sa.f_tilde)))
    return _result("local_invariance", len(states), worst, 1e-8)


def run_suite(
    n: int = 100,
    seed: int = 0,
    tol: Tolerances = DEFAULT,
    fault: str | None = None,
    backend: str | None = None,
) -> dict:
    """Run every check over n seeded states; returns a JSON-ready summary."""
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}; known: {FAULTS}")
    rng = np.random.default_rng(seed)
    generic = [sample_params(FamilySpec(), rng) for _ in range(n)]
    negative = [sample_params(FamilySpec(negative_d=True), rng) for _ in range(n)]
    biased = [sample_params(FamilySpec(bias_entangled=True), rng) for _ in range(n // 2)]
    mixed = generic + biased
    oracle_pool = negative[: max(10, n // 2)]
    hessian_pool = negative[: max(10, n // 5)]

    checks = [
        check_physicality(mixed, tol),
        check_spectrum_vs_eigensolve(generic, tol),
        check_extraction_roundtrip(generic[: max(10, n // 2)], tol, seed),
        check_appendix_identities(mixed, tol),
        check_product_oracle(oracle_pool, tol, fault, backend),
        check_sum_oracle(oracle_pool, tol, fault, backend),
        check_regularized_oracle(oracle_pool, tol, fault, backend),
        check_stationarity(negative, tol),
        check_hessians(hessian_pool, tol),
        check_regularized_forms(negative, tol),
        check_duan_system(mixed, tol),
        check_sign_chain(mixed, tol, fault),
        check_equivalence_identity(mixed, tol),
        check_special_families(rng, tol, max(5, n // 10)),
        check_local_invariance(generic[: max(10, n // 4)], tol, seed),
    ]
    return {
        "n": n,
        "seed": seed,
        "backend": backend or backend_name(),
        "fault": fault,
        "all_passed": all(c.passed for c in checks),
        "checks": [asdict(c) for c in checks],
    }
