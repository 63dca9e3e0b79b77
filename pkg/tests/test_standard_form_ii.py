"""The Duan scaling system, its indicator and the PPT equivalence identity."""

import math

import numpy as np
import pytest
from scipy.optimize import minimize_scalar

from eprsep import (
    InvalidInput,
    ScalingFactors,
    StandardFormParams,
    classicality_check,
    extract_standard_params,
    f_uu,
    h_map,
    k_function,
    phi,
    ppt_equivalence_residual,
    solve_standard_form_ii,
    spectrum,
    tmsv_cm,
)
from eprsep.families import Family, FamilySpec, sample_params
from eprsep.standard_form_ii import boundary_scaling, phi_upper_endpoint, z_forms

VACUUM = StandardFormParams(0.5, 0.5, 0.0, 0.0)


def test_k_function_examples():
    assert k_function(VACUUM, 1.0, ScalingFactors()) == pytest.approx(0.0)
    p = StandardFormParams(1.0, 1.0, 0.6, -0.6)
    assert k_function(p, 1.0, ScalingFactors()) == pytest.approx(-0.4)


def test_k_function_nonnegative_for_separable():
    rng = np.random.default_rng(17)
    found = 0
    for _ in range(40):
        p = sample_params(FamilySpec(), rng)
        if spectrum(p).d_pt < 0.0:
            continue
        found += 1
        for _ in range(50):
            t = rng.uniform(0.05, 20.0)
            u = ScalingFactors(rng.uniform(1.0, 8.0), rng.uniform(1.0, 8.0))
            assert k_function(p, t, u) >= -1e-10
    assert found > 10


def test_f_uu_examples():
    value, alpha_sq = f_uu(VACUUM, ScalingFactors())
    assert value == pytest.approx(0.0)
    assert alpha_sq == pytest.approx(1.0)
    p = StandardFormParams(1.0, 0.8, 0.5, -0.3)
    value, _ = f_uu(p, ScalingFactors())
    expected = 2.0 * math.sqrt((2 * p.b1 - 1) * (2 * p.b2 - 1)) - 2.0 * (p.c + abs(p.d))
    assert value == pytest.approx(expected, rel=1e-12)


def test_f_uu_is_min_over_alpha():
    rng = np.random.default_rng(23)
    for _ in range(20):
        p = sample_params(FamilySpec(), rng)
        u = ScalingFactors(rng.uniform(1.0, 4.0), rng.uniform(1.0, 4.0))
        value, alpha_sq = f_uu(p, u)
        res = minimize_scalar(
            lambda t: k_function(p, t, u), bounds=(1e-3, 50.0), method="bounded",
            options={"xatol": 1e-12},
        )
        assert value == pytest.approx(res.fun, abs=1e-9)
        assert alpha_sq == pytest.approx(res.x, rel=1e-5)
        assert k_function(p, alpha_sq, u) == pytest.approx(value, rel=1e-12)


def test_h_map_endpoints_and_monotonicity():
    p = StandardFormParams(1.3, 0.9, 0.4, -0.2)
    assert h_map(p, 1.0) == pytest.approx(1.0, abs=1e-14)
    assert h_map(p, 2.0 * p.b1) == pytest.approx(2.0 * p.b2, rel=1e-12)
    grid = np.linspace(1.0, 2.0 * p.b1, 500)
    values = [h_map(p, u) for u in grid]
    assert all(b > a for a, b in zip(values, values[1:]))
    # h satisfies the defining relation along the curve
    for u1 in grid[::50]:
        u2 = h_map(p, u1)
        lhs = (p.b1 / u1 - 0.5) * (p.b2 * u2 - 0.5)
        rhs = (p.b2 / u2 - 0.5) * (p.b1 * u1 - 0.5)
        assert lhs == pytest.approx(rhs, abs=1e-10)


def test_h_map_symmetric_is_identity():
    p = StandardFormParams(1.1, 1.1, 0.4, -0.2)
    for u1 in np.linspace(1.0, 2.2, 23):
        assert h_map(p, u1) == pytest.approx(u1, rel=1e-12)


def test_h_map_range_check():
    with pytest.raises(InvalidInput):
        h_map(StandardFormParams(1.0, 0.8, 0.3, -0.1), 2.5)


def test_phi_endpoint_values():
    p = StandardFormParams(1.0, 0.8, 0.5, -0.3)
    assert phi(p, 1.0) == pytest.approx(-0.04, abs=1e-12)
    sts = StandardFormParams(1.0, 0.8, 0.5, -0.5)
    assert phi(sts, 1.0) == pytest.approx(0.0, abs=1e-14)
    sym = StandardFormParams(1.0, 1.0, 0.5, -0.3)
    assert phi(sym, 2.0 * sym.b1) == pytest.approx(phi_upper_endpoint(sym), rel=1e-10)
    assert phi(p, 2.0 * p.b1) == pytest.approx(phi_upper_endpoint(p), rel=1e-10)


def test_phi_upper_endpoint_nonnegative(mixed_pool):
    for p in mixed_pool[:300]:
        assert phi_upper_endpoint(p) >= -1e-9
        assert phi(p, 1.0) <= 0.0


def test_solve_sts_family():
    p = StandardFormParams(1.0, 0.8, 0.5, -0.5)
    sol = solve_standard_form_ii(p)
    assert sol.u1_tilde == 1.0 and sol.u2_tilde == 1.0
    expected = 4.0 * (math.sqrt(0.5 * 0.3) - 0.5)
    assert sol.f_tilde == pytest.approx(expected, rel=1e-12)
    assert sol.f_tilde_prime == pytest.approx(4.0 * (math.sqrt(0.15) + 0.5), rel=1e-12)
    assert sol.f_tilde_double_prime == pytest.approx(sol.f_tilde_prime, rel=1e-12)
    assert sol.alpha_tilde_m_sq == pytest.approx(math.sqrt(0.3 / 0.5), rel=1e-12)


def test_solve_symmetric_family():
    p = StandardFormParams(1.0, 1.0, 0.5, -0.3)
    sol = solve_standard_form_ii(p)
    assert sol.u1_tilde == pytest.approx(math.sqrt(0.7 / 0.5), rel=1e-10)
    assert sol.u1_tilde == pytest.approx(1.183216, abs=1e-6)
    assert sol.f_tilde == pytest.approx(0.366432, abs=1e-6)
    assert sol.f_tilde == pytest.approx(4.0 * (math.sqrt(0.5 * 0.7) - 0.5), rel=1e-10)
    # nearly-symmetric state goes through bisection and must land nearby
    q = StandardFormParams(1.0, 1.0 - 1e-11, 0.5, -0.3)
    sol_bisect = solve_standard_form_ii(q)
    assert sol_bisect.method == "bisection"
    assert sol_bisect.u1_tilde == pytest.approx(sol.u1_tilde, abs=1e-9)
    assert sol_bisect.f_tilde == pytest.approx(sol.f_tilde, abs=1e-9)


def test_solve_threshold_state_matches_boundary_closed_form():
    p = StandardFormParams(1.0, 1.0, 0.5, -0.5)
    sol = solve_standard_form_ii(p)
    assert abs(sol.f_tilde) <= 1e-8
    u1b, u2b = boundary_scaling(p)
    assert sol.u1_tilde == pytest.approx(u1b, abs=1e-8)
    assert sol.u2_tilde == pytest.approx(u2b, abs=1e-8)


def test_solve_residuals_and_range(mixed_pool):
    for p in mixed_pool[:300]:
        sol = solve_standard_form_ii(p)
        assert sol.residual_eq1 <= 1e-9
        assert sol.residual_eq3 <= 1e-9
        assert 1.0 - 1e-12 <= sol.u1_tilde <= 2.0 * p.b1 + 1e-12
        assert 1.0 - 1e-12 <= sol.u2_tilde <= 2.0 * p.b2 + 1e-12
        # twin formulae agree
        s = math.sqrt(sol.u1_tilde * sol.u2_tilde)
        twin_b = sol.f_tilde_double_prime - 8.0 * abs(p.d) / s
        assert sol.f_tilde == pytest.approx(twin_b, abs=1e-9)
        assert sol.f_tilde_prime > 0.0
        assert sol.f_tilde_double_prime >= 0.0
        # the optimized-sum value at the solution equals the indicator
        value, _ = f_uu(p, ScalingFactors(max(sol.u1_tilde, 1.0), max(sol.u2_tilde, 1.0)))
        assert value == pytest.approx(sol.f_tilde, abs=1e-9)


def test_solve_uniqueness_scan_special_families():
    """No sign change away from the returned root for the explicit families."""
    rng = np.random.default_rng(31)
    for fam in (Family.STS, Family.MTS, Family.SYMMETRIC):
        for _ in range(10):
            p = sample_params(FamilySpec(family=fam), rng)
            sol = solve_standard_form_ii(p)
            xs = np.arange(1.0, 2.0 * p.b1, 1e-3)
            fs = phi(p, xs)
            crossings = np.nonzero((fs[:-1] <= 0.0) != (fs[1:] <= 0.0))[0]
            for i in crossings:
                assert xs[i] <= sol.u1_tilde + 1e-3 <= xs[i + 1] + 2e-3


def test_classicality_check_examples():
    sol = solve_standard_form_ii(VACUUM)
    assert classicality_check(VACUUM, sol)
    sym = StandardFormParams(1.0, 1.0, 0.5, -0.3)
    assert classicality_check(sym, solve_standard_form_ii(sym))
    tmsv = extract_standard_params(tmsv_cm(0.5))
    sol_t = solve_standard_form_ii(tmsv)
    assert not classicality_check(tmsv, sol_t)
    assert sol_t.f_tilde < 0.0


def test_equivalence_residual_examples():
    sol = solve_standard_form_ii(VACUUM)
    assert ppt_equivalence_residual(VACUUM, sol) == pytest.approx(0.0, abs=1e-15)
    p = StandardFormParams(1.0, 1.0, 0.5, -0.3)
    assert ppt_equivalence_residual(p, solve_standard_form_ii(p)) <= 1e-10


def test_equivalence_residual_batch(mixed_pool):
    for p in mixed_pool[:300]:
        sol = solve_standard_form_ii(p)
        sp = spectrum(p)
        lhs = sp.d_inv if p.d > 0 else sp.d_pt if p.d < 0 else 0.5 * (sp.d_inv + sp.d_pt)
        assert ppt_equivalence_residual(p, sol) <= 1e-9 * abs(lhs) + 1e-12


def test_z_forms_agree_off_solution():
    rng = np.random.default_rng(37)
    for _ in range(100):
        p = sample_params(FamilySpec(), rng)
        u1 = rng.uniform(1.0, 2.0 * p.b1)
        u2 = rng.uniform(1.0, 2.0 * p.b2)
        direct, reduced = z_forms(p, u1, u2)
        assert direct == pytest.approx(reduced, rel=1e-10, abs=1e-10)


def test_sign_agreement_with_ppt(mixed_pool):
    for p in mixed_pool[:500]:
        sol = solve_standard_form_ii(p)
        d_pt = spectrum(p).d_pt
        if p.d >= 0.0:
            assert sol.f_tilde >= -1e-10
        elif abs(sol.f_tilde) > 1e-10 and abs(d_pt) > 1e-12:
            assert (sol.f_tilde > 0.0) == (d_pt > 0.0)
