"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Sample sizes, seeds and tolerances are pinned here; the pools come
from the session fixtures in conftest.py.
"""

import math
import time

import numpy as np
import pytest

from eprsep import (
    StandardFormParams,
    build_scaled_standard_cm,
    e_m_closed,
    extract_standard_params,
    f_m_closed,
    g_m_closed,
    hessian_e,
    hessian_f,
    hessian_g,
    solve_standard_form_ii,
    spectrum,
)
from eprsep.families import Family, FamilySpec, randomize_cm, sample_params
from eprsep.indicators import f_stationarity_residuals, g_m_sum_form
from eprsep.oracle import minimize_e, minimize_f, minimize_g
from eprsep.standard_form_ii import boundary_scaling, phi, ppt_equivalence_residual

_RESULTS = []


def _criterion(num, description, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {description} ({detail})"
    print(line, flush=True)
    _RESULTS.append(line)
    assert ok, line


def _sign(x, band):
    return 1 if x > band else -1 if x < -band else 0


def test_criterion_1_product_minimum_oracle(negative_d_pool):
    t0 = time.time()
    worst_oracle = worst_identity = 0.0
    for p in negative_d_pool:
        em = e_m_closed(p)
        sp = spectrum(p)
        worst_identity = max(
            worst_identity, abs(em.value - sp.kappa_minus_pt**2) / sp.kappa_minus_pt**2
        )
        res = minimize_e(p)
        worst_oracle = max(worst_oracle, abs(em.value - res.value) / em.value)
    ok = worst_oracle <= 1e-6 and worst_identity <= 1e-10
    _criterion(
        1,
        "product-form minimum matches brute force and kappa^2",
        ok,
        f"n=500 oracle={worst_oracle:.2e}<=1e-6 identity={worst_identity:.2e}<=1e-10 "
        f"t={time.time() - t0:.1f}s",
    )


def test_criterion_2_sum_minimum_oracle(negative_d_pool):
    t0 = time.time()
    worst_oracle = worst_identity = worst_stat = 0.0
    for p in negative_d_pool:
        fm = f_m_closed(p)
        sp = spectrum(p)
        worst_identity = max(
            worst_identity, abs(fm.value - 2.0 * sp.kappa_minus_pt) / (2.0 * sp.kappa_minus_pt)
        )
        worst_stat = max(worst_stat, *f_stationarity_residuals(p, fm.alpha_sq, fm.u1, fm.u2))
        res = minimize_f(p)
        worst_oracle = max(worst_oracle, abs(fm.value - res.value) / fm.value)
    ok = worst_oracle <= 1e-5 and worst_identity <= 1e-10 and worst_stat <= 1e-8
    _criterion(
        2,
        "sum-form minimum matches brute force and 2 kappa",
        ok,
        f"n=500 oracle={worst_oracle:.2e}<=1e-5 identity={worst_identity:.2e}<=1e-10 "
        f"stationarity={worst_stat:.2e}<=1e-8 t={time.time() - t0:.1f}s",
    )


def test_criterion_3_regularized_minimum_oracle(negative_d_pool):
    t0 = time.time()
    worst_oracle = worst_forms = 0.0
    sign_ok = True
    for p in negative_d_pool:
        gm = g_m_closed(p)
        sp = spectrum(p)
        res = minimize_g(p)
        worst_oracle = max(worst_oracle, abs(gm.value - res.value))
        worst_forms = max(worst_forms, abs(gm.value - g_m_sum_form(p)))
        if _sign(gm.value, 1e-10) * _sign(sp.d_pt, 1e-10) < 0:
            sign_ok = False
    ok = worst_oracle <= 1e-6 and worst_forms <= 1e-10 and sign_ok
    _criterion(
        3,
        "regularized-sum minimum matches brute force, sign and both forms",
        ok,
        f"n=500 oracle={worst_oracle:.2e}<=1e-6 forms={worst_forms:.2e}<=1e-10 "
        f"signs={'ok' if sign_ok else 'MISMATCH'} t={time.time() - t0:.1f}s",
    )


def test_criterion_4_indicator_equivalence(mixed_pool):
    t0 = time.time()
    n_entangled = 0
    sign_ok = True
    worst_resid = 0.0
    for p in mixed_pool:
        sp = spectrum(p)
        if sp.d_pt < 0.0:
            n_entangled += 1
        sol = solve_standard_form_ii(p)
        if p.d < 0.0:
            if _sign(sol.f_tilde, 1e-10) * _sign(sp.d_pt, 1e-10) < 0:
                sign_ok = False
        elif sol.f_tilde < -1e-10:
            sign_ok = False
        lhs = sp.d_inv if p.d > 0 else sp.d_pt if p.d < 0 else 0.5 * (sp.d_inv + sp.d_pt)
        resid = ppt_equivalence_residual(p, sol) / (abs(lhs) + 1e-12)
        worst_resid = max(worst_resid, resid)
    ok = sign_ok and worst_resid <= 1e-9 and n_entangled >= 300
    _criterion(
        4,
        "optimized Duan indicator is sign-equivalent to the PPT invariant",
        ok,
        f"n=1000 entangled={n_entangled}>=300 signs={'ok' if sign_ok else 'MISMATCH'} "
        f"identity={worst_resid:.2e}<=1e-9 t={time.time() - t0:.1f}s",
    )


def test_criterion_5_bracketing(mixed_pool):
    t0 = time.time()
    worst_lo = worst_hi = worst_eq = 0.0
    in_range = True
    for p in mixed_pool:
        worst_lo = max(worst_lo, phi(p, 1.0))
        worst_hi = max(worst_hi, -phi(p, 2.0 * p.b1))
        sol = solve_standard_form_ii(p)
        worst_eq = max(worst_eq, sol.residual_eq1, sol.residual_eq3)
        if not (1.0 - 1e-12 <= sol.u1_tilde <= 2.0 * p.b1 + 1e-12):
            in_range = False
    ok = worst_lo <= 0.0 and worst_hi <= 1e-9 and worst_eq <= 1e-9 and in_range
    _criterion(
        5,
        "guaranteed bracket and system residuals of the scaling solve",
        ok,
        f"n=1000 phi(1)max={worst_lo:.2e}<=0 -phi(2b1)max={worst_hi:.2e}<=1e-9 "
        f"eq-residual={worst_eq:.2e}<=1e-9 range={'ok' if in_range else 'OUT'} "
        f"t={time.time() - t0:.1f}s",
    )


def test_criterion_6_invariant_identities(mixed_pool):
    t0 = time.time()
    worst = 0.0
    for p in mixed_pool:
        b1, b2, c, d = p.as_tuple()
        sp = spectrum(p)
        scale = max(1.0, b1 * b1 * (b1 * b2) ** 2)
        bc = b1 * b2 - c * c
        bd = b1 * b2 - d * d
        for k2 in (sp.kappa_plus_pt**2, sp.kappa_minus_pt**2):
            pairs = (
                ((b1 * bc - b2 * k2) * (b2 * bc - b1 * k2), (c * k2 - d * bc) ** 2),
                ((b1 * bd - b2 * k2) * (b2 * bd - b1 * k2), (c * bd - d * k2) ** 2),
                ((b1 * bc - b2 * k2) * (b2 * bd - b1 * k2), (b1 * c - b2 * d) ** 2 * k2),
                ((b1 * bd - b2 * k2) * (b2 * bc - b1 * k2), (b2 * c - b1 * d) ** 2 * k2),
            )
            for lhs, rhs in pairs:
                worst = max(worst, abs(lhs - rhs) / scale)
            biquad = k2 * k2 - (b1 * b1 + b2 * b2 - 2 * c * d) * k2 + sp.det_v
            worst = max(worst, abs(biquad) / scale)
        q = b2 * b2 - 0.25
        mc = b2 * bc - 0.25 * b1
        md = b2 * bd - 0.25 * b1
        a10 = 4.0 * mc * md - (q - c * d) ** 2 - 4.0 * q * sp.d_pt
        worst = max(worst, abs(a10) / scale)
    ok = worst <= 1e-9
    _criterion(
        6,
        "symplectic-invariant identities and the biquadratic",
        ok,
        f"n=1000 worst={worst:.2e}<=1e-9 t={time.time() - t0:.1f}s",
    )


def test_criterion_7_hessians(negative_d_pool):
    t0 = time.time()
    rng = np.random.default_rng(20240507)
    pool = list(negative_d_pool[:200])
    pool += [sample_params(FamilySpec(family=Family.STS), rng) for _ in range(25)]
    sym_spec = FamilySpec(family=Family.SYMMETRIC, negative_d=True)
    pool += [sample_params(sym_spec, rng) for _ in range(25)]
    worst_fd = 0.0
    all_pd = True
    worst_special = 0.0
    for p in pool:
        he = hessian_e(p)
        hf = hessian_f(p)
        hg = hessian_g(p)
        worst_fd = max(worst_fd, he.max_rel_err, hf.max_rel_err, hg.max_rel_err)
        all_pd = all_pd and he.positive_definite and hf.positive_definite and hg.positive_definite
        try:  # Cholesky of the finite-difference matrices as the direct PD test
            np.linalg.cholesky(he.fd_matrix)
            np.linalg.cholesky(hf.fd_matrix)
            np.linalg.cholesky(hg.fd_matrix)
        except np.linalg.LinAlgError:
            all_pd = False
        for base, special in (("h11", "h11_sts"), ("a33", "a33_sts"), ("det", "det_sts"),
                              ("h11", "h11_sym"), ("a33", "a33_sym"), ("det", "det_sym")):
            if special in hf.entries:
                worst_special = max(
                    worst_special,
                    abs(hf.entries[base] - hf.entries[special]) / abs(hf.entries[base]),
                )
    ok = worst_fd <= 1e-4 and all_pd and worst_special <= 1e-9
    _criterion(
        7,
        "closed-form Hessians match finite differences and are positive definite",
        ok,
        f"n={len(pool)} fd={worst_fd:.2e}<=1e-4 pd={'ok' if all_pd else 'FAIL'} "
        f"specializations={worst_special:.2e} t={time.time() - t0:.1f}s",
    )


def test_criterion_8_special_families():
    t0 = time.time()
    rng = np.random.default_rng(20240508)
    exact_units = True
    worst_sym = worst_f0 = worst_u0 = 0.0
    for fam in (Family.THERMAL, Family.MTS, Family.STS):
        for _ in range(50):
            p = sample_params(FamilySpec(family=fam), rng)
            sol = solve_standard_form_ii(p)
            if sol.u1_tilde != 1.0 or sol.u2_tilde != 1.0:
                exact_units = False
    for _ in range(50):
        p = sample_params(FamilySpec(family=Family.SYMMETRIC), rng)
        if p.c <= abs(p.d):
            continue
        sol = solve_standard_form_ii(p)
        expected = math.sqrt((p.b1 - abs(p.d)) / (p.b1 - p.c))
        worst_sym = max(worst_sym, abs(sol.u1_tilde - expected), abs(sol.u2_tilde - expected))
    for _ in range(50):
        p = sample_params(FamilySpec(family=Family.SEPARABILITY_THRESHOLD), rng)
        sol = solve_standard_form_ii(p)
        worst_f0 = max(worst_f0, abs(sol.f_tilde))
        u1b, u2b = boundary_scaling(p)
        worst_u0 = max(worst_u0, abs(sol.u1_tilde - u1b), abs(sol.u2_tilde - u2b))
    ok = exact_units and worst_sym <= 1e-10 and worst_f0 <= 1e-8 and worst_u0 <= 1e-8
    _criterion(
        8,
        "explicit families solve to their closed-form scalings",
        ok,
        f"units={'exact' if exact_units else 'FAIL'} symmetric={worst_sym:.2e}<=1e-10 "
        f"threshold f~={worst_f0:.2e}<=1e-8 u={worst_u0:.2e}<=1e-8 t={time.time() - t0:.1f}s",
    )


def test_criterion_9_local_invariance(mixed_pool):
    t0 = time.time()
    worst = 0.0
    base_states = mixed_pool[:125]
    for i, p in enumerate(base_states):
        ref_sp = spectrum(p)
        ref_e = e_m_closed(p).value if p.d < 0 and p.c > 0 else ref_sp.kappa_minus_pt**2
        ref_f = f_m_closed(p).value if p.d < 0 and p.c > 0 else 2 * ref_sp.kappa_minus_pt
        ref_g = g_m_closed(p).value if p.d < 0 and p.c > 0 else None
        ref_sol = solve_standard_form_ii(p)
        for j in range(4):
            cm = randomize_cm(p, 1000 * i + j)
            q = extract_standard_params(cm)
            sp = spectrum(q)

            def drift(a, b):
                return abs(a - b) / max(abs(a), 1.0)

            worst = max(
                worst,
                *(drift(a, b) for a, b in zip(p.as_tuple(), q.as_tuple())),
                drift(ref_sp.kappa_plus, sp.kappa_plus),
                drift(ref_sp.kappa_minus, sp.kappa_minus),
                drift(ref_sp.kappa_minus_pt, sp.kappa_minus_pt),
                drift(ref_sp.d_pt, sp.d_pt),
            )
            e2 = e_m_closed(q).value if q.d < 0 and q.c > 0 else sp.kappa_minus_pt**2
            f2 = f_m_closed(q).value if q.d < 0 and q.c > 0 else 2 * sp.kappa_minus_pt
            worst = max(worst, drift(ref_e, e2), drift(ref_f, f2))
            if ref_g is not None and q.d < 0 and q.c > 0:
                worst = max(worst, drift(ref_g, g_m_closed(q).value))
            worst = max(worst, drift(ref_sol.f_tilde, solve_standard_form_ii(q).f_tilde))
    ok = worst <= 1e-8
    _criterion(
        9,
        "every reported invariant survives local symplectic conjugation",
        ok,
        f"n=500 conjugations worst-drift={worst:.2e}<=1e-8 t={time.time() - t0:.1f}s",
    )


def test_criterion_10_threshold_chain():
    t0 = time.time()
    cs = np.linspace(0.3, 0.7, 81)
    flips = {"d_pt": [], "e_m": [], "f_m": [], "f_tilde": []}
    prev = None
    for i, c in enumerate(cs):
        p = StandardFormParams(1.0, 1.0, float(c), -float(c))
        sp = spectrum(p)
        tests = {
            "d_pt": sp.d_pt >= 0.0,
            "e_m": e_m_closed(p).value >= 0.25,
            "f_m": f_m_closed(p).value >= 1.0,
            "f_tilde": solve_standard_form_ii(p).f_tilde >= 0.0,
        }
        if prev is not None:
            for name, value in tests.items():
                if value != prev[name]:
                    flips[name].append(i)
        prev = tests
    counts = {name: len(v) for name, v in flips.items()}
    same_cell = len({tuple(v) for v in flips.values()}) == 1 and counts["d_pt"] == 1
    _criterion(
        10,
        "all four separability tests flip at the same sweep cell",
        same_cell,
        f"flip-cells={flips} t={time.time() - t0:.1f}s",
    )


@pytest.fixture(scope="session", autouse=True)
def _summary_at_exit():
    yield
    if _RESULTS:
        print("\nacceptance summary:")
        for line in _RESULTS:
            print(f"  {line}")
