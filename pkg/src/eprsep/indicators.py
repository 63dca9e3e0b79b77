"""Closed-form separability indicators built from EPR-like variances.

Three correlation functions of a two-mode Gaussian state in scaled standard
form are minimized in closed form:

- ``e_function``: the product of the variances of q1 - lambda q2 and
  p1 + mu p2, normalized by (1 + lambda mu)^2.  Its minimum equals the
  squared smallest symplectic eigenvalue of the partial transpose, so the
  state is separable iff the minimum is >= 1/4.
- ``f_function``: the normalized sum of the variances of the one-parameter
  pair (alpha q1 - q2/alpha, alpha p1 + p2/alpha) over the squeeze factors;
  minimum 2 kappa_minus_pt, separable iff >= 1.
- ``g_function``: the regularized (Reid-pair) sum; its minimum has the sign
  of the PPT invariant, separable iff >= 0.

The stationary points come with closed-form Hessians whose positive
definiteness certifies the minima; ``hessian_*`` also cross-check every
closed entry against central finite differences.

All minimizing formulas require d < 0 and c > 0.  For d >= 0 the state is
separable outright and the closed-form values (not claimed as attained
minima) are still reported; for c = 0 the infima are not attained.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import DegenerateBranch, NumericalFailure
from .oracle import finite_diff_hessian
from .symplectic import (
    ScalingFactors,
    StandardFormParams,
    SymplecticSpectrum,
    spectrum,
)
from .tolerances import DEFAULT, Tolerances

__all__ = [
    "Verdict",
    "Classification",
    "EMin",
    "FMin",
    "GMin",
    "HessianCheck",
    "IndicatorReport",
    "variance_q",
    "variance_p",
    "e_function",
    "f_function",
    "g_function",
    "e_m_closed",
    "f_m_closed",
    "g_m_closed",
    "g_m_sum_form",
    "classify",
    "e_stationarity_residuals",
    "f_stationarity_residuals",
    "hessian_e",
    "hessian_f",
    "hessian_g",
    "indicator_report",
]


def variance_q(p: StandardFormParams, u: ScalingFactors, a1: float, a2: float) -> float:
    """Variance of a1 q1 - a2 q2 in the scaled standard form (a_j > 0)."""
    return (
        a1 * a1 * p.b1 * u.u1
        + a2 * a2 * p.b2 * u.u2
        - 2.0 * a1 * a2 * p.c * math.sqrt(u.u1 * u.u2)
    )


def variance_p(
    p: StandardFormParams, u: ScalingFactors, bb1: float, bb2: float, sign: int = 1
) -> float:
    """Variance of bb1 p1 + sign * bb2 p2 in the scaled standard form."""
    return (
        bb1 * bb1 * p.b1 / u.u1
        + bb2 * bb2 * p.b2 / u.u2
        + sign * 2.0 * bb1 * bb2 * p.d / math.sqrt(u.u1 * u.u2)
    )


def e_function(p: StandardFormParams, lam: float, mu: float) -> float:
    """Normalized product of the Reid-pair variances in standard form."""
    vq = p.b1 + p.b2 * lam * lam - 2.0 * p.c * lam
    vp = p.b1 + p.b2 * mu * mu + 2.0 * p.d * mu
    den = 1.0 + lam * mu
    return (vq * vp) / (den * den)


def _f_value(p: StandardFormParams, t: float, u1: float, u2: float) -> float:
    s = math.sqrt(u1 * u2)
    num = (
        p.b1 * (u1 + 1.0 / u1) * (t * t)
        - 2.0 * (p.c * s - p.d / s) * t
        + p.b2 * (u2 + 1.0 / u2)
    )
    return num / (t * t + 1.0)


def f_function(p: StandardFormParams, alpha_sq: float, u: ScalingFactors) -> float:
    """Normalized sum of the one-parameter pair variances."""
    return _f_value(p, alpha_sq, u.u1, u.u2)


def g_function(p: StandardFormParams, xi: float, eta: float, u1: float) -> float:
    """Regularized Reid-pair sum: var Q(xi) + var P(eta) - (1 + xi eta)."""
    ru = math.sqrt(u1)
    vq = p.b1 * u1 + p.b2 * xi * xi - 2.0 * p.c * ru * xi
    vp = p.b1 / u1 + p.b2 * eta * eta + 2.0 * p.d * eta / ru
    return vq + vp - 1.0 - xi * eta


class EMin(NamedTuple):
    value: float
    lambda_m: float
    mu_m: float


class FMin(NamedTuple):
    value: float
    alpha_sq: float
    u1: float
    u2: float
    gamma: float


class GMin(NamedTuple):
    value: float
    xi: float | None
    eta: float | None
    u1: float | None
    attained: bool = True


def _require_negative_d(p: StandardFormParams):
    if p.d >= 0.0:
        raise DegenerateBranch(
            "d >= 0: state is separable outright; the stationary analysis needs d < 0"
        )
    if p.c <= 0.0:
        raise DegenerateBranch("c = 0: the infimum is not attained at finite parameters")


def _pt_discriminant_split(p: StandardFormParams, sp: SymplecticSpectrum):
    """sqrt(Delta^PT) +/- (b1^2 - b2^2) without cancellation.

    The minus combination is rewritten through the factored discriminant:
    sqrt(D) - x = (D - x^2)/(sqrt(D) + x) = 4 (b1 c - b2 d)(b2 c - b1 d)/(sqrt(D) + x).
    """
    x = p.b1 * p.b1 - p.b2 * p.b2
    a_fac = p.b1 * p.c - p.b2 * p.d
    b_fac = p.b2 * p.c - p.b1 * p.d
    s_plus = math.sqrt(sp.delta_pt) + x
    if s_plus <= 0.0:
        raise DegenerateBranch("vanishing partial-transpose discriminant")
    s_minus = 4.0 * a_fac * b_fac / s_plus
    return s_plus, s_minus, a_fac, b_fac


def e_m_closed(p: StandardFormParams, tol: Tolerances = DEFAULT) -> EMin:
    """Minimum of e_function and its unique stationary point (d < 0, c > 0).

    The returned value is the stationary-point evaluation
    (b2 lambda - c)(b2 mu + d)/(lambda mu); its identity with the squared
    smallest PT symplectic eigenvalue is a theorem checked by the tests,
    not an input to this routine.
    """
    _require_negative_d(p)
    sp = spectrum(p, tol)
    s_plus, _, a_fac, b_fac = _pt_discriminant_split(p, sp)
    lam = s_plus / (2.0 * a_fac)
    mu = s_plus / (2.0 * b_fac)
    value = (p.b2 * lam - p.c) * (p.b2 * mu + p.d) / (lam * mu)
    return EMin(value, lam, mu)


def f_m_closed(p: StandardFormParams, tol: Tolerances = DEFAULT) -> FMin:
    """Minimum of f_function with its stationary point (d < 0, c > 0).

    The squeeze factors are evaluated in a rearranged form of their
    discriminant expressions that stays stable for weakly correlated and
    strongly asymmetric states (all building blocks are positive products).
    The value is f_function at the stationary point.
    """
    _require_negative_d(p)
    sp = spectrum(p, tol)
    s_plus, s_minus, a_fac, b_fac = _pt_discriminant_split(p, sp)
    b1, b2, c, d = p.b1, p.b2, p.c, p.d
    gamma = b_fac / a_fac
    alpha_sq = math.sqrt(s_minus / s_plus)
    corr = c * c - d * d  # >= 0 by the c >= |d| convention, 0 only for c = -d
    det_c_block = b1 * b2 - c * c
    s_big = c * (b1 * b1 + b2 * b2) - 2.0 * b1 * b2 * d + c * math.sqrt(sp.delta_pt)
    den1 = 8.0 * det_c_block * a_fac * b_fac * b_fac / (s_big * s_plus)
    den2 = 8.0 * det_c_block * a_fac * a_fac * b_fac / (s_big * s_minus)
    u1 = math.sqrt((den1 + 2.0 * b2 * corr) / den1)
    u2 = math.sqrt((den2 + 2.0 * b1 * corr) / den2)
    value = f_function(p, alpha_sq, ScalingFactors(u1, u2))
    return FMin(value, alpha_sq, u1, u2, gamma)


def _g_minor_pair(p: StandardFormParams) -> tuple[float, float]:
    mc = p.b2 * (p.b1 * p.b2 - p.c * p.c) - 0.25 * p.b1
    md = p.b2 * (p.b1 * p.b2 - p.d * p.d) - 0.25 * p.b1
    return mc, md


def g_m_closed(p: StandardFormParams, tol: Tolerances = DEFAULT) -> GMin:
    """Minimum of g_function with its stationary point (d < 0, b2 > 1/2).

    The value is computed from the PPT-invariant form, which is exact at
    the separability threshold where the direct sum form would cancel.

    States saturating the uncertainty bound in the q-correlation
    (b2 (b1 b2 - c^2) = b1/4, e.g. every pure state) push the stationary
    squeeze factor to infinity; the infimum is still the continuous limit
    of the same form and is returned with attained=False, unless the
    p-correlation saturates too (the c = |d| pure family), where the value
    is flat in u1 and reported at u1 = 1.
    """
    _require_negative_d(p)
    q = p.b2 * p.b2 - 0.25
    if q <= 0.0:
        raise DegenerateBranch("b2 = 1/2 forces c = d = 0 (uncorrelated product state)")
    mc, md = _g_minor_pair(p)
    sp = spectrum(p, tol)
    floor = 1e-13 * max(1.0, p.b2 * p.b1 * p.b2)
    mc_pos = max(mc, 0.0)
    value = 4.0 * sp.d_pt / (2.0 * math.sqrt(mc_pos * max(md, 0.0)) + (q - p.c * p.d))
    if mc <= floor:
        if md <= floor:  # flat direction: any u1 attains the value
            u1 = 1.0
        else:
            return GMin(value, None, None, None, attained=False)
    else:
        u1 = math.sqrt(md / mc)
    ru = math.sqrt(u1)
    xi = (p.b2 * p.c * ru - 0.5 * p.d / ru) / q
    eta = (0.5 * p.c * ru - p.b2 * p.d / ru) / q
    return GMin(value, xi, eta, u1)


def g_m_sum_form(p: StandardFormParams) -> float:
    """The direct (non-PPT) printed form of the g minimum, for cross-checks."""
    q = p.b2 * p.b2 - 0.25
    mc, md = _g_minor_pair(p)
    return (2.0 * math.sqrt(max(mc, 0.0) * max(md, 0.0)) - (q - p.c * p.d)) / q


class Verdict(str, Enum):
    SEPARABLE = "separable"
    ENTANGLED = "entangled"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    boundary: bool
    d_pt: float


def classify(p: StandardFormParams, tol: Tolerances = DEFAULT) -> Classification:
    """Binary separability verdict from the PPT invariant.

    For d < 0 the three indicator thresholds (product vs 1/4, sum vs 1,
    regularized sum vs 0) are recomputed and must agree in sign with the
    invariant; a hard disagreement raises NumericalFailure.  States within
    the boundary band of zero are flagged.
    """
    sp = spectrum(p, tol)
    verdict = Verdict.SEPARABLE if sp.d_pt >= 0.0 else Verdict.ENTANGLED
    boundary = abs(sp.d_pt) <= tol.boundary_dpt
    if p.d < 0.0 and p.c > 0.0 and not boundary:
        band = 10.0 * tol.boundary_dpt
        checks = (
            e_m_closed(p, tol).value - 0.25,
            f_m_closed(p, tol).value - 1.0,
            g_m_closed(p, tol).value,
        )
        for offset in checks:
            if abs(offset) > band and (offset > 0.0) != (sp.d_pt > 0.0):
                raise NumericalFailure(
                    f"indicator threshold disagrees with the PPT invariant for {p}"
                )
    return Classification(verdict=verdict, boundary=boundary, d_pt=sp.d_pt)


def e_stationarity_residuals(p: StandardFormParams, lam: float, mu: float) -> tuple[float, float]:
    """Normalized residuals of the two product-form stationarity equations."""
    vq = p.b1 + p.b2 * lam * lam - 2.0 * p.c * lam
    vp = p.b1 + p.b2 * mu * mu + 2.0 * p.d * mu
    rhs_q = (p.b2 * lam - p.c) * (1.0 + lam * mu) / mu
    rhs_p = (p.b2 * mu + p.d) * (1.0 + lam * mu) / lam
    r1 = abs(vq - rhs_q) / max(1.0, abs(vq), abs(rhs_q))
    r2 = abs(vp - rhs_p) / max(1.0, abs(vp), abs(rhs_p))
    return r1, r2


def f_stationarity_residuals(
    p: StandardFormParams, alpha_sq: float, u1: float, u2: float
) -> tuple[float, float, float]:
    """Normalized residuals of the three sum-form stationarity equations."""
    b1, b2, c, d = p.b1, p.b2, p.c, p.d
    s = math.sqrt(u1 * u2)
    cross_minus = c * s - d / s
    cross_plus = c * s + d / s
    lhs0 = cross_minus * (1.0 - alpha_sq * alpha_sq)
    rhs0 = (b1 * (u1 + 1.0 / u1) - b2 * (u2 + 1.0 / u2)) * alpha_sq
    lhs1 = b1 * (u1 - 1.0 / u1) * alpha_sq
    lhs2 = b2 * (u2 - 1.0 / u2) / alpha_sq
    r0 = abs(lhs0 - rhs0) / max(1.0, abs(lhs0), abs(rhs0))
    r1 = abs(lhs1 - cross_plus) / max(1.0, abs(lhs1), abs(cross_plus))
    r2 = abs(lhs2 - cross_plus) / max(1.0, abs(lhs2), abs(cross_plus))
    return r0, r1, r2


@dataclass(frozen=True)
class HessianCheck:
    """Closed-form Hessian data at a stationary point plus its FD shadow."""

    entries: dict
    minors: tuple
    fd_matrix: np.ndarray
    positive_definite: bool
    max_rel_err: float


def _rel_err(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-30)


def _fd_check(objective, point, closed_pairs, rel_step):
    """Finite-difference Hessian with an adaptive step ladder.

    Retries with larger/smaller relative steps when the base step loses to
    roundoff (tiny entries of nearly uncorrelated states); keeps the matrix
    that agrees best with the closed forms.
    """
    best_fd = None
    best_err = math.inf
    # later rungs enlarge the step and/or switch to an absolute step floor:
    # stationary points with O(1e-3) coordinates otherwise sink their
    # cross-terms into roundoff
    ladder = (
        (rel_step, None),
        (10.0 * rel_step, None),
        (10.0 * rel_step, 1.0),
        (rel_step, 1.0),
        (100.0 * rel_step, None),
        (0.316 * rel_step, None),
    )
    for step, floor in ladder:
        fd = finite_diff_hessian(objective, point, step, min_scale=floor)
        err = max(_rel_err(cv, ex(fd)) for cv, ex in closed_pairs)
        if err < best_err:
            best_err = err
            best_fd = fd
        if best_err <= 1e-6:
            break
    return best_fd, best_err


def hessian_e(p: StandardFormParams, tol: Tolerances = DEFAULT) -> HessianCheck:
    """Hessian of ln e_function at the minimum; compared against finite
    differences entry by entry."""
    em = e_m_closed(p, tol)
    sp = spectrum(p, tol)
    lam, mu = em.lambda_m, em.mu_m
    vq = p.b1 + p.b2 * lam * lam - 2.0 * p.c * lam
    vp = p.b1 + p.b2 * mu * mu + 2.0 * p.d * mu
    h11 = 2.0 * (p.b1 * p.b2 - p.c * p.c) / (vq * vq)
    h22 = 2.0 * (p.b1 * p.b2 - p.d * p.d) / (vp * vp)
    h12 = -2.0 / (1.0 + lam * mu) ** 2
    det_closed = (
        4.0
        * math.sqrt(sp.delta_pt)
        / (sp.kappa_minus_pt**2 * (1.0 + lam * mu) ** 4)
    )
    matrix = np.array([[h11, h12], [h12, h22]])
    fd, max_err = _fd_check(
        lambda x: math.log(e_function(p, x[0], x[1])),
        (lam, mu),
        [
            (h11, lambda m: m[0, 0]),
            (h22, lambda m: m[1, 1]),
            (h12, lambda m: m[0, 1]),
            (det_closed, lambda m: float(np.linalg.det(m))),
        ],
        tol.fd_rel_step,
    )
    try:
        np.linalg.cholesky(matrix)
        pd = True
    except np.linalg.LinAlgError:
        pd = False
    return HessianCheck(
        entries={"h11": h11, "h22": h22, "h12": h12},
        minors=(h11, det_closed),
        fd_matrix=fd,
        positive_definite=pd,
        max_rel_err=max_err,
    )


def hessian_f(p: StandardFormParams, tol: Tolerances = DEFAULT) -> HessianCheck:
    """Closed-form principal minors of the f_function Hessian at the minimum.

    Coordinate order (u1, u2, alpha^2).  The closed forms cover the leading
    entry, the leading 2x2 minor and the determinant; positive definiteness
    follows from those nested minors.  When the state is of the c = -d or
    the symmetric family the specialized printed forms are evaluated too.
    """
    fm = f_m_closed(p, tol)
    sp = spectrum(p, tol)
    b1, b2, c, d = p.b1, p.b2, p.c, p.d
    u1, u2, asq, gamma = fm.u1, fm.u2, fm.alpha_sq, fm.gamma
    sqrt_dpt = math.sqrt(sp.delta_pt)
    a_fac = b1 * c - b2 * d
    b_fac = b2 * c - b1 * d
    s_big = c * (b1 * b1 + b2 * b2) - 2.0 * b1 * b2 * d + c * sqrt_dpt
    norm = asq + 1.0 / asq

    h11 = (
        math.sqrt(gamma)
        / (2.0 * norm * u1 * u1 * u2)
        / (b1 * sqrt_dpt + b1 * (b1 * b1 - b2 * b2) - 2.0 * d * a_fac)
        * (
            (1.0 + 1.0 / (u1 * u1))
            * (b1 * (b1 * b2 - d * d) / (gamma * (b1 * b2 - c * c)))
            * s_big
            + 4.0 * (b1 * b2 - d * d) * a_fac
        )
    )
    a33 = (
        1.0
        / (norm * norm * u1 * u2)
        * (
            b1 * b2 * (1.0 / u2 - 1.0 / u1) ** 2
            + 4.0 * (b1 * b2 - c * c) * a_fac * b_fac / s_big
            / (c - d)
            * (1.0 + 1.0 / (u1 * u2))
        )
    )
    det_closed = (
        4.0
        / (asq * asq * norm**3 * (u1 * u2) ** 1.5)
        * (4.0 * (b1 * b2 - c * c) * a_fac * b_fac / s_big)
    )
    entries = {"h11": h11, "a33": a33, "det": det_closed}

    if c + d == 0.0:  # squeezed-thermal family
        delta_s = (b1 - b2) ** 2 + 4.0 * c * c
        rd = math.sqrt(delta_s)
        entries["h11_sts"] = (b1 * rd - (b1 * (b1 - b2) + c * c)) / rd
        entries["a33_sts"] = c * c / delta_s * (b1 + b2) * ((b1 + b2) - rd)
        entries["det_sts"] = (
            delta_s**-1.5 * c * c * (b1 + b2) * (rd + (b1 - b2)) ** 2 * ((b1 + b2) - rd)
        )
    if b1 == b2:  # symmetric family
        ratio = (b1 - c) / (b1 + d)
        # leading entry carries the 1/4 required for consistency with the
        # general expression above (and with finite differences)
        entries["h11_sym"] = (
            0.25
            * math.sqrt(ratio)
            / (b1 + d)
            * (b1 * ((b1 - c) + (b1 + d)) + 2.0 * (b1 - c) * (b1 + d))
        )
        entries["a33_sym"] = 0.5 * ratio * ratio * b1 * ((b1 - c) + (b1 + d))
        entries["det_sym"] = ratio**1.5 * b1 * (b1 - c) * (c - d)

    # the formula extends smoothly below u = 1, where the c = -d stationary
    # point sits on the domain edge; differentiate the raw expression
    fd, max_err = _fd_check(
        lambda x: _f_value(p, x[2], x[0], x[1]),
        (u1, u2, asq),
        [
            (h11, lambda m: m[0, 0]),
            (a33, lambda m: float(np.linalg.det(m[:2, :2]))),
            (det_closed, lambda m: float(np.linalg.det(m))),
        ],
        tol.fd_rel_step,
    )
    pd = h11 > 0.0 and a33 > 0.0 and det_closed > 0.0
    return HessianCheck(
        entries=entries,
        minors=(h11, a33, det_closed),
        fd_matrix=fd,
        positive_definite=pd,
        max_rel_err=max_err,
    )


def hessian_g(p: StandardFormParams, tol: Tolerances = DEFAULT) -> HessianCheck:
    """Closed-form Hessian of g_function at the minimum (order u1, xi, eta)."""
    gm = g_m_closed(p, tol)
    if not gm.attained:
        raise DegenerateBranch("no interior stationary point: infimum at infinite squeeze")
    b1, b2, c, d = p.b1, p.b2, p.c, p.d
    q = b2 * b2 - 0.25
    mc, md = _g_minor_pair(p)
    u1 = gm.u1
    h11 = (
        1.0
        / (q * u1**3)
        * (
            md
            + 0.5 * mc * (u1 * u1 + 1.0)
            + 0.5 * b2 * c * c * (u1 - 1.0) ** 2
            + 0.5 * c * (2.0 * b2 * c + d) * u1
        )
    )
    h12 = -c / math.sqrt(u1)
    h13 = -d * u1**-1.5
    h22 = 2.0 * b2
    h33 = 2.0 * b2
    h23 = -1.0
    det_closed = (
        2.0 / u1**3 * (2.0 * md + mc * (u1 * u1 + 1.0) + b2 * (c * c - d * d))
    )
    a11 = 4.0 * q
    matrix = np.array([[h11, h12, h13], [h12, h22, h23], [h13, h23, h33]])
    fd, max_err = _fd_check(
        lambda x: g_function(p, x[1], x[2], x[0]),
        (u1, gm.xi, gm.eta),
        [
            (h11, lambda m: m[0, 0]),
            (h12, lambda m: m[0, 1]),
            (h13, lambda m: m[0, 2]),
            (h22, lambda m: m[1, 1]),
            (h23, lambda m: m[1, 2]),
            (h33, lambda m: m[2, 2]),
            (det_closed, lambda m: float(np.linalg.det(m))),
        ],
        tol.fd_rel_step,
    )
    try:
        np.linalg.cholesky(matrix)
        pd = True
    except np.linalg.LinAlgError:
        pd = False
    return HessianCheck(
        entries={
            "h11": h11,
            "h22": h22,
            "h33": h33,
            "h12": h12,
            "h13": h13,
            "h23": h23,
        },
        minors=(h33, a11, det_closed),
        fd_matrix=fd,
        positive_definite=pd,
        max_rel_err=max_err,
    )


@dataclass(frozen=True)
class IndicatorReport:
    """All indicator values for one state, with the analysis branch taken.

    For branch "d_negative" the stationary points are present and the
    values are attained minima.  For "d_nonnegative" the product/sum values
    are the same closed forms (still at or above their thresholds) without
    a minimality claim, and the regularized sum is undefined.  Branch
    "degenerate" is the uncorrelated family c = d = 0 whose infima are
    approached but not attained.
    """

    e_m: float
    f_m: float
    g_m: float | None
    e_stationary: tuple | None
    f_stationary: tuple | None
    g_stationary: tuple | None
    gamma: float | None
    attained: bool
    verdict: str
    boundary: bool
    branch: str


def indicator_report(p: StandardFormParams, tol: Tolerances = DEFAULT) -> IndicatorReport:
    cls = classify(p, tol)
    if p.d < 0.0 and p.c > 0.0:
        em = e_m_closed(p, tol)
        fm = f_m_closed(p, tol)
        gm = g_m_closed(p, tol)
        return IndicatorReport(
            e_m=em.value,
            f_m=fm.value,
            g_m=gm.value,
            e_stationary=(em.lambda_m, em.mu_m),
            f_stationary=(fm.alpha_sq, fm.u1, fm.u2),
            g_stationary=(gm.xi, gm.eta, gm.u1) if gm.attained else None,
            gamma=fm.gamma,
            attained=True,
            verdict=cls.verdict.value,
            boundary=cls.boundary,
            branch="d_negative",
        )
    sp = spectrum(p, tol)
    branch = "degenerate" if p.c <= 0.0 else "d_nonnegative"
    return IndicatorReport(
        e_m=sp.kappa_minus_pt**2,
        f_m=2.0 * sp.kappa_minus_pt,
        g_m=None,
        e_stationary=None,
        f_stationary=None,
        g_stationary=None,
        gamma=None,
        attained=False,
        verdict=cls.verdict.value,
        boundary=cls.boundary,
        branch=branch,
    )
