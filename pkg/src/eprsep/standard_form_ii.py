"""Standard form II: the scaling that makes classicality equal separability.

For every physical parameter set {b1, b2, c, d} there exist squeeze factors
(u1~, u2~) in [1, 2 b1] x [1, 2 b2] solving the coupled system

    (b1/u1 - 1/2)/(b1 u1 - 1/2) = (b2/u2 - 1/2)/(b2 u2 - 1/2),        (eq. I)
    b1 b2 (u1^2 - 1)(u2^2 - 1) = (c u1 u2 - |d|)^2.                   (eq. II)

At that scaling the optimized regularized-sum indicator

    f~ = 4 [ sqrt((b1 u1 - 1/2)(b2 u2 - 1/2)) - c sqrt(u1 u2) ]

is non-negative exactly when the scaled covariance matrix is classical,
which in turn happens exactly when the state is separable; the sign of f~
always agrees with the PPT invariant.  Equation I defines a strictly
increasing bijection u2 = h(u1) between the two classicality intervals, so
the system reduces to a guaranteed-bracket root find of
phi(u1) = Phi(u1, h(u1)) on [1, 2 b1].

Closed-form solutions exist for the c = |d| families (u = 1), for symmetric
states, and at the f~ = 0 boundary; the general case is solved by bisection
with a secant polish.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateBranch, InvalidInput, NumericalFailure
from .symplectic import (
    ScalingFactors,
    StandardFormParams,
    build_scaled_standard_cm,
    spectrum,
)
from .tolerances import DEFAULT, Tolerances

__all__ = [
    "StandardFormIISolution",
    "k_function",
    "f_uu",
    "h_map",
    "phi",
    "phi_upper_endpoint",
    "boundary_scaling",
    "solve_standard_form_ii",
    "classicality_check",
    "z_forms",
    "ppt_equivalence_residual",
]


def k_function(p: StandardFormParams, alpha_sq: float, u: ScalingFactors) -> float:
    """Regularized sum of the one-parameter pair variances.

    Uses the sign of the momentum combination that minimizes the variance,
    i.e. the cross term enters as -2|d|/sqrt(u1 u2); non-negative for every
    argument iff the state is separable.
    """
    t = alpha_sq
    s = math.sqrt(u.u1 * u.u2)
    return (
        t * (p.b1 * (u.u1 + 1.0 / u.u1) - 1.0)
        + (p.b2 * (u.u2 + 1.0 / u.u2) - 1.0) / t
        - 2.0 * (p.c * s + abs(p.d) / s)
    )


def f_uu(p: StandardFormParams, u: ScalingFactors) -> tuple[float, float]:
    """k_function minimized over alpha^2 at fixed scaling.

    Returns (value, minimizing alpha^2).  The bracket terms
    b_j (u_j + 1/u_j) - 1 >= 2 b_j - 1 are non-negative for physical
    states.  If both vanish (vacuum), the sum is flat in alpha^2 and the
    minimizer is reported as 1; if exactly one vanishes the infimum is not
    attained at an interior point.
    """
    a = p.b1 * (u.u1 + 1.0 / u.u1) - 1.0
    b = p.b2 * (u.u2 + 1.0 / u.u2) - 1.0
    s = math.sqrt(u.u1 * u.u2)
    if a <= 0.0 and b <= 0.0:
        return -2.0 * (p.c * s + abs(p.d) / s), 1.0
    if a <= 0.0 or b <= 0.0:
        raise DegenerateBranch("vacuum-saturated mode: no interior minimum over alpha^2")
    value = 2.0 * math.sqrt(a * b) - 2.0 * (p.c * s + abs(p.d) / s)
    return value, math.sqrt(b / a)


def _h_raw(p: StandardFormParams, u1):
    b1, b2 = p.b1, p.b2
    u1 = np.asarray(u1, dtype=float)
    delta1 = b1 * b1 * (u1 * u1 - 1.0) ** 2 + 4.0 * b2 * b2 * u1 * (2.0 * b1 - u1) * (
        2.0 * b1 * u1 - 1.0
    )
    num = 2.0 * b2 * u1 * (2.0 * b1 * u1 - 1.0)
    den = b1 * (u1 * u1 - 1.0) + np.sqrt(np.maximum(delta1, 0.0))
    # den = 0 only when b1 = 1/2 and u1 = 1, where the range degenerates
    return np.divide(num, den, out=np.ones_like(den), where=den > 0.0)


def h_map(p: StandardFormParams, u1: float) -> float:
    """The bijection [1, 2 b1] -> [1, 2 b2] defined by equation I.

    Strictly increasing with h(1) = 1 and h(2 b1) = 2 b2.
    """
    if u1 < 1.0 - 1e-9 or u1 > 2.0 * p.b1 + 1e-9:
        raise InvalidInput(f"u1 = {u1} outside the classicality range [1, {2.0 * p.b1}]")
    return float(_h_raw(p, min(max(u1, 1.0), 2.0 * p.b1)))


def _big_phi(p: StandardFormParams, u1, u2):
    cross = p.c * u1 * u2 - abs(p.d)
    return p.b1 * p.b2 * (u1 * u1 - 1.0) * (u2 * u2 - 1.0) - cross * cross


def phi(p: StandardFormParams, u1):
    """Residual of equation II along the equation-I curve: Phi(u1, h(u1)).

    Accepts scalars or arrays.  phi(1) = -(c - |d|)^2 <= 0 and
    phi(2 b1) >= 0 for every physical state, so a zero always exists.
    """
    value = _big_phi(p, u1, _h_raw(p, u1))
    if np.isscalar(u1) or np.ndim(u1) == 0:
        return float(value)
    return value


def phi_upper_endpoint(p: StandardFormParams, tol: Tolerances = DEFAULT) -> float:
    """Closed form of phi at u1 = 2 b1, non-negative for physical states."""
    sp = spectrum(p, tol)
    b1, b2, c, d = p.b1, p.b2, p.c, p.d
    return 16.0 * b1 * b2 * (
        sp.d_inv + d * d * (b1 * b2 - c * c - 0.25) + 0.5 * c * (abs(d) + d)
    ) + 4.0 * d * d * (b1 * b2 - 0.25)


def boundary_scaling(p: StandardFormParams) -> tuple[float, float]:
    """Closed-form scaling factors valid exactly on the f~ = 0 boundary,
    i.e. at the physicality edge for d >= 0 or the separability threshold
    for d < 0."""
    b1, b2, c = p.b1, p.b2, p.c
    ad = abs(p.d)
    num = 2.0 * (c * (b1 * b2 - ad * ad) + 0.25 * ad)
    return num / (b1 * ad + b2 * c), num / (b1 * c + b2 * ad)


@dataclass(frozen=True)
class StandardFormIISolution:
    """Solved scaling with the indicator values and root diagnostics.

    f_tilde_prime/f_tilde_double_prime are the companion sums with the
    correlation terms added instead of subtracted; residual_eq1/eq3 are the
    normalized residuals of the defining equations at the solution, and
    brackets lists every sign change seen on the diagnostic scan.
    """

    u1_tilde: float
    u2_tilde: float
    f_tilde: float
    f_tilde_prime: float
    f_tilde_double_prime: float
    alpha_tilde_m_sq: float
    root_iterations: int
    residual_eq1: float
    residual_eq3: float
    brackets: tuple
    method: str


def _eq1_residual(p: StandardFormParams, u1: float, u2: float) -> float:
    # cross-multiplied form, safe at the vacuum where both fractions are 0/0
    lhs = (p.b1 / u1 - 0.5) * (p.b2 * u2 - 0.5)
    rhs = (p.b2 / u2 - 0.5) * (p.b1 * u1 - 0.5)
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def _eq3_residual(p: StandardFormParams, u1: float, u2: float) -> float:
    lhs = p.b1 * p.b2 * (u1 * u1 - 1.0) * (u2 * u2 - 1.0)
    cross = p.c * u1 * u2 - abs(p.d)
    return abs(lhs - cross * cross) / max(1.0, abs(lhs), cross * cross)


def _solution_from_scaling(
    p: StandardFormParams, u1: float, u2: float, iterations: int, brackets, method: str
) -> StandardFormIISolution:
    b1, b2, c = p.b1, p.b2, p.c
    ad = abs(p.d)
    s = math.sqrt(u1 * u2)
    big = math.sqrt(max((b1 * u1 - 0.5) * (b2 * u2 - 0.5), 0.0))
    small = math.sqrt(max((b1 / u1 - 0.5) * (b2 / u2 - 0.5), 0.0))
    a_term = b1 * (u1 + 1.0 / u1) - 1.0
    b_term = b2 * (u2 + 1.0 / u2) - 1.0
    alpha_sq = math.sqrt(b_term / a_term) if a_term > 0.0 and b_term > 0.0 else 1.0
    return StandardFormIISolution(
        u1_tilde=u1,
        u2_tilde=u2,
        f_tilde=4.0 * (big - c * s),
        f_tilde_prime=4.0 * (big + c * s),
        f_tilde_double_prime=4.0 * (small + ad / s),
        alpha_tilde_m_sq=alpha_sq,
        root_iterations=iterations,
        residual_eq1=_eq1_residual(p, u1, u2),
        residual_eq3=_eq3_residual(p, u1, u2),
        brackets=tuple(brackets),
        method=method,
    )


def solve_standard_form_ii(p: StandardFormParams, tol: Tolerances = DEFAULT) -> StandardFormIISolution:
    """Find the standard-form-II scaling factors for a parameter set.

    Family closed forms are used when exact (c = |d|: both factors 1;
    symmetric states: sqrt((b - |d|)/(b - c))); every other state goes
    through a scan-bracketed bisection of phi on [1, 2 b1] followed by a
    secant polish, returning the smallest root.  All sign-change brackets
    seen by the scan are kept as diagnostics.
    """
    b1 = p.b1
    ad = abs(p.d)
    if p.c == ad:
        return _solution_from_scaling(p, 1.0, 1.0, 0, (), "family_c_eq_absd")
    if p.b1 == p.b2:
        u = math.sqrt((p.b1 - ad) / (p.b1 - p.c))
        return _solution_from_scaling(p, u, h_map(p, u), 0, (), "family_symmetric")

    hi = 2.0 * b1
    phi_lo = phi(p, 1.0)
    phi_hi = phi(p, hi)
    if phi_hi < -tol.fail_negative:
        raise NumericalFailure(
            f"phi(2 b1) = {phi_hi:.3e} < 0 contradicts physicality of {p}"
        )
    if phi_lo > tol.fail_negative:
        raise NumericalFailure(f"phi(1) = {phi_lo:.3e} > 0 contradicts the c >= |d| convention")

    xs = np.linspace(1.0, hi, tol.bracket_scan)
    fs = phi(p, xs)
    neg = fs <= 0.0
    flips = np.nonzero(neg[:-1] != neg[1:])[0]
    brackets = [(float(xs[i]), float(xs[i + 1])) for i in flips]

    if not brackets:
        if abs(phi_hi) <= tol.fail_negative:
            return _solution_from_scaling(p, hi, h_map(p, hi), 0, (), "endpoint")
        raise NumericalFailure(f"no sign change of phi found for {p}")

    a, b = brackets[0]
    fa = phi(p, a)
    fb = phi(p, b)
    iterations = 0
    while b - a > tol.root_xtol and iterations < tol.root_max_iter:
        mid = 0.5 * (a + b)
        fm = phi(p, mid)
        iterations += 1
        if (fm <= 0.0) == (fa <= 0.0):
            a, fa = mid, fm
        else:
            b, fb = mid, fm
    root, froot = (a, fa) if abs(fa) <= abs(fb) else (b, fb)
    # secant polish toward machine-precision |phi|
    x0, f0, x1, f1 = a, fa, b, fb
    for _ in range(8):
        if f1 == f0:
            break
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        if not (1.0 <= x2 <= hi):
            break
        f2 = phi(p, x2)
        iterations += 1
        if abs(f2) < abs(froot):
            root, froot = x2, f2
        x0, f0, x1, f1 = x1, f1, x2, f2
        if f2 == 0.0:
            break
    return _solution_from_scaling(p, root, h_map(p, root), iterations, brackets, "bisection")


def classicality_check(
    p: StandardFormParams, sol: StandardFormIISolution, tol: Tolerances = DEFAULT
) -> bool:
    """Direct eigenvalue test of V(u1~, u2~) - (1/2) I >= 0.

    The result must agree with the sign of f_tilde (within a small boundary
    band); a hard disagreement is an internal-consistency failure.
    """
    cm = build_scaled_standard_cm(p, ScalingFactors(sol.u1_tilde, sol.u2_tilde))
    min_eig = float(np.linalg.eigvalsh(cm - 0.5 * np.eye(4))[0])
    slack = tol.identity_rel
    classical = min_eig >= -slack
    by_indicator = sol.f_tilde >= -slack
    if classical != by_indicator and abs(min_eig) > slack and abs(sol.f_tilde) > slack:
        raise NumericalFailure(
            f"classicality test (min eig {min_eig:.3e}) disagrees with "
            f"f~ = {sol.f_tilde:.3e}"
        )
    return classical


def z_forms(p: StandardFormParams, u1: float, u2: float, tol: Tolerances = DEFAULT) -> tuple[float, float]:
    """The mode-symmetric product combination Z in its two printed forms.

    Returns (direct expression, invariant form), where the invariant form is
    H(d) D + H(-d) D_pt + Phi(u1, u2)/(4 u1 u2).  The two agree identically.
    """
    b1, b2, c, d = p.b1, p.b2, p.c, p.d
    direct = 0.5 * (
        ((b1 * u1 - 0.5) * (b2 * u2 - 0.5) - c * c * u1 * u2)
        * ((b1 / u1 + 0.5) * (b2 / u2 + 0.5) - d * d / (u1 * u2))
        + ((b1 * u1 + 0.5) * (b2 * u2 + 0.5) - c * c * u1 * u2)
        * ((b1 / u1 - 0.5) * (b2 / u2 - 0.5) - d * d / (u1 * u2))
    )
    reduced = _invariant_mix(p, tol) + _big_phi(p, u1, u2) / (4.0 * u1 * u2)
    return direct, reduced


def _invariant_mix(p: StandardFormParams, tol: Tolerances) -> float:
    """H(d) D + H(-d) D_pt with the half-weight convention at d = 0."""
    sp = spectrum(p, tol)
    if p.d > 0.0:
        return sp.d_inv
    if p.d < 0.0:
        return sp.d_pt
    return 0.5 * (sp.d_inv + sp.d_pt)


def ppt_equivalence_residual(
    p: StandardFormParams, sol: StandardFormIISolution, tol: Tolerances = DEFAULT
) -> float:
    """|LHS - RHS| of the identity tying f~ to the PPT/physicality invariants.

    LHS is H(d) D + H(-d) D_pt; RHS is (f~/32) {f~' [(b1/u1 + 1/2)(b2/u2 + 1/2)
    - d^2/(u1 u2)] + f~'' [(b1 u1 + 1/2)(b2 u2 + 1/2) - c^2 u1 u2]} at the
    solved scaling.  The identity makes the sign agreement between f~ and
    the PPT invariant manifest.  The two printed forms of Z are also checked
    here and a disagreement raises NumericalFailure.
    """
    u1, u2 = sol.u1_tilde, sol.u2_tilde
    b1, b2, c, d = p.b1, p.b2, p.c, p.d
    lhs = _invariant_mix(p, tol)
    rhs = (sol.f_tilde / 32.0) * (
        sol.f_tilde_prime * ((b1 / u1 + 0.5) * (b2 / u2 + 0.5) - d * d / (u1 * u2))
        + sol.f_tilde_double_prime * ((b1 * u1 + 0.5) * (b2 * u2 + 0.5) - c * c * u1 * u2)
    )
    z_direct, z_reduced = z_forms(p, u1, u2, tol)
    scale = max(1.0, abs(z_direct))
    if abs(z_direct - z_reduced) > 1e3 * tol.identity_rel * scale:
        raise NumericalFailure(
            f"the two forms of Z disagree: {z_direct!r} vs {z_reduced!r}"
        )
    return abs(lhs - rhs)
