"""Covariance matrices of two-mode Gaussian states and their invariants.

All quantities are dimensionless with the vacuum quadrature variance equal
to 1/2, and the row/column order of a covariance matrix is fixed to
(q1, p1, q2, p2).  A state is described by a real symmetric positive
definite 4x4 matrix V obeying the uncertainty relation V + (i/2)J >= 0,
where J is the symplectic form.

Up to local symplectic transformations every such matrix is equivalent to a
standard form parametrized by the quadruple {b1, b2, c, d} with
b1 >= b2 >= 1/2 and c >= |d|; this module extracts those parameters, builds
(scaled) standard-form matrices, and computes the symplectic spectra of the
matrix and of its partial transpose.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, NumericalFailure
from .tolerances import DEFAULT, Tolerances

__all__ = [
    "J",
    "StandardFormParams",
    "ScalingFactors",
    "SymplecticSpectrum",
    "PhysicalityReport",
    "vacuum_cm",
    "tmsv_cm",
    "validate",
    "symplectic_eigenvalues",
    "extract_standard_params",
    "partial_transpose_params",
    "partial_transpose_cm",
    "spectrum",
    "build_scaled_standard_cm",
    "apply_local_symplectic",
]

_J1 = np.array([[0.0, 1.0], [-1.0, 0.0]])

#: Standard matrix of the symplectic form on R^4, block-diagonal J1 (+) J2.
J = np.block([[_J1, np.zeros((2, 2))], [np.zeros((2, 2)), _J1]])
J.setflags(write=False)


@dataclass(frozen=True)
class StandardFormParams:
    """Local-invariant quadruple {b1, b2, c, d} of a two-mode Gaussian state.

    Conventions: b1 >= b2 > 0 and c >= |d|.  The sign of d is physical
    (d < 0 is the only branch that can be entangled); c is non-negative.
    """

    b1: float
    b2: float
    c: float
    d: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.b1, self.b2, self.c, self.d)


def partial_transpose_params(p: StandardFormParams) -> StandardFormParams:
    """Parameters of the partially transposed state: d changes sign."""
    return StandardFormParams(p.b1, p.b2, p.c, -p.d)


@dataclass(frozen=True)
class ScalingFactors:
    """Local squeeze factors u_j = exp(2 r_j) >= 1."""

    u1: float = 1.0
    u2: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.u1) and np.isfinite(self.u2)):
            raise InvalidInput("scaling factors must be finite")
        if self.u1 < 1.0 - 1e-12 or self.u2 < 1.0 - 1e-12:
            raise InvalidInput(
                f"scaling factors must be >= 1, got ({self.u1}, {self.u2})"
            )


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Scalar invariants of a state and of its partial transpose.

    d_inv and d_pt are the determinants of V + (i/2)J before and after
    partial transposition; d_pt >= 0 is the separability criterion.
    delta and delta_pt are the discriminants entering the symplectic
    eigenvalue formulas.
    """

    kappa_plus: float
    kappa_minus: float
    kappa_plus_pt: float
    kappa_minus_pt: float
    det_v: float
    d_inv: float
    d_pt: float
    delta: float
    delta_pt: float


@dataclass(frozen=True)
class PhysicalityReport:
    symmetric: bool
    positive_definite: bool
    rs_satisfied: bool
    kappa_minus: float

    @property
    def ok(self) -> bool:
        return self.symmetric and self.positive_definite and self.rs_satisfied


def vacuum_cm() -> np.ndarray:
    """Covariance matrix of the two-mode vacuum, (1/2) I4."""
    return 0.5 * np.eye(4)


def tmsv_cm(r: float) -> np.ndarray:
    """Two-mode squeezed vacuum with squeeze parameter r.

    Standard-form parameters are b1 = b2 = cosh(2r)/2 and
    c = -d = sinh(2r)/2.
    """
    b = 0.5 * np.cosh(2.0 * r)
    c = 0.5 * np.sinh(2.0 * r)
    return build_scaled_standard_cm(StandardFormParams(b, b, c, -c))


def _check_cm(cm: np.ndarray, tol: Tolerances) -> float:
    cm = np.asarray(cm, dtype=float)
    if cm.shape != (4, 4):
        raise InvalidInput(f"covariance matrix must be 4x4, got {cm.shape}")
    if not np.all(np.isfinite(cm)):
        raise InvalidInput("covariance matrix has non-finite entries")
    asym = float(np.max(np.abs(cm - cm.T)))
    if asym > tol.symmetry_hard:
        raise InvalidInput(f"covariance matrix asymmetry {asym:.3e} too large")
    return asym


def symplectic_eigenvalues(cm: np.ndarray, tol: Tolerances = DEFAULT) -> tuple[float, float]:
    """Moduli (kappa_plus, kappa_minus) of the eigenvalue pairs of J V.

    For a valid covariance matrix the eigenvalues of J V are two purely
    imaginary conjugate pairs; the two distinct moduli are returned in
    descending order.  Each modulus is averaged over its pair to damp
    solver noise.
    """
    _check_cm(cm, tol)
    try:
        evals = np.linalg.eigvals(J @ np.asarray(cm, dtype=float))
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigen-solver failed: {exc}") from exc
    moduli = np.sort(np.abs(evals))[::-1]
    return float(0.5 * (moduli[0] + moduli[1])), float(0.5 * (moduli[2] + moduli[3]))


def validate(cm: np.ndarray, eps_phys: float | None = None, tol: Tolerances = DEFAULT) -> PhysicalityReport:
    """Check symmetry, positivity and the uncertainty relation.

    The uncertainty relation is evaluated through the smallest symplectic
    eigenvalue: kappa_minus >= 1/2 - eps_phys.  Raises InvalidInput for
    non-finite entries or asymmetry beyond tolerance.
    """
    if eps_phys is None:
        eps_phys = tol.eps_phys
    asym = _check_cm(cm, tol)
    sym_cm = 0.5 * (np.asarray(cm, dtype=float) + np.asarray(cm, dtype=float).T)
    try:
        eigs = np.linalg.eigvalsh(sym_cm)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigen-solver failed: {exc}") from exc
    _, kappa_minus = symplectic_eigenvalues(sym_cm, tol)
    return PhysicalityReport(
        symmetric=asym <= tol.symmetry_flag,
        positive_definite=bool(eigs[0] > 0.0),
        rs_satisfied=kappa_minus >= 0.5 - eps_phys,
        kappa_minus=kappa_minus,
    )


def extract_standard_params(cm: np.ndarray, tol: Tolerances = DEFAULT) -> StandardFormParams:
    """Recover {b1, b2, c, d} from an arbitrary physical covariance matrix.

    b_j is the square root of the determinant of the reduced single-mode
    block (modes relabeled so that b1 >= b2).  c and d follow from the two
    remaining local invariants det C = c d and det V: writing
    s = c^2 + d^2 = [(b1 b2)^2 + (det C)^2 - det V]/(b1 b2), the squares
    c^2 >= d^2 are the roots of t^2 - s t + (det C)^2 = 0 and d carries the
    sign of det C.

    Raises InvalidInput for an unphysical matrix and NumericalFailure when
    the root discriminant is negative beyond tolerance.
    """
    report = validate(cm, tol=tol)
    if not report.ok:
        raise InvalidInput(f"unphysical covariance matrix: {report}")
    cm = np.asarray(cm, dtype=float)
    v1 = cm[0:2, 0:2]
    v2 = cm[2:4, 2:4]
    cc = cm[0:2, 2:4]
    det1 = float(np.linalg.det(v1))
    det2 = float(np.linalg.det(v2))
    if det1 <= 0.0 or det2 <= 0.0:
        raise InvalidInput("reduced single-mode blocks must have positive determinant")
    b1 = np.sqrt(det1)
    b2 = np.sqrt(det2)
    if b1 < b2:
        b1, b2 = b2, b1
    det_c = float(np.linalg.det(cc))
    det_v = float(np.linalg.det(cm))

    s = ((b1 * b2) ** 2 + det_c**2 - det_v) / (b1 * b2)
    disc = s * s - 4.0 * det_c**2
    scale = max(1.0, s * s)
    if disc < -tol.fail_negative * scale:
        raise NumericalFailure(f"negative discriminant {disc:.3e} in parameter extraction")
    disc = max(disc, 0.0)
    root_disc = np.sqrt(disc)
    if root_disc <= tol.degenerate_roots:
        # coincident roots: continuous limit of the c = |d| families
        half = max(s, 0.0) / 2.0
        c = np.sqrt(half)
        d = np.sign(det_c) * c if det_c != 0.0 else c * 0.0
    else:
        big = 0.5 * (s + root_disc)
        small = det_c**2 / big if big > 0.0 else 0.0
        c = np.sqrt(max(big, 0.0))
        d = np.sign(det_c) * np.sqrt(small)
    return StandardFormParams(float(b1), float(b2), float(c), float(d))


def _clamped_discriminant(value: float, scale: float, tol: Tolerances, label: str) -> float:
    if value < -tol.fail_negative * max(1.0, scale):
        raise NumericalFailure(f"{label} = {value:.3e} below tolerance")
    return max(value, 0.0)


def spectrum(p: StandardFormParams, tol: Tolerances = DEFAULT) -> SymplecticSpectrum:
    """All scalar invariants computed from the standard-form parameters.

    Uses the factored discriminants
    Delta = (b1^2-b2^2)^2 + 4 (b1 c + b2 d)(b2 c + b1 d) and its partial
    transpose counterpart (c -> c, d -> -d), and the cancellation-free form
    kappa_minus^2 = 2 det V / (tr + sqrt(Delta)).
    """
    b1, b2, c, d = p.b1, p.b2, p.c, p.d
    det_v = (b1 * b2 - c * c) * (b1 * b2 - d * d)
    t = b1 * b1 + b2 * b2 + 2.0 * c * d
    t_pt = b1 * b1 + b2 * b2 - 2.0 * c * d
    diff_sq = (b1 * b1 - b2 * b2) ** 2
    delta = diff_sq + 4.0 * (b1 * c + b2 * d) * (b2 * c + b1 * d)
    delta_pt = diff_sq + 4.0 * (b1 * c - b2 * d) * (b2 * c - b1 * d)
    delta = _clamped_discriminant(delta, t * t, tol, "Delta")
    delta_pt = _clamped_discriminant(delta_pt, t_pt * t_pt, tol, "Delta^PT")

    sqrt_delta = np.sqrt(delta)
    sqrt_delta_pt = np.sqrt(delta_pt)
    kp_sq = 0.5 * (t + sqrt_delta)
    kp_pt_sq = 0.5 * (t_pt + sqrt_delta_pt)
    km_sq = 2.0 * det_v / (t + sqrt_delta) if det_v > 0.0 else 0.5 * (t - sqrt_delta)
    km_pt_sq = 2.0 * det_v / (t_pt + sqrt_delta_pt) if det_v > 0.0 else 0.5 * (t_pt - sqrt_delta_pt)

    d_inv = det_v - 0.25 * t + 0.0625
    d_pt = det_v - 0.25 * t_pt + 0.0625
    return SymplecticSpectrum(
        kappa_plus=float(np.sqrt(max(kp_sq, 0.0))),
        kappa_minus=float(np.sqrt(max(km_sq, 0.0))),
        kappa_plus_pt=float(np.sqrt(max(kp_pt_sq, 0.0))),
        kappa_minus_pt=float(np.sqrt(max(km_pt_sq, 0.0))),
        det_v=float(det_v),
        d_inv=float(d_inv),
        d_pt=float(d_pt),
        delta=float(delta),
        delta_pt=float(delta_pt),
    )


def build_scaled_standard_cm(p: StandardFormParams, u: ScalingFactors = ScalingFactors()) -> np.ndarray:
    """Scaled standard-form matrix: diagonal blocks diag(b_j u_j, b_j/u_j),
    cross block diag(c sqrt(u1 u2), d / sqrt(u1 u2))."""
    u1, u2 = u.u1, u.u2
    root = np.sqrt(u1 * u2)
    cm = np.zeros((4, 4))
    cm[0, 0] = p.b1 * u1
    cm[1, 1] = p.b1 / u1
    cm[2, 2] = p.b2 * u2
    cm[3, 3] = p.b2 / u2
    cm[0, 2] = cm[2, 0] = p.c * root
    cm[1, 3] = cm[3, 1] = p.d / root
    return cm


def apply_local_symplectic(
    cm: np.ndarray, s1: np.ndarray, s2: np.ndarray, tol: Tolerances = DEFAULT
) -> np.ndarray:
    """Congruence transform (s1 (+) s2) V (s1 (+) s2)^T.

    Each factor must be a 2x2 matrix of unit determinant (a single-mode
    symplectic transformation); the symplectic spectrum is preserved.
    """
    _check_cm(cm, tol)
    s1 = np.asarray(s1, dtype=float)
    s2 = np.asarray(s2, dtype=float)
    for name, s in (("s1", s1), ("s2", s2)):
        if s.shape != (2, 2):
            raise InvalidInput(f"{name} must be 2x2")
        if abs(np.linalg.det(s) - 1.0) > tol.local_det_tol:
            raise InvalidInput(f"{name} is not symplectic: det = {np.linalg.det(s)!r}")
    full = np.zeros((4, 4))
    full[0:2, 0:2] = s1
    full[2:4, 2:4] = s2
    return full @ np.asarray(cm, dtype=float) @ full.T


def partial_transpose_cm(cm: np.ndarray) -> np.ndarray:
    """Matrix-level partial transposition: mirror p2 -> -p2."""
    lam = np.diag([1.0, 1.0, 1.0, -1.0])
    return lam @ np.asarray(cm, dtype=float) @ lam
