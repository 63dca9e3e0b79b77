"""Single record of the numerical tolerances used across the package."""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    """Numerical slack values; defaults are what the test suite pins.

    eps_phys:
        Slack on the uncertainty-principle bound kappa_minus >= 1/2, so
        states sitting exactly on the physicality edge still validate.
    symmetry_flag / symmetry_hard:
        A covariance matrix is reported symmetric below ``symmetry_flag``
        absolute asymmetry; beyond ``symmetry_hard`` it is rejected.
    clamp_negative:
        Discriminants and other provably non-negative quantities are clamped
        to zero when they land in (-clamp_negative, 0) through roundoff.
    fail_negative:
        Below -fail_negative (scaled) the same quantities raise
        NumericalFailure instead.
    closed_vs_oracle_rel:
        Agreement required between a closed-form minimum and the brute-force
        minimizer.
    identity_rel:
        Residual allowed in the algebraic identities between invariants.
    boundary_dpt / boundary_ftilde:
        Bands around zero inside which the PPT invariant / the optimized
        Duan indicator are reported as boundary cases.
    root_xtol / root_max_iter / bracket_scan:
        Bisection controls for the standard-form-II solver.
    fd_rel_step:
        Relative step of the central finite differences.
    local_det_tol:
        Allowed |det S - 1| for a single-mode symplectic factor.
    degenerate_roots:
        Width below which the two roots of the correlation-extraction
        quadratic are treated as coincident.
    """

    eps_phys: float = 1e-9
    symmetry_flag: float = 1e-12
    symmetry_hard: float = 1e-9
    clamp_negative: float = 1e-9
    fail_negative: float = 1e-9
    closed_vs_oracle_rel: float = 1e-6
    identity_rel: float = 1e-9
    boundary_dpt: float = 1e-12
    boundary_ftilde: float = 1e-10
    root_xtol: float = 1e-12
    root_max_iter: int = 200
    bracket_scan: int = 2048
    fd_rel_step: float = 1e-4
    local_det_tol: float = 1e-10
    degenerate_roots: float = 1e-10

    def with_(self, **kwargs) -> "Tolerances":
        return replace(self, **kwargs)


DEFAULT = Tolerances()
