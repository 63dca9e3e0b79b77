"""Brute-force verification engine for the closed-form indicator minima.

Minimization is a two-stage procedure: a dense grid scan over a box
followed by a downhill-simplex refinement started from the best grid cell.
It is deterministic, derivative-free and entirely independent of the
closed-form stationary points it is used to check.

The per-point objective evaluation and the simplex loop are the hot path;
they live in a compiled extension (:mod:`eprsep._kernels`) with a
pure-Python twin (:mod:`eprsep._kernels_py`) selected at import when the
extension is unavailable.  Arbitrary Python callables are also accepted and
always run on the interpreted path.
"""

import math
from dataclasses import dataclass

from . import _kernels_py
from .errors import InvalidInput
from .symplectic import StandardFormParams

try:
    from . import _kernels as _default_impl
except ImportError:  # pragma: no cover - depends on the build
    _default_impl = _kernels_py

KIND_E = _kernels_py.KIND_E
KIND_F = _kernels_py.KIND_F
KIND_G = _kernels_py.KIND_G
KIND_K = _kernels_py.KIND_K
KIND_FUU = _kernels_py.KIND_FUU

#: Iteration cap of the simplex refinement.
MAX_REFINE_ITERATIONS = 500

#: Scaled simplex diameter below which the refinement counts as converged.
XTOL = 1e-9


def backend_name() -> str:
    """Name of the backend used for Kernel objectives: compiled or pure."""
    return "compiled" if _default_impl.COMPILED else "pure"


def _impl_for(backend):
    if backend is None:
        return _default_impl
    if backend == "pure":
        return _kernels_py
    if backend == "compiled":
        if not _default_impl.COMPILED:
            raise InvalidInput("compiled kernel backend is not available")
        return _default_impl
    raise InvalidInput(f"unknown backend {backend!r}")


@dataclass(frozen=True)
class Kernel:
    """A correlation-function objective the backends can evaluate natively."""

    kind: int
    b1: float
    b2: float
    c: float
    d: float

    @property
    def ndim(self) -> int:
        return _kernels_py.NDIM[self.kind]

    def __call__(self, x):
        return _kernels_py.eval_kernel(self.kind, self.b1, self.b2, self.c, self.d, x)


def kernel_e(p: StandardFormParams) -> Kernel:
    return Kernel(KIND_E, p.b1, p.b2, p.c, p.d)


def kernel_f(p: StandardFormParams) -> Kernel:
    return Kernel(KIND_F, p.b1, p.b2, p.c, p.d)


def kernel_g(p: StandardFormParams) -> Kernel:
    return Kernel(KIND_G, p.b1, p.b2, p.c, p.d)


def kernel_k(p: StandardFormParams) -> Kernel:
    return Kernel(KIND_K, p.b1, p.b2, p.c, p.d)


def kernel_fuu(p: StandardFormParams) -> Kernel:
    return Kernel(KIND_FUU, p.b1, p.b2, p.c, p.d)


@dataclass(frozen=True)
class MinimizationResult:
    argmin: tuple
    value: float
    evaluations: int
    converged: bool
    grid_stage_value: float


def _build_axis(lo: float, hi: float, n: int, log: bool):
    import numpy as np

    if log:
        if lo <= 0.0:
            raise InvalidInput("log-spaced axis requires a positive lower bound")
        ax = np.exp(np.linspace(math.log(lo), math.log(hi), n))
    else:
        ax = np.arange(n) * ((hi - lo) / (n - 1)) + lo
    ax[0] = lo
    ax[-1] = hi
    return np.ascontiguousarray(ax, dtype=float)


def minimize(
    objective,
    box,
    grid_points: int | None = None,
    refine_iterations: int = MAX_REFINE_ITERATIONS,
    xtol: float = XTOL,
    backend: str | None = None,
    log_axes=None,
) -> MinimizationResult:
    """Two-stage deterministic minimization of a 2-D or 3-D objective.

    Stage one scans a dense rectangular grid over the box (linear axes by
    default, log-spaced where `log_axes` says so — the stationary points of
    the correlation functions live on multiplicative scales).  Stage two
    runs a downhill simplex from the best grid cell with steps of one local
    cell, then restarts it from its own result: the restart re-inflates a
    simplex that collapsed against a box wall, where a clipped simplex can
    lose rank.

    Parameters
    ----------
    objective:
        Either a `Kernel` (dispatched to the active backend) or any callable
        taking a coordinate tuple.
    box:
        Sequence of per-coordinate (lo, hi) pairs; candidate points never
        leave it.
    grid_points:
        Points per axis of the scan stage; defaults to 64 for two and 32 for
        three dimensions.
    log_axes:
        None (all linear), True (all log-spaced), or a per-coordinate
        sequence of booleans.
    """
    lo = [float(b[0]) for b in box]
    hi = [float(b[1]) for b in box]
    n = len(box)
    if n not in (2, 3):
        raise InvalidInput(f"minimize supports 2 or 3 coordinates, got {n}")
    for k in range(n):
        if not (math.isfinite(lo[k]) and math.isfinite(hi[k]) and lo[k] < hi[k]):
            raise InvalidInput(f"invalid box for coordinate {k}: [{lo[k]}, {hi[k]}]")
    if grid_points is None:
        grid_points = 64 if n == 2 else 32
    if log_axes is None or log_axes is False:
        log_axes = [False] * n
    elif log_axes is True:
        log_axes = [True] * n
    axes = [_build_axis(lo[k], hi[k], int(grid_points), log_axes[k]) for k in range(n)]

    if isinstance(objective, Kernel):
        if objective.ndim != n:
            raise InvalidInput(
                f"kernel expects {objective.ndim} coordinates, box has {n}"
            )
        impl = _impl_for(backend)
        args = (objective.kind, objective.b1, objective.b2, objective.c, objective.d)

        def scan():
            return impl.grid_scan_kernel(*args, axes)

        def refine(x0, step):
            return impl.nelder_mead_kernel(*args, x0, step, lo, hi, refine_iterations, xtol)

    else:

        def scan():
            return _kernels_py.grid_scan_fn(objective, axes)

        def refine(x0, step):
            return _kernels_py.nelder_mead_fn(
                objective, x0, step, lo, hi, refine_iterations, xtol
            )

    x0, idx, grid_val, n_grid = scan()
    steps = []
    for k in range(n):
        ax = axes[k]
        i = idx[k]
        steps.append(float(ax[i + 1] - ax[i]) if i + 1 < len(ax) else float(ax[i - 1] - ax[i]))

    total = n_grid
    x, val, converged = x0, grid_val, False
    # restart scales: one full re-inflation against wall collapse, then two
    # progressively finer ones for basins a fraction of a cell from a wall
    scales = [1.0, 1e-2, 1e-4]
    stage = 0
    while stage < 6:
        stage_steps = [s * scales[min(stage, len(scales) - 1)] for s in steps]
        x2, v2, n_ref, _, conv = refine(x, stage_steps)
        total += n_ref
        converged = conv
        improved = v2 < val
        if improved:
            x, val = x2, v2
        if stage >= len(scales) - 1 and not improved:
            break
        stage += 1
    return MinimizationResult(
        argmin=tuple(x),
        value=float(val),
        evaluations=int(total),
        converged=bool(converged),
        grid_stage_value=float(grid_val),
    )


def _adaptive_minimize(kernel, lo, hi, grow_hi, shrink_lo, grid_points, backend):
    """Re-run minimize with a grown/shrunk box while the argmin hugs an edge.

    The stationary points of the correlation functions can, for nearly
    uncorrelated or nearly uncertainty-saturating states, sit far outside
    any fixed box, so edges flagged in `grow_hi` double and edges in
    `shrink_lo` shrink until the minimum is interior.  u-type coordinates
    keep their hard lower bound of 1, where boundary minima are legitimate.
    """
    n = len(lo)
    lo = list(lo)
    hi = list(hi)
    total_evals = 0
    result = None
    for _ in range(12):
        result = minimize(
            kernel,
            list(zip(lo, hi)),
            grid_points=grid_points,
            backend=backend,
            log_axes=True,
        )
        total_evals += result.evaluations
        changed = False
        for k in range(n):
            # edge proximity measured on the log grid: within one cell
            ratio = (hi[k] / lo[k]) ** (1.0 / (grid_points - 1))
            if grow_hi[k] and result.argmin[k] * ratio >= hi[k]:
                hi[k] *= 2.0
                changed = True
            if shrink_lo[k] and lo[k] > 1e-6 and result.argmin[k] <= lo[k] * ratio:
                lo[k] = max(lo[k] * 0.25, 1e-6)
                changed = True
        if not changed:
            break
    return MinimizationResult(
        argmin=result.argmin,
        value=result.value,
        evaluations=total_evals,
        converged=result.converged,
        grid_stage_value=result.grid_stage_value,
    )


def minimize_e(p: StandardFormParams, backend: str | None = None) -> MinimizationResult:
    """Brute-force minimum of the normalized variance product over (lambda, mu)."""
    return _adaptive_minimize(
        kernel_e(p),
        lo=[0.05, 0.05],
        hi=[20.0, 20.0],
        grow_hi=[True, True],
        shrink_lo=[True, True],
        grid_points=64,
        backend=backend,
    )


def minimize_f(p: StandardFormParams, backend: str | None = None) -> MinimizationResult:
    """Brute-force minimum of the normalized variance sum over (alpha^2, u1, u2)."""
    return _adaptive_minimize(
        kernel_f(p),
        lo=[0.05, 1.0, 1.0],
        hi=[20.0, max(10.0, 4.0 * p.b1), max(10.0, 4.0 * p.b2)],
        grow_hi=[True, True, True],
        shrink_lo=[True, False, False],
        grid_points=32,
        backend=backend,
    )


def minimize_g(p: StandardFormParams, backend: str | None = None) -> MinimizationResult:
    """Brute-force minimum of the regularized sum over (xi, eta, u1)."""
    return _adaptive_minimize(
        kernel_g(p),
        lo=[0.05, 0.05, 1.0],
        hi=[20.0, 20.0, max(10.0, 4.0 * p.b1)],
        grow_hi=[True, True, True],
        shrink_lo=[True, True, False],
        grid_points=32,
        backend=backend,
    )


def finite_diff_gradient(objective, point, rel_step: float = 1e-4):
    """Central-difference gradient with per-coordinate relative steps."""
    point = [float(v) for v in point]
    n = len(point)
    grad = [0.0] * n
    for k in range(n):
        h = rel_step * max(abs(point[k]), rel_step)
        if h == 0.0:
            raise InvalidInput("finite-difference step underflow")
        xp = list(point)
        xm = list(point)
        xp[k] += h
        xm[k] -= h
        grad[k] = (objective(xp) - objective(xm)) / (2.0 * h)
    return grad


def finite_diff_hessian(objective, point, rel_step: float = 1e-4, min_scale: float | None = None):
    """Central-difference Hessian, symmetrized as (H + H^T)/2.

    Steps are rel_step scaled by the coordinate magnitude; `min_scale`
    overrides the magnitude floor (useful when a stationary coordinate is
    orders of magnitude below the function's own scale).
    """
    import numpy as np

    point = [float(v) for v in point]
    n = len(point)
    floor = rel_step if min_scale is None else min_scale
    h = [rel_step * max(abs(point[k]), floor) for k in range(n)]
    if any(step == 0.0 for step in h):
        raise InvalidInput("finite-difference step underflow")
    f0 = objective(point)
    hess = np.zeros((n, n))
    for i in range(n):
        xp = list(point)
        xm = list(point)
        xp[i] += h[i]
        xm[i] -= h[i]
        hess[i, i] = (objective(xp) - 2.0 * f0 + objective(xm)) / (h[i] * h[i])
        for j in range(i + 1, n):
            xpp = list(point)
            xpm = list(point)
            xmp = list(point)
            xmm = list(point)
            xpp[i] += h[i]
            xpp[j] += h[j]
            xpm[i] += h[i]
            xpm[j] -= h[j]
            xmp[i] -= h[i]
            xmp[j] += h[j]
            xmm[i] -= h[i]
            xmm[j] -= h[j]
            hess[i, j] = (objective(xpp) - objective(xpm) - objective(xmp) + objective(xmm)) / (
                4.0 * h[i] * h[j]
            )
            hess[j, i] = hess[i, j]
    return 0.5 * (hess + hess.T)
