"""Pure-Python twin of the compiled minimization kernels.

This module is the import-time fallback used when the compiled extension
(:mod:`eprsep._kernels`) is unavailable.  Both backends implement the same
three entry points with the same arithmetic in the same order, so they give
identical trajectories (the extension is compiled with FP contraction off):

- ``eval_kernel``: one correlation-function evaluation,
- ``grid_scan_kernel``: dense rectangular scan, first minimum wins,
- ``nelder_mead_kernel``: box-clipped downhill simplex refinement.

The objective is selected by an integer kind so the compiled backend never
has to call back into Python.  Grid scans are vectorized here with numpy;
elementwise IEEE arithmetic keeps them bit-compatible with the scalar loop.
"""

import math

import numpy as np

from .errors import NumericalFailure

COMPILED = False

KIND_E = 0  # normalized variance product, x = (lambda, mu)
KIND_F = 1  # normalized variance sum, x = (alpha^2, u1, u2)
KIND_G = 2  # regularized Reid sum, x = (xi, eta, u1)
KIND_K = 3  # regularized Duan sum, x = (alpha^2, u1, u2)
KIND_FUU = 4  # Duan sum minimized over alpha^2, x = (u1, u2)

NDIM = {KIND_E: 2, KIND_F: 3, KIND_G: 3, KIND_K: 3, KIND_FUU: 2}


def eval_kernel(kind, b1, b2, c, d, x):
    """Evaluate objective `kind` at point `x` for parameters {b1,b2,c,d}."""
    if kind == KIND_E:
        lam, mu = x[0], x[1]
        vq = b1 + b2 * lam * lam - 2.0 * c * lam
        vp = b1 + b2 * mu * mu + 2.0 * d * mu
        den = 1.0 + lam * mu
        return (vq * vp) / (den * den)
    if kind == KIND_F:
        t, u1, u2 = x[0], x[1], x[2]
        s = math.sqrt(u1 * u2)
        num = (
            b1 * (u1 + 1.0 / u1) * (t * t)
            - 2.0 * (c * s - d / s) * t
            + b2 * (u2 + 1.0 / u2)
        )
        return num / (t * t + 1.0)
    if kind == KIND_G:
        xi, eta, u1 = x[0], x[1], x[2]
        ru = math.sqrt(u1)
        vq = b1 * u1 + b2 * xi * xi - 2.0 * c * ru * xi
        vp = b1 / u1 + b2 * eta * eta + 2.0 * d * eta / ru
        return vq + vp - 1.0 - xi * eta
    if kind == KIND_K:
        t, u1, u2 = x[0], x[1], x[2]
        s = math.sqrt(u1 * u2)
        return (
            t * (b1 * (u1 + 1.0 / u1) - 1.0)
            + (b2 * (u2 + 1.0 / u2) - 1.0) / t
            - 2.0 * (c * s + abs(d) / s)
        )
    if kind == KIND_FUU:
        u1, u2 = x[0], x[1]
        a = b1 * (u1 + 1.0 / u1) - 1.0
        b = b2 * (u2 + 1.0 / u2) - 1.0
        s = math.sqrt(u1 * u2)
        return 2.0 * math.sqrt(a * b) - 2.0 * (c * s + abs(d) / s)
    raise ValueError(f"unknown kernel kind {kind}")


def _eval_array(kind, b1, b2, c, d, mesh):
    if kind == KIND_E:
        lam, mu = mesh
        vq = b1 + b2 * lam * lam - 2.0 * c * lam
        vp = b1 + b2 * mu * mu + 2.0 * d * mu
        den = 1.0 + lam * mu
        return (vq * vp) / (den * den)
    if kind == KIND_F:
        t, u1, u2 = mesh
        s = np.sqrt(u1 * u2)
        num = (
            b1 * (u1 + 1.0 / u1) * (t * t)
            - 2.0 * (c * s - d / s) * t
            + b2 * (u2 + 1.0 / u2)
        )
        return num / (t * t + 1.0)
    if kind == KIND_G:
        xi, eta, u1 = mesh
        ru = np.sqrt(u1)
        vq = b1 * u1 + b2 * xi * xi - 2.0 * c * ru * xi
        vp = b1 / u1 + b2 * eta * eta + 2.0 * d * eta / ru
        return vq + vp - 1.0 - xi * eta
    if kind == KIND_K:
        t, u1, u2 = mesh
        s = np.sqrt(u1 * u2)
        return (
            t * (b1 * (u1 + 1.0 / u1) - 1.0)
            + (b2 * (u2 + 1.0 / u2) - 1.0) / t
            - 2.0 * (c * s + abs(d) / s)
        )
    if kind == KIND_FUU:
        u1, u2 = mesh
        a = b1 * (u1 + 1.0 / u1) - 1.0
        b = b2 * (u2 + 1.0 / u2) - 1.0
        s = np.sqrt(u1 * u2)
        return 2.0 * np.sqrt(a * b) - 2.0 * (c * s + abs(d) / s)
    raise ValueError(f"unknown kernel kind {kind}")


def grid_scan_kernel(kind, b1, b2, c, d, axes):
    """Dense scan over the axes product; first minimum in row-major order wins.

    Returns (best point, best index per axis, best value, evaluations).
    """
    mesh = np.meshgrid(*axes, indexing="ij")
    vals = _eval_array(kind, b1, b2, c, d, mesh)
    if not np.all(np.isfinite(vals)):
        bad = np.unravel_index(int(np.argmax(~np.isfinite(vals))), vals.shape)
        point = tuple(float(axes[k][bad[k]]) for k in range(len(axes)))
        raise NumericalFailure(f"non-finite objective value at {point}")
    idx = np.unravel_index(int(np.argmin(vals)), vals.shape)
    best_x = tuple(float(axes[k][idx[k]]) for k in range(len(axes)))
    return best_x, tuple(int(i) for i in idx), float(vals[idx]), int(vals.size)


def nelder_mead_kernel(kind, b1, b2, c, d, x0, step, lo, hi, max_iter, xtol):
    """Box-clipped downhill simplex for objective `kind`; see nelder_mead_fn."""
    return nelder_mead_fn(
        lambda x: eval_kernel(kind, b1, b2, c, d, x), x0, step, lo, hi, max_iter, xtol
    )


def grid_scan_fn(f, axes):
    """Generic-callable version of grid_scan_kernel (scalar loop)."""
    n = len(axes)
    best_x = None
    best_idx = None
    best = math.inf
    count = 0
    for idx in np.ndindex(*(len(a) for a in axes)):
        x = tuple(float(axes[k][idx[k]]) for k in range(n))
        v = f(x)
        count += 1
        if not math.isfinite(v):
            raise NumericalFailure(f"non-finite objective value at {x}")
        if v < best:
            best = v
            best_x = x
            best_idx = idx
    return best_x, best_idx, best, count


def nelder_mead_fn(f, x0, step, lo, hi, max_iter, xtol):
    """Downhill simplex with reflection 1, expansion 2, contraction/shrink 0.5.

    Candidate points are clipped to the box, so boundary minima (e.g. unit
    squeeze factors) are reachable.  Convergence means the simplex diameter,
    scaled per-axis by the box width, fell below `xtol`.
    Returns (x, value, evaluations, iterations, converged).
    """
    n = len(x0)

    def clip(x):
        return [min(max(x[k], lo[k]), hi[k]) for k in range(n)]

    def feval(x):
        v = f(x)
        if not math.isfinite(v):
            raise NumericalFailure(f"non-finite objective value at {tuple(x)}")
        return v

    scale = [(hi[k] - lo[k]) if hi[k] > lo[k] else 1.0 for k in range(n)]
    verts = [clip(list(x0))]
    for k in range(n):
        v = list(verts[0])
        v[k] = v[k] + step[k]
        verts.append(clip(v))
    fvals = [feval(v) for v in verts]
    nevals = n + 1
    iters = 0
    converged = False

    while iters < max_iter:
        order = sorted(range(n + 1), key=lambda i: (fvals[i], i))
        verts = [verts[i] for i in order]
        fvals = [fvals[i] for i in order]

        diam = 0.0
        for i in range(1, n + 1):
            for k in range(n):
                diam = max(diam, abs(verts[i][k] - verts[0][k]) / scale[k])
        if diam <= xtol:
            converged = True
            break

        centroid = [0.0] * n
        for i in range(n):
            for k in range(n):
                centroid[k] += verts[i][k]
        centroid = [centroid[k] / n for k in range(n)]

        xr = clip([centroid[k] + 1.0 * (centroid[k] - verts[n][k]) for k in range(n)])
        fr = feval(xr)
        nevals += 1
        if fr < fvals[0]:
            xe = clip([centroid[k] + 2.0 * (centroid[k] - verts[n][k]) for k in range(n)])
            fe = feval(xe)
            nevals += 1
            if fe < fr:
                verts[n], fvals[n] = xe, fe
            else:
                verts[n], fvals[n] = xr, fr
        elif fr < fvals[n - 1]:
            verts[n], fvals[n] = xr, fr
        else:
            if fr < fvals[n]:
                xc = clip([centroid[k] + 0.5 * (xr[k] - centroid[k]) for k in range(n)])
            else:
                xc = clip([centroid[k] + 0.5 * (verts[n][k] - centroid[k]) for k in range(n)])
            fc = feval(xc)
            nevals += 1
            if fc < min(fr, fvals[n]):
                verts[n], fvals[n] = xc, fc
            else:
                for i in range(1, n + 1):
                    verts[i] = clip(
                        [verts[0][k] + 0.5 * (verts[i][k] - verts[0][k]) for k in range(n)]
                    )
                    fvals[i] = feval(verts[i])
                nevals += n
        iters += 1

    order = sorted(range(n + 1), key=lambda i: (fvals[i], i))
    best = order[0]
    return tuple(verts[best]), fvals[best], nevals, iters, converged
