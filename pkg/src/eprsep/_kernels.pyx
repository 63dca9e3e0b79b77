# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled minimization kernels.

Twin of eprsep._kernels_py: same entry points, same arithmetic in the same
order (the build disables FP contraction), so both backends produce
identical scan results and simplex trajectories.
"""

from libc.math cimport fabs, isfinite, sqrt, INFINITY

from .errors import NumericalFailure

COMPILED = True

KIND_E = 0
KIND_F = 1
KIND_G = 2
KIND_K = 3
KIND_FUU = 4

NDIM = {KIND_E: 2, KIND_F: 3, KIND_G: 3, KIND_K: 3, KIND_FUU: 2}


cdef double c_eval(int kind, double b1, double b2, double c, double d,
                   double* x) noexcept:
    cdef double lam, mu, vq, vp, den, t, u1, u2, s, num, xi, eta, ru, a, b
    if kind == 0:  # E
        lam = x[0]; mu = x[1]
        vq = b1 + b2 * lam * lam - 2.0 * c * lam
        vp = b1 + b2 * mu * mu + 2.0 * d * mu
        den = 1.0 + lam * mu
        return (vq * vp) / (den * den)
    elif kind == 1:  # F
        t = x[0]; u1 = x[1]; u2 = x[2]
        s = sqrt(u1 * u2)
        num = (b1 * (u1 + 1.0 / u1) * (t * t)
               - 2.0 * (c * s - d / s) * t
               + b2 * (u2 + 1.0 / u2))
        return num / (t * t + 1.0)
    elif kind == 2:  # G
        xi = x[0]; eta = x[1]; u1 = x[2]
        ru = sqrt(u1)
        vq = b1 * u1 + b2 * xi * xi - 2.0 * c * ru * xi
        vp = b1 / u1 + b2 * eta * eta + 2.0 * d * eta / ru
        return vq + vp - 1.0 - xi * eta
    elif kind == 3:  # K
        t = x[0]; u1 = x[1]; u2 = x[2]
        s = sqrt(u1 * u2)
        return (t * (b1 * (u1 + 1.0 / u1) - 1.0)
                + (b2 * (u2 + 1.0 / u2) - 1.0) / t
                - 2.0 * (c * s + fabs(d) / s))
    else:  # FUU
        u1 = x[0]; u2 = x[1]
        a = b1 * (u1 + 1.0 / u1) - 1.0
        b = b2 * (u2 + 1.0 / u2) - 1.0
        s = sqrt(u1 * u2)
        return 2.0 * sqrt(a * b) - 2.0 * (c * s + fabs(d) / s)


def eval_kernel(int kind, double b1, double b2, double c, double d, x):
    """Evaluate objective `kind` at point `x` for parameters {b1,b2,c,d}."""
    cdef double cx[3]
    cdef int n = len(x), k
    if kind not in NDIM:
        raise ValueError(f"unknown kernel kind {kind}")
    for k in range(n):
        cx[k] = x[k]
    return c_eval(kind, b1, b2, c, d, cx)


def grid_scan_kernel(int kind, double b1, double b2, double c, double d, axes):
    """Dense scan over the axes product; first minimum in row-major order wins.

    Returns (best point, best index per axis, best value, evaluations).
    """
    if kind not in NDIM:
        raise ValueError(f"unknown kernel kind {kind}")
    cdef int n = len(axes), k
    cdef double[::1] ax0 = axes[0]
    cdef double[::1] ax1 = axes[1]
    cdef double[::1] ax2 = axes[2] if n == 3 else axes[0]
    cdef long nn[3]
    cdef long total = 1
    nn[0] = ax0.shape[0]
    nn[1] = ax1.shape[0]
    nn[2] = ax2.shape[0] if n == 3 else 1
    for k in range(n):
        total *= nn[k]
    cdef double x[3]
    cdef double bx[3]
    cdef long flat, rem
    cdef long idx[3]
    cdef long bidx[3]
    cdef double v, best = INFINITY
    cdef bint have_best = False
    for flat in range(total):
        rem = flat
        for k in range(n - 1, -1, -1):
            idx[k] = rem % nn[k]
            rem //= nn[k]
        x[0] = ax0[idx[0]]
        x[1] = ax1[idx[1]]
        if n == 3:
            x[2] = ax2[idx[2]]
        v = c_eval(kind, b1, b2, c, d, x)
        if not isfinite(v):
            raise NumericalFailure(
                f"non-finite objective value at {tuple(x[k] for k in range(n))}")
        if v < best:
            best = v
            have_best = True
            for k in range(n):
                bx[k] = x[k]
                bidx[k] = idx[k]
    if not have_best:
        raise NumericalFailure("empty grid")
    return (
        tuple(bx[k] for k in range(n)),
        tuple(bidx[k] for k in range(n)),
        best,
        total,
    )


cdef inline double _clip1(double v, double lo, double hi) noexcept:
    if v < lo:
        return lo
    if v > hi:
        return hi
    return v


def nelder_mead_kernel(int kind, double b1, double b2, double c, double d,
                       x0, step, lo, hi, int max_iter, double xtol):
    """Box-clipped downhill simplex; mirrors the pure-Python fallback.

    Returns (x, value, evaluations, iterations, converged).
    """
    if kind not in NDIM:
        raise ValueError(f"unknown kernel kind {kind}")
    cdef int n = len(x0), k, i, j, m
    cdef double verts[4][3]
    cdef double fvals[4]
    cdef double clo[3]
    cdef double chi[3]
    cdef double scale[3]
    cdef double centroid[3]
    cdef double xr[3]
    cdef double xe[3]
    cdef double xc[3]
    cdef double tmpv[4][3]
    cdef double tmpf[4]
    cdef int order[4]
    cdef double fr, fe, fc, v, diam, dd
    cdef long nevals
    cdef int iters = 0
    cdef bint converged = False

    for k in range(n):
        clo[k] = lo[k]
        chi[k] = hi[k]
        scale[k] = (chi[k] - clo[k]) if chi[k] > clo[k] else 1.0
        verts[0][k] = _clip1(x0[k], clo[k], chi[k])
    for i in range(n):
        for k in range(n):
            verts[i + 1][k] = verts[0][k]
        verts[i + 1][i] = _clip1(verts[0][i] + step[i], clo[i], chi[i])
    for i in range(n + 1):
        v = c_eval(kind, b1, b2, c, d, verts[i])
        if not isfinite(v):
            raise NumericalFailure(
                f"non-finite objective value at {tuple(verts[i][k] for k in range(n))}")
        fvals[i] = v
    nevals = n + 1

    while iters < max_iter:
        # stable insertion sort of vertex indices by objective value
        for i in range(n + 1):
            order[i] = i
        for i in range(1, n + 1):
            j = i
            while j > 0 and fvals[order[j]] < fvals[order[j - 1]]:
                m = order[j]
                order[j] = order[j - 1]
                order[j - 1] = m
                j -= 1
        for i in range(n + 1):
            for k in range(n):
                tmpv[i][k] = verts[order[i]][k]
            tmpf[i] = fvals[order[i]]
        for i in range(n + 1):
            for k in range(n):
                verts[i][k] = tmpv[i][k]
            fvals[i] = tmpf[i]

        diam = 0.0
        for i in range(1, n + 1):
            for k in range(n):
                dd = fabs(verts[i][k] - verts[0][k]) / scale[k]
                if dd > diam:
                    diam = dd
        if diam <= xtol:
            converged = True
            break

        for k in range(n):
            centroid[k] = 0.0
        for i in range(n):
            for k in range(n):
                centroid[k] += verts[i][k]
        for k in range(n):
            centroid[k] /= n

        for k in range(n):
            xr[k] = _clip1(centroid[k] + 1.0 * (centroid[k] - verts[n][k]), clo[k], chi[k])
        fr = c_eval(kind, b1, b2, c, d, xr)
        nevals += 1
        if not isfinite(fr):
            raise NumericalFailure(
                f"non-finite objective value at {tuple(xr[k] for k in range(n))}")
        if fr < fvals[0]:
            for k in range(n):
                xe[k] = _clip1(centroid[k] + 2.0 * (centroid[k] - verts[n][k]), clo[k], chi[k])
            fe = c_eval(kind, b1, b2, c, d, xe)
            nevals += 1
            if not isfinite(fe):
                raise NumericalFailure(
                    f"non-finite objective value at {tuple(xe[k] for k in range(n))}")
            if fe < fr:
                for k in range(n):
                    verts[n][k] = xe[k]
                fvals[n] = fe
            else:
                for k in range(n):
                    verts[n][k] = xr[k]
                fvals[n] = fr
        elif fr < fvals[n - 1]:
            for k in range(n):
                verts[n][k] = xr[k]
            fvals[n] = fr
        else:
            if fr < fvals[n]:
                for k in range(n):
                    xc[k] = _clip1(centroid[k] + 0.5 * (xr[k] - centroid[k]), clo[k], chi[k])
            else:
                for k in range(n):
                    xc[k] = _clip1(centroid[k] + 0.5 * (verts[n][k] - centroid[k]), clo[k], chi[k])
            fc = c_eval(kind, b1, b2, c, d, xc)
            nevals += 1
            if not isfinite(fc):
                raise NumericalFailure(
                    f"non-finite objective value at {tuple(xc[k] for k in range(n))}")
            if fc < (fr if fr < fvals[n] else fvals[n]):
                for k in range(n):
                    verts[n][k] = xc[k]
                fvals[n] = fc
            else:
                for i in range(1, n + 1):
                    for k in range(n):
                        verts[i][k] = _clip1(
                            verts[0][k] + 0.5 * (verts[i][k] - verts[0][k]), clo[k], chi[k])
                    v = c_eval(kind, b1, b2, c, d, verts[i])
                    if not isfinite(v):
                        raise NumericalFailure(
                            f"non-finite objective value at "
                            f"{tuple(verts[i][k] for k in range(n))}")
                    fvals[i] = v
                nevals += n
        iters += 1

    m = 0
    for i in range(1, n + 1):
        if fvals[i] < fvals[m]:
            m = i
    return (tuple(verts[m][k] for k in range(n)), fvals[m], nevals, iters, converged)
