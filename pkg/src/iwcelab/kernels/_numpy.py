"""Pure-numpy reference kernels.

Every function here has a twin in ``_numba`` with identical signature and
semantics; ``iwcelab.kernels`` re-exports whichever backend is active.
"""

import math

import numpy as np

EPS = 2.220446049250313e-16
TINY = 1e-300


def xlogx(u):
    """Elementwise u*log(u) with 0*log(0) = 0."""
    u = np.asarray(u, dtype=np.float64)
    out = np.zeros_like(u)
    pos = u > 0
    out[pos] = u[pos] * np.log(u[pos])
    return out


def gammainc_series(b, z, tol=1e-16, max_iter=500):
    """Regularized lower incomplete gamma P(b, z) by power series (z < b + 1)."""
    if z <= 0.0:
        return 0.0
    ap = b
    term = 1.0 / b
    total = term
    for _ in range(max_iter):
        ap += 1.0
        term *= z / ap
        total += term
        if abs(term) < abs(total) * tol:
            break
    return total * math.exp(-z + b * math.log(z) - math.lgamma(b))


def gammainc_cf(b, z, tol=1e-16, max_iter=500):
    """Regularized upper incomplete gamma Q(b, z) by modified Lentz (z >= b + 1)."""
    c0 = z + 1.0 - b
    c = 1.0 / TINY
    d = 1.0 / c0
    h = d
    for i in range(1, max_iter + 1):
        an = -i * (i - b)
        c0 += 2.0
        d = an * d + c0
        if abs(d) < TINY:
            d = TINY
        c = c0 + an / c
        if abs(c) < TINY:
            c = TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < tol:
            break
    return math.exp(-z + b * math.log(z) - math.lgamma(b)) * h


def step_entropy(xs, cdf_vals, psi_vals, t1, t2, F1, F2, psi_t1, psi_t2,
                 residual, proper):
    """Exact weighted interval entropy of a right-continuous step CDF.

    The CDF equals ``cdf_vals[i]`` on ``[xs[i], xs[i+1])``; the weight enters
    only through its integral, so each constant piece contributes
    ``(psi(right) - psi(left)) * (-u log u)``.
    """
    lo = np.searchsorted(xs, t1, side="right")
    hi = np.searchsorted(xs, t2, side="left")
    breaks_psi = np.concatenate(([psi_t1], psi_vals[lo:hi], [psi_t2]))
    F = np.concatenate(([F1], cdf_vals[lo:hi]))
    delta = F2 - F1
    if residual:
        u = (F2 - F) / delta if proper else (1.0 - F) / delta
    else:
        u = (F - F1) / delta if proper else F / delta
    return float(-np.sum(np.diff(breaks_psi) * xlogx(u)))


def pair_abs_diff_stats(a, b):
    """Mean and sample standard deviation of |a - b|."""
    d = np.abs(np.asarray(a) - np.asarray(b))
    if d.size < 2:
        return float(d.mean()), 0.0
    return float(d.mean()), float(d.std(ddof=1))
