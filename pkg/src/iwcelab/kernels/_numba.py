"""numba-compiled kernels; same contracts as ``_numpy``."""

import math

import numpy as np
from numba import njit

TINY = 1e-300

_opts = dict(cache=True, nogil=True, error_model="numpy")


@njit(**_opts)
def _xlogx_scalar(u):
    if u > 0.0:
        return u * math.log(u)
    return 0.0


@njit(**_opts)
def _xlogx_array(u):
    out = np.empty(u.size)
    flat = u.ravel()
    for i in range(flat.size):
        out[i] = _xlogx_scalar(flat[i])
    return out.reshape(u.shape)


def xlogx(u):
    """Elementwise u*log(u) with 0*log(0) = 0."""
    return _xlogx_array(np.ascontiguousarray(u, dtype=np.float64))


@njit(**_opts)
def gammainc_series(b, z, tol=1e-16, max_iter=500):
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


@njit(**_opts)
def gammainc_cf(b, z, tol=1e-16, max_iter=500):
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


@njit(**_opts)
def _step_entropy(xs, cdf_vals, psi_vals, t1, t2, F1, F2, psi_t1, psi_t2,
                  residual, proper):
    delta = F2 - F1
    total = 0.0
    F = F1
    psi_prev = psi_t1
    i = np.searchsorted(xs, t1, side="right")
    n = xs.size
    while True:
        at_end = i >= n or xs[i] >= t2
        psi_next = psi_t2 if at_end else psi_vals[i]
        if residual:
            u = (F2 - F) / delta if proper else (1.0 - F) / delta
        else:
            u = (F - F1) / delta if proper else F / delta
        total -= (psi_next - psi_prev) * _xlogx_scalar(u)
        if at_end:
            break
        F = cdf_vals[i]
        psi_prev = psi_next
        i += 1
    return total


def step_entropy(xs, cdf_vals, psi_vals, t1, t2, F1, F2, psi_t1, psi_t2,
                 residual, proper):
    return float(_step_entropy(xs, cdf_vals, psi_vals, float(t1), float(t2),
                               float(F1), float(F2), float(psi_t1),
                               float(psi_t2), bool(residual), bool(proper)))


@njit(**_opts)
def _pair_abs_diff_stats(a, b):
    n = a.size
    mean = 0.0
    for i in range(n):
        mean += abs(a[i] - b[i])
    mean /= n
    if n < 2:
        return mean, 0.0
    ss = 0.0
    for i in range(n):
        r = abs(a[i] - b[i]) - mean
        ss += r * r
    return mean, math.sqrt(ss / (n - 1))


def pair_abs_diff_stats(a, b):
    """Mean and sample standard deviation of |a - b|."""
    m, s = _pair_abs_diff_stats(np.ascontiguousarray(a, dtype=np.float64),
                                np.ascontiguousarray(b, dtype=np.float64))
    return float(m), float(s)
