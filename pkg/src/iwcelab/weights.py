"""Nonnegative weight functions phi with cumulative psi and derivative dphi."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .distributions import GEV
from .numerics import DEFAULT_CONFIG, quad

__all__ = [
    "WeightFunction",
    "ConstantOne",
    "PolynomialWeight",
    "ExponentialWeight",
    "GEVPolynomialWeight",
    "Validation",
    "validate_nonnegative",
    "psi_closed",
]


class WeightFunction:
    """Base class; subclasses provide vectorized ``phi``, ``psi``, ``dphi``."""

    def phi(self, x):
        raise NotImplementedError

    def psi(self, x):
        raise NotImplementedError

    def dphi(self, x):
        raise NotImplementedError

    def scaled(self, c: float) -> "WeightFunction":
        return _Scaled(self, c)

    def kinks(self) -> tuple[float, ...]:
        return ()

    def spec(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({self.spec()})"


class ConstantOne(WeightFunction):
    def phi(self, x):
        return np.ones_like(np.asarray(x, dtype=float))

    def psi(self, x):
        return np.asarray(x, dtype=float) + 0.0

    def dphi(self, x):
        return np.zeros_like(np.asarray(x, dtype=float))

    def spec(self):
        return "const"


class PolynomialWeight(WeightFunction):
    """``phi(x) = sum_i a_i x^i``; coefficients in increasing degree."""

    def __init__(self, *coeffs):
        if len(coeffs) == 1 and np.ndim(coeffs[0]) == 1:
            coeffs = tuple(coeffs[0])
        if not coeffs:
            raise ValueError("PolynomialWeight needs at least one coefficient")
        self.coeffs = tuple(float(c) for c in coeffs)
        self._p = np.polynomial.Polynomial(self.coeffs)
        self._ip = self._p.integ(lbnd=0.0)
        self._dp = self._p.deriv()

    def phi(self, x):
        return self._p(np.asarray(x, dtype=float))

    def psi(self, x):
        return self._ip(np.asarray(x, dtype=float))

    def dphi(self, x):
        return self._dp(np.asarray(x, dtype=float))

    def spec(self):
        return "poly:" + ",".join(repr(c) for c in self.coeffs)


class ExponentialWeight(WeightFunction):
    """``phi(x) = exp(alpha x)``; ``alpha = 0`` is the constant weight."""

    def __init__(self, alpha: float):
        self.alpha = float(alpha)

    def phi(self, x):
        with np.errstate(over="ignore"):
            return np.exp(self.alpha * np.asarray(x, dtype=float))

    def psi(self, x):
        x = np.asarray(x, dtype=float)
        if self.alpha == 0.0:
            return x + 0.0
        return np.expm1(self.alpha * x) / self.alpha

    def dphi(self, x):
        return self.alpha * np.exp(self.alpha * np.asarray(x, dtype=float))

    def spec(self):
        return f"exp:{self.alpha!r}"


class GEVPolynomialWeight(WeightFunction):
    """``phi(x) = sum_i b_i y(x)^i`` for the host GEV's auxiliary ``y``.

    Below the host support ``phi`` is taken as 0, so ``psi`` accumulates from
    ``max(0, support_lower)``. Near the support edge ``y^i`` grows like
    ``d^(-i/xi)``, so ``psi`` diverges (ConvergenceError) when some nonzero
    ``b_i`` has ``i >= xi``.
    """

    def __init__(self, coeffs, host: GEV):
        coeffs = tuple(float(c) for c in np.atleast_1d(coeffs))
        if not coeffs:
            raise ValueError("GEVPolynomialWeight needs at least one coefficient")
        self.coeffs = coeffs
        self.host = host
        self.cfg = DEFAULT_CONFIG

    def _yv(self, x):
        y = self.host.y(x)
        return np.where(np.isfinite(y), y, np.nan)

    def phi(self, x):
        y = self._yv(x)
        out = np.zeros_like(y)
        for i, b in enumerate(self.coeffs):
            out = out + b * y ** i
        return np.where(np.isnan(y), 0.0, out)

    def dphi(self, x):
        y = self._yv(x)
        dy = -np.power(y, 1.0 + self.host.xi) / self.host.sigma
        out = np.zeros_like(y)
        for i, b in enumerate(self.coeffs[1:], start=1):
            out = out + i * b * y ** (i - 1) * dy
        return np.where(np.isnan(y), 0.0, out)

    def psi(self, x):
        x = np.asarray(x, dtype=float)
        lo = max(0.0, self.host.support_lower)
        out = np.empty(x.shape)
        for k, xv in enumerate(x.ravel()):
            out.flat[k] = quad(self.phi, lo, xv, self.cfg).value if xv > lo else 0.0
        return out if x.ndim else float(out)

    def kinks(self):
        return (self.host.support_lower,)

    def spec(self):
        return "gevpoly:" + ",".join(repr(c) for c in self.coeffs)


class _Scaled(WeightFunction):
    def __init__(self, base: WeightFunction, c: float):
        if c < 0:
            raise ValueError("weight scale must be >= 0")
        self.base = base
        self.c = float(c)

    def phi(self, x):
        return self.c * self.base.phi(x)

    def psi(self, x):
        return self.c * self.base.psi(x)

    def dphi(self, x):
        return self.c * self.base.dphi(x)

    def kinks(self):
        return self.base.kinks()

    def spec(self):
        return f"{self.c!r}*{self.base.spec()}"


class Validation(NamedTuple):
    ok: bool
    witness: float | None


def validate_nonnegative(wf: WeightFunction, lo: float, hi: float,
                         n_grid: int = 10_000, tol: float = 1e-12) -> Validation:
    """Grid check of ``phi >= -tol`` on ``[lo, hi]`` (endpoints included).

    Infinite ``hi`` is probed on a geometric grid out to ``lo + 1e6``.
    Returns the first violating abscissa as ``witness``.
    """
    if not lo < hi:
        raise ValueError(f"validate_nonnegative needs lo < hi, got ({lo}, {hi})")
    if math.isinf(hi):
        span = np.geomspace(1e-6, 1e6, n_grid)
        grid = np.concatenate(([lo], lo + span))
    else:
        grid = np.linspace(lo, hi, n_grid)
    vals = wf.phi(grid)
    bad = np.flatnonzero(~(vals >= -tol))
    if bad.size:
        return Validation(False, float(grid[bad[0]]))
    return Validation(True, None)


def psi_closed(wf: WeightFunction, x: float) -> float:
    """``psi(x) = int_0^x phi``; closed form where the family has one."""
    if x < 0:
        raise ValueError(f"psi requires x >= 0, got {x}")
    return float(wf.psi(x))
