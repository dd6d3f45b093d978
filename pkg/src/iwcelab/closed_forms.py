"""Closed-form interval entropies for exponential and GEV lifetimes.

All values are under the ratio convention. Two of the published expressions
carry constant slips; ``as_printed=True`` reproduces the literal constants,
the default evaluates the expressions that match direct integration:

* polynomial-weight IWCRE (exponential, scale form): the second sum needs
  ``scale**(i+1)``; the literal form has ``scale**i``.
* exponential-weight IWCRE: the middle term needs ``rate/(rate - alpha)``;
  the literal form has ``rate/(alpha - rate)``.
"""

from __future__ import annotations

import math

import numpy as np

from .distributions import GEV
from .numerics import lower_incomplete_gamma, pi_c
from .weights import GEVPolynomialWeight, validate_nonnegative, PolynomialWeight

__all__ = [
    "closed_form_iwcre_exp_poly",
    "closed_form_icre_exp",
    "closed_form_iwcre_exp_expweight",
    "closed_form_iwce_gev",
]


def _check_window(t1, t2):
    if not (0 <= t1 < t2):
        raise ValueError(f"need 0 <= t1 < t2, got ({t1}, {t2})")


def closed_form_iwcre_exp_poly(scale: float, coeffs, t1: float, t2: float,
                               as_printed: bool = False) -> float:
    """IWCRE of an exponential with survival ``exp(-x/scale)`` and weight
    ``sum_i a_i x^i``, via lower incomplete gamma functions."""
    if not scale > 0:
        raise ValueError(f"scale must be > 0, got {scale}")
    _check_window(t1, t2)
    coeffs = [float(a) for a in np.atleast_1d(coeffs)]
    check = validate_nonnegative(PolynomialWeight(coeffs), t1, t2)
    if not check.ok:
        raise ValueError(f"polynomial weight negative at x={check.witness}")
    lam = scale
    dbar = math.exp(-t1 / lam) - (0.0 if math.isinf(t2) else math.exp(-t2 / lam))
    z1, z2 = t1 / lam, t2 / lam
    first = 0.0
    second = 0.0
    for i, a in enumerate(coeffs):
        first += a * lam ** (i + 1) * (lower_incomplete_gamma(i + 2, z2)
                                       - lower_incomplete_gamma(i + 2, z1))
        power = lam ** i if as_printed else lam ** (i + 1)
        second += a * power * (lower_incomplete_gamma(i + 1, z2)
                               - lower_incomplete_gamma(i + 1, z1))
    return first / dbar + math.log(dbar) * second / dbar


def closed_form_icre_exp(rate: float, t1: float, t2: float) -> float:
    """Interval cumulative residual entropy of an exponential with hazard ``rate``.

    Depends on the window only through ``w = t2 - t1``; written with
    ``expm1`` for short windows.
    """
    if not rate > 0:
        raise ValueError(f"rate must be > 0, got {rate}")
    _check_window(t1, t2)
    if math.isinf(t2):
        return 1.0 / rate
    w = t2 - t1
    # log(1 - e^{-rate w}) and w e^{rate t1}/(e^{rate t1} - e^{rate t2})
    log_term = math.log(-math.expm1(-rate * w))
    ratio_term = -w / math.expm1(rate * w)
    return 1.0 / rate + log_term / rate + ratio_term


def closed_form_iwcre_exp_expweight(rate: float, alpha: float, t1: float,
                                    t2: float, as_printed: bool = False) -> float:
    """IWCRE of an exponential (hazard ``rate``) with weight ``exp(alpha x)``."""
    if not rate > 0:
        raise ValueError(f"rate must be > 0, got {rate}")
    if not alpha < rate:
        raise ValueError(f"need alpha < rate, got alpha={alpha}, rate={rate}")
    _check_window(t1, t2)
    lam = rate
    b = alpha - lam
    e1 = math.exp(b * t1)
    if math.isinf(t2):
        e2, t2e2, s2 = 0.0, 0.0, 0.0
    else:
        e2 = math.exp(b * t2)
        t2e2 = t2 * e2
        s2 = math.exp(-lam * t2)
    dbar = math.exp(-lam * t1) - s2
    middle = lam / (alpha - lam) if as_printed else lam / (lam - alpha)
    braces = (lam * (t2e2 - t1 * e1) + middle * (e2 - e1)
              + (e2 - e1) * math.log(dbar))
    return braces / ((lam - alpha) * (s2 - math.exp(-lam * t1)))


def closed_form_iwce_gev(gev: GEV, coeffs, t1: float, t2: float, cfg=None) -> float:
    """IWCE of a GEV with weight ``sum_i b_i y(x)^i`` through the Pi integrals."""
    _check_window(t1, t2)
    if t1 < gev.support_lower:
        raise ValueError(f"t1={t1} below GEV support {gev.support_lower}")
    coeffs = [float(b) for b in np.atleast_1d(coeffs)]
    check = validate_nonnegative(GEVPolynomialWeight(coeffs, gev), t1,
                                 t2 if math.isfinite(t2) else t1 + 1e3)
    if not check.ok:
        raise ValueError(f"GEV polynomial weight negative at x={check.witness}")
    d = float(gev.cdf(t2)) - float(gev.cdf(t1)) if math.isfinite(t2) else \
        1.0 - float(gev.cdf(t1))
    s2 = sum(b * pi_c(gev, i + 2, t1, t2, cfg) for i, b in enumerate(coeffs))
    s1 = sum(b * pi_c(gev, i + 1, t1, t2, cfg) for i, b in enumerate(coeffs))
    return s2 / d + math.log(d) * s1 / d
