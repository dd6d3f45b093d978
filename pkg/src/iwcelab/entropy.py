"""Weighted cumulative entropies and their doubly truncated (interval) forms.

Two truncation conventions are supported for the window ``t1 < X < t2``:

``ratio``
    ``F(x)/(F(t2) - F(t1))`` and ``Fbar(x)/(Fbar(t1) - Fbar(t2))``. These can
    exceed 1 inside the window whenever ``F(t1) > 0`` (resp. ``Fbar(t2) > 0``).
``proper``
    the conditional laws ``(F(x) - F(t1))/Delta`` and
    ``(Fbar(x) - Fbar(t2))/Delta``, which stay in ``[0, 1]``.

Every integrand applies ``0 log 0 = 0`` pointwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels
from .distributions import Distribution, Empirical, UnsupportedOperation
from .numerics import DEFAULT_CONFIG, QuadratureConfig, quad
from .weights import ConstantOne, WeightFunction

__all__ = [
    "RATIO",
    "PROPER",
    "CONVENTIONS",
    "TruncationInterval",
    "EntropyValue",
    "DegenerateInterval",
    "truncated_cdf",
    "truncated_sf",
    "wcre",
    "wce",
    "iwcre",
    "iwce",
    "delta",
    "delta_bar",
    "delta_psi_form",
    "delta_bar_psi_form",
    "conditional_expectation",
    "weighted_partial",
    "iwcre_equivalent_form",
    "iwce_equivalent_form",
    "interval_partial_entropy",
    "iwce_weight_derivative_form",
    "icre",
    "icpe",
    "interval_shannon_entropy",
    "vartheta_decomposition",
]

RATIO = "ratio"
PROPER = "proper"
CONVENTIONS = (RATIO, PROPER)


class DegenerateInterval(ValueError):
    pass


@dataclass(frozen=True)
class TruncationInterval:
    """Window ``(t1, t2)`` with endpoint CDF/SF values cached.

    ``t2 = inf`` is resolved to the distribution's upper support bound.
    """

    t1: float
    t2: float
    F_t1: float
    F_t2: float
    Fbar_t1: float
    Fbar_t2: float
    convention: str = RATIO

    @classmethod
    def make(cls, dist: Distribution, t1: float, t2: float,
             convention: str = RATIO) -> "TruncationInterval":
        if convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {convention!r}")
        t1 = float(t1)
        t2 = float(t2)
        if math.isinf(t2):
            t2 = float(dist.support_upper)
        if not t1 >= 0:
            raise DegenerateInterval(f"t1 must be >= 0, got {t1}")
        if not t2 > t1:
            raise DegenerateInterval(f"need t1 < t2, got ({t1}, {t2})")
        F1 = float(dist.cdf(t1))
        F2 = 1.0 if math.isinf(t2) else float(dist.cdf(t2))
        S1 = float(dist.sf(t1))
        S2 = 0.0 if math.isinf(t2) else float(dist.sf(t2))
        if not F2 - F1 > 1e-12:
            raise DegenerateInterval(
                f"window ({t1}, {t2}) has mass {F2 - F1:.3e} <= 1e-12")
        return cls(t1, t2, F1, F2, S1, S2, convention)

    @property
    def delta(self) -> float:
        """``F(t2) - F(t1)``."""
        return self.F_t2 - self.F_t1

    @property
    def delta_bar(self) -> float:
        """``Fbar(t1) - Fbar(t2)``."""
        return self.Fbar_t1 - self.Fbar_t2

    def with_convention(self, convention: str) -> "TruncationInterval":
        if convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {convention!r}")
        return TruncationInterval(self.t1, self.t2, self.F_t1, self.F_t2,
                                  self.Fbar_t1, self.Fbar_t2, convention)


@dataclass(frozen=True)
class EntropyValue:
    value: float
    method: str
    error_estimate: float = 0.0

    def __float__(self):
        return float(self.value)


# -- truncated CDF / SF ------------------------------------------------------

def _u_past(dist, iv, x):
    F = dist.cdf(x)
    if iv.convention == PROPER:
        return np.clip((F - iv.F_t1) / iv.delta, 0.0, None)
    return F / iv.delta


def _u_res(dist, iv, x):
    S = dist.sf(x)
    if iv.convention == PROPER:
        return np.clip((S - iv.Fbar_t2) / iv.delta_bar, 0.0, None)
    return S / iv.delta_bar


def _check_in_window(iv, x):
    if not iv.t1 <= x <= iv.t2:
        raise ValueError(f"x={x} outside window [{iv.t1}, {iv.t2}]")


def truncated_cdf(dist: Distribution, iv: TruncationInterval, x: float) -> float:
    _check_in_window(iv, x)
    return float(_u_past(dist, iv, x))


def truncated_sf(dist: Distribution, iv: TruncationInterval, x: float) -> float:
    _check_in_window(iv, x)
    return float(_u_res(dist, iv, x))


# -- helpers -----------------------------------------------------------------

def _split_points(dist, wf=None, extra=()):
    pts = list(dist.kinks()) + list(extra)
    if wf is not None:
        pts += list(wf.kinks())
    return [p for p in pts if math.isfinite(p)]


def _times(phi, h):
    # phi may overflow (exp weights far in a tail) where h is exactly 0
    with np.errstate(invalid="ignore", over="ignore"):
        return np.where(h == 0, 0.0, phi * h)


def _minus_xlogx(u):
    return -kernels.xlogx(np.asarray(u, dtype=float))


def _require_density(dist, what):
    if not dist.has_density:
        raise UnsupportedOperation(f"{what} needs a density; {dist!r} has none")


def _empirical_entropy(dist: Empirical, wf, iv, residual, F1=None, F2=None):
    xs, cdf_vals = dist.step_values()
    t2 = iv.t2 if math.isfinite(iv.t2) else dist.support_upper
    F1 = iv.F_t1 if F1 is None else F1
    F2 = iv.F_t2 if F2 is None else F2
    psi_xs = np.asarray(wf.psi(xs), dtype=float)
    val = kernels.step_entropy(xs, cdf_vals, psi_xs, iv.t1, t2, F1, F2,
                               float(wf.psi(iv.t1)), float(wf.psi(t2)),
                               residual, iv.convention == PROPER)
    return EntropyValue(val, "quadrature", 0.0)


# -- whole-line measures -----------------------------------------------------

def _whole(dist, wf, cfg, residual):
    cfg = cfg or DEFAULT_CONFIG
    a, b = dist.support_lower, dist.support_upper
    if isinstance(dist, Empirical):
        iv = TruncationInterval.make(dist, a, b)
        # ratio form with a unit normalizer is the plain (un-truncated) measure
        F1 = iv.F_t1
        return _empirical_entropy(dist, wf, iv, residual, F1=F1, F2=F1 + 1.0)
    fn = dist.sf if residual else dist.cdf

    def integrand(x):
        return _times(wf.phi(x), _minus_xlogx(fn(x)))

    res = quad(integrand, a, b, cfg, _split_points(dist, wf))
    return EntropyValue(res.value, "quadrature", res.error_estimate)


def wcre(dist: Distribution, wf: WeightFunction, cfg: QuadratureConfig | None = None):
    """``-int phi Fbar log Fbar`` over the support."""
    return _whole(dist, wf, cfg, True)


def wce(dist: Distribution, wf: WeightFunction, cfg: QuadratureConfig | None = None):
    """``-int phi F log F`` over the support."""
    return _whole(dist, wf, cfg, False)


# -- interval measures -------------------------------------------------------

def _interval(dist, wf, iv, cfg, residual):
    if isinstance(dist, Empirical):
        return _empirical_entropy(dist, wf, iv, residual)
    u = _u_res if residual else _u_past

    def integrand(x):
        return _times(wf.phi(x), _minus_xlogx(u(dist, iv, x)))

    res = quad(integrand, iv.t1, iv.t2, cfg, _split_points(dist, wf))
    return EntropyValue(res.value, "quadrature", res.error_estimate)


def iwcre(dist, wf, iv: TruncationInterval, cfg=None) -> EntropyValue:
    """Interval weighted cumulative residual entropy on ``iv``."""
    return _interval(dist, wf, iv, cfg, True)


def iwce(dist, wf, iv: TruncationInterval, cfg=None) -> EntropyValue:
    """Interval weighted cumulative (past) entropy on ``iv``."""
    return _interval(dist, wf, iv, cfg, False)


def icre(dist, iv, cfg=None) -> EntropyValue:
    return iwcre(dist, ConstantOne(), iv, cfg)


def icpe(dist, iv, cfg=None) -> EntropyValue:
    return iwce(dist, ConstantOne(), iv, cfg)


def weighted_partial(dist, wf, t1, t2, residual, cfg=None) -> float:
    """Unnormalized ``-int_{t1}^{t2} phi G log G`` with ``G = Fbar`` or ``F``."""
    if t1 == t2:
        return 0.0
    fn = dist.sf if residual else dist.cdf

    def integrand(x):
        return _times(wf.phi(x), _minus_xlogx(fn(x)))

    return quad(integrand, t1, t2, cfg, _split_points(dist, wf)).value


def delta(dist, wf, iv, cfg=None) -> float:
    """``int_{t1}^{t2} phi F / (F(t2) - F(t1))``."""
    res = quad(lambda x: _times(wf.phi(x), dist.cdf(x)), iv.t1, iv.t2, cfg,
               _split_points(dist, wf))
    return res.value / iv.delta


def delta_bar(dist, wf, iv, cfg=None) -> float:
    """``int_{t1}^{t2} phi Fbar / (Fbar(t1) - Fbar(t2))``."""
    res = quad(lambda x: _times(wf.phi(x), dist.sf(x)), iv.t1, iv.t2, cfg,
               _split_points(dist, wf))
    return res.value / iv.delta_bar


def conditional_expectation(dist, iv, g, cfg=None) -> float:
    """``E[g(X) | t1 <= X <= t2]`` by quadrature against the density."""
    if isinstance(dist, Empirical):
        xs = dist.sorted_samples
        sel = xs[(xs > iv.t1) & (xs <= iv.t2)]
        return float(np.mean(g(sel)))
    _require_density(dist, "conditional_expectation")
    res = quad(lambda x: _times(g(x), dist.pdf(x)), iv.t1, iv.t2, cfg,
               _split_points(dist))
    return res.value / iv.delta


def delta_psi_form(dist, wf, iv, cfg=None) -> float:
    """``[psi(t2)F(t2) - psi(t1)F(t1)]/Delta - E[psi(X) | window]``."""
    p1, p2 = float(wf.psi(iv.t1)), float(wf.psi(iv.t2))
    return (p2 * iv.F_t2 - p1 * iv.F_t1) / iv.delta - conditional_expectation(
        dist, iv, wf.psi, cfg)


def delta_bar_psi_form(dist, wf, iv, cfg=None) -> float:
    """``[psi(t2)Fbar(t2) - psi(t1)Fbar(t1)]/DeltaBar + E[psi(X) | window]``."""
    p1 = float(wf.psi(iv.t1))
    p2 = 0.0 if iv.Fbar_t2 == 0 else float(wf.psi(iv.t2))
    return (p2 * iv.Fbar_t2 - p1 * iv.Fbar_t1) / iv.delta_bar + conditional_expectation(
        dist, iv, wf.psi, cfg)


def iwcre_equivalent_form(dist, wf, iv, cfg=None) -> EntropyValue:
    """Integration-by-parts form: ``-int phi Fbar log Fbar / DeltaBar + deltabar log DeltaBar``."""
    if iv.convention != RATIO:
        raise ValueError("the equivalent form is stated for the ratio convention")
    g = weighted_partial(dist, wf, iv.t1, iv.t2, True, cfg)
    val = g / iv.delta_bar + delta_bar(dist, wf, iv, cfg) * math.log(iv.delta_bar)
    return EntropyValue(val, "equivalent_form", 0.0)


def iwce_equivalent_form(dist, wf, iv, cfg=None) -> EntropyValue:
    if iv.convention != RATIO:
        raise ValueError("the equivalent form is stated for the ratio convention")
    g = weighted_partial(dist, wf, iv.t1, iv.t2, False, cfg)
    val = g / iv.delta + delta(dist, wf, iv, cfg) * math.log(iv.delta)
    return EntropyValue(val, "equivalent_form", 0.0)


def interval_partial_entropy(dist, iv, x_lo, x_hi, cfg=None) -> float:
    """``-int_{x_lo}^{x_hi} u log u`` with ``u`` the truncated CDF of ``iv``."""
    if not (iv.t1 <= x_lo <= x_hi <= iv.t2):
        raise ValueError(f"need t1 <= x_lo <= x_hi <= t2, got {x_lo}, {x_hi}")
    if x_lo == x_hi:
        return 0.0
    return quad(lambda x: _minus_xlogx(_u_past(dist, iv, x)), x_lo, x_hi, cfg,
                _split_points(dist)).value


def iwce_weight_derivative_form(dist, wf, iv, cfg=None, variant="lower",
                                as_printed=False) -> EntropyValue:
    """IWCE through the weight derivative and partial interval entropies.

    ``lower``: ``phi(t1) E + int phi'(x) B(x, t2) dx``.
    ``upper``: ``phi(t2) E - int phi'(y) B(t1, y) dy``; with ``as_printed``
    both signs are flipped, which yields ``-IWCE``.
    Here ``E`` is the interval cumulative past entropy and ``B`` its partial
    integral over a sub-window.
    """
    if variant not in ("lower", "upper"):
        raise ValueError(f"variant must be 'lower' or 'upper', got {variant!r}")
    cfg = cfg or DEFAULT_CONFIG
    e_full = icpe(dist, iv, cfg).value
    if variant == "lower":
        def inner(x):
            return np.array([interval_partial_entropy(dist, iv, xi, iv.t2, cfg)
                             for xi in np.ravel(x)])
        corr = quad(lambda x: _times(wf.dphi(x), inner(x)), iv.t1, iv.t2, cfg,
                    _split_points(dist, wf)).value
        return EntropyValue(float(wf.phi(iv.t1)) * e_full + corr, "equivalent_form")

    def inner(y):
        return np.array([interval_partial_entropy(dist, iv, iv.t1, yi, cfg)
                         for yi in np.ravel(y)])
    corr = quad(lambda y: _times(wf.dphi(y), inner(y)), iv.t1, iv.t2, cfg,
                _split_points(dist, wf)).value
    sign = -1.0 if as_printed else 1.0
    return EntropyValue(sign * (float(wf.phi(iv.t2)) * e_full - corr), "equivalent_form")


def interval_shannon_entropy(dist, iv, cfg=None) -> float:
    """``-int (f/Delta) log(f/Delta)`` over the window."""
    _require_density(dist, "interval_shannon_entropy")
    d = iv.delta
    return quad(lambda x: _minus_xlogx(dist.pdf(x) / d), iv.t1, iv.t2, cfg,
                _split_points(dist)).value


class VarthetaSplit(NamedTuple):
    upper: tuple[float, float]
    lower: tuple[float, float]


def vartheta_decomposition(dist, wf, iv, cfg=None) -> VarthetaSplit:
    """Two ways of splitting ``log(F/Delta)`` into a ratio and a remainder.

    ``upper``: ``log[F/(F(t2)-F)] + log[(F(t2)-F)/Delta]`` (singular at t2).
    ``lower``: ``log[F/(F-F(t1))] + log[(F-F(t1))/Delta]`` (singular at t1).
    Each returned pair sums to the ratio-convention IWCE.
    """
    if iv.convention != RATIO:
        raise ValueError("vartheta decomposition is stated for the ratio convention")
    d = iv.delta
    pts = _split_points(dist, wf)

    def term(numer, denom):
        # -phi (F/Delta) log(numer/denom), zero where F == 0
        def f(x):
            F = dist.cdf(x)
            num = numer(F)
            den = denom(F)
            with np.errstate(divide="ignore", invalid="ignore"):
                lg = np.log(num) - np.log(den)
            h = np.where(F > 0, -(F / d) * lg, 0.0)
            return _times(wf.phi(x), h)
        return quad(f, iv.t1, iv.t2, cfg, pts).value

    up = (term(lambda F: F, lambda F: iv.F_t2 - F),
          term(lambda F: iv.F_t2 - F, lambda F: d + 0 * F))
    lo = (term(lambda F: F, lambda F: F - iv.F_t1),
          term(lambda F: F - iv.F_t1, lambda F: d + 0 * F))
    return VarthetaSplit(up, lo)
