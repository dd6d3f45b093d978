"""Checkers for the interval-entropy bounds.

Each checker evaluates both sides of one inequality and returns a
:class:`BoundReport` whose ``margin`` is oriented so that ``margin >= 0``
means the inequality holds in its stated direction. Nothing here asserts a
direction; callers decide which margins are asserted and which are reported.

Intermediate quantities (eta, alpha, the interval Shannon entropy, the
reversed failure rate, h2, M, Mbar, gamma, gammabar) are exposed as
functions of their own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .distributions import GEV, Distribution, Empirical, UnsupportedOperation
from .entropy import (
    PROPER, RATIO, TruncationInterval, conditional_expectation, delta, delta_bar,
    delta_psi_form, interval_shannon_entropy, iwce, iwcre, weighted_partial,
)
from .numerics import DEFAULT_CONFIG, gamma_function, lower_incomplete_gamma, pi_c, quad
from .oracle import fd_derivative, mc_abs_psi_difference
from .weights import GEVPolynomialWeight, PolynomialWeight, validate_nonnegative

__all__ = [
    "THEOREM_IDS",
    "BoundReport",
    "PsiMoments",
    "psi_moments",
    "gamma_partial",
    "gamma_bar_partial",
    "thm21_check",
    "thm21_iwcre_check",
    "prop21_check",
    "pi_c_substituted",
    "eta",
    "eta_bar",
    "thm22_check",
    "thm22_iwcre_check",
    "thm22_rhs_fubini",
    "thm23_alpha",
    "thm23_alpha_bar",
    "thm23_check",
    "thm23_iwcre_check",
    "reversed_failure_rate",
    "gfr_h2",
    "thm24_check",
    "thm24_rhs",
    "THM25_ROUTES",
    "thm25_lhs",
    "mean_deviation_lhs",
    "thm25_check",
    "thm25_iwce_check",
    "cor21_uniform_check",
    "cor21_exponential_check",
    "cor21_exponential_limit",
]

# the *_IWCRE ids are the survival-function analogues of the same statements
THEOREM_IDS = ("T2_1", "T2_1_IWCRE", "P2_1", "T2_2", "T2_2_IWCRE", "T2_3",
               "T2_3_IWCRE", "T2_4", "T2_5", "T2_5_IWCE", "C2_1i", "C2_1ii")

_GE = "lhs>=rhs"
_LE = "lhs<=rhs"


@dataclass
class BoundReport:
    theorem_id: str
    lhs: float
    rhs: float
    margin: float
    convention: str
    oracle_lhs: float | None = None
    oracle_agreement: bool | None = None
    # not serialized with the report; carries route values and flags
    details: dict = field(default_factory=dict, repr=False, compare=False)

    FIELDS = ("theorem_id", "lhs", "rhs", "margin", "convention", "oracle_lhs",
              "oracle_agreement")

    @property
    def holds(self) -> bool:
        return self.margin >= 0

    @property
    def vacuous(self) -> bool:
        return bool(self.details.get("vacuous", False))

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.FIELDS}


def _margin(lhs, rhs, direction):
    if lhs == rhs:  # also covers equal infinities
        return 0.0
    return lhs - rhs if direction == _GE else rhs - lhs


def _report(tid, lhs, rhs, direction, convention, **kw) -> BoundReport:
    details = kw.pop("details", {})
    details.setdefault("direction", direction)
    return BoundReport(tid, float(lhs), float(rhs), float(_margin(lhs, rhs, direction)),
                       convention, details=details, **kw)


def _psi(wf, x) -> float:
    return float(wf.psi(x))


def _need_density(dist, what):
    if isinstance(dist, Empirical) or not dist.has_density:
        raise UnsupportedOperation(f"{what} needs a density; {dist!r} has none")


# -- moments and partial entropies -------------------------------------------

class PsiMoments(NamedTuple):
    M: float
    Mbar: float


def psi_moments(dist, wf, iv: TruncationInterval, cfg=None) -> PsiMoments:
    """``M = E[psi(t2) - psi(X)]`` and ``Mbar = E[psi(X) - psi(t1)]`` on the window."""
    e = conditional_expectation(dist, iv, wf.psi, cfg)
    return PsiMoments(_psi(wf, iv.t2) - e, e - _psi(wf, iv.t1))


def gamma_partial(dist, wf, t1, t2, cfg=None) -> float:
    """``-int_{t1}^{t2} phi F log F``."""
    if not t1 < t2:
        raise ValueError(f"need t1 < t2, got ({t1}, {t2})")
    return weighted_partial(dist, wf, t1, t2, False, cfg)


def gamma_bar_partial(dist, wf, t1, t2, cfg=None) -> float:
    """``-int_{t1}^{t2} phi Fbar log Fbar``."""
    if not t1 < t2:
        raise ValueError(f"need t1 < t2, got ({t1}, {t2})")
    return weighted_partial(dist, wf, t1, t2, True, cfg)


# -- lower bound through the weighted partial entropy ------------------------

def _delta_value(dist, wf, iv, cfg, route):
    if route == "quadrature":
        return delta(dist, wf, iv, cfg)
    if route == "psi_identity":
        return delta_psi_form(dist, wf, iv, cfg)
    raise ValueError(f"unknown delta route {route!r}")


def thm21_check(dist, wf, iv: TruncationInterval, cfg=None,
                delta_route: str = "quadrature") -> BoundReport:
    """IWCE against ``[gamma + F(t2)(psi(t2)-psi(t1))]/Delta + delta (1 + log F(t1))``.

    ``delta_route`` picks how ``delta`` is evaluated (direct quadrature of
    ``phi F`` or the ``psi`` identity with a conditional mean), giving two
    independent routes to the right-hand side. With ``F(t1) = 0`` the bound
    is ``-inf`` and the report is flagged vacuous.
    """
    lhs = iwce(dist, wf, iv, cfg).value
    g = gamma_partial(dist, wf, iv.t1, iv.t2, cfg)
    d = _delta_value(dist, wf, iv, cfg, delta_route)
    dpsi = _psi(wf, iv.t2) - _psi(wf, iv.t1)
    head = (g + iv.F_t2 * dpsi) / iv.delta
    vacuous = iv.F_t1 <= 0.0
    if vacuous:
        rhs = -math.inf if d > 0 else head
    else:
        rhs = head + d * (1.0 + math.log(iv.F_t1))
    return _report("T2_1", lhs, rhs, _GE, iv.convention,
                   details={"vacuous": vacuous, "delta": d, "gamma": g,
                            "delta_route": delta_route})


def thm21_iwcre_check(dist, wf, iv: TruncationInterval, cfg=None) -> BoundReport:
    """Survival analogue, swapping F for Fbar and gamma for gammabar throughout.

    The bound reads ``[gammabar + Fbar(t2)(psi(t2)-psi(t1))]/(Fbar(t2)-Fbar(t1))
    + deltabar (1 + log Fbar(t1))`` against IWCRE. It is a literal
    transcription and is reported only.
    """
    lhs = iwcre(dist, wf, iv, cfg).value
    gb = gamma_bar_partial(dist, wf, iv.t1, iv.t2, cfg)
    db = delta_bar(dist, wf, iv, cfg)
    dpsi = _psi(wf, iv.t2) - _psi(wf, iv.t1)
    rhs = (gb + iv.Fbar_t2 * dpsi) / (iv.Fbar_t2 - iv.Fbar_t1) \
        + db * (1.0 + math.log(iv.Fbar_t1))
    return _report("T2_1_IWCRE", lhs, rhs, _GE, iv.convention,
                   details={"delta_bar": db, "gamma_bar": gb})


# -- GEV proposition -----------------------------------------------------------

def pi_c_substituted(gev: GEV, c: float, a: float, b: float, cfg=None) -> float:
    """``Pi_c(a, b)`` integrated in the ``y`` variable instead of ``x``.

    With ``dx = -sigma y^(-xi-1) dy`` the integral becomes
    ``sigma int_{y(b)}^{y(a)} y^(c-xi-2) e^(-y) dy``: a second, independent
    quadrature scheme for the same number.
    """
    if a == b:
        return 0.0
    ya, yb = float(gev.y(a)), (0.0 if math.isinf(b) else float(gev.y(b)))
    p = c - gev.xi - 2.0

    def f(y):
        y = np.asarray(y, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.exp(p * np.log(y) - y)
        return np.where(y > 0, out, 0.0)

    return gev.sigma * quad(f, yb, ya, cfg).value


def _prop21_sides(gev, theta, x, y, cfg, pi):
    gx, gy = float(gev.y(x)), (0.0 if math.isinf(y) else float(gev.y(y)))
    s_pi = sum(t * pi(gev, i + 1, x, y, cfg) for i, t in enumerate(theta))
    diff = math.exp(-gy) - math.exp(-gx)
    lhs = (gx - 1.0 + math.log(diff)) * s_pi

    def gpow(s, i):
        return np.power(gev.y(s), i)

    s_int = 0.0
    for i, t in enumerate(theta):
        if t == 0:
            continue
        if math.isinf(y):
            raise ValueError("right-hand side needs a finite y")
        s_int += t * quad(lambda s, i=i: gpow(s, i), x, y, cfg).value
    rhs = math.exp(-gy) * s_int
    return lhs, rhs


def prop21_check(gev: GEV, theta, x: float, y: float, cfg=None) -> BoundReport:
    """GEV inequality built from ``Pi_{i+1}(x, y)`` and ``int_x^y g(s)^i ds``.

    ``lhs = (g(x) - 1 + log(e^{-g(y)} - e^{-g(x)})) sum_i theta_i Pi_{i+1}(x, y)``
    and ``rhs = e^{-g(y)} sum_i theta_i int_x^y g(s)^i ds``, ``g`` the GEV
    auxiliary function. ``oracle_lhs`` recomputes ``lhs`` with the ``Pi``
    integrals in the ``y`` variable.
    """
    theta = [float(t) for t in np.atleast_1d(theta)]
    if x < gev.support_lower:
        raise ValueError(f"x={x} below GEV support {gev.support_lower}")
    if not x <= y:
        raise ValueError(f"need x <= y, got ({x}, {y})")
    if x == y:
        return _report("P2_1", 0.0, 0.0, _GE, "none", oracle_lhs=0.0,
                       oracle_agreement=True)
    chk = validate_nonnegative(GEVPolynomialWeight(theta, gev), x,
                               y if math.isfinite(y) else x + 1e3)
    if not chk.ok:
        raise ValueError(f"sum theta_i g^i negative at x={chk.witness}")
    lhs, rhs = _prop21_sides(gev, theta, x, y, cfg, pi_c)
    olhs, _ = _prop21_sides(gev, theta, x, y, cfg, pi_c_substituted)
    agree = abs(olhs - lhs) <= 1e-6 * max(1.0, abs(lhs))
    return _report("P2_1", lhs, rhs, _GE, "none", oracle_lhs=olhs, oracle_agreement=agree)


# -- upper bound through eta ----------------------------------------------------

def eta(dist, wf, x: float, cfg=None) -> float:
    """``(1/F(x)) int_0^x phi F``."""
    F = float(dist.cdf(x))
    if not F > 0:
        raise ValueError(f"eta needs F(x) > 0, got F({x}) = {F}")
    lo = max(0.0, min(dist.support_lower, x))
    pts = [p for p in dist.kinks() + wf.kinks() if math.isfinite(p)]
    val = quad(lambda s: wf.phi(s) * dist.cdf(s), lo, x, cfg, pts).value if x > lo else 0.0
    return val / F


def eta_bar(dist, wf, x: float, cfg=None) -> float:
    """``(1/Fbar(x)) int_x^inf phi Fbar``."""
    S = float(dist.sf(x))
    if not S > 0:
        raise ValueError(f"eta_bar needs Fbar(x) > 0, got Fbar({x}) = {S}")
    hi = dist.support_upper
    pts = [p for p in dist.kinks() + wf.kinks() if math.isfinite(p)]

    def f(s):
        sf = dist.sf(s)
        with np.errstate(over="ignore", invalid="ignore"):
            return np.where(sf > 0, wf.phi(s) * sf, 0.0)

    return quad(f, x, hi, cfg, pts).value / S


def _cond_mean_of(dist, iv, fn, cfg):
    """``E[fn(X) | window]`` with a scalar ``fn``, by quadrature against f/Delta."""
    pts = [p for p in dist.kinks() if math.isfinite(p)]

    def integrand(x):
        x = np.atleast_1d(x)
        vals = np.array([fn(float(v)) for v in x])
        return vals * dist.pdf(x)

    return quad(integrand, iv.t1, iv.t2, cfg, pts).value / iv.delta


def _eta_safe(dist, wf, cfg):
    def fn(x):
        return eta(dist, wf, x, cfg) if float(dist.cdf(x)) > 0 else 0.0
    return fn


def _eta_bar_safe(dist, wf, cfg):
    def fn(x):
        return eta_bar(dist, wf, x, cfg) if float(dist.sf(x)) > 0 else 0.0
    return fn


def thm22_check(dist, wf, iv: TruncationInterval, cfg=None) -> BoundReport:
    """IWCE against ``E[eta(X) | t1 <= X <= t2]`` (nested quadrature)."""
    _need_density(dist, "thm22_check")
    lhs = iwce(dist, wf, iv, cfg).value
    rhs = _cond_mean_of(dist, iv, _eta_safe(dist, wf, cfg), cfg)
    return _report("T2_2", lhs, rhs, _LE, iv.convention)


def thm22_iwcre_check(dist, wf, iv: TruncationInterval, cfg=None) -> BoundReport:
    """IWCRE against ``E[eta_bar(X) | t1 <= X <= t2]``."""
    _need_density(dist, "thm22_iwcre_check")
    lhs = iwcre(dist, wf, iv, cfg).value
    rhs = _cond_mean_of(dist, iv, _eta_bar_safe(dist, wf, cfg), cfg)
    return _report("T2_2_IWCRE", lhs, rhs, _LE, iv.convention)


def thm22_rhs_fubini(dist, wf, iv: TruncationInterval, cfg=None) -> float:
    """``E[eta(X) | window]`` as a single integral (order of integration swapped).

    ``int_0^{t1} phi F log(F(t2)/F(t1)) + int_{t1}^{t2} phi F log(F(t2)/F)``,
    divided by Delta. Used as an oracle for the nested form.
    """
    lo = max(0.0, dist.support_lower)
    pts = [p for p in dist.kinks() + wf.kinks() if math.isfinite(p)]
    total = 0.0
    if iv.t1 > lo and iv.F_t1 > 0:
        c = math.log(iv.F_t2) - math.log(iv.F_t1)
        total += c * quad(lambda s: wf.phi(s) * dist.cdf(s), lo, iv.t1, cfg, pts).value

    def inner(s):
        F = dist.cdf(s)
        with np.errstate(divide="ignore", invalid="ignore"):
            h = np.where(F > 0, F * (math.log(iv.F_t2) - np.log(np.where(F > 0, F, 1.0))),
                         0.0)
        return wf.phi(s) * h

    total += quad(inner, iv.t1, iv.t2, cfg, pts).value
    return total / iv.delta


# -- log-sum lower bound ---------------------------------------------------------

class _ZeroWeight(Exception):
    pass


def _alpha_integral(u_lo, u_hi, arg, wf, cfg):
    """``exp(int log[u phi(arg(u)) |log u|] du)`` with a split at ``u = 1``."""

    def f(u):
        u = np.asarray(u, dtype=float)
        ph = np.asarray(wf.phi(arg(u)), dtype=float)
        if np.any(ph <= 0):
            raise _ZeroWeight
        with np.errstate(divide="ignore"):
            return np.log(u) + np.log(ph) + np.log(np.abs(np.log(u)))

    pts = [1.0] if u_lo < 1.0 < u_hi else []
    try:
        val = quad(f, u_lo, u_hi, cfg, pts).value
    except _ZeroWeight:
        return 0.0
    return math.exp(val)


def thm23_alpha(dist, wf, iv: TruncationInterval, cfg=None) -> float:
    """``alpha(t1, t2)`` for the convention of ``iv``.

    ratio: ``u`` runs over ``[F(t1)/Delta, F(t2)/Delta]`` and the quantile is
    taken at ``u Delta``. proper: ``u`` runs over ``[0, 1]`` and the quantile
    is taken at ``F(t1) + u Delta``. Returns 0 when ``phi`` vanishes on the
    image.
    """
    d = iv.delta
    if iv.convention == RATIO:
        lo, hi = iv.F_t1 / d, iv.F_t2 / d

        def arg(u):
            return dist.quantile(np.clip(u * d, 0.0, 1.0))
    else:
        lo, hi = 0.0, 1.0

        def arg(u):
            return dist.quantile(np.clip(iv.F_t1 + u * d, 0.0, 1.0))
    return _alpha_integral(lo, hi, lambda u: np.clip(arg(u), iv.t1, iv.t2), wf, cfg)


def thm23_alpha_bar(dist, wf, iv: TruncationInterval, cfg=None) -> float:
    """Survival analogue ``alphabar``; the survival quantile is ``Q(1 - v)``.

    ratio: ``u`` over ``[Fbar(t2)/DeltaBar, Fbar(t1)/DeltaBar]`` (increasing
    order) at ``v = u DeltaBar``; proper: ``u`` over ``[0, 1]`` at
    ``v = Fbar(t2) + u DeltaBar``.
    """
    d = iv.delta_bar
    if iv.convention == RATIO:
        lo, hi = iv.Fbar_t2 / d, iv.Fbar_t1 / d

        def arg(u):
            return dist.quantile(np.clip(1.0 - u * d, 0.0, 1.0))
    else:
        lo, hi = 0.0, 1.0

        def arg(u):
            return dist.quantile(np.clip(1.0 - iv.Fbar_t2 - u * d, 0.0, 1.0))
    return _alpha_integral(lo, hi, lambda u: np.clip(arg(u), iv.t1, iv.t2), wf, cfg)


def thm23_check(dist, wf, iv: TruncationInterval, cfg=None) -> BoundReport:
    """IWCE against ``alpha * exp(IH)``."""
    _need_density(dist, "thm23_check")
    lhs = iwce(dist, wf, iv, cfg).value
    ih = interval_shannon_entropy(dist, iv, cfg)
    a = thm23_alpha(dist, wf, iv, cfg)
    return _report("T2_3", lhs, a * math.exp(ih), _GE, iv.convention,
                   details={"alpha": a, "ih": ih})


def thm23_iwcre_check(dist, wf, iv: TruncationInterval, cfg=None) -> BoundReport:
    """IWCRE against ``alphabar * exp(IH)``."""
    _need_density(dist, "thm23_iwcre_check")
    lhs = iwcre(dist, wf, iv, cfg).value
    ih = interval_shannon_entropy(dist, iv, cfg)
    a = thm23_alpha_bar(dist, wf, iv, cfg)
    return _report("T2_3_IWCRE", lhs, a * math.exp(ih), _GE, iv.convention,
                   details={"alpha_bar": a, "ih": ih})


# -- monotonicity in t2 ------------------------------------------------------------

def reversed_failure_rate(dist, x: float) -> float:
    """``f(x)/F(x)``."""
    _need_density(dist, "reversed_failure_rate")
    F = float(dist.cdf(x))
    if not F > 0:
        raise ValueError(f"reversed failure rate needs F(x) > 0, got F({x}) = {F}")
    return float(dist.pdf(x)) / F


def gfr_h2(dist, iv: TruncationInterval) -> float:
    """``f(t2)/(F(t2) - F(t1))``."""
    _need_density(dist, "gfr_h2")
    if not iv.delta > 0:
        raise ValueError("gfr_h2 needs F(t2) > F(t1)")
    return float(dist.pdf(iv.t2)) / iv.delta


def thm24_rhs(dist, wf, iv: TruncationInterval, cfg=None) -> float:
    """``M + (psi(t2)-psi(t1)) F(t1)/Delta - phi(t2) log(F(t2)/Delta) / lambdabar(t2)``."""
    lam = reversed_failure_rate(dist, iv.t2)
    if not lam > 0:
        raise ValueError(f"t2={iv.t2} sits at a zero of the density")
    m = psi_moments(dist, wf, iv, cfg).M
    dpsi = _psi(wf, iv.t2) - _psi(wf, iv.t1)
    return (m + dpsi * iv.F_t1 / iv.delta
            - float(wf.phi(iv.t2)) * math.log(iv.F_t2 / iv.delta) / lam)


def thm24_check(dist, wf, iv: TruncationInterval, cfg=None, h: float | None = None):
    """IWCE against the monotonicity threshold, plus the derivative residual.

    Returns ``(report, residual)`` with ``residual = |D - h2 (rhs - lhs)|``,
    ``D`` a Richardson-refined central difference of IWCE in ``t2``.
    """
    _need_density(dist, "thm24_check")
    if not math.isfinite(iv.t2):
        raise ValueError("thm24_check needs a finite t2")
    if not float(dist.pdf(iv.t2)) > 0:
        raise ValueError(f"t2={iv.t2} sits at a zero of the density")
    lhs = iwce(dist, wf, iv, cfg).value
    rhs = thm24_rhs(dist, wf, iv, cfg)
    h2 = gfr_h2(dist, iv)
    step = 1e-4 * max(1.0, iv.t2) if h is None else h

    def g(t2):
        return iwce(dist, wf, TruncationInterval.make(dist, iv.t1, t2, iv.convention),
                    cfg).value

    fd = fd_derivative(g, iv.t2, step, refine=True)
    residual = abs(fd - h2 * (rhs - lhs))
    rep = _report("T2_4", lhs, rhs, _LE, iv.convention,
                  details={"fd_derivative": fd, "h2": h2, "derivative_residual": residual})
    return rep, residual


# -- Gini-type bound ---------------------------------------------------------------

THM25_ROUTES = ("paper_integral", "double_quadrature", "monte_carlo")


def _truncated_density(dist, iv):
    d = iv.delta
    return lambda x: dist.pdf(x) / d


def _psi_inverse(wf, target, lo, hi):
    # psi is nondecreasing; plain bisection is enough for a split point
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _psi(wf, mid) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-14 * max(1.0, abs(hi)):
            break
    return 0.5 * (lo + hi)


def thm25_lhs(dist, wf, iv: TruncationInterval, cfg=None, route: str = "double_quadrature",
              n_pairs: int = 100_000, seed: int = 0) -> float:
    """Left-hand side ``E|psi(X) - psi(Y)|`` along one of three routes.

    ``paper_integral``: ``(2/DeltaBar^2) int phi Fbar (DeltaBar - Fbar)``,
    which uses the untruncated survival function. ``double_quadrature``:
    ``2 int p(x) int_{t1}^{x} (psi(x) - psi(y)) p(y) dy dx`` for the
    truncated density ``p``. ``monte_carlo``: paired sampling.
    """
    if route not in THM25_ROUTES:
        raise ValueError(f"unknown route {route!r}; choose from {THM25_ROUTES}")
    cfg = cfg or DEFAULT_CONFIG
    pts = [p for p in dist.kinks() + wf.kinks() if math.isfinite(p)]
    if route == "paper_integral":
        db = iv.delta_bar

        def f(u):
            s = dist.sf(u)
            return wf.phi(u) * s * (db - s)
        return 2.0 / db ** 2 * quad(f, iv.t1, iv.t2, cfg, pts).value
    if route == "monte_carlo":
        return mc_abs_psi_difference(dist, wf, iv, n_pairs, seed).mean
    _need_density(dist, "thm25_lhs(double_quadrature)")
    p = _truncated_density(dist, iv)

    def inner(x):
        x = np.atleast_1d(x)
        out = np.empty_like(x)
        for k, xv in enumerate(x):
            if xv <= iv.t1:
                out[k] = 0.0
                continue
            px = _psi(wf, xv)
            out[k] = quad(lambda y: (px - wf.psi(y)) * p(y), iv.t1, xv, cfg, pts).value
        return out * p(x)

    return 2.0 * quad(inner, iv.t1, iv.t2, cfg, pts).value


def mean_deviation_lhs(dist, wf, iv: TruncationInterval, cfg=None) -> float:
    """``E|psi(X) - E psi(X)|`` on the window (the weaker left-hand side)."""
    _need_density(dist, "mean_deviation_lhs")
    m = conditional_expectation(dist, iv, wf.psi, cfg)
    x_star = _psi_inverse(wf, m, iv.t1, iv.t2)
    pts = [p for p in dist.kinks() + wf.kinks() if math.isfinite(p)] + [x_star]
    return quad(lambda x: np.abs(wf.psi(x) - m) * dist.pdf(x), iv.t1, iv.t2, cfg,
                pts).value / iv.delta


def _thm25_routes(dist, wf, iv, cfg, n_pairs, seed):
    dq = thm25_lhs(dist, wf, iv, cfg, "double_quadrature")
    pi = thm25_lhs(dist, wf, iv, cfg, "paper_integral")
    mc = mc_abs_psi_difference(dist, wf, iv, n_pairs, seed)
    md = mean_deviation_lhs(dist, wf, iv, cfg)
    agree = abs(dq - mc.mean) <= 3.0 * mc.std_error
    details = {"paper_integral": pi, "double_quadrature": dq, "monte_carlo": mc.mean,
               "mc_std_error": mc.std_error, "mean_deviation": md, "seed": seed}
    return dq, mc, agree, details


def thm25_check(dist, wf, iv: TruncationInterval, cfg=None, n_pairs: int = 100_000,
                seed: int = 0) -> BoundReport:
    """``E|psi(X) - psi(Y)|`` against
    ``2 IWCRE/DeltaBar - log(DeltaBar)/DeltaBar (Mbar + (psi(t2)-psi(t1)) Fbar(t2)/DeltaBar)``.

    ``lhs`` is the double-quadrature route, ``oracle_lhs`` the Monte Carlo
    route; agreement means within 3 standard errors.
    """
    dq, mc, agree, details = _thm25_routes(dist, wf, iv, cfg, n_pairs, seed)
    db = iv.delta_bar
    mbar = psi_moments(dist, wf, iv, cfg).Mbar
    dpsi = _psi(wf, iv.t2) - _psi(wf, iv.t1)
    val = iwcre(dist, wf, iv, cfg).value
    rhs = 2.0 * val / db - math.log(db) / db * (mbar + dpsi * iv.Fbar_t2 / db)
    return _report("T2_5", dq, rhs, _LE, iv.convention, oracle_lhs=mc.mean,
                   oracle_agreement=agree, details=details)


def thm25_iwce_check(dist, wf, iv: TruncationInterval, cfg=None, n_pairs: int = 100_000,
                     seed: int = 0) -> BoundReport:
    """Past-entropy variant: ``2 IWCE/Delta - log(Delta)/Delta (M + (psi(t2)-psi(t1)) F(t1)/Delta)``."""
    dq, mc, agree, details = _thm25_routes(dist, wf, iv, cfg, n_pairs, seed)
    d = iv.delta
    m = psi_moments(dist, wf, iv, cfg).M
    dpsi = _psi(wf, iv.t2) - _psi(wf, iv.t1)
    val = iwce(dist, wf, iv, cfg).value
    rhs = 2.0 * val / d - math.log(d) / d * (m + dpsi * iv.F_t1 / d)
    return _report("T2_5_IWCE", dq, rhs, _LE, iv.convention, oracle_lhs=mc.mean,
                   oracle_agreement=agree, details=details)


# -- corollaries ---------------------------------------------------------------------

def _as_function(f_vals):
    if callable(f_vals):
        return f_vals
    xs, fs = (np.asarray(v, dtype=float) for v in f_vals)
    if xs.ndim != 1 or xs.shape != fs.shape or xs.size < 2:
        raise ValueError("tabulated f needs matching 1-d (xs, fs) arrays")
    return lambda s: np.interp(s, xs, fs)


def cor21_uniform_check(f_vals, a: float, b: float, cfg=None) -> BoundReport:
    """``int_a^b s f(s) log((b-a)/s) ds`` against
    ``(b-a) exp{(b-a)^-1 int_a^b log[s f(s) |log((b-a)/s)|] ds}``.

    ``f_vals`` is a callable or a ``(xs, fs)`` table (linear interpolation).
    """
    if not 0 <= a <= b <= 1:
        raise ValueError(f"need 0 <= a <= b <= 1, got ({a}, {b})")
    if a == b:
        return _report("C2_1i", 0.0, 0.0, _GE, "none")
    f = _as_function(f_vals)
    grid = np.linspace(a, b, 2001)[1:-1]
    fv = np.asarray(f(grid), dtype=float) * np.ones_like(grid)
    if np.any(~(fv > 0)):
        raise ValueError(f"f must be positive on (a, b); f({grid[~(fv > 0)][0]}) <= 0")
    w = b - a
    pts = [w] if a < w < b else []

    def lhs_f(s):
        s = np.asarray(s, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(s > 0, s * f(s) * np.log(w / np.where(s > 0, s, 1.0)), 0.0)

    def log_f(s):
        s = np.asarray(s, dtype=float)
        with np.errstate(divide="ignore"):
            return np.log(s) + np.log(f(s)) + np.log(np.abs(np.log(w) - np.log(s)))

    lhs = quad(lhs_f, a, b, cfg, pts).value
    rhs = w * math.exp(quad(log_f, a, b, cfg, pts).value / w)
    return _report("C2_1i", lhs, rhs, _GE, "none")


def _check_eps(eps):
    eps = [float(e) for e in np.atleast_1d(eps)]
    chk = validate_nonnegative(PolynomialWeight(eps), 0.0, math.inf)
    if not chk.ok:
        raise ValueError(f"sum eps_i x^i negative at x={chk.witness}")
    return eps


def _gbar(p, lo, hi):
    return lower_incomplete_gamma(p, hi) - lower_incomplete_gamma(p, lo)


def cor21_exponential_check(c: float, a: float, b: float, eps, cfg=None) -> BoundReport:
    """Exponential-scale inequality with ``Delta_c = e^{-a/c} - e^{-b/c}``.

    ``lhs = 2 sum_i (c Delta_c - log Delta_c) c^i eps_i gbar_{i+1}(a/c, b/c)
    - sum_i eps_i c^{i+1} 2^{-i} gbar_{i+1}(2a/c, 2b/c)``,
    ``rhs = sum_i (2 - log Delta_c/(i+1)) eps_i c^{i+1} gbar_{i+2}(a/c, b/c)
    + log Delta_c sum_i eps_i/(i+1) (a^{i+1} e^{-a/c} - b^{i+1} e^{-b/c})``,
    where ``gbar_p(u, v) = gamma(p, v) - gamma(p, u)``.
    """
    if not c > 0:
        raise ValueError(f"c must be > 0, got {c}")
    if not 0 <= a < b:
        raise ValueError(f"need 0 <= a < b, got ({a}, {b})")
    eps = _check_eps(eps)
    ea = math.exp(-a / c)
    eb = 0.0 if math.isinf(b) else math.exp(-b / c)
    dc = ea - eb
    ldc = math.log(dc)
    lhs = 0.0
    rhs = 0.0
    for i, e in enumerate(eps):
        if e == 0:
            continue
        lhs += 2.0 * (c * dc - ldc) * c ** i * e * _gbar(i + 1, a / c, b / c)
        lhs -= e * c ** (i + 1) * 2.0 ** (-i) * _gbar(i + 1, 2 * a / c, 2 * b / c)
        rhs += (2.0 - ldc / (i + 1)) * e * c ** (i + 1) * _gbar(i + 2, a / c, b / c)
        tail_b = 0.0 if math.isinf(b) else b ** (i + 1) * eb
        rhs += ldc * e / (i + 1) * (a ** (i + 1) * ea - tail_b)
    return _report("C2_1ii", lhs, rhs, _LE, "none")


def cor21_exponential_limit(eps) -> BoundReport:
    """Limit ``c = 1, a = 0, b = inf``:
    ``sum eps_i Gamma(i+1)(1 - 2^{-i-1}) <= sum eps_i Gamma(i+2)``.

    The full form evaluated at that limit gives exactly twice this
    left-hand side and twice this right-hand side.
    """
    eps = _check_eps(eps)
    lhs = math.fsum(e * gamma_function(i + 1) * (1.0 - 2.0 ** (-i - 1))
                    for i, e in enumerate(eps))
    rhs = math.fsum(e * gamma_function(i + 2) for i, e in enumerate(eps))
    return _report("C2_1ii", lhs, rhs, _LE, "none", details={"form": "limit"})
