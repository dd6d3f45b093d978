"""Lifetime distributions: exponential, uniform, GEV (xi > 0) and empirical.

All evaluation methods accept scalars or arrays and return numpy values.
Each class defines one of ``cdf``/``sf`` and derives the other as ``1 - .``.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

__all__ = [
    "Distribution",
    "Exponential",
    "Uniform",
    "GEV",
    "Empirical",
    "UnsupportedOperation",
    "gev_y",
    "quantile_bisection",
    "truncated_sampler",
    "read_samples",
]


class UnsupportedOperation(TypeError):
    """Operation needs something the distribution does not provide (e.g. a pdf)."""


class Distribution:
    support_lower: float = 0.0
    support_upper: float = math.inf
    has_density: bool = True

    def cdf(self, x):
        return 1.0 - self.sf(x)

    def sf(self, x):
        return 1.0 - self.cdf(x)

    def pdf(self, x):
        raise NotImplementedError

    def quantile(self, p):
        return quantile_bisection(self, p)

    def kinks(self) -> tuple[float, ...]:
        """Abscissae where cdf/pdf are not smooth (quadrature split points)."""
        return (self.support_lower, self.support_upper)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return np.asarray(self.quantile(rng.uniform(0.0, 1.0, size=n)), dtype=float)

    def spec(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({self.spec()})"


class Exponential(Distribution):
    """Exponential lifetime with hazard ``rate`` (mean ``1/rate``)."""

    def __init__(self, rate: float):
        if not rate > 0:
            raise ValueError(f"Exponential rate must be > 0, got {rate}")
        self.rate = float(rate)

    @classmethod
    def from_scale(cls, scale: float) -> "Exponential":
        return cls(1.0 / scale)

    @property
    def scale(self) -> float:
        return 1.0 / self.rate

    def sf(self, x):
        x = np.asarray(x, dtype=float)
        return np.exp(-self.rate * np.maximum(x, 0.0))

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0, self.rate * np.exp(-self.rate * np.maximum(x, 0.0)), 0.0)

    def quantile(self, p):
        p = _check_prob(p)
        with np.errstate(divide="ignore"):
            return -np.log1p(-p) / self.rate

    def kinks(self):
        return (0.0,)

    def spec(self):
        return f"exp:rate={self.rate!r}"


class Uniform(Distribution):
    def __init__(self, lower: float = 0.0, upper: float = 1.0):
        if not lower < upper:
            raise ValueError(f"Uniform needs lower < upper, got ({lower}, {upper})")
        self.lower = float(lower)
        self.upper = float(upper)
        self.support_lower = self.lower
        self.support_upper = self.upper

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.clip((x - self.lower) / (self.upper - self.lower), 0.0, 1.0)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        inside = (x >= self.lower) & (x <= self.upper)
        return np.where(inside, 1.0 / (self.upper - self.lower), 0.0)

    def quantile(self, p):
        p = _check_prob(p)
        return self.lower + p * (self.upper - self.lower)

    def spec(self):
        return f"unif:lower={self.lower!r},upper={self.upper!r}"


class GEV(Distribution):
    """Generalized extreme value law ``F(x) = exp(-y(x))`` with shape ``xi > 0``.

    ``y(x) = (1 + xi (x - mu)/sigma)^(-1/xi)``; the support starts at
    ``mu - sigma/xi``, which is required to be nonnegative.
    """

    def __init__(self, mu: float, sigma: float, xi: float):
        if not sigma > 0:
            raise ValueError(f"GEV sigma must be > 0, got {sigma}")
        if not xi > 0:
            raise ValueError(f"GEV xi must be > 0, got {xi}")
        if mu - sigma / xi < 0:
            raise ValueError(f"GEV needs mu - sigma/xi >= 0, got {mu - sigma / xi}")
        self.mu = float(mu)
        self.sigma = float(sigma)
        self.xi = float(xi)
        self.support_lower = self.mu - self.sigma / self.xi

    def y(self, x):
        """Vectorized ``y(x)``; ``+inf`` at and below the support edge."""
        x = np.asarray(x, dtype=float)
        base = 1.0 + self.xi * (x - self.mu) / self.sigma
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(base > 0, np.power(np.where(base > 0, base, 1.0), -1.0 / self.xi),
                           np.inf)
        return out

    def dy(self, x):
        """Derivative of ``y``: ``-(1/sigma) y^(1+xi)``."""
        y = self.y(x)
        return -np.power(y, 1.0 + self.xi) / self.sigma

    def cdf(self, x):
        return np.exp(-self.y(x))

    def pdf(self, x):
        y = self.y(x)
        fin = np.isfinite(y)
        ys = np.where(fin, y, 0.0)
        return np.where(fin, np.power(ys, 1.0 + self.xi) * np.exp(-ys) / self.sigma, 0.0)

    def quantile(self, p):
        p = _check_prob(p)
        with np.errstate(divide="ignore"):
            y = -np.log(p)
            return self.mu + self.sigma * (np.power(y, -self.xi) - 1.0) / self.xi

    def kinks(self):
        return (self.support_lower,)

    def spec(self):
        return f"gev:mu={self.mu!r},sigma={self.sigma!r},xi={self.xi!r}"


class Empirical(Distribution):
    """Right-continuous ECDF of nonnegative samples.

    ``quantile`` interpolates linearly between order statistics at position
    ``(n - 1) p``. There is no density.
    """

    has_density = False

    def __init__(self, samples, source: str | None = None):
        xs = np.sort(np.asarray(samples, dtype=float).ravel())
        if xs.size < 2:
            raise ValueError("Empirical needs at least 2 samples")
        if not np.all(np.isfinite(xs)):
            raise ValueError("Empirical samples must be finite")
        if xs[0] < 0:
            raise ValueError("Empirical samples must be nonnegative")
        self.sorted_samples = xs
        self.n = xs.size
        self.source = source
        self.support_lower = float(xs[0])
        self.support_upper = float(xs[-1])

    @classmethod
    def from_file(cls, path) -> "Empirical":
        return cls(read_samples(path), source=str(path))

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.searchsorted(self.sorted_samples, x, side="right") / self.n

    def step_values(self) -> tuple[np.ndarray, np.ndarray]:
        """Distinct sample points and the ECDF value attained at each."""
        xs, counts = np.unique(self.sorted_samples, return_counts=True)
        return xs, np.cumsum(counts) / self.n

    def pdf(self, x):
        raise UnsupportedOperation("Empirical distribution has no density")

    def quantile(self, p):
        p = _check_prob(p)
        return np.quantile(self.sorted_samples, p)

    def sample(self, rng, n):
        return rng.choice(self.sorted_samples, size=n, replace=True)

    def kinks(self):
        return ()

    def spec(self):
        return f"emp:{self.source}" if self.source else f"emp:<{self.n} samples>"


def _check_prob(p):
    p = np.asarray(p, dtype=float)
    if not np.all((p >= 0) & (p <= 1)):
        raise ValueError("probabilities must lie in [0, 1]")
    return p


def gev_y(dist: GEV, x: float) -> float:
    if x < dist.support_lower:
        raise ValueError(f"x={x} below GEV support lower bound {dist.support_lower}")
    return float(dist.y(x))


def quantile_bisection(dist: Distribution, p: float, tol: float = 1e-12) -> float:
    """Scalar quantile by bracketing bisection on ``cdf``.

    Used when no closed-form inverse exists and as an independent check of
    the closed forms.
    """
    if not 0 < p < 1:
        raise ValueError(f"quantile requires 0 < p < 1, got {p}")
    lo = dist.support_lower
    hi = dist.support_upper
    if math.isinf(hi):
        hi = max(1.0, lo + 1.0)
        while float(dist.cdf(hi)) < p:
            hi = lo + 2.0 * (hi - lo)
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if float(dist.cdf(mid)) < p:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * max(1.0, abs(hi)):
            break
    return 0.5 * (lo + hi)


def truncated_sampler(dist: Distribution, t1: float, t2: float,
                      rng: np.random.Generator, n: int) -> np.ndarray:
    """Draw ``n`` values of ``X | t1 <= X <= t2`` by inverting the CDF."""
    F1 = float(dist.cdf(t1))
    F2 = float(dist.cdf(t2)) if math.isfinite(t2) else 1.0
    if not F2 > F1:
        raise ValueError(f"window ({t1}, {t2}) carries no probability mass")
    p = rng.uniform(F1, F2, size=n)
    if isinstance(dist, Empirical):
        x = dist.quantile(p)
    else:
        # keep p strictly inside (0, 1) so closed-form inverses stay finite
        p = np.clip(p, np.nextafter(0.0, 1.0), np.nextafter(1.0, 0.0))
        x = np.asarray(dist.quantile(p), dtype=float)
    return np.clip(x, t1, t2)


def read_samples(path) -> np.ndarray:
    """Parse one nonnegative real per line; blank lines are skipped.

    Raises ``ValueError`` naming the line number of the first bad entry.
    """
    values = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        token = line.strip()
        if not token:
            continue
        try:
            v = float(token)
        except ValueError:
            raise ValueError(f"{path}:{lineno}: not a number: {token!r}") from None
        if not math.isfinite(v):
            raise ValueError(f"{path}:{lineno}: non-finite value {token!r}")
        if v < 0:
            raise ValueError(f"{path}:{lineno}: negative value {v!r}")
        values.append(v)
    if len(values) < 2:
        raise ValueError(f"{path}: need at least 2 values, found {len(values)}")
    return np.asarray(values)
