"""Independent verification backends: Monte Carlo, ECDF plug-in, finite differences.

All sampling goes through ``numpy.random.Generator`` with the PCG64 bit
generator seeded explicitly, so a fixed seed gives bit-identical estimates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

from . import kernels
from .distributions import Distribution, truncated_sampler
from .entropy import PROPER, TruncationInterval

__all__ = [
    "RNG_ALGORITHM",
    "MCEstimate",
    "make_rng",
    "mc_conditional_expectation",
    "ecdf_plugin_entropy",
    "mc_abs_psi_difference",
    "fd_derivative",
]

RNG_ALGORITHM = "PCG64"
N_BOOTSTRAP = 200


@dataclass(frozen=True)
class MCEstimate:
    mean: float
    std_error: float
    n: int
    seed: int

    def to_dict(self):
        return asdict(self)

    def within(self, value: float, k: float = 3.0) -> bool:
        """``|mean - value| <= k * std_error``."""
        return abs(self.mean - value) <= k * self.std_error


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def mc_conditional_expectation(dist: Distribution, iv: TruncationInterval, g,
                               n: int = 100_000, seed: int = 0) -> MCEstimate:
    """Sample mean of ``g(X)`` over draws of ``X | t1 <= X <= t2``."""
    if n < 100:
        raise ValueError("mc_conditional_expectation needs n >= 100")
    rng = make_rng(seed)
    x = truncated_sampler(dist, iv.t1, iv.t2, rng, n)
    gx = np.asarray(g(x), dtype=float) * np.ones_like(x)
    bad = ~np.isfinite(gx)
    if bad.any():
        raise ValueError(f"g is not finite at draw x={x[bad][0]!r}")
    return MCEstimate(float(gx.mean()), float(gx.std(ddof=1) / math.sqrt(n)), n, seed)


def _ecdf_at(xs, cum, t):
    k = np.searchsorted(xs, t, side="right")
    return 0.0 if k == 0 else float(cum[k - 1])


def _plugin(xs, cum, psi_xs, psi_t1, psi_t2, t1, t2, residual, proper):
    F1 = _ecdf_at(xs, cum, t1)
    F2 = _ecdf_at(xs, cum, t2)
    if not F2 > F1:
        return math.nan
    return kernels.step_entropy(xs, cum, psi_xs, t1, t2, F1, F2, psi_t1, psi_t2,
                                residual, proper)


def ecdf_plugin_entropy(dist: Distribution, wf, iv: TruncationInterval,
                        measure: str = "iwce", n: int = 100_000, seed: int = 0,
                        cfg=None, n_boot: int = N_BOOTSTRAP) -> MCEstimate:
    """Plug-in IWCE/IWCRE from the ECDF of ``n`` draws of the parent law.

    The step-function integral is exact (``psi`` differences times
    ``-u log u``); the standard error is the spread of ``n_boot`` bootstrap
    replicates. Draws come from the untruncated law so that the ratio
    convention, which needs ``F(t1)`` itself, is estimable.
    """
    if measure not in ("iwce", "iwcre"):
        raise ValueError(f"measure must be 'iwce' or 'iwcre', got {measure!r}")
    if n < 1000:
        raise ValueError("ecdf_plugin_entropy needs n >= 1000")
    rng = make_rng(seed)
    xs = np.sort(dist.sample(rng, n))
    t2 = iv.t2 if math.isfinite(iv.t2) else float(xs[-1])
    psi_xs = np.asarray(wf.psi(xs), dtype=float)
    psi_t1, psi_t2 = float(wf.psi(iv.t1)), float(wf.psi(t2))
    residual = measure == "iwcre"
    proper = iv.convention == PROPER
    cum = np.arange(1, n + 1) / n
    est = _plugin(xs, cum, psi_xs, psi_t1, psi_t2, iv.t1, t2, residual, proper)
    if not math.isfinite(est):
        raise ValueError("no sample fell inside the window")
    reps = np.empty(n_boot)
    for r in range(n_boot):
        counts = np.bincount(rng.integers(0, n, size=n), minlength=n)
        reps[r] = _plugin(xs, np.cumsum(counts) / n, psi_xs, psi_t1, psi_t2,
                          iv.t1, t2, residual, proper)
    reps = reps[np.isfinite(reps)]
    se = float(reps.std(ddof=1)) if reps.size > 1 else 0.0
    return MCEstimate(float(est), se, n, seed)


def mc_abs_psi_difference(dist: Distribution, wf, iv: TruncationInterval,
                          n_pairs: int = 100_000, seed: int = 0,
                          same_draws: bool = False) -> MCEstimate:
    """Mean of ``|psi(X) - psi(Y)|`` for independent truncated pairs.

    ``same_draws`` pairs each draw with itself (smoke test; the result is 0).
    """
    if n_pairs < 100:
        raise ValueError("mc_abs_psi_difference needs n_pairs >= 100")
    rng = make_rng(seed)
    x = truncated_sampler(dist, iv.t1, iv.t2, rng, n_pairs)
    y = x if same_draws else truncated_sampler(dist, iv.t1, iv.t2, rng, n_pairs)
    px = np.asarray(wf.psi(x), dtype=float)
    py = px if same_draws else np.asarray(wf.psi(y), dtype=float)
    mean, sd = kernels.pair_abs_diff_stats(px, py)
    return MCEstimate(mean, sd / math.sqrt(n_pairs), n_pairs, seed)


def fd_derivative(f, x: float, h: float, refine: bool = True) -> float:
    """Central difference of ``f`` at ``x``; one Richardson step if ``refine``."""
    def central(step):
        lo, hi = f(x - step), f(x + step)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError(f"non-finite evaluation near x={x} (step {step})")
        return (hi - lo) / (2.0 * step)

    d_h = central(h)
    if not refine:
        return d_h
    d_half = central(h / 2.0)
    return (4.0 * d_half - d_h) / 3.0
