"""Interval weighted cumulative entropies of doubly truncated lifetimes.

Numerics (adaptive quadrature, incomplete gamma), lifetime distributions,
weight functions, the interval entropy measures, checkers for the bounds
relating them, and independent oracles (Monte Carlo, ECDF plug-in, finite
differences) used to verify each closed form and identity.
"""

__version__ = "0.1.0"

from .distributions import GEV, Empirical, Exponential, Uniform  # noqa: E402
from .entropy import (  # noqa: E402
    PROPER, RATIO, TruncationInterval, icpe, icre, iwce, iwcre, wce, wcre,
)
from .numerics import DEFAULT_CONFIG, QuadratureConfig, quad  # noqa: E402
from .weights import (  # noqa: E402
    ConstantOne, ExponentialWeight, GEVPolynomialWeight, PolynomialWeight,
)

__all__ = [
    "__version__",
    "Exponential", "Uniform", "GEV", "Empirical",
    "ConstantOne", "PolynomialWeight", "ExponentialWeight", "GEVPolynomialWeight",
    "TruncationInterval", "RATIO", "PROPER",
    "wcre", "wce", "iwcre", "iwce", "icre", "icpe",
    "QuadratureConfig", "DEFAULT_CONFIG", "quad",
]
