"""Distribution/weight mini-language and the run-spec record used by the CLI.

Distributions: ``exp:rate=1`` (or ``exp:scale=2``), ``unif:lower=0,upper=1``,
``gev:mu=2,sigma=1,xi=0.5``, ``emp:<path>``.
Weights: ``const``, ``poly:1,0.5``, ``exp:0.3``, ``gevpoly:1,0.5`` (needs a
GEV distribution).

Every parsed object has a canonical string (``spec()``); parsing the
canonical string again gives the same canonical string.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, asdict, fields

from .distributions import GEV, Empirical, Exponential, Uniform
from .entropy import CONVENTIONS
from .numerics import QuadratureConfig
from .weights import ConstantOne, ExponentialWeight, GEVPolynomialWeight, PolynomialWeight

__all__ = [
    "SpecError",
    "COMMANDS",
    "MEASURES",
    "CLOSED_FORM_MEASURES",
    "parse_dist",
    "parse_weight",
    "parse_real",
    "parse_axis",
    "RunSpec",
    "SweepCell",
]


class SpecError(ValueError):
    """Malformed spec; ``token`` names the offending piece of input."""

    def __init__(self, message, token=None):
        super().__init__(message if token is None else f"{message}: {token!r}")
        self.token = token


COMMANDS = ("compute", "sweep", "verify", "scan-monotonicity", "ingest")
CLOSED_FORM_MEASURES = ("cf_icre", "cf_iwcre_poly", "cf_iwcre_expw", "cf_iwce_gev")
MEASURES = ("wcre", "wce", "iwcre", "iwce", "icre", "icpe", "ih") + CLOSED_FORM_MEASURES


def parse_real(token: str, name: str = "value") -> float:
    t = token.strip()
    if t in ("inf", "+inf", "Inf", "infinity"):
        return math.inf
    try:
        v = float(t)
    except ValueError:
        raise SpecError(f"bad {name}", token) from None
    if math.isnan(v):
        raise SpecError(f"bad {name}", token)
    return v


def _kv(body: str, allowed, family: str):
    out = {}
    for part in body.split(","):
        if "=" not in part:
            raise SpecError(f"{family}: expected key=value", part)
        k, v = (s.strip() for s in part.split("=", 1))
        if k not in allowed:
            raise SpecError(f"{family}: unknown parameter", k)
        if k in out:
            raise SpecError(f"{family}: repeated parameter", k)
        out[k] = parse_real(v, k)
    missing = [k for k in allowed if k not in out]
    return out, missing


def parse_dist(text: str):
    """Build a distribution from its mini-language string."""
    family, _, body = text.strip().partition(":")
    try:
        if family == "exp":
            if body.startswith("scale"):
                kv, missing = _kv(body, ("scale",), "exp")
                if missing:
                    raise SpecError("exp: missing parameter", missing[0])
                return Exponential.from_scale(kv["scale"])
            kv, missing = _kv(body, ("rate",), "exp")
            if missing:
                raise SpecError("exp: missing parameter", missing[0])
            return Exponential(kv["rate"])
        if family == "unif":
            kv, missing = _kv(body, ("lower", "upper"), "unif")
            if missing:
                raise SpecError("unif: missing parameter", missing[0])
            return Uniform(kv["lower"], kv["upper"])
        if family == "gev":
            kv, missing = _kv(body, ("mu", "sigma", "xi"), "gev")
            if missing:
                raise SpecError("gev: missing parameter", missing[0])
            return GEV(kv["mu"], kv["sigma"], kv["xi"])
        if family == "emp":
            if not body:
                raise SpecError("emp: missing path", text)
            return Empirical.from_file(body)
    except SpecError:
        raise
    except (ValueError, OSError) as exc:
        raise SpecError(str(exc), text) from None
    raise SpecError("unknown distribution family", family)


def _reals(body: str, family: str):
    if not body:
        raise SpecError(f"{family}: missing coefficients", body)
    return [parse_real(p, f"{family} coefficient") for p in body.split(",")]


def parse_weight(text: str, dist=None):
    """Build a weight function; ``gevpoly`` binds to ``dist`` (a GEV)."""
    family, _, body = text.strip().partition(":")
    if family == "const" and not body:
        return ConstantOne()
    if family == "poly":
        return PolynomialWeight(_reals(body, "poly"))
    if family == "exp":
        vals = _reals(body.removeprefix("alpha="), "exp")
        if len(vals) != 1:
            raise SpecError("exp weight takes one parameter", body)
        return ExponentialWeight(vals[0])
    if family == "gevpoly":
        if not isinstance(dist, GEV):
            raise SpecError("gevpoly weight needs a gev distribution", text)
        return GEVPolynomialWeight(_reals(body, "gevpoly"), dist)
    raise SpecError("unknown weight family", text)


def parse_axis(text: str, name: str) -> list[float]:
    """``start:stop:num`` (inclusive linspace), a comma list, or one value."""
    t = text.strip()
    if not t:
        raise SpecError(f"empty {name} axis", text)
    if ":" in t:
        parts = t.split(":")
        if len(parts) != 3:
            raise SpecError(f"{name} axis must be start:stop:num", text)
        a, b = parse_real(parts[0], name), parse_real(parts[1], name)
        try:
            n = int(parts[2])
        except ValueError:
            raise SpecError(f"{name} axis count", parts[2]) from None
        if n < 1:
            raise SpecError(f"{name} axis count must be >= 1", parts[2])
        if n == 1:
            return [a]
        step = (b - a) / (n - 1)
        return [a + k * step for k in range(n - 1)] + [b]
    return [parse_real(p, name) for p in t.split(",")]


def _fmt_real(v: float) -> str:
    return "inf" if v == math.inf else repr(float(v))


@dataclass
class RunSpec:
    command: str
    dist_spec: str = "exp:rate=1"
    weight_spec: str = "const"
    t1: float = 0.0
    t2: float = math.inf
    convention: str = "ratio"
    measure: str = "iwce"
    grid: dict = field(default_factory=dict)
    seed: int = 0
    tolerances: dict = field(default_factory=dict)
    as_printed: bool = False
    output_path: str | None = None
    format: str = "json"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise SpecError("unknown command", self.command)
        if self.convention not in CONVENTIONS + ("both",):
            raise SpecError("unknown convention", self.convention)
        if self.measure not in MEASURES:
            raise SpecError("unknown measure", self.measure)
        if self.format not in ("json", "csv"):
            raise SpecError("unknown format", self.format)
        bad = set(self.tolerances) - {"abs_tol", "rel_tol", "max_subdivisions"}
        if bad:
            raise SpecError("unknown tolerance", sorted(bad)[0])
        self.t1 = float(self.t1)
        self.t2 = float(self.t2)
        self.seed = int(self.seed)

    def quad_config(self) -> QuadratureConfig:
        return QuadratureConfig(**self.tolerances)

    def conventions(self) -> tuple[str, ...]:
        return CONVENTIONS if self.convention == "both" else (self.convention,)

    def dist(self):
        return parse_dist(self.dist_spec)

    def weight(self, dist=None):
        return parse_weight(self.weight_spec, dist if dist is not None else self.dist())

    def canonical(self) -> str:
        """Canonical one-line form; fixed field order, canonical sub-specs."""
        d = parse_dist(self.dist_spec)
        w = parse_weight(self.weight_spec, d)
        parts = [self.command, f"--dist {d.spec()}", f"--weight {w.spec()}",
                 f"--t1 {_fmt_real(self.t1)}", f"--t2 {_fmt_real(self.t2)}",
                 f"--convention {self.convention}", f"--measure {self.measure}",
                 f"--seed {self.seed}", f"--format {self.format}"]
        for k in sorted(self.grid):
            parts.append(f"--{k.replace('_', '-')} {self.grid[k]}")
        for k in sorted(self.tolerances):
            parts.append(f"--{k.replace('_', '-')} {self.tolerances[k]!r}")
        if self.as_printed:
            parts.append("--as-printed")
        if self.output_path:
            parts.append(f"--output {self.output_path}")
        return " ".join(parts)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["t1"] = _fmt_real(self.t1)
        d["t2"] = _fmt_real(self.t2)
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "RunSpec":
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise SpecError("unknown run-spec field", sorted(extra)[0])
        data = dict(data)
        for k in ("t1", "t2"):
            if isinstance(data.get(k), str):
                data[k] = parse_real(data[k], k)
        return cls(**data)

    @classmethod
    def from_file(cls, path) -> "RunSpec":
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecError(f"{path}: invalid JSON at line {exc.lineno}", path) from None
        if not isinstance(data, dict):
            raise SpecError(f"{path}: run spec must be a JSON object", path)
        return cls.from_dict(data)


@dataclass
class SweepCell:
    t1: float
    t2: float
    value: float | None
    error_estimate: float | None
    converged: bool
    status: str = "ok"  # ok | skipped | nonconverged
