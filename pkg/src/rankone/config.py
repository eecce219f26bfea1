"""Run configuration: a line-oriented ``section.key = value`` format.

Blank lines and ``#`` comments are ignored.  ``perturbation.f`` may repeat
(one operator per line); every other key may appear once.  See README for
the full key list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import ConfigError, InvalidSpace
from .series import PowerSeries, parse_poly, parse_rational
from .space import WeightSequence, make_space

DEFAULT_TOLERANCES = {
    "eigen": 1e-10,
    "radius": 0.05,
    "angle": 1e-8,
    "wandering": 1e-8,
    "negative_control": 0.5,
    "mask_exclusion": 2.0,  # in grid steps
}

# f = 2, z + 1, -z, 1/2 - z, z^2 - z, 1 on the Hardy space
DEFAULT_PERTURBATIONS = ("2", "1, 1", "0, -1", "1/2, -1", "0, -1, 1", "1")

_INT_KEYS = {"N", "n_max", "K", "grid", "exact_N", "lemma_n"}
_FLOAT_KEYS = {"tau", "gap", "radius"}
_KEYS = {
    "space": {"kind", "weights", "rho_min", "rho_max"},
    "perturbation": {"f", "g"},
    "numeric": _INT_KEYS | _FLOAT_KEYS,
    "tolerance": set(DEFAULT_TOLERANCES),
    "output": {"dir"},
}


@dataclass
class RunConfig:
    spaces: list
    perturbations: list
    g: PowerSeries = field(default_factory=lambda: PowerSeries.poly([1]))
    N: int = 256
    n_max: int = 32
    K: int = 12
    grid: int = 201
    radius: Optional[float] = None
    tau: Optional[float] = None
    gap: float = 10.0
    exact_N: int = 32
    lemma_n: int = 8
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    output_dir: Optional[str] = None
    threads: int = 1
    seed: int = 0

    @property
    def effective_tau(self) -> float:
        return 10.0 / math.sqrt(self.N) if self.tau is None else self.tau

    def describe(self) -> dict:
        from .series import format_poly

        return {
            "spaces": [s.name for s in self.spaces],
            "perturbations": [format_poly(f) for f in self.perturbations],
            "g": format_poly(self.g),
            "N": self.N, "n_max": self.n_max, "K": self.K, "grid": self.grid,
            "radius": self.radius, "tau": self.effective_tau, "gap": self.gap,
            "exact_N": self.exact_N, "lemma_n": self.lemma_n,
            "tolerances": dict(sorted(self.tolerances.items())),
        }


def default_config() -> RunConfig:
    """Hardy space with the six stock perturbations."""
    return RunConfig([make_space("hardy")], [parse_poly(p) for p in DEFAULT_PERTURBATIONS])


def _parse_weights(text: str, line: int) -> list:
    pairs = {}
    for item in text.split(","):
        item = item.strip()
        if ":" not in item:
            raise ConfigError(f"weight entry {item!r} is not index:value", line)
        idx, val = item.split(":", 1)
        try:
            j = int(idx)
            pairs[j] = parse_rational(val)
        except ValueError as exc:
            raise ConfigError(str(exc), line) from exc
    if sorted(pairs) != list(range(len(pairs))):
        raise ConfigError("weight indices must run 0, 1, 2, ... without gaps", line)
    return [pairs[j] for j in range(len(pairs))]


def parse_config(text: str) -> RunConfig:
    """Parse and validate config text; errors carry the offending line number."""
    seen = {}
    fs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"expected 'section.key = value', got {raw.strip()!r}", lineno)
        key, value = (s.strip() for s in body.split("=", 1))
        if "." not in key:
            raise ConfigError(f"key {key!r} has no section", lineno)
        section, name = key.split(".", 1)
        if section not in _KEYS or name not in _KEYS[section]:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if not value:
            raise ConfigError(f"empty value for {key!r}", lineno)
        if key == "perturbation.f":
            try:
                fs.append(parse_poly(value))
            except ValueError as exc:
                raise ConfigError(str(exc), lineno) from exc
            continue
        if key in seen:
            raise ConfigError(f"duplicate key {key!r} (first on line {seen[key][1]})", lineno)
        seen[key] = (value, lineno)

    def get(key, default=None):
        return seen.get(key, (default, None))

    cfg = RunConfig(spaces=[], perturbations=fs)

    # space block
    kinds, kline = get("space.kind", "hardy")
    weights, wline = get("space.weights")
    names = [k.strip().lower() for k in kinds.split(",")]
    for name in names:
        if name not in {"hardy", "bergman", "dirichlet", "custom"}:
            raise ConfigError(f"unknown space kind {name!r}", kline)
        if name == "custom":
            if weights is None:
                raise ConfigError("custom space needs space.weights", kline)
            params = {"table": _parse_weights(weights, wline)}
            for bound in ("rho_min", "rho_max"):
                val, bl = get(f"space.{bound}")
                if val is None:
                    raise ConfigError(f"custom space needs space.{bound}", kline)
                try:
                    params[bound] = parse_rational(val)
                except ValueError as exc:
                    raise ConfigError(str(exc), bl) from exc
            try:
                cfg.spaces.append(make_space("custom", params))
            except InvalidSpace as exc:
                raise InvalidSpace(f"line {wline}: {exc}") from exc
        else:
            cfg.spaces.append(make_space(name))
    if weights is not None and "custom" not in names:
        raise ConfigError("space.weights given but no custom space requested", wline)

    g, gline = get("perturbation.g")
    if g is not None:
        try:
            cfg.g = parse_poly(g)
        except ValueError as exc:
            raise ConfigError(str(exc), gline) from exc

    for key in sorted(_INT_KEYS | _FLOAT_KEYS):
        val, line = get(f"numeric.{key}")
        if val is None:
            continue
        try:
            parsed = int(val) if key in _INT_KEYS else float(Fraction(val))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"numeric.{key}: bad number {val!r}", line) from exc
        setattr(cfg, key, parsed)
    for key in DEFAULT_TOLERANCES:
        val, line = get(f"tolerance.{key}")
        if val is None:
            continue
        try:
            tol = float(Fraction(val))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"tolerance.{key}: bad number {val!r}", line) from exc
        if tol < 0:
            raise ConfigError(f"tolerance.{key} must be nonnegative", line)
        cfg.tolerances[key] = tol
    cfg.output_dir, _ = get("output.dir")

    _check(cfg, seen)
    return cfg


def _check(cfg: RunConfig, seen: dict) -> None:
    def line(key):
        return seen.get(key, (None, None))[1]

    if cfg.N < 32:
        raise ConfigError("numeric.N must be at least 32", line("numeric.N"))
    if cfg.grid < 3 or cfg.grid % 2 == 0:
        raise ConfigError("numeric.grid must be odd (the origin is a grid point) and >= 3", line("numeric.grid"))
    if cfg.n_max < 8:
        raise ConfigError("numeric.n_max must be at least 8", line("numeric.n_max"))
    if cfg.K < 8:
        raise ConfigError("numeric.K must be at least 8", line("numeric.K"))
    if cfg.gap <= 1:
        raise ConfigError("numeric.gap must exceed 1", line("numeric.gap"))
    if cfg.tau is not None and cfg.tau <= 0:
        raise ConfigError("numeric.tau must be positive", line("numeric.tau"))
    if cfg.radius is not None and cfg.radius <= 0:
        raise ConfigError("numeric.radius must be positive", line("numeric.radius"))
    if cfg.exact_N < 1 or cfg.lemma_n < 1:
        raise ConfigError("numeric.exact_N and numeric.lemma_n must be positive")
