"""Spectral verification for rank-one perturbations of weighted shifts."""

from .errors import (
    ConfigError,
    Divergent,
    InconclusiveGap,
    InconclusiveVerdict,
    InvalidSpace,
    PreconditionViolation,
    RankOneError,
)
from .series import ComplexRational, Geometric, PowerSeries, build_h0, parse_poly
from .operators import RankOneShift
from .space import WeightSequence, make_space, membership, norm_sq

__version__ = "0.1.0"

__all__ = [
    "ComplexRational",
    "ConfigError",
    "Divergent",
    "Geometric",
    "InconclusiveGap",
    "InconclusiveVerdict",
    "InvalidSpace",
    "PowerSeries",
    "PreconditionViolation",
    "RankOneError",
    "RankOneShift",
    "WeightSequence",
    "build_h0",
    "make_space",
    "membership",
    "norm_sq",
    "parse_poly",
]
