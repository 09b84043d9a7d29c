"""Bivariate means and sharp convex-combination bounds between the harmonic
and second contraharmonic means."""

from .bounds import (
    THEOREMS,
    BoundCertificate,
    ConvexBoundQuery,
    estimate_sharp_constants,
    ratio,
    verify_chain,
    verify_double_inequality,
    verify_theorem,
)
from .grid import DEFAULT_GRID, GridSpec
from .lemmas import find_derivative_cascade, lemma_report, verify_sign
from .means import (
    DomainError,
    MeanKind,
    PositivePair,
    Power,
    mean_value,
    parse_kind,
    power_mean,
    relative_excess,
)

__all__ = [
    "THEOREMS", "BoundCertificate", "ConvexBoundQuery", "estimate_sharp_constants", "ratio",
    "verify_chain", "verify_double_inequality", "verify_theorem", "DEFAULT_GRID", "GridSpec",
    "find_derivative_cascade", "lemma_report", "verify_sign", "DomainError", "MeanKind",
    "PositivePair", "Power", "mean_value", "parse_kind", "power_mean", "relative_excess",
]

__version__ = "0.1.0"
