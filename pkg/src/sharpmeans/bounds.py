"""Convex-combination bounds ``alpha U + (1-alpha) L < M < beta U + (1-beta) L``.

Everything is normalized to ``b = 1``, ``t = a/b > 1`` (all means involved are
symmetric and homogeneous of degree one).  The key quantity is the ratio

    R(t) = (M(t,1) - L(t,1)) / (U(t,1) - L(t,1)),

whose infimum and supremum over ``t > 1`` are the sharp constants.  Margins are
computed as ``(U - L) * (R - alpha)`` and ``(U - L) * (beta - R)``, which equal
``M - [alpha U + (1-alpha) L]`` and ``[beta U + (1-beta) L] - M`` but keep
their sign near ``t = 1`` where both sides of the inequality agree to many
digits.
"""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import grid as _grid
from .grid import GridLike
from .lemmas import SQRT2, fc_eval, g_eval
from .means import (
    Kind,
    MeanKind,
    PositivePair,
    arithmetic,
    atan_tail,
    kind_symbol,
    mean_value,
    relative_excess,
)

H = MeanKind.HARMONIC
D = MeanKind.CONTRAHARMONIC_SECOND

#: (limit as t -> 1+, limit as t -> inf) of R for the lower/upper pair (H, D)
SHARP_LIMITS: dict[MeanKind, tuple[float, float]] = {
    MeanKind.SEIFFERT: (4.0 / 9.0, 2.0 / math.pi),
    MeanKind.QUADRATIC: (0.5, SQRT2 / 2.0),
    MeanKind.CONTRAHARMONIC_FIRST: (2.0 / 3.0, 1.0),
}

_LOG_1P_SQRT2 = math.log(1.0 + SQRT2)
NEUMAN_Q_ALPHA = (1.0 - _LOG_1P_SQRT2) / ((SQRT2 - 1.0) * _LOG_1P_SQRT2)
NEUMAN_C_LAMBDA = (1.0 - _LOG_1P_SQRT2) / _LOG_1P_SQRT2
#: the Neuman constants as they are usually quoted, to four decimals
NEUMAN_QUOTED = {"ns-q": (0.3249, 1.0 / 3.0), "ns-c": (0.1345, 1.0 / 6.0)}


@dataclass(frozen=True)
class ConvexBoundQuery:
    target: Kind
    lower: Kind = H
    upper: Kind = D
    alpha: float = 0.0
    beta: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= self.beta <= 1.0:
            raise ValueError(f"need 0 <= alpha <= beta <= 1, got alpha={self.alpha}, beta={self.beta}")

    def as_dict(self) -> dict:
        return {
            "target": kind_symbol(self.target),
            "lower": kind_symbol(self.lower),
            "upper": kind_symbol(self.upper),
            "alpha": self.alpha,
            "beta": self.beta,
        }


@dataclass(frozen=True)
class Theorem:
    target: Kind
    lower: Kind
    upper: Kind
    alpha: float
    beta: float
    statement: str

    def query(self, alpha: Optional[float] = None, beta: Optional[float] = None) -> ConvexBoundQuery:
        return ConvexBoundQuery(self.target, self.lower, self.upper,
                                self.alpha if alpha is None else alpha,
                                self.beta if beta is None else beta)


THEOREMS: dict[str, Theorem] = {
    "3.1": Theorem(MeanKind.SEIFFERT, H, D, 4.0 / 9.0, 2.0 / math.pi,
                   "alpha D + (1-alpha) H < T < beta D + (1-beta) H iff alpha <= 4/9, beta >= 2/pi"),
    "3.2": Theorem(MeanKind.QUADRATIC, H, D, 0.5, SQRT2 / 2.0,
                   "p D + (1-p) H < Q < q D + (1-q) H iff p <= 1/2, q >= sqrt(2)/2"),
    "3.3": Theorem(MeanKind.CONTRAHARMONIC_FIRST, H, D, 2.0 / 3.0, 1.0,
                   "lambda D + (1-lambda) H < C < mu D + (1-mu) H iff lambda <= 2/3, mu >= 1"),
    "ns-q": Theorem(MeanKind.NEUMAN_SANDOR, MeanKind.ARITHMETIC, MeanKind.QUADRATIC,
                    NEUMAN_Q_ALPHA, 1.0 / 3.0,
                    "alpha Q + (1-alpha) A < NS < beta Q + (1-beta) A iff alpha <= 0.3249..., beta >= 1/3"),
    "ns-c": Theorem(MeanKind.NEUMAN_SANDOR, MeanKind.ARITHMETIC, MeanKind.CONTRAHARMONIC_FIRST,
                    NEUMAN_C_LAMBDA, 1.0 / 6.0,
                    "lambda C + (1-lambda) A < NS < mu C + (1-mu) A iff lambda <= 0.1345..., mu >= 1/6"),
}


# ---------------------------------------------------------------------------
# ratio functions

def _check_t(t: float) -> None:
    if not t > 1.0:
        raise ValueError(f"t must exceed 1, got {t!r}")
    if math.isinf(t):
        raise ValueError("t must be finite")


def _ratio_seiffert(t: float) -> float:
    # (T - H)/(D - H) rewritten in x = (t-1)/(t+1):
    #   (1 + x^2) K(x) / (x^2 (3 + x^2) atan x),  K = x - (1 - x^2) atan x
    # with tau = (x - atan x)/x^3 this is
    #   (1 + x^2)(1 + tau (1 - x^2)) / ((3 + x^2)(1 - x^2 tau))
    x = (t - 1.0) / (t + 1.0)
    y = x * x
    tau = atan_tail(x)
    one_minus_y = 2.0 / (t + 1.0) * (1.0 + x) if x > 0.5 else 1.0 - y
    return (1.0 + y) * (1.0 + tau * one_minus_y) / ((3.0 + y) * (1.0 - y * tau))


def _ratio_quadratic(t: float) -> float:
    return SQRT2 / 2.0 * g_eval(t)


def _ratio_contraharmonic(t: float) -> float:
    if t > 1e150:
        s = 1.0 / t
        return (1.0 + s * s) / (1.0 + s + s * s)
    return (t * t + 1.0) / (t * t + t + 1.0)


# R - lim_{t->1} R in closed forms that carry the (t-1)^2 factor explicitly,
# so the sharp lower margin stays strictly positive arbitrarily close to t = 1

# (tau - 1/3)/y = sum_{k>=1} (-1)^k y^(k-1)/(2k+3)
_SIGMA = tuple((-1) ** k / (2 * k + 3) for k in range(1, 31))


def _excess_seiffert(t: float) -> float:
    # 9(3+y)(1-y tau)(R - 4/9) = y (9 sigma + 5 + 12 tau - 5 tau y)
    x = (t - 1.0) / (t + 1.0)
    y = x * x
    tau = atan_tail(x)
    if x <= 0.5:
        sigma = 0.0
        for c in reversed(_SIGMA):
            sigma = sigma * y + c
    else:
        sigma = (tau - 1.0 / 3.0) / y
    return y * (9.0 * sigma + 5.0 + 12.0 * tau - 5.0 * tau * y) / (9.0 * (3.0 + y) * (1.0 - y * tau))


def _excess_quadratic(t: float) -> float:
    # sqrt2/2 (g - sqrt2/2) with g = h(u) and
    # sqrt2 - u = (t-1)^2 / (sqrt(1+t^2) (sqrt(2(1+t^2)) + 1 + t))
    if t > 1e100:
        return _ratio_quadratic(t) - 0.5
    r = math.sqrt(1.0 + t * t)
    u = (1.0 + t) / r
    d = (t - 1.0) ** 2 / (r * (SQRT2 * r + 1.0 + t))
    return SQRT2 / 2.0 * d * (SQRT2 * u * u + 4.0 * u + SQRT2) / (2.0 * (u + SQRT2) * (u * u + 1.0))


def _excess_contraharmonic(t: float) -> float:
    if t > 1e100:
        s = 1.0 / t
        return (1.0 - s) ** 2 / (3.0 * (1.0 + s + s * s))
    return (t - 1.0) ** 2 / (3.0 * (t * t + t + 1.0))


# lim_{t->inf} R - R, which the plain difference resolves only to ~1e-16 / (lim - R)

def _shortfall_seiffert(t: float) -> float:
    if t < 2.0:
        return (_TWO_OVER_PI_HI - _ratio_seiffert(t)) + _TWO_OVER_PI_LO
    # with a = (4/pi) atan(1/t):  (pi/2) T = (t-1)/(1-a), and
    # (2/pi) D + (1-2/pi) H - T = (2/pi)[1 - (t-1)/(t^2+1) - (t-1) a/(1-a)] + (1-2/pi) H
    a = 4.0 / math.pi * math.atan(1.0 / t)
    h = 2.0 * t / (t + 1.0)
    s = 1.0 / t
    frac = (t - 1.0) / (t * t + 1.0) if t < 1e150 else s * (1.0 - s) / (1.0 + s * s)
    bracket = 2.0 / math.pi * (1.0 - frac - (t - 1.0) * a / (1.0 - a)) + (1.0 - 2.0 / math.pi) * h
    return bracket / gap(H, D, t)


def _shortfall_quadratic(t: float) -> float:
    if t < 2.0:
        return (_SQRT2_HALF_HI - _ratio_quadratic(t)) + _SQRT2_HALF_LO
    # sqrt2/2 (1 - g) expanded in s = 1/t
    s = 1.0 / t
    q = math.sqrt(1.0 + s * s)
    num = (s * ((2.0 * SQRT2 - 2.0) + s * (2.0 * SQRT2 + s * ((2.0 * SQRT2 - 3.0) - s)))
           + (1.0 + s * (2.0 + s * (2.0 + s))) * s * s / (q + 1.0))
    den = (1.0 + s + s * s) * ((1.0 + s) * q + 2.0 * SQRT2 * s)
    return SQRT2 / 2.0 * num / den


def _complement_contraharmonic(t: float) -> float:
    # 1 - R_C = t/(t^2+t+1)
    s = 1.0 / t
    return s / (1.0 + s + s * s)


# limits at infinity as unevaluated sums hi + lo (lo from 50-digit arithmetic)
_TWO_OVER_PI_HI, _TWO_OVER_PI_LO = 2.0 / math.pi, -3.935735335036497e-17
_SQRT2_HALF_HI, _SQRT2_HALF_LO = SQRT2 / 2.0, -4.833646656726457e-17

_EXACT_LIMITS_AT_INFINITY = {
    MeanKind.SEIFFERT: (_TWO_OVER_PI_HI, _TWO_OVER_PI_LO, _shortfall_seiffert),
    MeanKind.QUADRATIC: (_SQRT2_HALF_HI, _SQRT2_HALF_LO, _shortfall_quadratic),
    MeanKind.CONTRAHARMONIC_FIRST: (1.0, 0.0, _complement_contraharmonic),
}

_EXACT_LIMITS_AT_ONE = {
    MeanKind.SEIFFERT: (Fraction(4, 9), _excess_seiffert),
    MeanKind.QUADRATIC: (Fraction(1, 2), _excess_quadratic),
    MeanKind.CONTRAHARMONIC_FIRST: (Fraction(2, 3), _excess_contraharmonic),
}

_CLOSED_FORM_RATIOS = {
    MeanKind.SEIFFERT: _ratio_seiffert,
    MeanKind.QUADRATIC: _ratio_quadratic,
    MeanKind.CONTRAHARMONIC_FIRST: _ratio_contraharmonic,
}


def ratio(target: Kind, t: float, lower: Kind = H, upper: Kind = D) -> float:
    """``(M - L)/(U - L)`` at ``(t, 1)``.

    T, Q and C against ``(H, D)`` use their closed forms; any
    other triple goes through :func:`relative_excess`, which is accurate to
    a few ulp right down to ``t -> 1``.
    """
    _check_t(t)
    if lower is H and upper is D and target in _CLOSED_FORM_RATIOS:
        return _CLOSED_FORM_RATIOS[target](t)
    el = relative_excess(lower, t)
    eu = relative_excess(upper, t)
    if eu == el:
        raise ValueError(f"upper and lower means coincide at t={t}")
    return (relative_excess(target, t) - el) / (eu - el)


def gap(lower: Kind, upper: Kind, t: float) -> float:
    """``U(t,1) - L(t,1)`` without cancellation."""
    return arithmetic(t, 1.0) * (relative_excess(upper, t) - relative_excess(lower, t))


def ratio_limits(target: Kind) -> tuple[float, float]:
    """Closed-form ``(lim_{t->1+} R, lim_{t->inf} R)`` for the (H, D) ratio."""
    try:
        return SHARP_LIMITS[target]
    except KeyError:
        raise ValueError(f"no closed-form limits for target {target!r}") from None


@dataclass(frozen=True)
class RatioProfile:
    target: Kind
    samples: tuple[tuple[float, float], ...]
    limit_at_one: float
    limit_at_infinity: float

    @property
    def increasing(self) -> bool:
        """Empirical: consecutive sampled ratios strictly increase."""
        rs = [r for _, r in self.samples]
        return all(b > a for a, b in zip(rs, rs[1:]))

    @property
    def inside_limits(self) -> bool:
        lo, hi = sorted((self.limit_at_one, self.limit_at_infinity))
        return all(lo < r < hi for _, r in self.samples)

    def as_dict(self) -> dict:
        return {
            "target": kind_symbol(self.target),
            "limit_at_one": self.limit_at_one,
            "limit_at_infinity": self.limit_at_infinity,
            "samples": [[t, r] for t, r in self.samples],
        }


def ratio_profile(target: Kind, grid: GridLike = None) -> RatioProfile:
    lim1, liminf = ratio_limits(target)
    pts = _grid.resolve(grid)
    return RatioProfile(target, tuple((t, ratio(target, t)) for t in pts), lim1, liminf)


def estimate_sharp_constants(target: Kind, grid: GridLike = None,
                             lower: Kind = H, upper: Kind = D) -> tuple[float, float]:
    """Infimum and supremum of the sampled ratio; these approach the sharp
    ``alpha`` and ``beta`` as the grid reaches toward 1 and infinity."""
    pts = _grid.resolve(grid)
    if not pts:
        raise ValueError("empty grid")
    rs = [ratio(target, t, lower, upper) for t in pts]
    return min(rs), max(rs)


# ---------------------------------------------------------------------------
# certification

@dataclass(frozen=True)
class MarginSample:
    t: float
    ratio: float
    lower_margin: float
    upper_margin: float


@dataclass(frozen=True)
class BoundCertificate:
    query: ConvexBoundQuery
    grid_size: int
    worst_lower_margin: float
    worst_upper_margin: float
    worst_lower_t: float
    worst_upper_t: float
    lower_violations: tuple[float, ...] = ()
    upper_violations: tuple[float, ...] = ()
    samples: tuple[MarginSample, ...] = field(default=(), repr=False)

    @property
    def passed(self) -> bool:
        return self.worst_lower_margin > 0 and self.worst_upper_margin > 0

    def as_dict(self, grid: GridLike = None) -> dict:
        def span(ts: Sequence[float]) -> Optional[list]:
            return [min(ts), max(ts)] if ts else None

        return {
            "query": self.query.as_dict(),
            "grid": {**_grid.describe(grid), "size": self.grid_size},
            "margins": {
                "worst_lower": self.worst_lower_margin,
                "worst_upper": self.worst_upper_margin,
                "lower_violations": len(self.lower_violations),
                "upper_violations": len(self.upper_violations),
                "lower_violation_span": span(self.lower_violations),
                "upper_violation_span": span(self.upper_violations),
            },
            "verdict": "pass" if self.passed else "fail",
            "worst_points": {
                "lower": {"t": self.worst_lower_t, "margin": self.worst_lower_margin},
                "upper": {"t": self.worst_upper_t, "margin": self.worst_upper_margin},
            },
        }


def margin_samples(query: ConvexBoundQuery, points: Iterable[float]) -> list[MarginSample]:
    """Margins as ``gap * (R - alpha)`` and ``gap * (beta - R)``; the direct
    differences of means are pure rounding noise near ``t = 1``."""
    closed = query.lower is H and query.upper is D and query.target in _EXACT_LIMITS_AT_ONE
    if closed:
        # R - alpha = (R - lim) + (lim - alpha), the second term exact in rationals
        lim, excess = _EXACT_LIMITS_AT_ONE[query.target]
        offset = float(lim - Fraction(query.alpha))
        # beta - R = (beta - lim) + (lim - R), lim carried as hi + lo
        lim_hi, lim_lo, shortfall = _EXACT_LIMITS_AT_INFINITY[query.target]
        beta_offset = (query.beta - lim_hi) - lim_lo
    out = []
    for t in points:
        r = ratio(query.target, t, query.lower, query.upper)
        g = gap(query.lower, query.upper, t)
        lower = excess(t) + offset if closed else r - query.alpha
        upper = beta_offset + shortfall(t) if closed else query.beta - r
        out.append(MarginSample(t, r, g * lower, g * upper))
    return out


def verify_double_inequality(query: ConvexBoundQuery, grid: GridLike = None) -> BoundCertificate:
    """Check ``alpha U + (1-alpha) L < M < beta U + (1-beta) L`` at every grid t."""
    pts = _grid.resolve(grid)
    if not pts:
        raise ValueError("empty grid")
    samples = margin_samples(query, pts)
    worst_lo = min(samples, key=lambda s: s.lower_margin)
    worst_hi = min(samples, key=lambda s: s.upper_margin)
    return BoundCertificate(
        query=query,
        grid_size=len(samples),
        worst_lower_margin=worst_lo.lower_margin,
        worst_upper_margin=worst_hi.upper_margin,
        worst_lower_t=worst_lo.t,
        worst_upper_t=worst_hi.t,
        lower_violations=tuple(s.t for s in samples if not s.lower_margin > 0),
        upper_violations=tuple(s.t for s in samples if not s.upper_margin > 0),
        samples=tuple(samples),
    )


def verify_theorem(theorem_id: str, grid: GridLike = None, alpha: Optional[float] = None,
                   beta: Optional[float] = None) -> BoundCertificate:
    try:
        thm = THEOREMS[theorem_id]
    except KeyError:
        raise ValueError(f"unknown theorem {theorem_id!r}; known: {', '.join(THEOREMS)}") from None
    return verify_double_inequality(thm.query(alpha, beta), grid)


# ---------------------------------------------------------------------------
# T - [c D + (1-c) H]

@dataclass(frozen=True)
class DifferenceForm:
    direct: float
    factored: float

    @property
    def sign(self) -> int:
        return (self.factored > 0) - (self.factored < 0)


def difference_form(c: float, pair: PositivePair | tuple[float, float]) -> DifferenceForm:
    """``T - [c D + (1-c) H]`` evaluated directly and through ``b * w(t) * f_c(t)``
    where ``w(t) = [c(t+1)(t^3+1) + 2(1-c)t(t^2+1)] / [2(t+1)(t^2+1) atan((t-1)/(t+1))]``.

    The factored value is the reliable one near the diagonal.
    """
    if not 0.0 < c < 1.0:
        raise ValueError(f"c must lie in (0, 1), got {c!r}")
    if not isinstance(pair, PositivePair):
        pair = PositivePair(*pair)
    direct = (mean_value(MeanKind.SEIFFERT, pair)
              - (c * mean_value(D, pair) + (1.0 - c) * mean_value(H, pair)))
    b = pair.lo
    t = pair.hi / pair.lo
    if t == 1.0:
        return DifferenceForm(direct, 0.0)
    weight = ((c * (t + 1.0) * (t ** 3 + 1.0) + 2.0 * (1.0 - c) * t * (t * t + 1.0))
              / (2.0 * (t + 1.0) * (t * t + 1.0) * math.atan((t - 1.0) / (t + 1.0))))
    return DifferenceForm(direct, b * weight * fc_eval(c, t))


# ---------------------------------------------------------------------------
# the classical chain H < G < L < I < A < T < Q < C < D

CHAIN: tuple[MeanKind, ...] = (
    MeanKind.HARMONIC,
    MeanKind.GEOMETRIC,
    MeanKind.LOGARITHMIC,
    MeanKind.IDENTRIC,
    MeanKind.ARITHMETIC,
    MeanKind.SEIFFERT,
    MeanKind.QUADRATIC,
    MeanKind.CONTRAHARMONIC_FIRST,
    MeanKind.CONTRAHARMONIC_SECOND,
)


@dataclass(frozen=True)
class ChainReport:
    checked: int
    violations: int
    first_violation: Optional[tuple[float, float, str]] = None

    @property
    def passed(self) -> bool:
        return self.violations == 0


def verify_chain(pairs: Iterable[tuple[float, float]], chain: Sequence[Kind] = CHAIN) -> ChainReport:
    """Count pairs for which the evaluated means fail to increase strictly along ``chain``."""
    checked = bad = 0
    first = None
    for a, b in pairs:
        pair = PositivePair(a, b)
        vals = [mean_value(k, pair) for k in chain]
        checked += 1
        for i in range(len(vals) - 1):
            if not vals[i] < vals[i + 1]:
                bad += 1
                if first is None:
                    first = (a, b, f"{kind_symbol(chain[i])} < {kind_symbol(chain[i + 1])}")
                break
    return ChainReport(checked, bad, first)
