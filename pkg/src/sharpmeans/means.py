"""Bivariate means of two positive reals.

Every mean is evaluated on the ordered pair ``lo <= hi`` as ``hi * F(r)`` or
``A * F(x)`` with ``r = lo/hi`` and ``x = (hi - lo)/(hi + lo)``.  Ordering first
makes each mean bit-for-bit symmetric, and the scaled forms keep ``C``, ``D``
and friends finite for inputs near the top of the double range.

The 0/0 forms (Seiffert, Neuman-Sandor, logarithmic, identric) switch to a
short even power series in ``x`` inside ``|x| < SERIES_THRESHOLD``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

__all__ = [
    "DomainError",
    "PositivePair",
    "MeanKind",
    "Power",
    "Kind",
    "SERIES_THRESHOLD",
    "POWER_ZERO_THRESHOLD",
    "parse_kind",
    "kind_symbol",
    "mean_value",
    "seiffert_stable",
    "power_mean",
    "relative_excess",
    "harmonic",
    "geometric",
    "logarithmic",
    "identric",
    "arithmetic",
    "seiffert",
    "neuman_sandor",
    "quadratic",
    "contraharmonic_first",
    "contraharmonic_second",
]

#: |x| below which the removable-singularity means use their series.
SERIES_THRESHOLD = 1e-4
#: |p| below which the power mean is taken to be the geometric mean.
POWER_ZERO_THRESHOLD = 1e-8
#: x above which relative_excess falls back to the closed forms.
_EXCESS_SERIES_LIMIT = 0.5
_EXCESS_TERMS = 30


class DomainError(ValueError):
    """Raised for a non-positive or non-finite mean argument."""


@dataclass(frozen=True, slots=True)
class PositivePair:
    """Two strictly positive, finite reals.  No ordering is implied."""

    a: float
    b: float

    def __post_init__(self) -> None:
        for name in ("a", "b"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise DomainError(f"{name} must be a real number, got {v!r}")
            if not math.isfinite(v) or v <= 0:
                raise DomainError(f"{name} must be positive and finite, got {v!r}")
            object.__setattr__(self, name, float(v))

    @property
    def lo(self) -> float:
        return min(self.a, self.b)

    @property
    def hi(self) -> float:
        return max(self.a, self.b)

    @property
    def ratio(self) -> float:
        """``max/min``, the t = a/b >= 1 of the normalized problem."""
        return self.hi / self.lo

    def scaled(self, s: float) -> "PositivePair":
        return PositivePair(self.a * s, self.b * s)


class MeanKind(Enum):
    HARMONIC = "H"
    GEOMETRIC = "G"
    LOGARITHMIC = "L"
    IDENTRIC = "I"
    ARITHMETIC = "A"
    SEIFFERT = "T"
    NEUMAN_SANDOR = "NS"
    QUADRATIC = "Q"
    CONTRAHARMONIC_FIRST = "C"
    CONTRAHARMONIC_SECOND = "D"


@dataclass(frozen=True, slots=True)
class Power:
    """The power mean ``M_p``; ``Power(0)`` is the geometric mean."""

    p: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.p):
            raise ValueError(f"power mean exponent must be finite, got {self.p!r}")
        object.__setattr__(self, "p", float(self.p))


Kind = Union[MeanKind, Power]

_ALIASES = {
    "harmonic": MeanKind.HARMONIC,
    "geometric": MeanKind.GEOMETRIC,
    "logarithmic": MeanKind.LOGARITHMIC,
    "identric": MeanKind.IDENTRIC,
    "arithmetic": MeanKind.ARITHMETIC,
    "seiffert": MeanKind.SEIFFERT,
    "neuman-sandor": MeanKind.NEUMAN_SANDOR,
    "neuman_sandor": MeanKind.NEUMAN_SANDOR,
    "quadratic": MeanKind.QUADRATIC,
    "contraharmonic": MeanKind.CONTRAHARMONIC_FIRST,
    "contraharmonic1": MeanKind.CONTRAHARMONIC_FIRST,
    "contraharmonic2": MeanKind.CONTRAHARMONIC_SECOND,
}


def parse_kind(name: str) -> Kind:
    """Parse ``H``, ``T``, ``NS``, ``seiffert``, ``M2.5`` and similar names.

    Raises ``ValueError`` for anything unrecognized.
    """
    key = name.strip()
    for kind in MeanKind:
        if key.upper() == kind.value:
            return kind
    if key.lower() in _ALIASES:
        return _ALIASES[key.lower()]
    if key[:1] in ("M", "m") and len(key) > 1:
        try:
            return Power(float(key[1:]))
        except ValueError:
            pass
    raise ValueError(f"unknown mean {name!r}")


def kind_symbol(kind: Kind) -> str:
    if isinstance(kind, Power):
        return f"M{kind.p:g}"
    return kind.value


# ---------------------------------------------------------------------------
# even power series used near the diagonal
#
# Each tuple holds c_k with  f(x) = sum_k c_k * y**k,  y = x*x,  k = 0, 1, ...

def _horner(coeffs: tuple[float, ...], y: float, n: int) -> float:
    acc = 0.0
    for c in reversed(coeffs[:n]):
        acc = acc * y + c
    return acc


# (x - atan x) / x**3
_ATAN_TAIL = tuple((-1) ** k / (2 * k + 3) for k in range(_EXCESS_TERMS))
# (atanh x - x) / x**3
_ATANH_TAIL = tuple(1.0 / (2 * k + 3) for k in range(_EXCESS_TERMS))


def _asinh_tail() -> tuple[float, ...]:
    # (x - asinh x) / x**3;  asinh x = sum (-1)^k binom(2k,k)/4^k x^(2k+1)/(2k+1)
    out = []
    b = 1.0
    for k in range(1, _EXCESS_TERMS + 1):
        b *= (2 * k - 1) / (2 * k)
        out.append(-((-1) ** k) * b / (2 * k + 1))
    return tuple(out)


_ASINH_TAIL = _asinh_tail()
# log(I/A) / x**2 = -sum_{k>=1} x^(2k-2) / (2k(2k+1))
_IDENTRIC_LOG = tuple(-1.0 / ((2 * k) * (2 * k + 1)) for k in range(1, _EXCESS_TERMS + 1))

# The short series below stop at x**6: for |x| < 1e-4 the next term is
# below 5e-26.

def _x_over_atan(x: float) -> float:
    """x / atan(x), via the series when |x| is small."""
    if abs(x) < SERIES_THRESHOLD:
        y = x * x
        return 1.0 + y * (1.0 / 3.0 + y * (-4.0 / 45.0 + y * (44.0 / 945.0)))
    return x / math.atan(x)


def _x_over_asinh(x: float) -> float:
    if abs(x) < SERIES_THRESHOLD:
        y = x * x
        return 1.0 + y * (1.0 / 6.0 + y * (-17.0 / 360.0 + y * (367.0 / 15120.0)))
    return x / math.asinh(x)


def _x_over_atanh(x: float) -> float:
    y = x * x
    return 1.0 - y * (1.0 / 3.0 + y * (4.0 / 45.0 + y * (44.0 / 945.0)))


def _log_r(lo: float, hi: float, r: float) -> float:
    if r > 0.0:
        return math.log(r)
    return math.log(lo) - math.log(hi)


def _ordered(a: float, b: float) -> tuple[float, float]:
    return (a, b) if a <= b else (b, a)


def _clamp(v: float, lo: float, hi: float) -> float:
    # rounding guard; every mean lies in [lo, hi]
    return lo if v < lo else hi if v > hi else v


# ---------------------------------------------------------------------------
# the means, on raw floats (callers validate)

def harmonic(a: float, b: float) -> float:
    lo, hi = _ordered(a, b)
    return _clamp(lo * (2.0 / (1.0 + lo / hi)), lo, hi)


def geometric(a: float, b: float) -> float:
    lo, hi = _ordered(a, b)
    return _clamp(math.sqrt(lo) * math.sqrt(hi), lo, hi)


def arithmetic(a: float, b: float) -> float:
    lo, hi = _ordered(a, b)
    return 0.5 * lo + 0.5 * hi


def logarithmic(a: float, b: float) -> float:
    lo, hi = _ordered(a, b)
    r = lo / hi
    x = (1.0 - r) / (1.0 + r)
    if x < SERIES_THRESHOLD:
        return _clamp(arithmetic(lo, hi) * _x_over_atanh(x), lo, hi)
    return _clamp(hi * ((1.0 - r) / -_log_r(lo, hi, r)), lo, hi)


def identric(a: float, b: float) -> float:
    lo, hi = _ordered(a, b)
    r = lo / hi
    x = (1.0 - r) / (1.0 + r)
    if x < SERIES_THRESHOLD:
        y = x * x
        return _clamp(arithmetic(lo, hi) * math.exp(-y * (1.0 / 6.0 + y * (0.05 + y / 42.0))), lo, hi)
    if r == 0.0:
        return hi / math.e
    return _clamp(hi * math.exp(r * math.log(r) / (r - 1.0) - 1.0), lo, hi)


def seiffert(a: float, b: float) -> float:
    lo, hi = _ordered(a, b)
    r = lo / hi
    x = (1.0 - r) / (1.0 + r)
    return _clamp(arithmetic(lo, hi) * _x_over_atan(x), lo, hi)


def neuman_sandor(a: float, b: float) -> float:
    lo, hi = _ordered(a, b)
    r = lo / hi
    x = (1.0 - r) / (1.0 + r)
    return _clamp(arithmetic(lo, hi) * _x_over_asinh(x), lo, hi)


def quadratic(a: float, b: float) -> float:
    lo, hi = _ordered(a, b)
    r = lo / hi
    return _clamp(hi * math.sqrt((1.0 + r * r) * 0.5), lo, hi)


def contraharmonic_first(a: float, b: float) -> float:
    lo, hi = _ordered(a, b)
    r = lo / hi
    return _clamp(hi * ((1.0 + r * r) / (1.0 + r)), lo, hi)


def contraharmonic_second(a: float, b: float) -> float:
    lo, hi = _ordered(a, b)
    r = lo / hi
    r2 = r * r
    return _clamp(hi * ((1.0 + r2 * r) / (1.0 + r2)), lo, hi)


def _power(p: float, a: float, b: float) -> float:
    if p == -1.0:
        return harmonic(a, b)
    if p == 1.0:
        return arithmetic(a, b)
    if p == 2.0:
        return quadratic(a, b)
    if abs(p) < POWER_ZERO_THRESHOLD:
        return geometric(a, b)
    lo, hi = _ordered(a, b)
    log_r = _log_r(lo, hi, lo / hi)
    # log((1 + r^|p|)/2) / p, scaled from whichever endpoint keeps r^|p| <= 1
    if p > 0:
        base, u = hi, p * log_r
    else:
        base, u = lo, -p * log_r
    return _clamp(base * math.exp(math.log1p(0.5 * math.expm1(u)) / p), lo, hi)


_FUNCS = {
    MeanKind.HARMONIC: harmonic,
    MeanKind.GEOMETRIC: geometric,
    MeanKind.LOGARITHMIC: logarithmic,
    MeanKind.IDENTRIC: identric,
    MeanKind.ARITHMETIC: arithmetic,
    MeanKind.SEIFFERT: seiffert,
    MeanKind.NEUMAN_SANDOR: neuman_sandor,
    MeanKind.QUADRATIC: quadratic,
    MeanKind.CONTRAHARMONIC_FIRST: contraharmonic_first,
    MeanKind.CONTRAHARMONIC_SECOND: contraharmonic_second,
}


def _as_pair(pair: PositivePair | tuple[float, float]) -> PositivePair:
    if isinstance(pair, PositivePair):
        return pair
    a, b = pair
    return PositivePair(a, b)


def mean_value(kind: Kind, pair: PositivePair | tuple[float, float]) -> float:
    """Evaluate the mean ``kind`` at ``pair``.

    Plain ``(a, b)`` tuples are validated into a :class:`PositivePair`; a
    non-positive argument raises :class:`DomainError`.  On the diagonal every
    mean returns ``a``.
    """
    pair = _as_pair(pair)
    if isinstance(kind, Power):
        return _power(kind.p, pair.a, pair.b)
    try:
        func = _FUNCS[kind]
    except KeyError:
        raise ValueError(f"unsupported mean kind {kind!r}") from None
    return func(pair.a, pair.b)


def seiffert_stable(pair: PositivePair | tuple[float, float]) -> float:
    """Seiffert mean as ``A * x/atan(x)`` with ``x = (a-b)/(a+b)``.

    ``x/atan(x)`` comes from its Taylor series ``1 + x^2/3 - 4x^4/45 + ...``
    for ``|x| < SERIES_THRESHOLD``.
    """
    pair = _as_pair(pair)
    return seiffert(pair.a, pair.b)


def power_mean(p: float, pair: PositivePair | tuple[float, float]) -> float:
    """``[(a^p + b^p)/2]^(1/p)``, continuous through ``p = 0``.

    Evaluated as ``exp(log1p(expm1(p log r)/2)/p)`` relative to the endpoint
    that keeps ``r^|p| <= 1``, so neither overflow nor cancellation in
    ``(a^p + b^p)/2`` can occur.  ``|p| < POWER_ZERO_THRESHOLD`` returns the
    geometric mean.
    """
    pair = _as_pair(pair)
    return _power(float(p), pair.a, pair.b)


# ---------------------------------------------------------------------------
# relative excess over the arithmetic mean, for ratio analysis

def _binomial_even(p: float, n: int) -> tuple[float, ...]:
    # binom(p, 2k) for k = 1..n
    out = []
    c = 1.0
    for j in range(1, 2 * n + 1):
        c *= (p - j + 1) / j
        if j % 2 == 0:
            out.append(c)
    return tuple(out)


def relative_excess(kind: Kind, t: float) -> float:
    """``M(t, 1)/A(t, 1) - 1`` to full relative precision, for ``t >= 1``.

    The naive quotient loses every digit as ``t -> 1`` (all means agree with
    ``A`` to first order).  Here the excess is summed directly from its
    expansion in ``x = (t-1)/(t+1)`` while ``x <= 0.5``, which keeps
    differences of excesses (and hence mean-difference ratios) accurate right
    down to the diagonal.
    """
    if not t >= 1.0:
        raise ValueError(f"t must be >= 1, got {t!r}")
    if math.isinf(t):
        raise ValueError("t must be finite")
    x = (t - 1.0) / (t + 1.0)
    y = x * x
    if isinstance(kind, Power):
        p = kind.p
        if p == -1.0:
            kind = MeanKind.HARMONIC
        elif p == 1.0:
            kind = MeanKind.ARITHMETIC
        elif p == 2.0:
            kind = MeanKind.QUADRATIC
        elif abs(p) < POWER_ZERO_THRESHOLD:
            kind = MeanKind.GEOMETRIC
        elif x <= _EXCESS_SERIES_LIMIT and abs(p) <= 8.0:
            # ((1+x)^p + (1-x)^p)/2 - 1 = sum_k binom(p, 2k) x^(2k)
            coeffs = _binomial_even(p, 60)
            s = 0.0
            yk = 1.0
            for c in coeffs:
                yk *= y
                s += c * yk
            return math.expm1(math.log1p(s) / p)
        else:
            return _power(p, t, 1.0) / arithmetic(t, 1.0) - 1.0

    if kind is MeanKind.ARITHMETIC:
        return 0.0
    if kind is MeanKind.HARMONIC:
        return -y
    if kind is MeanKind.CONTRAHARMONIC_FIRST:
        return y
    if kind is MeanKind.CONTRAHARMONIC_SECOND:
        return 2.0 * y / (1.0 + y)
    if kind is MeanKind.QUADRATIC:
        return y / (1.0 + math.sqrt(1.0 + y))

    if x > _EXCESS_SERIES_LIMIT:
        return mean_value(kind, (t, 1.0)) / arithmetic(t, 1.0) - 1.0

    if kind is MeanKind.GEOMETRIC:
        return -y / (1.0 + math.sqrt(1.0 - y))
    if kind is MeanKind.SEIFFERT:
        # atan(x)/x = 1 - y*tail;  x/atan(x) - 1 = y*tail/(1 - y*tail)
        u = y * _horner(_ATAN_TAIL, y, _EXCESS_TERMS)
        return u / (1.0 - u)
    if kind is MeanKind.NEUMAN_SANDOR:
        u = y * _horner(_ASINH_TAIL, y, _EXCESS_TERMS)
        return u / (1.0 - u)
    if kind is MeanKind.LOGARITHMIC:
        u = y * _horner(_ATANH_TAIL, y, _EXCESS_TERMS)
        return -u / (1.0 + u)
    if kind is MeanKind.IDENTRIC:
        return math.expm1(y * _horner(_IDENTRIC_LOG, y, _EXCESS_TERMS))
    raise ValueError(f"unsupported mean kind {kind!r}")


def atan_tail(x: float) -> float:
    """``(x - atan x)/x^3`` for ``0 <= x <= 1``; ``1/3`` at ``x = 0``."""
    if x <= _EXCESS_SERIES_LIMIT:
        return _horner(_ATAN_TAIL, x * x, _EXCESS_TERMS)
    return (x - math.atan(x)) / (x * x * x)
