"""Auxiliary functions behind the sharp bounds, and numeric checks of their sign
patterns.

* ``f1`` is a palindromic sextic in ``t`` with pi-dependent coefficients; its
  derivatives f1', ..., f1^(5) each change sign once on ``(1, inf)``, at
  ``lambda_4 > lambda_3 > lambda_2 > lambda_1`` respectively, and ``f1`` itself
  at ``lambda_0 > lambda_4``.
* ``f_c(t)`` is the normalized difference between the Seiffert mean and the
  convex combination ``c D + (1-c) H``; ``g_c`` is the numerator of its
  derivative.
* ``g(t)`` is, up to a factor ``sqrt(2)/2``, the quadratic-mean ratio, and
  ``h(u)`` is the same function after ``t = tan x``, ``u = sin x + cos x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, partial
from numbers import Real
from typing import Callable, Optional, Sequence

from . import grid as _grid
from .grid import GridLike

PI = math.pi
SQRT2 = math.sqrt(2.0)

#: bisection stops once the bracket is this narrow
ROOT_TOLERANCE = 1e-12
#: geometric search for a sign change gives up beyond this t
SEARCH_CEILING = 1e6
#: below this |t - 1|, g is evaluated through the u-substitution
G_SUBSTITUTION_BAND = 1e-4

_P = PI * PI - PI - 4.0          # pi^2 - pi - 4
_Q = PI * (5.0 - PI)             # pi (5 - pi)
_R = 5.0 * PI - PI * PI - 2.0    # 5 pi - pi^2 - 2

# f1 and its derivatives, highest power first, as written out term by term.
_F1_DERIVATIVES: tuple[tuple[float, ...], ...] = (
    (_P, -2 * _Q, -3 * _Q, -4 * _R, -3 * _Q, -2 * _Q, _P),
    (6 * _P, -10 * _Q, -12 * _Q, -12 * _R, -6 * _Q, -2 * _Q),
    (30 * _P, -40 * _Q, -36 * _Q, -24 * _R, -6 * _Q),
    (120 * _P, -120 * _Q, -72 * _Q, -24 * _R),
    (360 * _P, -240 * _Q, -72 * _Q),
    (720 * _P, -240 * _Q),
)

F1_COEFFICIENTS = _F1_DERIVATIVES[0]


class SearchError(RuntimeError):
    """No sign change found where one was expected."""


def _horner_desc(coeffs: Sequence[float], t: float) -> float:
    acc = 0.0
    for c in coeffs:
        acc = acc * t + c
    return acc


def f1_eval(t: float) -> float:
    return _horner_desc(F1_COEFFICIENTS, t)


def f1_derivative(k: int, t: float) -> float:
    """k-th derivative of f1 at t, ``0 <= k <= 5``."""
    if isinstance(k, bool) or not isinstance(k, int) or not 0 <= k <= 5:
        raise ValueError(f"derivative order must be an integer in 0..5, got {k!r}")
    return _horner_desc(_F1_DERIVATIVES[k], t)


# ---------------------------------------------------------------------------
# root bracketing

@dataclass(frozen=True)
class RootBracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float
    label: str = ""

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")
        if not (self.f_lo < 0 < self.f_hi or self.f_hi < 0 < self.f_lo):
            raise ValueError("bracket endpoints must have strictly opposite signs")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "lo": self.lo,
            "hi": self.hi,
            "f_lo": self.f_lo,
            "f_hi": self.f_hi,
            "width": self.width,
        }


def bisect(f: Callable[[float], float], lo: float, hi: float,
           tol: float = ROOT_TOLERANCE, label: str = "") -> RootBracket:
    """Shrink ``[lo, hi]`` around a sign change of ``f`` until ``hi - lo <= tol``.

    Stops early if the bracket reaches adjacent doubles.
    """
    f_lo, f_hi = f(lo), f(hi)
    if not (f_lo < 0 < f_hi or f_hi < 0 < f_lo):
        raise SearchError(f"no sign change on [{lo}, {hi}]: f = {f_lo}, {f_hi}")
    neg_at_lo = f_lo < 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        fm = f(mid)
        if fm == 0.0:
            # exact zero: tighten to the neighbouring doubles
            left, right = math.nextafter(mid, -math.inf), math.nextafter(mid, math.inf)
            fl, fr = f(left), f(right)
            if (fl < 0 < fr) or (fr < 0 < fl):
                return RootBracket(left, right, fl, fr, label)
            raise SearchError(f"{label or 'function'} vanishes on a plateau near {mid}")
        if (fm < 0) == neg_at_lo:
            lo, f_lo = mid, fm
        else:
            hi, f_hi = mid, fm
    return RootBracket(lo, hi, f_lo, f_hi, label)


def find_sign_change(f: Callable[[float], float], start: float = 1.0,
                     ceiling: float = SEARCH_CEILING, tol: float = ROOT_TOLERANCE,
                     label: str = "") -> RootBracket:
    """Double ``t`` from ``start`` until ``f`` changes sign, then bisect."""
    lo, f_lo = start, f(start)
    if f_lo == 0.0:
        raise SearchError(f"{label or 'function'} vanishes at the start point {start}")
    hi = 2.0 * start if start > 0 else start + 1.0
    while hi <= ceiling:
        f_hi = f(hi)
        if (f_hi < 0) != (f_lo < 0) and f_hi != 0.0:
            return bisect(f, lo, hi, tol, label)
        if f_hi == 0.0:
            return bisect(f, lo, 2.0 * hi, tol, label)
        lo, f_lo = hi, f_hi
        hi *= 2.0
    raise SearchError(f"no sign change of {label or 'function'} in [{start}, {ceiling}]")


CASCADE_LABELS = ("lambda_1", "lambda_2", "lambda_3", "lambda_4", "lambda_0")


def find_derivative_cascade(tol: float = ROOT_TOLERANCE) -> list[RootBracket]:
    """Brackets for the sign changes of f1^(4), f1''', f1'', f1' and f1, in that order.

    Raises :class:`SearchError` if any search fails or the roots come out of
    order.
    """
    brackets = []
    for k, label in zip((4, 3, 2, 1, 0), CASCADE_LABELS):
        brackets.append(find_sign_change(partial(f1_derivative, k), 1.0, tol=tol, label=label))
    mids = [1.0] + [b.midpoint for b in brackets]
    # the brackets must be disjoint and increasing
    for prev, cur in zip(brackets, brackets[1:]):
        if not prev.hi < cur.lo:
            raise SearchError(f"{cur.label} bracket does not lie above {prev.label}")
    if not all(x < y for x, y in zip(mids, mids[1:])):
        raise SearchError("cascade roots are not increasing")
    return brackets


# ---------------------------------------------------------------------------
# f_c and g_c

def _check_c(c: Real) -> Fraction:
    fc = Fraction(c)
    if not 0 < fc < 1:
        raise ValueError(f"c must lie in (0, 1), got {c!r}")
    return fc


def _atan_coeff(k: int) -> Fraction:
    return Fraction((-1) ** k, 2 * k + 1) if k >= 0 else Fraction(0)


_FC_SERIES_TERMS = 24
_FC_SERIES_LIMIT = 0.25


@lru_cache(maxsize=64)
def _fc_series(c: Fraction) -> tuple[float, ...]:
    # numerator x(1+x^2) - atan(x)(1 + 3c x^2 - (1-c) x^4) = x^3 sum_m n_m x^(2m-2)
    out = []
    for m in range(1, _FC_SERIES_TERMS + 1):
        n = -_atan_coeff(m) - 3 * c * _atan_coeff(m - 1) + (1 - c) * _atan_coeff(m - 2)
        if m == 1:
            n += 1
        out.append(float(n))
    return tuple(out)


def fc_eval(c: Real, t: float) -> float:
    """``f_c(t) = (t^4-1)/(c t^4 + (2-c) t^3 + (2-c) t + c) - 2 atan((t-1)/(t+1))``.

    Computed in ``x = (t-1)/(t+1)`` where it reads
    ``2 [x(1+x^2) - atan(x) d(x)] / d(x)`` with ``d = 1 + 3c x^2 - (1-c) x^4``.
    The bracket cancels to ``O(x^3)`` (``O(x^5)`` for ``c = 4/9``), so for
    ``x <= 0.25`` it is summed from its Taylor coefficients, which are formed
    exactly from ``c``.  Pass ``Fraction(4, 9)`` to get the exact cancellation.
    """
    cf = _check_c(c)
    if not t >= 1.0:
        raise ValueError(f"t must be >= 1, got {t!r}")
    x = 1.0 if math.isinf(t) else (t - 1.0) / (t + 1.0)
    cv = float(cf)
    y = x * x
    den = 1.0 + 3.0 * cv * y - (1.0 - cv) * y * y
    if x <= _FC_SERIES_LIMIT:
        coeffs = _fc_series(cf)
        acc = 0.0
        for n in reversed(coeffs):
            acc = acc * y + n
        num = x * y * acc
    else:
        num = x * (1.0 + y) - math.atan(x) * den
    return 2.0 * num / den


def fc_limit_at_infinity(c: Real) -> float:
    return 1.0 / float(_check_c(c)) - PI / 2.0


def fc_denominator(c: Real, t: float) -> float:
    """``c t^4 + (2-c) t^3 + (2-c) t + c``."""
    c = float(c)
    return ((c * t + (2.0 - c)) * t * t + (2.0 - c)) * t + c


def gc_coefficients(c: Real) -> tuple:
    """Coefficients of ``g_c``, highest power first, in the arithmetic of ``c``."""
    return (
        2 - 2 * c * c - c,
        -4 * c * (2 - c),
        2 * c * (2 - c),
        4 * c * c,
        -2 * (4 * c * c - 5 * c + 2),
        4 * c * c,
        2 * c * (2 - c),
        -4 * c * (2 - c),
        2 - 2 * c * c - c,
    )


@lru_cache(maxsize=64)
def _gc_shifted(c: Fraction) -> tuple[float, ...]:
    # g_c(1 + w) = w^2 * sum_{k=2..8} b_k w^(k-2); the w^0 and w^1 terms vanish
    # identically in c.
    b = (
        -8 * (9 * c - 4),
        -24 * (9 * c - 4),
        -2 * (9 * c * c + 140 * c - 68),
        -4 * (9 * c * c + 50 * c - 28),
        -2 * (15 * c * c + 40 * c - 28),
        -4 * (c + 2) * (3 * c - 2),
        2 - c - 2 * c * c,
    )
    return tuple(float(v) for v in b)


def gc_eval(c: Real, t: float) -> float:
    """The degree-8 polynomial ``g_c(t)``.

    Expanded about ``t = 1`` so that the double zero there is exact, and the
    identity ``g_{4/9} = (2/81)(t-1)^4 (...)`` survives close to ``t = 1``.
    """
    cf = Fraction(c)
    w = t - 1.0
    acc = 0.0
    for b in reversed(_gc_shifted(cf)):
        acc = acc * w + b
    return w * w * acc


def fc_derivative_identity(c: Real, t: float) -> float:
    """Right-hand side of ``f_c'(t) = g_c(t) / ((t^2+1) d_c(t)^2)``."""
    d = fc_denominator(c, t)
    return gc_eval(c, t) / ((t * t + 1.0) * d * d)


# ---------------------------------------------------------------------------
# g and h

def _h_reduced(u: float) -> float:
    # 2(u - sqrt2 u^2 + sqrt2)/(-u^4 + u^2 + 2) after cancelling (u - sqrt2)
    return 2.0 * (SQRT2 * u + 1.0) / ((u + SQRT2) * (u * u + 1.0))


def u_of_t(t: float) -> float:
    """``sin x + cos x`` for ``t = tan x``."""
    return (1.0 + t) / math.sqrt(1.0 + t * t)


def g_eval(t: float) -> float:
    """``g(t) = (t^2+1)[(t+1) sqrt(t^2+1) - 2 sqrt2 t] / ((t^2+t+1)(t-1)^2)``.

    The bracket vanishes to second order at ``t = 1``; multiplying through by
    its conjugate gives ``(t-1)^2 (t^2+4t+1)``, which cancels the denominator
    exactly.  Within ``G_SUBSTITUTION_BAND`` of 1 the value comes from the
    u-substitution instead.
    """
    if not t >= 1.0:
        raise ValueError(f"t must be >= 1, got {t!r}")
    if t - 1.0 < G_SUBSTITUTION_BAND:
        return _h_reduced(u_of_t(t))
    if math.isinf(t):
        return 1.0
    if t > 1e75:
        s = 1.0 / t
        return ((1.0 + s * s) * (1.0 + s * (4.0 + s))
                / ((1.0 + s * (1.0 + s)) * ((1.0 + s) * math.sqrt(1.0 + s * s) + 2.0 * SQRT2 * s)))
    t2 = t * t
    return ((t2 + 1.0) * (t2 + 4.0 * t + 1.0)
            / ((t2 + t + 1.0) * ((t + 1.0) * math.sqrt(t2 + 1.0) + 2.0 * SQRT2 * t)))


def _check_u(u: float) -> None:
    if not 1.0 < u < SQRT2:
        raise ValueError(f"u must lie in (1, sqrt(2)), got {u!r}")


def h_eval(u: float) -> float:
    """``h(u) = 2(u - sqrt2 u^2 + sqrt2)/(-u^4 + u^2 + 2)`` on ``(1, sqrt2)``."""
    _check_u(u)
    return _h_reduced(u)


def h_prime(u: float) -> float:
    """``h'(u)``, negative throughout ``(1, sqrt2)``.

    Uses the factored derivative with the common ``(u - sqrt2)^2`` removed
    from numerator and denominator.
    """
    _check_u(u)
    cubic = ((u + 1.25 * SQRT2) * u + 1.0) * u - 0.25 * SQRT2
    d = (u + SQRT2) * (u * u + 1.0)
    return -4.0 * SQRT2 * cubic / (d * d)


# ---------------------------------------------------------------------------
# sign and monotonicity reports

@dataclass(frozen=True)
class SignReport:
    function_id: str
    grid: tuple[float, ...] = field(repr=False)
    min_abs_value: float
    sign: str
    violations: int
    first_violation: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def as_dict(self) -> dict:
        return {
            "function": self.function_id,
            "grid": {"count": len(self.grid), "t_min": self.grid[0], "t_max": self.grid[-1]},
            "sign": self.sign,
            "min_abs_value": self.min_abs_value,
            "violations": self.violations,
            "first_violation": self.first_violation,
            "verdict": "pass" if self.passed else "fail",
        }


# function id -> (callable, claimed sign or None)
SIGN_FUNCTIONS: dict[str, tuple[Callable[[float], float], Optional[str]]] = {
    "f1": (f1_eval, None),
    **{f"f1^({k})": (partial(f1_derivative, k), None) for k in range(1, 5)},
    "f1^(5)": (partial(f1_derivative, 5), "+"),
    "f_4/9": (partial(fc_eval, Fraction(4, 9)), "+"),
    "f_2/pi": (partial(fc_eval, 2.0 / PI), "-"),
    "g_4/9": (partial(gc_eval, Fraction(4, 9)), "+"),
    "g": (g_eval, "+"),
    "h'": (h_prime, "-"),
}


def _lookup(function_id: str) -> tuple[Callable[[float], float], Optional[str]]:
    try:
        return SIGN_FUNCTIONS[function_id]
    except KeyError:
        raise ValueError(f"unknown function id {function_id!r}; "
                         f"known: {', '.join(SIGN_FUNCTIONS)}") from None


def verify_sign(function_id: str, grid: GridLike = None,
                expected: Optional[str] = None) -> SignReport:
    """Evaluate a registered function on ``grid`` and count sign violations.

    ``expected`` defaults to the function's claimed sign, or else to the sign
    of the first sample.  A sample that is exactly zero counts as a violation.
    """
    func, claim = _lookup(function_id)
    points = _grid.resolve(grid)
    if len(points) < 2:
        raise ValueError("sign verification needs at least two grid points")
    sign = expected or claim
    values = [func(t) for t in points]
    if sign is None:
        sign = "+" if values[0] > 0 else "-"
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    positive = sign == "+"
    bad = [t for t, v in zip(points, values) if not (v > 0 if positive else v < 0)]
    return SignReport(
        function_id=function_id,
        grid=tuple(points),
        min_abs_value=min(abs(v) for v in values),
        sign=sign,
        violations=len(bad),
        first_violation=bad[0] if bad else None,
    )


@dataclass(frozen=True)
class MonotonicityReport:
    function_id: str
    count: int
    direction: str
    first: float
    last: float
    minimum: float
    maximum: float
    breaks: int
    lower: Optional[float] = None
    upper: Optional[float] = None
    outside: int = 0

    @property
    def passed(self) -> bool:
        return self.breaks == 0 and self.outside == 0

    def as_dict(self) -> dict:
        out = {k: getattr(self, k) for k in self.__dataclass_fields__}
        out["verdict"] = "pass" if self.passed else "fail"
        return out


def check_monotone(function_id: str, points: Sequence[float], direction: str = "+",
                   bounds: Optional[tuple[float, float]] = None) -> MonotonicityReport:
    """Count non-strict steps along sorted ``points``; optionally count values
    outside the open interval ``bounds``."""
    func, _ = _lookup(function_id)
    pts = sorted(points)
    if len(pts) < 2:
        raise ValueError("monotonicity check needs at least two points")
    vals = [func(p) for p in pts]
    if direction == "+":
        breaks = sum(1 for a, b in zip(vals, vals[1:]) if not b > a)
    elif direction == "-":
        breaks = sum(1 for a, b in zip(vals, vals[1:]) if not b < a)
    else:
        raise ValueError(f"direction must be '+' or '-', got {direction!r}")
    lower = upper = None
    outside = 0
    if bounds is not None:
        lower, upper = bounds
        outside = sum(1 for v in vals if not lower < v < upper)
    return MonotonicityReport(function_id, len(vals), direction, vals[0], vals[-1],
                              min(vals), max(vals), breaks, lower, upper, outside)


# ---------------------------------------------------------------------------
# whole-lemma reports

def _f1_report(grid: GridLike) -> dict:
    brackets = find_derivative_cascade()
    lam0 = brackets[-1]
    at_one = {f"f1^({k})(1)": f1_derivative(k, 1.0) for k in range(6)}
    pts = _grid.resolve(grid)
    below = [t for t in pts if t < lam0.lo]
    above = [t for t in pts if t > lam0.hi]
    checks = [verify_sign("f1^(5)", pts)]
    if len(below) >= 2:
        checks.append(verify_sign("f1", below, "-"))
    if len(above) >= 2:
        checks.append(verify_sign("f1", above, "+"))
    signs_ok = all(at_one[f"f1^({k})(1)"] < 0 for k in range(5))
    passed = signs_ok and all(c.passed for c in checks) and all(b.width <= ROOT_TOLERANCE for b in brackets)
    return {
        "lemma": "2.1",
        "brackets": [b.as_dict() for b in brackets],
        "values_at_1": at_one,
        "signs_at_1_negative": signs_ok,
        "sign_reports": [c.as_dict() for c in checks],
        "verdict": "pass" if passed else "fail",
    }


def _fc_report(grid: GridLike) -> dict:
    reports = [verify_sign("f_4/9", grid), verify_sign("f_2/pi", grid)]
    return {
        "lemma": "2.2",
        "sign_reports": [r.as_dict() for r in reports],
        "verdict": "pass" if all(r.passed for r in reports) else "fail",
    }


def _g_report(grid: GridLike) -> dict:
    pts = _grid.resolve(grid)
    g_mono = check_monotone("g", pts, "+", (SQRT2 / 2.0, 1.0))
    n = 1000
    us = [1.0 + (SQRT2 - 1.0) * (i + 0.5) / n for i in range(n)]
    hp = verify_sign("h'", us)
    return {
        "lemma": "2.3",
        "g": g_mono.as_dict(),
        "range": [SQRT2 / 2.0, 1.0],
        "h_prime": hp.as_dict(),
        "verdict": "pass" if g_mono.passed and hp.passed else "fail",
    }


LEMMA_REPORTS = {"2.1": _f1_report, "2.2": _fc_report, "2.3": _g_report}


def lemma_report(lemma_id: str, grid: GridLike = None) -> dict:
    try:
        build = LEMMA_REPORTS[lemma_id]
    except KeyError:
        raise ValueError(f"unknown lemma {lemma_id!r}; known: {', '.join(LEMMA_REPORTS)}") from None
    return build(grid)
