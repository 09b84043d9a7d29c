import math
import random

import pytest

from golden import value
from sharpmeans.means import (
    DomainError,
    MeanKind,
    PositivePair,
    Power,
    kind_symbol,
    mean_value,
    parse_kind,
    power_mean,
    relative_excess,
    seiffert_stable,
)

ALL_KINDS = list(MeanKind) + [Power(-3.0), Power(0.5), Power(3.0), Power(0.0)]


def ulps(x, y):
    return abs(x - y) / math.ulp(max(abs(x), abs(y)))


def random_pairs(n, seed, lo=1e-6, hi=1e6):
    rng = random.Random(seed)
    a, b = math.log(lo), math.log(hi)
    return [(math.exp(rng.uniform(a, b)), math.exp(rng.uniform(a, b))) for _ in range(n)]


# --- worked examples -------------------------------------------------------

@pytest.mark.parametrize("kind, pair, want", [
    (MeanKind.HARMONIC, (1, 2), 4 / 3),
    (MeanKind.QUADRATIC, (1, 7), 5.0),
    (MeanKind.CONTRAHARMONIC_SECOND, (1, 2), 9 / 5),
    (MeanKind.CONTRAHARMONIC_FIRST, (1, 2), 5 / 3),
    (MeanKind.ARITHMETIC, (1, 2), 1.5),
    (MeanKind.GEOMETRIC, (4, 9), 6.0),
])
def test_closed_form_examples(kind, pair, want):
    assert ulps(mean_value(kind, pair), want) <= 1


def test_seiffert_golden():
    assert abs(mean_value(MeanKind.SEIFFERT, (3, 1)) / value("T_3_1") - 1) <= 1e-15


@pytest.mark.parametrize("kind", ALL_KINDS, ids=kind_symbol)
@pytest.mark.parametrize("a", [1e-300, 0.37, 1.0, 5.0, 1e300])
def test_diagonal_is_exact(kind, a):
    assert mean_value(kind, (a, a)) == a


def test_seiffert_paths_agree_outside_band():
    assert abs(seiffert_stable((2, 1)) / mean_value(MeanKind.SEIFFERT, (2, 1)) - 1) <= 1e-15


def test_power_mean_examples():
    assert power_mean(2, (1, 7)) == 5.0
    assert power_mean(0, (4, 9)) == 6.0
    got = power_mean(1e-13, (4, 9))
    assert abs(got / 6.0 - 1) <= 1e-10
    assert abs(got / value("power_1e-13_4_9") - 1) <= 1e-10


def test_power_mean_continuous_across_zero():
    pair = (4.0, 9.0)
    below, at, above = power_mean(-1e-9, pair), power_mean(0.0, pair), power_mean(1e-9, pair)
    assert below <= at <= above
    assert abs(above - below) < 1e-8


def test_power_mean_monotone_in_p():
    ps = [-50, -5, -2, -1, -0.5, -1e-7, -1e-9, 0, 1e-9, 1e-7, 0.5, 1, 2, 3, 5, 50]
    for a, b in random_pairs(200, 3):
        vals = [power_mean(p, (a, b)) for p in ps]
        assert all(x <= y for x, y in zip(vals, vals[1:]))


# --- domain errors ---------------------------------------------------------

@pytest.mark.parametrize("a, b", [(0, 1), (-1, 2), (1, float("nan")), (1, float("inf")), (2, -3)])
def test_nonpositive_rejected(a, b):
    with pytest.raises(DomainError):
        PositivePair(a, b)
    with pytest.raises(DomainError):
        mean_value(MeanKind.HARMONIC, (a, b))


def test_parse_kind():
    assert parse_kind("T") is MeanKind.SEIFFERT
    assert parse_kind("ns") is MeanKind.NEUMAN_SANDOR
    assert parse_kind("M2") == Power(2.0)
    assert kind_symbol(Power(-1.5)) == "M-1.5"
    with pytest.raises(ValueError):
        parse_kind("X")


# --- invariants ------------------------------------------------------------

@pytest.mark.parametrize("kind", ALL_KINDS, ids=kind_symbol)
def test_symmetry(kind):
    for a, b in random_pairs(10_000, 11):
        assert ulps(mean_value(kind, (a, b)), mean_value(kind, (b, a))) <= 1


@pytest.mark.parametrize("kind", ALL_KINDS, ids=kind_symbol)
@pytest.mark.parametrize("s", [1e-6, 1e6])
def test_homogeneity(kind, s):
    for a, b in random_pairs(1000, 12, 1e-3, 1e3):
        base = mean_value(kind, (a, b))
        assert abs(mean_value(kind, (s * a, s * b)) / s / base - 1) <= 1e-13


@pytest.mark.parametrize("kind", ALL_KINDS, ids=kind_symbol)
def test_betweenness(kind):
    for a, b in random_pairs(2000, 13):
        v = mean_value(kind, (a, b))
        assert min(a, b) <= v <= max(a, b)
        # strictness is representable only while the O(r^2) offsets of H and D
        # from the endpoints exceed an ulp
        if 1e-6 <= abs(a / b - 1) and max(a, b) / min(a, b) <= 1e4:
            assert min(a, b) < v < max(a, b)


@pytest.mark.parametrize("p, kind", [(-1, MeanKind.HARMONIC), (1, MeanKind.ARITHMETIC), (2, MeanKind.QUADRATIC)])
def test_power_identities(p, kind):
    for a, b in random_pairs(1000, 14):
        assert ulps(power_mean(p, (a, b)), mean_value(kind, (a, b))) <= 1


def test_power_zero_is_geometric():
    for a, b in random_pairs(1000, 15):
        assert power_mean(0, (a, b)) == mean_value(MeanKind.GEOMETRIC, (a, b))


@pytest.mark.parametrize("kind", ALL_KINDS, ids=kind_symbol)
def test_no_overflow_near_double_max(kind):
    v = mean_value(kind, (1e300, 1.7e308))
    assert math.isfinite(v) and 1e300 <= v <= 1.7e308
    v = mean_value(kind, (1e-300, 4e-320))
    assert 0 < v <= 1e-300


def test_relative_excess_matches_direct_far_from_diagonal():
    for kind in MeanKind:
        for t in (1.5, 3.0, 100.0):
            direct = mean_value(kind, (t, 1.0)) / ((t + 1) / 2) - 1
            assert abs(relative_excess(kind, t) - direct) <= 1e-14 * max(1.0, abs(direct))


def test_relative_excess_near_diagonal():
    # x = (t-1)/(t+1); excesses behave like +-x^2/k
    t = 1.0 + 2e-6
    x = (t - 1) / (t + 1)
    assert relative_excess(MeanKind.SEIFFERT, t) == pytest.approx(x * x / 3, rel=1e-6)
    assert relative_excess(MeanKind.HARMONIC, t) == pytest.approx(-x * x, rel=1e-6)
    assert relative_excess(MeanKind.QUADRATIC, t) == pytest.approx(x * x / 2, rel=1e-6)
