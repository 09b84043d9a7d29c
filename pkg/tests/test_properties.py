"""Property-based checks of the mean and ratio invariants."""

import math

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from sharpmeans import bounds, lemmas
from sharpmeans.grid import GridSpec
from sharpmeans.means import MeanKind, Power, mean_value, power_mean

# log-uniform positive doubles over [1e-6, 1e6]
logs = st.floats(min_value=math.log(1e-6), max_value=math.log(1e6), allow_nan=False)
positives = logs.map(math.exp)
pairs = st.tuples(positives, positives)
kinds = st.sampled_from(list(MeanKind)) | st.floats(-20, 20).map(Power)
scales = st.floats(min_value=1e-6, max_value=1e6)
# t in (1, 1e12], dense near 1
ts = st.floats(min_value=math.log(1e-8), max_value=math.log(1e12)).map(lambda u: 1.0 + math.exp(u))

# below |a/b - 1| ~ 1e-7 adjacent chain means sit within an ulp of each other
CHAIN_EXCLUSION = 1e-6


def ulps(x, y):
    return abs(x - y) / math.ulp(max(abs(x), abs(y)))


@given(kind=kinds, pair=pairs)
def test_symmetric(kind, pair):
    a, b = pair
    assert ulps(mean_value(kind, (a, b)), mean_value(kind, (b, a))) <= 1


@given(kind=kinds, pair=pairs, s=scales)
def test_homogeneous(kind, pair, s):
    a, b = pair
    assert math.isclose(mean_value(kind, (s * a, s * b)), s * mean_value(kind, (a, b)), rel_tol=1e-13)


@given(kind=kinds, pair=pairs)
def test_between_arguments(kind, pair):
    a, b = pair
    assert min(a, b) <= mean_value(kind, (a, b)) <= max(a, b)


@given(pair=pairs)
@settings(max_examples=500)
def test_chain_strict(pair):
    a, b = pair
    assume(abs(a / b - 1) >= CHAIN_EXCLUSION)
    assert bounds.verify_chain([pair]).passed


@given(pair=pairs, p=st.floats(-30, 30), q=st.floats(-30, 30))
def test_power_mean_monotone(pair, p, q):
    p, q = sorted((p, q))
    assert power_mean(p, pair) <= power_mean(q, pair)


@given(t=ts, tid=st.sampled_from(["3.1", "3.2", "3.3"]))
def test_ratio_between_limits(t, tid):
    # R - lim is O((t-1)^2), so the rounded ratio may equal the limit itself
    q = bounds.THEOREMS[tid].query()
    assert q.alpha <= bounds.ratio(q.target, t) <= q.beta


@given(t=ts, tid=st.sampled_from(["3.1", "3.2", "3.3"]))
def test_sharp_margins_strictly_positive(t, tid):
    s = bounds.margin_samples(bounds.THEOREMS[tid].query(), [t])[0]
    assert s.lower_margin > 0 and s.upper_margin > 0


@given(t1=ts, t2=ts)
def test_contraharmonic_ratio_monotone(t1, t2):
    t1, t2 = sorted((t1, t2))
    assume(t2 > t1 * (1 + 1e-6))
    R = bounds.ratio
    assert R(MeanKind.CONTRAHARMONIC_FIRST, t1) < R(MeanKind.CONTRAHARMONIC_FIRST, t2)


@given(t=ts)
def test_lemma_signs(t):
    assert lemmas.fc_eval(4 / 9, t) > 0
    assert lemmas.fc_eval(2 / math.pi, t) < 0
    # g - sqrt2/2 is O((t-1)^2) and may round to the endpoint
    assert math.sqrt(2) / 2 <= lemmas.g_eval(t) < 1


@given(c=st.floats(0.05, 0.95), pair=pairs)
def test_difference_form_consistent(c, pair):
    a, b = pair
    assume(abs(a / b - 1) > 1e-3)
    df = bounds.difference_form(c, pair)
    assert math.isclose(df.direct, df.factored, rel_tol=1e-9, abs_tol=1e-12 * max(a, b))


@given(near=st.integers(0, 300), far=st.integers(0, 300),
       t_max=st.floats(1.02, 1e12), t_near=st.floats(1.001, 1.5))
def test_grid_points_sorted_and_in_range(near, far, t_max, t_near):
    assume(near + far > 0)
    pts = GridSpec(near, far, t_near, t_max).points()
    assert pts == sorted(set(pts))
    assert all(1.0 + 1e-8 <= t <= max(t_max, t_near) for t in pts)
