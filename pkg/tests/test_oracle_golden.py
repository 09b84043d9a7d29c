"""The frozen fixtures in golden.py must still be what the oracle produces,
and the oracle must agree with closed forms where those exist."""

from decimal import Decimal

import mpmath as mp
import pytest

import oracle
from golden import GOLDEN


def close(x, key, digits=45):
    return abs(mp.mpf(x) / mp.mpf(GOLDEN[key]) - 1) < mp.mpf(10) ** -digits


def test_fixtures_are_decimal_strings():
    for v in GOLDEN.values():
        assert len(Decimal(v).as_tuple().digits) >= 45


@pytest.mark.parametrize("key, producer", [
    ("T_3_1", lambda: oracle.mean("T", 3.0, 1.0)),
    ("T_near_1e-09", lambda: oracle.mean("T", 1.0 + 1e-9, 1.0)),
    ("T_near_1e-06", lambda: oracle.mean("T", 1.0 + 1e-6, 1.0)),
    ("T_near_0.0001", lambda: oracle.mean("T", 1.0 + 1e-4, 1.0)),
    ("lambda_0", oracle.f1_root),
    ("f1_at_1", lambda: oracle.f1(1)),
    ("g_2", lambda: oracle.g(2)),
    ("ratio_Q_2", lambda: oracle.ratio("Q", 2.0)),
    ("power_1e-13_4_9", lambda: oracle.power_mean(1e-13, 4, 9)),
    ("power_1e-13_4_9_expansion", lambda: oracle.power_mean_small_p(1e-13, 4, 9)),
])
def test_oracle_reproduces_fixture(key, producer):
    with mp.workdps(oracle.DPS):
        assert close(producer(), key)


def test_f_four_ninths_fixture():
    with mp.workdps(oracle.DPS):
        assert close(oracle.fc(mp.mpf(4) / 9, 2), "f_4_9_at_2")


def test_oracle_closed_forms():
    with mp.workdps(oracle.DPS):
        assert close(1 / mp.atan(mp.mpf(1) / 2), "T_3_1")
        assert close(-8 * mp.pi * (9 - 2 * mp.pi), "f1_at_1")
        assert close(mp.sqrt(2) / 2 * mp.mpf(GOLDEN["g_2"]), "ratio_Q_2")
        # the root really is a sign change of f1
        lam = mp.mpf(GOLDEN["lambda_0"])
        eps = mp.mpf(10) ** -45
        assert oracle.f1(lam - eps) < 0 < oracle.f1(lam + eps)


def test_small_p_expansion_agrees_with_direct():
    # the two differ at O(p^2), i.e. ~1e-26 relative at p = 1e-13
    with mp.workdps(oracle.DPS):
        d = mp.mpf(GOLDEN["power_1e-13_4_9"]) / mp.mpf(GOLDEN["power_1e-13_4_9_expansion"]) - 1
        assert abs(d) < mp.mpf(10) ** -25
