"""Reference values frozen from tests/oracle.py (mpmath, 60 working digits).

Inputs are the exact binary doubles the tests pass to the library, e.g.
``1.0 + 1e-9`` rather than the decimal 1.000000001. Regenerate with
``python tests/golden.py`` if the oracle changes; the tests never call the
oracle for these entries.
"""

from decimal import Decimal

GOLDEN = {
    # T(3, 1) = 1 / arctan(1/2)
    "T_3_1": "2.1568104322916099846412725517292332977095065496585",
    # T(1 + eps, 1) for the near-diagonal band
    "T_near_1e-09": "1.0000000005000000414535188466269158180599240630772",
    "T_near_1e-06": "1.0000005000000832921583339976962021056610902795955",
    "T_near_0.0001": "1.0000500008332916626875338634657878271491267193637",
    # the unique root of f1 in (1, inf), by 400 bisection steps
    "lambda_0": "5.6364668048194706927872628325813028884876198191165",
    "f1_at_1": "-68.281000641035375267958467598105789497177006239155",
    "g_2": "0.75096405929070635287197579239645456574511969809056",
    "ratio_Q_2": "0.53101177875183499857024308332076985755666622070559",
    "f_4_9_at_2": "0.0055373527451771516587292328211389004200278704231492",
    # M_p(4, 9) at p = 1e-13, direct formula and small-p expansion
    "power_1e-13_4_9": "6.0000000000000493205861679498331038601294197147104",
    "power_1e-13_4_9_expansion": "6.0000000000000493205861679498331038601294332287098",
}

# measured with the oracle: distance of the ratio from its limit at the two
# ends of the default grid (t1 = 1 + 0.01/128, t = 1e8) and at t = 1 + 1e-3
CONVERGENCE = {
    "T": {"near": 4.07e-10, "far": 5.53e-9, "t_1e-3": 6.66e-8},
    "Q": {"near": 4.45e-10, "far": 5.86e-9, "t_1e-3": 7.28e-8},
    "C": {"near": 6.78e-10, "far": 1.0e-8, "t_1e-3": 1.11e-7},
}


def value(key: str) -> float:
    return float(GOLDEN[key])


def exact(key: str) -> Decimal:
    return Decimal(GOLDEN[key])


if __name__ == "__main__":
    import mpmath as mp

    import oracle

    mp.mp.dps = oracle.DPS
    fresh = {
        "T_3_1": oracle.mean("T", 3.0, 1.0),
        "T_near_1e-09": oracle.mean("T", 1.0 + 1e-9, 1.0),
        "T_near_1e-06": oracle.mean("T", 1.0 + 1e-6, 1.0),
        "T_near_0.0001": oracle.mean("T", 1.0 + 1e-4, 1.0),
        "lambda_0": oracle.f1_root(),
        "f1_at_1": oracle.f1(1),
        "g_2": oracle.g(2),
        "ratio_Q_2": oracle.ratio("Q", 2.0),
        "f_4_9_at_2": oracle.fc(mp.mpf(4) / 9, 2),
        "power_1e-13_4_9": oracle.power_mean(1e-13, 4, 9),
        "power_1e-13_4_9_expansion": oracle.power_mean_small_p(1e-13, 4, 9),
    }
    for k, v in fresh.items():
        print(f'    "{k}": "{mp.nstr(v, 50)}",')
