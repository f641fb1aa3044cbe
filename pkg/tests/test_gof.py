import itertools
import math
import random

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraudscreen.benford import DIGITS, DigitDistribution, FirstDigitCounts, benford_distribution
from fraudscreen.errors import DataError, DomainError, NumericError
from fraudscreen import gof as gof_mod
from fraudscreen.gof import (
    Decision,
    SignificanceConfig,
    benford_gof_test,
    chi_square_p_value,
    chi_square_statistic,
    log_gamma,
    lower_regularized_gamma,
    upper_regularized_gamma,
)

BENFORD = benford_distribution()


def chi2_tail_by_quadrature(x: float, k: int) -> float:
    """Upper tail of the chi-square density, integrated numerically."""
    mpmath.mp.dps = 30
    k = mpmath.mpf(k)
    norm = 1 / (2 ** (k / 2) * mpmath.gamma(k / 2))
    density = lambda t: norm * t ** (k / 2 - 1) * mpmath.exp(-t / 2)
    return float(mpmath.quad(density, [x, x + 50, x + 200, mpmath.inf]))


def lower_gamma_by_simpson(s: float, x: float, steps: int = 200_000) -> float:
    t = np.linspace(0.0, x, steps + 1)
    f = t ** (s - 1) * np.exp(-t) / math.gamma(s)
    h = x / steps
    return float(h / 3 * (f[0] + f[-1] + 4 * f[1:-1:2].sum() + 2 * f[2:-1:2].sum()))


def counts(mapping) -> FirstDigitCounts:
    return FirstDigitCounts.from_mapping(mapping)


def test_statistic_identity_and_homogeneity():
    obs = counts({1: 30, 2: 18, 3: 12, 4: 10, 5: 8, 6: 7, 7: 6, 8: 5, 9: 4})
    same = {d: float(obs[d]) for d in DIGITS}
    assert chi_square_statistic(obs, same) == 0.0
    exp = {d: BENFORD[d] * 100 for d in DIGITS}
    doubled = counts({d: 2 * obs[d] for d in DIGITS})
    assert chi_square_statistic(doubled, {d: 2 * e for d, e in exp.items()}) == pytest.approx(
        2 * chi_square_statistic(obs, exp), rel=1e-12
    )


def test_statistic_all_ones_hand_oracle():
    mpmath.mp.dps = 30
    e = [100 * mpmath.log10(1 + mpmath.mpf(1) / d) for d in DIGITS]
    oracle = (100 - e[0]) ** 2 / e[0] + sum(e[1:])
    stat = chi_square_statistic(counts({1: 100}), {d: BENFORD[d] * 100 for d in DIGITS})
    assert stat == pytest.approx(float(oracle), rel=1e-12)
    assert stat > 160


def test_statistic_errors():
    obs = counts({1: 10})
    with pytest.raises(DomainError):
        chi_square_statistic(obs, {d: (10.0 if d == 1 else 0.0) for d in DIGITS})
    with pytest.raises(DataError):
        chi_square_statistic(obs, {d: BENFORD[d] * 11 for d in DIGITS})


@given(st.lists(st.integers(0, 500), min_size=9, max_size=9).filter(lambda c: sum(c) > 0), st.permutations(range(9)))
def test_statistic_permutation_invariant(raw, perm):
    obs = FirstDigitCounts(tuple(raw))
    n = obs.total
    exp = {d: BENFORD[d] * n for d in DIGITS}
    pobs = FirstDigitCounts(tuple(raw[perm[k]] for k in range(9)))
    pexp = {k + 1: exp[perm[k] + 1] for k in range(9)}
    assert chi_square_statistic(pobs, pexp) == pytest.approx(chi_square_statistic(obs, exp), rel=1e-12)


def test_log_gamma_against_library():
    for s in [1e-3, 0.25, 0.5, 1, 1.5, 3.7, 10, 25.5, 50, 171.3]:
        assert log_gamma(s) == pytest.approx(math.lgamma(s), abs=1e-12)


def test_lower_regularized_gamma_values():
    assert lower_regularized_gamma(3.0, 0.0) == 0.0
    assert abs(lower_regularized_gamma(0.5, 400.0) - 1.0) < 1e-10
    assert lower_regularized_gamma(4, 4) == pytest.approx(0.56653, abs=1e-4)
    assert lower_regularized_gamma(4, 4) == pytest.approx(lower_gamma_by_simpson(4, 4), abs=1e-10)


def test_lower_regularized_gamma_accuracy_region():
    mpmath.mp.dps = 30
    rnd = random.Random(5)
    for _ in range(200):
        s = rnd.uniform(0.5, 50)
        x = rnd.uniform(0, 200)
        ref = float(mpmath.gammainc(s, 0, x, regularized=True))
        assert abs(lower_regularized_gamma(s, x) - ref) <= 1e-10
        assert abs(upper_regularized_gamma(s, x) - (1 - ref)) <= 1e-10


def test_non_convergence_raises(monkeypatch):
    monkeypatch.setattr(gof_mod, "MAX_ITERATIONS", 2)
    with pytest.raises(NumericError):
        lower_regularized_gamma(30.0, 10.0)
    with pytest.raises(NumericError):
        lower_regularized_gamma(3.0, 10.0)


def test_p_value_spot_values():
    assert chi_square_p_value(0, 8) == 1.0
    assert chi_square_p_value(15.507, 8) == pytest.approx(0.050, abs=1e-3)
    assert chi_square_p_value(2.733, 8) == pytest.approx(0.950, abs=1e-3)


@pytest.mark.parametrize("k", range(1, 21))
def test_p_value_monotone_to_zero(k):
    xs = [0.0] + list(np.geomspace(1e-3, 400, 60))
    ps = [chi_square_p_value(x, k) for x in xs]
    assert ps[0] == 1.0
    assert all(a >= b for a, b in zip(ps, ps[1:]))
    assert ps[-1] < 1e-50


@pytest.mark.parametrize("x, k", [(0.5, 1), (3.84, 1), (7.0, 3), (12.0, 6), (30.0, 20), (60.0, 5)])
def test_p_value_matches_quadrature(x, k):
    assert abs(chi_square_p_value(x, k) - chi2_tail_by_quadrature(x, k)) < 1e-10


def test_gof_proportional_observed_retains():
    sim = DigitDistribution((0.3, 0.2, 0.1, 0.1, 0.1, 0.05, 0.05, 0.05, 0.05))
    obs = counts({1: 60, 2: 40, 3: 20, 4: 20, 5: 20, 6: 10, 7: 10, 8: 10, 9: 10})
    res = benford_gof_test(obs, sim)
    assert res.statistic == pytest.approx(0.0, abs=1e-20)
    assert res.decision is Decision.RETAIN_H0 and res.dof == 8 and res.p_value == 1.0


def test_gof_all_ones_rejects():
    res = benford_gof_test(counts({1: 100}), BENFORD)
    assert res.statistic > 15.507
    assert res.decision is Decision.REJECT_H0
    assert res.p_value < 1e-6


def test_gof_low_expected_warning():
    obs = counts({1: 15, 2: 9, 3: 6, 4: 5, 5: 4, 6: 4, 7: 3, 8: 2, 9: 2})
    assert obs.total == 50
    res = benford_gof_test(obs, BENFORD)
    assert res.expected_counts[9] == pytest.approx(50 * math.log10(10 / 9))
    assert res.expected_counts[9] < 5
    assert res.low_expected_warning


def test_gof_pooling_merges_high_digits():
    obs = counts({1: 15, 2: 9, 3: 6, 4: 5, 5: 4, 6: 4, 7: 3, 8: 2, 9: 2})
    res = benford_gof_test(obs, BENFORD, SignificanceConfig(pool_low_expected=True))
    # E = 50 * Benford: 9,8 -> 4.85; 9+8 reaches 5; 7 alone is 2.9, 7+6 reaches 5 ...
    for cat in res.categories:
        assert math.fsum(res.expected_counts[d] for d in cat) >= 5
    assert res.dof == len(res.categories) - 1 < 8
    assert sorted(itertools.chain.from_iterable(res.categories)) == list(DIGITS)


def test_gof_zero_simulated_mass():
    sim = DigitDistribution.from_counts((5, 3, 2, 0, 0, 0, 0, 0, 0))
    with pytest.raises(DomainError, match="longer simulation"):
        benford_gof_test(counts({1: 5, 9: 1}), sim)
    res = benford_gof_test(counts({1: 5, 2: 3, 3: 2}), sim)
    assert res.dof == 2


def test_gof_empty_observed():
    with pytest.raises(DomainError):
        benford_gof_test(FirstDigitCounts((0,) * 9), BENFORD)


@settings(max_examples=200)
@given(st.lists(st.integers(0, 200), min_size=9, max_size=9).filter(lambda c: sum(c) > 0),
       st.floats(0.001, 0.5))
def test_decision_consistency(raw, alpha):
    res = benford_gof_test(FirstDigitCounts(tuple(raw)), BENFORD, SignificanceConfig(alpha=alpha))
    assert (res.decision is Decision.REJECT_H0) == (res.p_value < alpha)
    assert res.statistic >= 0 and 0 <= res.p_value <= 1


@pytest.mark.parametrize("alpha", [0, 1, -0.1])
def test_significance_config_validation(alpha):
    with pytest.raises(DomainError):
        SignificanceConfig(alpha=alpha)
