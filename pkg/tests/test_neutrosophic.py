import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from fraudscreen.benford import FirstDigitCounts, benford_distribution
from fraudscreen.errors import DataError, DomainError, PreconditionError
from fraudscreen.gof import benford_gof_test
from fraudscreen.neutrosophic import (
    FactorAssessment,
    NeutrosophicProbability,
    OutcomeLabel,
    UnitInterval,
    aggregate_component,
    assess,
    conditional_fraud_probability,
    interpret_outcome,
    is_classical,
    load_assessment,
    make_neutrosophic,
    parse_assessment,
)


def iv(lo, hi):
    return UnitInterval(lo, hi)


def triple(t, i, u):
    return make_neutrosophic(iv(*t), iv(*i), iv(*u))


def test_make_neutrosophic_bounds():
    triple((0.5, 0.5), (0, 0), (0.5, 0.5))
    triple((1, 1), (1, 1), (1, 1))
    with pytest.raises(DomainError, match="exceeds 1"):
        triple((0.9, 1.1), (0, 0), (0, 0))
    with pytest.raises(DomainError, match="below 0"):
        iv(-0.1, 0.2)
    with pytest.raises(DomainError, match="exceeds upper"):
        iv(0.6, 0.2)


def test_sup_sum_bound_enforced_on_construction():
    # intervals cap each supremum at 1, so bypass them to reach the sum check
    bad = iv(1, 1)
    object.__setattr__(bad, "hi", 1.5)
    with pytest.raises(DomainError, match="suprema"):
        NeutrosophicProbability(bad, iv(1, 1), iv(1, 1))


def test_is_classical():
    assert is_classical(triple((0.5, 0.5), (0, 0), (0.5, 0.5)))
    assert not is_classical(triple((0.3, 0.4), (0, 0), (0.6, 0.7)))
    assert not is_classical(triple((0.7, 0.7), (0, 0), (0.2, 0.2)))
    assert not is_classical(triple((0.5, 0.5), (0, 0.1), (0.5, 0.5)))


def test_aggregate_component():
    r = aggregate_component([("x", 0.6, 1)], 0.1)
    assert (r.lo, r.hi) == pytest.approx((0.5, 0.7))
    r = aggregate_component([("a", 1, 1), ("b", 0, 1)], 0)
    assert (r.lo, r.hi) == (0.5, 0.5)
    r = aggregate_component([("a", 0.9, 3), ("b", 0.1, 1)], 0.1)
    assert (r.lo, r.hi) == pytest.approx((0.6, 0.8))
    r = aggregate_component([("edge", 0.95, 1)], 0.1)
    assert (r.lo, r.hi) == pytest.approx((0.85, 1.0))
    with pytest.raises(DomainError):
        aggregate_component([], 0.1)
    with pytest.raises(DomainError):
        aggregate_component([("w", 0.5, 0)], 0.1)


def test_assess_extremes_and_symmetry():
    a = FactorAssessment([("t", 1, 1), ("t2", 1, 2)], [("f", 0, 1)], [("i", 0, 1)], width=0)
    np_ = assess(a)
    assert (np_.t.as_list(), np_.i.as_list(), np_.u.as_list()) == ([1, 1], [0, 0], [0, 0])
    facs = [("a", 0.3, 2), ("b", 0.7, 1)]
    sym = assess(FactorAssessment(facs, facs, [("i", 0.2, 1)]))
    assert sym.t == sym.u


def test_fixture_assessment_matches_hand_computation(fixtures):
    np_ = assess(load_assessment(fixtures / "factors.yaml"))
    # truth (0.8*2 + 0.6 + 0.9) / 4 = 0.775; falsity (0.3 + 0.2*3) / 4 = 0.225; indeterminacy 0.4
    assert np_.t.as_list() == pytest.approx([0.675, 0.875])
    assert np_.u.as_list() == pytest.approx([0.125, 0.325])
    assert np_.i.as_list() == pytest.approx([0.3, 0.5])
    assert interpret_outcome(np_).label is OutcomeLabel.MAY_OR_MAY_NOT_BE_FRAUDULENT
    strong = assess(load_assessment(fixtures / "factors_strong.json"))
    assert strong.t.as_list() == pytest.approx([0.875, 0.975])
    assert interpret_outcome(strong).label is OutcomeLabel.DEFINITELY_FRAUDULENT


def test_conditional_requires_rejection(fixtures):
    a = load_assessment(fixtures / "factors.yaml")
    rejected = benford_gof_test(FirstDigitCounts.from_mapping({1: 100}), benford_distribution())
    assert conditional_fraud_probability(rejected, a) == assess(a)
    retained = benford_gof_test(FirstDigitCounts((30, 18, 12, 10, 8, 7, 6, 5, 4)), benford_distribution())
    with pytest.raises(PreconditionError, match="undefined"):
        conditional_fraud_probability(retained, a)


@pytest.mark.parametrize(
    "t, i, u, label",
    [
        ((0.9, 0.95), (0, 0.1), (0, 0.05), OutcomeLabel.DEFINITELY_FRAUDULENT),
        ((0.1, 0.2), (0.1, 0.3), (0.8, 0.9), OutcomeLabel.DEFINITELY_NOT_FRAUDULENT),
        ((0.4, 0.6), (0.3, 0.5), (0.3, 0.5), OutcomeLabel.MAY_OR_MAY_NOT_BE_FRAUDULENT),
        ((0.9, 0.95), (0, 0), (0.2, 0.3), OutcomeLabel.MAY_OR_MAY_NOT_BE_FRAUDULENT),
    ],
)
def test_interpret_outcome(t, i, u, label):
    assert interpret_outcome(triple(t, i, u), 0.75).label is label


@pytest.mark.parametrize("tau", [0.5, 1.01, 0.2])
def test_interpret_outcome_tau_domain(tau):
    with pytest.raises(DomainError):
        interpret_outcome(triple((0.5, 0.5), (0, 0), (0.5, 0.5)), tau)


unit = st.floats(0, 1, allow_nan=False)
factor = st.tuples(st.text(min_size=1, max_size=5), unit, st.floats(0.01, 10))
factors = st.lists(factor, min_size=1, max_size=5)


@given(factors, factors, factors, st.floats(0, 0.5), st.floats(0.5, 1, exclude_min=True))
def test_validity_closure_and_trichotomy(tf, ff, inf, width, tau):
    np_ = assess(FactorAssessment(tf, ff, inf, width))
    for c in (np_.t, np_.i, np_.u):
        assert 0 <= c.lo <= c.hi <= 1
    assert np_.t.hi + np_.i.hi + np_.u.hi <= 3
    label = interpret_outcome(np_, tau).label
    swapped = interpret_outcome(make_neutrosophic(np_.u, np_.i, np_.t), tau).label
    mirror = {
        OutcomeLabel.DEFINITELY_FRAUDULENT: OutcomeLabel.DEFINITELY_NOT_FRAUDULENT,
        OutcomeLabel.DEFINITELY_NOT_FRAUDULENT: OutcomeLabel.DEFINITELY_FRAUDULENT,
        OutcomeLabel.MAY_OR_MAY_NOT_BE_FRAUDULENT: OutcomeLabel.MAY_OR_MAY_NOT_BE_FRAUDULENT,
    }
    assert swapped is mirror[label]


@given(st.floats(0, 1), st.lists(st.floats(0.01, 5), min_size=1, max_size=4))
def test_classical_reduction(p, weights):
    truth = [(f"t{k}", p, w) for k, w in enumerate(weights)]
    falsity = [("f", 1 - p, 1.0)]
    np_ = assess(FactorAssessment(truth, falsity, [("i", 0.0, 1.0)], width=0))
    assert is_classical(np_)


@given(factors, factors, factors, st.floats(0, 0.5), st.integers(0, 4), st.floats(0, 1))
def test_truth_monotonicity(tf, ff, inf, width, which, bump):
    k = which % len(tf)
    name, score, weight = tf[k]
    assume(bump > score)
    raised = list(tf)
    raised[k] = (name, bump, weight)
    before = assess(FactorAssessment(tf, ff, inf, width)).t
    after = assess(FactorAssessment(raised, ff, inf, width)).t
    assert after.lo >= before.lo - 1e-12 and after.hi >= before.hi - 1e-12


def test_factors_file_errors_are_line_precise():
    good = "truth:\n  - {name: a, score: 0.5}\nfalsity:\n  - {name: b, score: 0.5}\nindeterminacy:\n  - {name: c, score: 0.1}\n"
    a = parse_assessment(good)
    assert a.width == 0.1 and a.truth_factors[0].weight == 1.0
    cases = [
        (good.replace("score: 0.5}", "score: 1.5}", 1), "line 2"),
        (good.replace("score: 0.1", "score: high"), "line 6"),
        (good + "bogus: 1\n", "line 7"),
        (good.replace("indeterminacy:\n  - {name: c, score: 0.1}\n", "indeterminacy: []\n"), "line 5"),
        (good.replace("{name: b, score: 0.5}", "{name: b}"), "line 4"),
        ("truth: [\n", "line"),
        ("", "empty"),
        (good + "width: 0.9\n", "line 7"),
    ]
    for text, where in cases:
        with pytest.raises(DataError, match=where):
            parse_assessment(text)


def test_factors_file_missing(tmp_path):
    with pytest.raises(DataError):
        load_assessment(tmp_path / "missing.yaml")
