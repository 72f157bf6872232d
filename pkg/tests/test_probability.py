import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dealercomp.errors import InvalidQueryError, RegimeError
from dealercomp.oracle import Outcome, enumerate_hands, simulate
from dealercomp.probability import (
    CardDistribution,
    _play_chunk,
    OutcomeDistribution,
    beat_probability,
    closed_form_probability,
    exact_probability,
    monte_carlo,
    outcome_distribution,
)
from dealercomp.rules import RuleSet

UNIFORM = CardDistribution.uniform_diagnostic()


class TestCardDistribution:
    def test_default_masses(self):
        cd = CardDistribution.default()
        assert cd.mass[10] == 16 / 52
        assert all(cd.mass[v] == 4 / 52 for v in range(1, 10))
        assert math.isclose(sum(cd.mass.values()), 1.0, abs_tol=1e-12)

    def test_ace_mass_for_both_counts(self):
        cd = CardDistribution.default()
        assert cd.part_mass(1) == cd.part_mass(11) == 4 / 52

    def test_rejects_unnormalised(self):
        with pytest.raises(ValueError):
            CardDistribution({v: 0.1 for v in range(1, 11)} | {1: 0.2})

    def test_diagnostic_is_explicitly_unnormalised(self):
        assert not UNIFORM.normalized
        assert math.isclose(sum(UNIFORM.mass.values()), 10 / 13)

    def test_rejects_missing_values(self):
        with pytest.raises(ValueError):
            CardDistribution({1: 1.0})


class TestClosedForm:
    def test_ten_up_seventeen(self):
        p = closed_form_probability(17, 10)
        assert abs(p - 0.1114) < 5e-5
        assert p == pytest.approx((1 / 13) * (14 / 13) ** 5, abs=0, rel=1e-15)

    def test_exponent_zero(self):
        r = RuleSet(stand=12, bust=21)
        assert closed_form_probability(12, 10, r) == 1 / 13

    def test_upcard_bound(self):
        with pytest.raises(InvalidQueryError):
            closed_form_probability(18, 16)

    def test_wrong_regime(self):
        with pytest.raises(RegimeError):
            closed_form_probability(21, 10)

    def test_increasing_in_exponent(self):
        ps = [closed_form_probability(17, d) for d in range(11, 7, -1)]
        assert all(a < b for a, b in zip(ps, ps[1:]))


class TestExact:
    def test_single_card_row(self):
        # dealer on 16 reaches 17 only via an ace counted as 1
        r = RuleSet(stand=17)
        hands = [c.parts for c in enumerate_hands(10, 17, r)]
        one_card = [h for h in hands if len(h) == 1]
        assert one_card == [(7,)]
        p = exact_probability(17, 10)
        assert p == pytest.approx(closed_form_probability(17, 10), abs=1e-12)

    @pytest.mark.parametrize("d", [9, 10])
    def test_matches_closed_form_under_uniform(self, d):
        for w in range(17, 22):
            if w - d <= 9:
                assert exact_probability(w, d, cd=UNIFORM) == pytest.approx(
                    closed_form_probability(w, d), abs=1e-12
                )

    def test_eight_up_differs_from_closed_form(self):
        # 8 + 2 + ace stands on 21, so (2, 1, 6) is one of the hands the
        # closed form counts but the dealer can never produce
        gap = closed_form_probability(17, 8) - exact_probability(17, 8, cd=UNIFORM)
        assert gap > 1e-4

    def test_default_equals_uniform_when_no_tens_fit(self):
        for d in (8, 9, 10):
            for w in range(17, d + 10):
                assert exact_probability(w, d) == pytest.approx(
                    exact_probability(w, d, cd=UNIFORM), abs=1e-15
                )


class TestOutcomeDistribution:
    @pytest.mark.parametrize("d", range(2, 12))
    def test_conservation_and_agreement(self, d):
        od = outcome_distribution(d)
        assert abs(od.total_mass - 1.0) < 1e-12
        assert all(p >= 0 for _, p in od.cells())
        for w in range(17, 22):
            assert abs(od.final_totals[w] - exact_probability(w, d)) < 1e-12

    def test_known_bust_rates(self):
        # infinite-deck S17 dealer bust rates, to the quoted precision
        assert outcome_distribution(6).bust_mass == pytest.approx(0.4232, abs=5e-5)
        assert outcome_distribution(2).bust_mass == pytest.approx(0.3536, abs=5e-5)
        assert outcome_distribution(11).bust_mass == pytest.approx(0.1153, abs=5e-5)

    def test_matches_enumerated_sequences_for_alternate_rules(self):
        r = RuleSet(stand=15, bust=19)
        od = outcome_distribution(7, r)
        assert abs(od.total_mass - 1) < 1e-12
        for w in range(15, 20):
            assert abs(od.final_totals[w] - exact_probability(w, 7, r)) < 1e-12

    def test_json_round_trip(self):
        od = outcome_distribution(10)
        data = json.loads(od.to_json())
        assert set(data["final_totals"]) == {"17", "18", "19", "20", "21"}
        assert OutcomeDistribution.from_dict(data) == od

    def test_csv(self):
        lines = outcome_distribution(10).to_csv().splitlines()
        assert lines[0] == "total,probability,stderr"
        assert [l.split(",")[0] for l in lines[1:]] == ["17", "18", "19", "20", "21", "bust"]


class TestMonteCarlo:
    def test_deterministic(self):
        a = monte_carlo(10, trials=50_000, seed=42)
        b = monte_carlo(10, trials=50_000, seed=42)
        assert a == b
        assert monte_carlo(10, trials=50_000, seed=43) != a

    def test_single_trial(self):
        est = monte_carlo(6, trials=1, seed=5)
        masses = [p for _, p in est.cells()]
        assert sorted(masses) == [0.0] * 5 + [1.0]

    def test_within_four_sigma(self):
        exact = outcome_distribution(11)
        est = monte_carlo(11, trials=200_000, seed=3)
        for key, p in exact.cells():
            got = est.bust_mass if key == "bust" else est.final_totals[key]
            assert abs(got - p) <= 4 * est.stderr[key]

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            monte_carlo(10, trials=0)
        with pytest.raises(ValueError):
            monte_carlo(10, cd=UNIFORM, trials=10)

    def test_vectorised_play_matches_simulate(self):
        # replay the same card stream through simulate
        rng = np.random.default_rng(11)
        for _ in range(2000):
            d = int(rng.integers(2, 12))
            cards = []
            while True:
                cards.append(int(rng.integers(1, 11)))
                t = simulate(d, cards)
                if t.outcome is not Outcome.INCOMPLETE:
                    break
            class Replay:
                def __init__(self, seq):
                    self.seq = list(seq)

                def choice(self, values, size, p):
                    return np.array([self.seq.pop(0) for _ in range(size)])

            final = _play_chunk(Replay(cards), 1, d, RuleSet(), np.arange(1, 11), None)
            assert int(final[0]) == t.total


class TestBeatProbability:
    def test_dealer_on_twelve(self):
        assert abs(beat_probability(12, 18, 21) - 0.3843) < 5e-5

    def test_single_target_is_quarter(self):
        assert beat_probability(12, 18, 18) == pytest.approx((1 / 13) * (14 / 13) ** 3, rel=1e-15)

    def test_dealer_one_below_stand_uses_exact(self):
        # on 16 only an ace reaches 17 exactly
        assert beat_probability(16, 17, 17) == pytest.approx(1 / 13, abs=1e-15)

    def test_out_of_range(self):
        with pytest.raises(InvalidQueryError):
            beat_probability(12, 16, 21)
        with pytest.raises(InvalidQueryError):
            beat_probability(17, 18, 21)

    @given(st.integers(2, 16), st.integers(17, 21), st.integers(0, 4))
    def test_bounded(self, cur, lo, width):
        hi = min(21, lo + width)
        p = beat_probability(cur, lo, hi)
        assert 0 <= p <= 1 + 1e-12
