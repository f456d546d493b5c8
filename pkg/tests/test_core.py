"""Data model: probabilities, distributions, automata, validation, Post sets."""
from fractions import Fraction

import pytest

from pasynch import Dist, InputError, Pa, as_prob, b_one, lift, twin


def two_state_pa():
    return Pa(
        states=("q0", "q1"),
        alphabet=("a", "b"),
        initial={"q0": 1},
        delta={
            ("q0", "a"): {"q1": 1},
            ("q0", "b"): {"q0": "1/2", "q1": "1/2"},
            ("q1", "a"): {"q1": 1},
            ("q1", "b"): {"q0": 1},
        },
        accepting=("q1",),
    )


class TestProb:
    def test_canonical_form(self):
        assert as_prob("2/4") == Fraction(1, 2)
        assert as_prob("3/9") == Fraction(1, 3)
        assert str(as_prob("2/4")) == "1/2"

    def test_integers_and_fractions(self):
        assert as_prob(1) == Fraction(1)
        assert as_prob(0) == Fraction(0)
        assert as_prob(Fraction(3, 4)) == Fraction(3, 4)

    def test_range_enforced(self):
        with pytest.raises(InputError):
            as_prob("3/2")
        with pytest.raises(InputError):
            as_prob(-1)

    def test_floats_rejected(self):
        with pytest.raises(InputError):
            as_prob(0.5)

    def test_garbage_rejected(self):
        with pytest.raises(InputError):
            as_prob("h/2")
        with pytest.raises(InputError):
            as_prob("1/0")


class TestDist:
    def test_support_dirac(self):
        assert Dist({"q0": 1}).support() == {"q0"}

    def test_support_uniform(self):
        assert Dist({"q0": "1/2", "q1": "1/2"}).support() == {"q0", "q1"}

    def test_support_excludes_zero_mass(self):
        d = Dist({"q0": "1/3", "q1": "2/3", "q2": 0})
        assert d.support() == {"q0", "q1"}

    def test_norm_dirac(self):
        assert Dist({"q0": 1}).norm() == 1

    def test_norm_uniform(self):
        assert Dist({"q0": "1/2", "q1": "1/2"}).norm() == Fraction(1, 2)

    def test_norm_max_entry(self):
        assert Dist({"q0": "1/3", "q1": "2/3"}).norm() == Fraction(2, 3)

    def test_mass_defaults_to_zero(self):
        assert Dist({"q0": 1}).mass("missing") == 0

    def test_equality_ignores_stored_zeros(self):
        assert Dist({"q0": 1, "q1": 0}) == Dist({"q0": 1})
        assert hash(Dist({"q0": 1, "q1": 0})) == hash(Dist({"q0": 1}))

    def test_total(self):
        assert Dist({"q0": "1/4", "q1": "1/4"}).total() == Fraction(1, 2)
        assert Dist({"q0": "1/2", "q1": "1/2"}).is_valid()

    def test_bad_state_names(self):
        with pytest.raises(InputError):
            Dist({"": 1})


class TestValidate:
    def test_well_formed(self):
        assert two_state_pa().validate().ok

    def test_row_sum_violation(self):
        pa = Pa(("q0",), ("a",), {"q0": 1}, {("q0", "a"): {"q0": "3/4"}})
        report = pa.validate()
        assert not report.ok
        assert "row (q0,a) sums to 3/4" in report.violations

    def test_incomplete_delta(self):
        pa = Pa(("q0", "q1"), ("a", "b"), {"q0": 1}, {
            ("q0", "a"): {"q1": 1},
            ("q0", "b"): {"q0": 1},
            ("q1", "a"): {"q1": 1},
        })
        report = pa.validate()
        assert "delta incomplete at (q1,b)" in report.violations

    def test_initial_must_sum_to_one(self):
        pa = Pa(("q0",), ("a",), {"q0": "1/2"}, {("q0", "a"): {"q0": 1}})
        assert any("initial distribution sums to 1/2" in v for v in pa.validate().violations)

    def test_unknown_names_reported(self):
        pa = Pa(("q0",), ("a",), {"zz": 1}, {
            ("q0", "a"): {"q0": "1/2", "yy": "1/2"},
            ("q0", "b"): {"q0": 1},
        }, accepting=("ww",))
        violations = pa.validate().violations
        assert any("initial mass on unknown state 'zz'" in v for v in violations)
        assert any("targets unknown state 'yy'" in v for v in violations)
        assert any("accepting state 'ww'" in v for v in violations)
        assert any("unknown letter 'b'" in v for v in violations)

    def test_duplicates_reported(self):
        pa = Pa(("q0", "q0"), ("a", "a"), {"q0": 1}, {("q0", "a"): {"q0": 1}})
        violations = pa.validate().violations
        assert any("duplicate state name" in v for v in violations)
        assert any("duplicate letter" in v for v in violations)


class TestPost:
    def test_deterministic_edge(self):
        assert two_state_pa().post("q0", "a") == {"q1"}

    def test_split_row(self):
        assert two_state_pa().post("q0", "b") == {"q0", "q1"}

    def test_unknown_letter(self):
        with pytest.raises(InputError, match="unknown letter 'z'"):
            two_state_pa().post("q0", "z")

    def test_unknown_state(self):
        with pytest.raises(InputError, match="unknown state"):
            two_state_pa().post("nope", "a")

    def test_post_set_empty(self):
        assert two_state_pa().post_set(set(), {"a"}) == frozenset()

    def test_post_set_union(self):
        pa = two_state_pa()
        assert pa.post_set({"q0", "q1"}, {"a", "b"}) == {"q0", "q1"}

    def test_post_set_monotone(self):
        pa = two_state_pa()
        small = pa.post_set({"q0"}, {"a"})
        big = pa.post_set({"q0", "q1"}, {"a", "b"})
        assert small <= big

    def test_twin_reset_post_set(self):
        c = twin(lift(b_one()))
        assert c.pa.post_set(c.pa.states, {c.hash}) == {c.q0, c.q0_hat}

    def test_twin_commit_post_set(self):
        c = twin(lift(b_one()))
        assert c.pa.post_set(c.pa.states, {c.dollar}) == {c.q_f, c.q_n, c.q_n_hat}
