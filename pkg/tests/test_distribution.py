"""Distributions and exact marginalization."""

from __future__ import annotations

from fractions import Fraction

import pytest

from contextuality.distribution import (
    Distribution,
    marginalize,
    point_mass,
    uniform,
)
from contextuality.errors import DomainError, WeightError
from contextuality.scenario import Scenario, restrict, sections_over


@pytest.fixture
def pair_scenario() -> Scenario:
    return Scenario(("a", "b"), (("a", "b"),), ("0", "1"))


class TestDistributionInvariants:
    def test_weights_must_sum_to_one(self, pair_scenario):
        sections = sections_over(pair_scenario, ("a", "b"))
        weights = {s: Fraction(1, 5) for s in sections}
        with pytest.raises(WeightError, match="sum"):
            Distribution(pair_scenario, ("a", "b"), weights)

    def test_weights_must_be_total(self, pair_scenario):
        sections = sections_over(pair_scenario, ("a", "b"))
        weights = {sections[0]: Fraction(1)}
        with pytest.raises(WeightError, match="missing"):
            Distribution(pair_scenario, ("a", "b"), weights)

    def test_negative_weight_rejected(self, pair_scenario):
        sections = sections_over(pair_scenario, ("a", "b"))
        weights = {s: Fraction(1, 2) for s in sections}
        weights[sections[0]] = Fraction(-1, 2)
        weights[sections[1]] = Fraction(1, 2)
        with pytest.raises(WeightError, match="negative"):
            Distribution(pair_scenario, ("a", "b"), weights)

    def test_floats_rejected_at_the_boundary(self, pair_scenario):
        sections = sections_over(pair_scenario, ("a", "b"))
        weights = {s: 0.25 for s in sections}
        with pytest.raises(WeightError, match="float"):
            Distribution(pair_scenario, ("a", "b"), weights)

    def test_string_rationals_accepted(self, pair_scenario):
        sections = sections_over(pair_scenario, ("a", "b"))
        d = Distribution(pair_scenario, ("a", "b"), {s: "1/4" for s in sections})
        assert all(w == Fraction(1, 4) for w in d.weights.values())


class TestMarginalize:
    def test_identity_case(self, pair_scenario):
        d = uniform(pair_scenario, ("a", "b"))
        assert marginalize(d, ("a", "b")) is d

    def test_point_mass_marginalizes_to_restriction(self, pair_scenario):
        s = pair_scenario.section({"a": "1", "b": "0"})
        d = point_mass(pair_scenario, s)
        got = marginalize(d, ("a",))
        assert got == point_mass(pair_scenario, restrict(s, ("a",)))

    def test_uniform_pair_to_uniform_singleton(self, pair_scenario):
        # Hand sum over the two extensions of each singleton section:
        # each singleton section gathers 1/4 + 1/4 = 1/2.
        d = uniform(pair_scenario, ("a", "b"))
        got = marginalize(d, ("a",))
        for s in sections_over(pair_scenario, ("a",)):
            assert got.weight(s) == Fraction(1, 2)

    def test_functoriality(self):
        scenario = Scenario(("a", "b", "c"), (("a", "b", "c"),), ("0", "1"))
        d = uniform(scenario, ("a", "b", "c"))
        one_step = marginalize(d, ("a",))
        two_step = marginalize(marginalize(d, ("a", "b")), ("a",))
        assert one_step == two_step

    def test_non_subset_rejected(self, pair_scenario):
        d = uniform(pair_scenario, ("a",))
        with pytest.raises(DomainError):
            marginalize(d, ("b",))
