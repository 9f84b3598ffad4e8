"""Empirical models, no-signaling checks, and noncontextual generators."""

from __future__ import annotations

from fractions import Fraction

import pytest

from contextuality.distribution import Distribution
from contextuality.errors import ScenarioMismatchError, WeightError
from contextuality.model import (
    check_model,
    deterministic_model,
    mixture,
    model_from_tables,
)
from contextuality.scenario import Scenario, sections_over


@pytest.fixture
def triangle() -> Scenario:
    return Scenario(
        ("a", "b", "c"),
        (("a", "b"), ("b", "c"), ("a", "c")),
        ("0", "1"),
    )


def anticorrelated_table(scenario, context):
    weights = {}
    for s in sections_over(scenario, context):
        weights[s] = Fraction(1, 2) if s.values[0] != s.values[1] else Fraction(0)
    return weights


@pytest.fixture
def specker(triangle) -> "EmpiricalModel":
    return model_from_tables(
        triangle,
        {c: anticorrelated_table(triangle, c) for c in triangle.maximal_contexts},
    )


class TestCheckModel:
    def test_anticorrelated_triangle_passes(self, specker):
        assert check_model(specker).ok

    def test_single_context_is_vacuously_compatible(self):
        scenario = Scenario(("a", "b"), (("a", "b"),), ("0", "1"))
        sections = sections_over(scenario, ("a", "b"))
        model = model_from_tables(
            scenario, {("a", "b"): {s: Fraction(1, 4) for s in sections}}
        )
        report = check_model(model)
        assert report.ok and report.failures == ()

    def test_perturbed_table_fails_at_the_right_pair(self, triangle):
        tables = {c: anticorrelated_table(triangle, c) for c in triangle.maximal_contexts}
        # Shift 1/100 of mass within the (a, b) table; sums stay 1 but the
        # marginal on b no longer agrees with the (b, c) table.
        ab = tables[("a", "b")]
        s01 = triangle.section({"a": "0", "b": "1"})
        s00 = triangle.section({"a": "0", "b": "0"})
        ab[s01] -= Fraction(1, 100)
        ab[s00] += Fraction(1, 100)
        model = model_from_tables(triangle, tables)
        report = check_model(model)
        assert not report.ok
        offending = {frozenset((f.first_context, f.second_context)) for f in report.failures}
        assert frozenset((("a", "b"), ("b", "c"))) in offending
        first = report.failures[0]
        assert first.first_value != first.second_value


class TestDeterministicAndMixture:
    def test_deterministic_model_passes_check(self, triangle):
        g = triangle.section({"a": "0", "b": "1", "c": "0"})
        assert check_model(deterministic_model(triangle, g)).ok

    def test_mixture_of_two_point_masses(self, triangle):
        g1 = triangle.section({"a": "0", "b": "1", "c": "0"})
        g2 = triangle.section({"a": "1", "b": "1", "c": "0"})
        mixed = mixture(
            [deterministic_model(triangle, g1), deterministic_model(triangle, g2)],
            [Fraction(1, 2), Fraction(1, 2)],
        )
        assert check_model(mixed).ok
        seen = {w for d in mixed.tables.values() for w in d.weights.values()}
        assert seen <= {Fraction(0), Fraction(1, 2), Fraction(1)}

    def test_mixture_identity_weights(self, triangle):
        g1 = triangle.section({"a": "0", "b": "1", "c": "0"})
        g2 = triangle.section({"a": "1", "b": "0", "c": "1"})
        m1 = deterministic_model(triangle, g1)
        m2 = deterministic_model(triangle, g2)
        assert mixture([m1, m2], [1, 0]) == m1

    def test_weight_sum_error(self, triangle):
        g = triangle.section({"a": "0", "b": "1", "c": "0"})
        m = deterministic_model(triangle, g)
        with pytest.raises(WeightError):
            mixture([m, m], [Fraction(1, 2), Fraction(1, 3)])

    def test_scenario_mismatch_error(self, triangle):
        other = Scenario(("x",), (("x",),), ("0", "1"))
        m1 = deterministic_model(triangle, triangle.section({"a": "0", "b": "0", "c": "0"}))
        m2 = deterministic_model(other, other.section({"x": "0"}))
        with pytest.raises(ScenarioMismatchError):
            mixture([m1, m2], [Fraction(1, 2), Fraction(1, 2)])
