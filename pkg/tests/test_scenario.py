"""Sections, restriction, and gluing."""

from __future__ import annotations

import pytest

from contextuality.errors import (
    DomainError,
    EnumerationCapError,
    IncompatibleSectionsError,
)
from contextuality.scenario import Scenario, all_contexts, glue, restrict, sections_over


@pytest.fixture
def bell_scenario() -> Scenario:
    return Scenario(
        measurements=("a", "b", "a'", "b'"),
        maximal_contexts=(("a", "b"), ("a", "b'"), ("a'", "b"), ("a'", "b'")),
        outcomes=("0", "1"),
    )


class TestScenarioInvariants:
    def test_rejects_uncovered_measurement(self):
        with pytest.raises(ValueError, match="no maximal context"):
            Scenario(("a", "b"), (("a",),), ("0",))

    def test_rejects_nested_contexts(self):
        with pytest.raises(ValueError, match="contained"):
            Scenario(("a", "b"), (("a",), ("a", "b")), ("0",))

    def test_rejects_empty_outcomes(self):
        with pytest.raises(ValueError):
            Scenario(("a",), (("a",),), ())

    def test_contexts_are_canonically_sorted(self, bell_scenario):
        assert bell_scenario.maximal_contexts == (
            ("a", "b"), ("a", "b'"), ("b", "a'"), ("a'", "b'"),
        )

    def test_degenerate_single_measurement_single_outcome(self):
        s = Scenario(("m",), (("m",),), ("only",))
        assert len(sections_over(s, ("m",))) == 1


class TestSectionsOver:
    def test_bell_pair_has_four_sections(self, bell_scenario):
        assert len(sections_over(bell_scenario, ("a", "b"))) == 4

    def test_bell_global_has_sixteen_sections(self, bell_scenario):
        assert len(sections_over(bell_scenario, bell_scenario.measurements)) == 16

    def test_empty_context_has_one_section(self, bell_scenario):
        sections = sections_over(bell_scenario, ())
        assert len(sections) == 1
        assert sections[0].domain == ()

    def test_order_is_lexicographic(self, bell_scenario):
        got = [s.values for s in sections_over(bell_scenario, ("a", "b"))]
        assert got == [("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")]

    def test_cap_is_enforced(self, bell_scenario):
        with pytest.raises(EnumerationCapError):
            sections_over(bell_scenario, bell_scenario.measurements, cap=15)


class TestRestrict:
    def test_projection(self, bell_scenario):
        s = bell_scenario.section({"a": "1", "b": "0"})
        assert restrict(s, ("a",)) == bell_scenario.section({"a": "1"})

    def test_identity(self, bell_scenario):
        s = bell_scenario.section({"a": "1", "b": "0"})
        assert restrict(s, s.domain) == s

    def test_three_measurement_projection(self, bell_scenario):
        s = bell_scenario.section({"a": "1", "b": "0", "a'": "1"})
        assert restrict(s, ("b", "a'")) == bell_scenario.section({"b": "0", "a'": "1"})

    def test_outside_domain_is_an_error(self, bell_scenario):
        s = bell_scenario.section({"a": "1"})
        with pytest.raises(DomainError):
            restrict(s, ("b",))


class TestGlue:
    def test_piecewise_union(self, bell_scenario):
        s1 = bell_scenario.section({"a": "1", "b": "1"})
        s2 = bell_scenario.section({"b": "1", "a'": "0"})
        assert glue([s1, s2]) == bell_scenario.section({"a": "1", "b": "1", "a'": "0"})

    def test_clash_names_pair_and_measurement(self, bell_scenario):
        s1 = bell_scenario.section({"a": "1", "b": "1"})
        s2 = bell_scenario.section({"b": "0", "a'": "0"})
        with pytest.raises(IncompatibleSectionsError) as err:
            glue([s1, s2])
        assert err.value.measurement == "b"
        assert (err.value.first, err.value.second) == (0, 1)

    def test_singleton_family(self, bell_scenario):
        s = bell_scenario.section({"a": "0"})
        assert glue([s]) == s

    def test_empty_family_rejected(self):
        with pytest.raises(ValueError):
            glue([])


class TestAllContexts:
    def test_bell_context_lattice(self, bell_scenario):
        contexts = all_contexts(bell_scenario)
        assert contexts[0] == ()
        assert len(contexts) == 1 + 4 + 4
        assert ("a", "a'") not in contexts

    def test_every_context_sits_in_a_maximal_one(self, bell_scenario):
        for u in all_contexts(bell_scenario):
            assert bell_scenario.is_context(u)
