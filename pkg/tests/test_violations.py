"""Defects, violation witnesses, and classical extensions."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from contextuality.catalog import (
    bell_model,
    hardy_model,
    pr_box_model,
    random_deterministic_mixture,
    specker_triangle_model,
    two_party_scenario,
)
from contextuality.classifier import Tier
from contextuality.errors import (
    NonCombinatorialError,
    NotAnEventError,
    NotAnExtensionError,
    TierMismatchError,
    UnionNotEvaluableError,
)
from contextuality.extensions import (
    CoverExtension,
    EnvelopeExtension,
    ExplicitExtension,
    PointMeasureExtension,
    canonical_monotone_extension,
    sample_monotone_extensions,
)
from contextuality.scenario import sections_over
from contextuality.violations import (
    AdditiveCover,
    ViolationKind,
    additivity_violation,
    context_additive_cover,
    defect,
    has_classical_extension,
    logical_subadditivity_violation,
    marginalization_failure,
    strong_subadditivity_violation,
    subadditivity_violation_by_cover,
    tier_violation_witness,
    verify_extension,
    verify_witness,
)
from contextuality.wps import PadPoint, build_combinatorial_rep, build_padded_rep


@pytest.fixture(scope="module")
def pr_rep():
    return build_combinatorial_rep(pr_box_model())


@pytest.fixture(scope="module")
def bell_rep():
    return build_combinatorial_rep(bell_model())


@pytest.fixture(scope="module")
def hardy_rep():
    return build_combinatorial_rep(hardy_model())


@pytest.fixture(scope="module")
def noncontextual_rep():
    rng = random.Random(3)
    return build_combinatorial_rep(random_deterministic_mixture(two_party_scenario(), rng))


def null_context_events(rep):
    return [e for e in rep.maximal_context_events() if rep.mu_of(e) == 0]


class TestDefect:
    def test_empty_collection(self, bell_rep):
        assert defect(bell_rep, []) == 0

    def test_pr_box_null_cover_defect_is_one(self, pr_rep):
        nulls = null_context_events(pr_rep)
        assert len(nulls) == 8
        assert defect(pr_rep, nulls) == 1

    def test_additive_cover_defect_is_zero(self, bell_rep):
        cover = context_additive_cover(bell_rep, ("a", "b"))
        assert defect(bell_rep, cover.events) == 0

    def test_member_outside_family_rejected(self, bell_rep):
        odd = frozenset({bell_rep.points[0], bell_rep.points[-1]})
        with pytest.raises(NotAnEventError):
            defect(bell_rep, [odd])

    def test_unevaluable_union_rejected(self, bell_rep):
        scenario = bell_rep.model.scenario
        pieces = [
            bell_rep.event(scenario.section({"a": "0", "b": "0"})),
            bell_rep.event(scenario.section({"a'": "0", "b'": "1"})),
        ]
        with pytest.raises(UnionNotEvaluableError):
            defect(bell_rep, pieces)


class TestTierWitnesses:
    def test_strong_witness_on_pr_box(self, pr_rep):
        w = tier_violation_witness(pr_rep, Tier.STRONG)
        assert w.kind is ViolationKind.MAXIMAL_SUBADDITIVITY
        assert w.defect == 1
        assert verify_witness(pr_rep, w)

    def test_strong_witness_on_padded_pr_box(self):
        pads = [
            PadPoint("pad-d1", {"a": ("0", "1"), "b": ("0",), "a'": ("0",), "b'": ("0",)}),
            PadPoint("pad-d2", {"a": ("0",), "b": (), "a'": ("0",), "b'": ("0",)}),
        ]
        rep = build_padded_rep(pr_box_model(), pads)
        w = tier_violation_witness(rep, Tier.STRONG)
        assert w.defect == 1
        assert verify_witness(rep, w)

    def test_logical_witness_on_hardy(self, hardy_rep):
        w = tier_violation_witness(hardy_rep, Tier.LOGICAL)
        assert w.kind is ViolationKind.SUBADDITIVITY
        assert w.defect == Fraction(1, 8)  # weight of the non-extendable edge
        assert verify_witness(hardy_rep, w)

    def test_probabilistic_witness_on_bell(self, bell_rep):
        w = tier_violation_witness(bell_rep, Tier.PROBABILISTIC)
        assert w.kind is ViolationKind.MONOTONIC_ADDITIVITY
        assert w.defect != 0
        assert w.support_data.certificate is not None
        assert verify_witness(bell_rep, w)

    def test_tier_mismatch_rejected(self, bell_rep):
        with pytest.raises(TierMismatchError):
            tier_violation_witness(bell_rep, Tier.STRONG)

    def test_strong_model_supports_lower_tier_witnesses(self, pr_rep):
        w = tier_violation_witness(pr_rep, Tier.LOGICAL)
        assert w.defect > 0
        assert verify_witness(pr_rep, w)


class TestMaximalContextViolations:
    def test_pr_box_strong_violation(self, pr_rep):
        flagged, witness = strong_subadditivity_violation(pr_rep)
        assert flagged and witness.defect == 1

    def test_hardy_logical_but_not_strong(self, hardy_rep):
        strong, _ = strong_subadditivity_violation(hardy_rep)
        logical, witness = logical_subadditivity_violation(hardy_rep)
        assert not strong and logical
        assert witness.defect == Fraction(1, 8)
        assert witness.support_data.section == hardy_rep.model.scenario.section({"a": "0", "b": "0"})

    def test_bell_only_additivity(self, bell_rep):
        strong, _ = strong_subadditivity_violation(bell_rep)
        logical, _ = logical_subadditivity_violation(bell_rep)
        additive, witness = additivity_violation(bell_rep)
        assert (strong, logical, additive) == (False, False, True)
        assert witness.support_data.certificate.verify(bell_rep.model)

    def test_noncontextual_rep_passes_everything(self, noncontextual_rep):
        assert not strong_subadditivity_violation(noncontextual_rep)[0]
        assert not logical_subadditivity_violation(noncontextual_rep)[0]
        assert not additivity_violation(noncontextual_rep)[0]

    def test_padded_rep_rejected(self):
        rep = build_padded_rep(
            bell_model(),
            [PadPoint("pad", {"a": ("0", "1"), "b": ("0",), "a'": ("0",), "b'": ("0",)})],
        )
        with pytest.raises(NonCombinatorialError):
            strong_subadditivity_violation(rep)


class TestClassicalExtensions:
    def test_noncontextual_rep_has_classical_extension(self, noncontextual_rep):
        weights = has_classical_extension(noncontextual_rep)
        assert weights is not None
        assert sum(weights.values()) == 1

    def test_bell_rep_has_none(self, bell_rep):
        assert has_classical_extension(bell_rep) is None

    def test_pr_box_rep_has_none(self, pr_rep):
        assert has_classical_extension(pr_rep) is None

    def test_point_measure_verifies_both_kinds(self, noncontextual_rep):
        weights = has_classical_extension(noncontextual_rep)
        candidate = PointMeasureExtension(noncontextual_rep, weights)
        assert verify_extension(noncontextual_rep, candidate, "monotonic").ok
        assert verify_extension(noncontextual_rep, candidate, "classical").ok


class TestExtensions:
    def test_bell_rep_already_violates_subadditivity_by_cover(self, bell_rep):
        # Eight events, two of them null, cover the space with total weight
        # three quarters; no subadditive extension can exist.
        witness = subadditivity_violation_by_cover(bell_rep)
        assert witness is not None
        assert witness.defect == Fraction(1, 4)
        assert frozenset().union(*witness.collection) == bell_rep.sample_space

    def test_noncontextual_rep_has_no_cover_violation(self, noncontextual_rep):
        assert subadditivity_violation_by_cover(noncontextual_rep) is None

    def test_canonical_extension_of_bell_is_the_envelope(self, bell_rep):
        ext = canonical_monotone_extension(bell_rep)
        assert isinstance(ext, EnvelopeExtension)
        assert verify_extension(bell_rep, ext, "monotonic").ok

    def test_canonical_extension_of_noncontextual_rep_is_cover_based(self, noncontextual_rep):
        ext = canonical_monotone_extension(noncontextual_rep)
        assert isinstance(ext, CoverExtension)
        assert verify_extension(noncontextual_rep, ext, "monotonic").ok

    def test_cover_extension_rejects_subadditivity_violating_reps(self, pr_rep, bell_rep):
        with pytest.raises(NotAnExtensionError):
            CoverExtension(pr_rep)
        with pytest.raises(NotAnExtensionError):
            CoverExtension(bell_rep)

    def test_sampled_extensions_are_extensions_and_fail_somewhere(self, bell_rep):
        samples = sample_monotone_extensions(bell_rep, count=5, seed=1)
        assert len(samples) == 5
        for ext in samples:
            assert ext.monotone
            found = marginalization_failure(bell_rep, ext)
            assert found is not None
            record, parts, value = found
            assert value != 0
            assert defect(bell_rep, parts, extension=ext) == value

    def test_sampling_is_seeded(self, bell_rep):
        a = sample_monotone_extensions(bell_rep, count=3, seed=9)
        b = sample_monotone_extensions(bell_rep, count=3, seed=9)
        probe = frozenset({bell_rep.points[0], bell_rep.points[5]})
        assert [e.value(probe) for e in a] == [e.value(probe) for e in b]

    def test_noncontextual_rep_has_no_marginalization_failure(self, noncontextual_rep):
        ext = canonical_monotone_extension(noncontextual_rep)
        assert marginalization_failure(noncontextual_rep, ext) is None

    def test_explicit_non_monotone_extension_caught(self):
        rep = build_combinatorial_rep(specker_triangle_model())
        from contextuality.violations import _generated_algebra
        algebra = _generated_algebra(rep, cap=2**20)
        base = has_classical_extension(rep)
        assert base is None  # strongly contextual: no point measure exists
        # Build an explicit candidate from the envelope, then break monotonicity
        # on one non-family chain.
        envelope = EnvelopeExtension(rep)
        values = {e: envelope.value(e) for e in algebra}
        small = min((e for e in algebra if len(e) == 1), key=rep.event_key)
        big = next(e for e in algebra if small < e and len(e) == 2)
        values[small], values[big] = Fraction(1), Fraction(0)
        candidate = ExplicitExtension(rep, values)
        verdict = verify_extension(rep, candidate, "monotonic")
        assert not verdict.ok
        assert verdict.failures[0].condition == "monotonicity"

    def test_mismatched_candidate_raises(self, bell_rep):
        weights = {p: Fraction(1, len(bell_rep.points)) for p in bell_rep.points}
        candidate = PointMeasureExtension(bell_rep, weights)
        with pytest.raises(NotAnExtensionError):
            verify_extension(bell_rep, candidate, "monotonic")


class TestAdditiveCover:
    def test_context_cover_is_valid(self, bell_rep):
        cover = context_additive_cover(bell_rep, ("a'", "b'"))
        assert len(cover.events) == 4

    def test_overlapping_cover_rejected(self, bell_rep):
        scenario = bell_rep.model.scenario
        events = [bell_rep.event(s) for s in sections_over(scenario, ("a",))]
        events.append(bell_rep.event(scenario.section({"a": "0", "b": "0"})))
        from contextuality.errors import InternalConsistencyError
        with pytest.raises(InternalConsistencyError):
            AdditiveCover(bell_rep, events)
