"""Born-rule ingestion and weak hidden-variable representation checks."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from contextuality.catalog import bell_model, ghz_model, hardy_model
from contextuality.classifier import Tier, classify
from contextuality.errors import SnapError
from contextuality.model import deterministic_model
from contextuality.quantum import (
    QuantumExperiment,
    experiment_scenario,
    ghz_experiment,
    is_weak_hv_representation,
    orthogonal_pair_experiment,
    quantum_to_empirical,
    singlet_experiment,
    snap_to_rational,
    weak_hv_report,
)
from contextuality.wps import WpsRepresentation, build_combinatorial_rep


class TestSnapping:
    def test_snaps_to_exact_dyadics(self):
        assert snap_to_rational(0.375) == Fraction(3, 8)
        assert snap_to_rational(0.0) == 0

    def test_rejects_when_no_close_rational(self):
        with pytest.raises(SnapError):
            snap_to_rational(1 / 3 + 1e-5, tolerance=1e-9, denominator_bound=2)

    def test_tight_tolerance_accepts_floating_error(self):
        assert snap_to_rational(1 / 3, denominator_bound=10) == Fraction(1, 3)


class TestExperimentScenario:
    def test_singlet_contexts_are_the_four_pairs(self):
        scenario = experiment_scenario(singlet_experiment())
        assert scenario.measurements == ("a", "b", "a'", "b'")
        assert scenario.maximal_contexts == bell_model().scenario.maximal_contexts

    def test_ghz_contexts_are_the_eight_triples(self):
        scenario = experiment_scenario(ghz_experiment())
        assert len(scenario.maximal_contexts) == 8
        assert all(len(c) == 3 for c in scenario.maximal_contexts)

    def test_orthogonal_pair_shares_one_context(self):
        scenario = experiment_scenario(orthogonal_pair_experiment())
        assert scenario.maximal_contexts == (("up", "down"),)


class TestQuantumToEmpirical:
    def test_singlet_reproduces_the_bell_tables_exactly(self):
        assert quantum_to_empirical(singlet_experiment()) == bell_model()

    def test_singlet_classifies_probabilistic(self):
        assert classify(quantum_to_empirical(singlet_experiment())).tier is Tier.PROBABILISTIC

    def test_ghz_reproduces_the_parity_tables_and_classifies_strong(self):
        model = quantum_to_empirical(ghz_experiment())
        assert model == ghz_model()
        assert classify(model).tier is Tier.STRONG

    def test_eigenvector_state_gives_a_deterministic_model(self):
        experiment = orthogonal_pair_experiment()
        model = quantum_to_empirical(experiment)
        expected = deterministic_model(
            model.scenario, model.scenario.section({"up": "1", "down": "0"})
        )
        assert model == expected


class TestWeakHvRepresentation:
    def test_bell_rep_against_the_singlet(self):
        rep = build_combinatorial_rep(bell_model())
        assert is_weak_hv_representation(rep, singlet_experiment())

    def test_orthogonal_pair_rep_checks_joint_firing(self):
        experiment = orthogonal_pair_experiment()
        rep = build_combinatorial_rep(quantum_to_empirical(experiment))
        report = weak_hv_report(rep, experiment)
        assert report.ok

    def test_perturbed_value_fails(self):
        rep = build_combinatorial_rep(bell_model())
        target = rep.event(rep.model.scenario.section({"a": "1"}))
        tampered_mu = dict(rep.mu)
        tampered_mu[target] = tampered_mu[target] + Fraction(1, 64)
        tampered = WpsRepresentation(
            rep.model, rep.points, rep.transfer, rep.sigma_algebras, tampered_mu, rep.combinatorial
        )
        report = weak_hv_report(tampered, singlet_experiment())
        assert not report.ok

    def test_rep_of_a_different_model_fails(self):
        rep = build_combinatorial_rep(hardy_model())
        report = weak_hv_report(rep, singlet_experiment())
        assert not report.ok
        assert report.failures[0].condition == "model-match"

    def test_ghz_rep_against_the_ghz_experiment(self):
        rep = build_combinatorial_rep(ghz_model())
        assert is_weak_hv_representation(rep, ghz_experiment())


class TestExperimentValidation:
    def test_unnormalized_state_rejected(self):
        with pytest.raises(ValueError, match="normalized"):
            QuantumExperiment([1.0, 1.0], [("p", np.eye(2))])

    def test_non_idempotent_projector_rejected(self):
        with pytest.raises(ValueError, match="idempotent"):
            QuantumExperiment([1.0, 0.0], [("p", np.array([[0.5, 0.5], [0.5, 0.8]]))])

    def test_state_accepts_exact_string_pairs(self):
        q = QuantumExperiment([("1", "0"), ("0", "0")], [("p", np.array([[1, 0], [0, 0]]))])
        assert q.dimension == 2
