"""Versioned JSON documents for scenarios, models, certificates, and reports.

Probabilities travel as "p/q" strings; JSON numbers are rejected for them,
so nothing is ever parsed through floating point.  Measurement and outcome
labels must be comma-free strings (context and section keys are comma
joined).  Every document carries ``schema_version`` and ``kind``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from .distribution import Distribution
from .dutchbook import DutchBookCertificate
from .errors import SchemaError
from .extensions import ExplicitExtension
from .model import EmpiricalModel
from .scenario import Scenario, sections_over
from .violations import MarginalizationFailure, ViolationKind, ViolationWitness
from .wps import WpsRepresentation

SCHEMA_VERSION = 1

KIND_MODEL = "empirical-model"
KIND_SCENARIO = "scenario"
KIND_CERTIFICATE = "dutch-book-certificate"
KIND_WITNESS = "violation-witness"
KIND_EXTENSION = "extension"
KIND_EXPERIMENT = "quantum-experiment"


def _check_label(label: Any, field: str) -> str:
    if not isinstance(label, str) or not label or "," in label:
        raise SchemaError(f"label {label!r} must be a non-empty comma-free string", field)
    return label


def _fraction_from(value: Any, field: str) -> Fraction:
    if not isinstance(value, str):
        raise SchemaError(f"probabilities must be 'p/q' strings, got {value!r}", field)
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"cannot parse rational {value!r}: {exc}", field) from None


def _expect(document: Mapping, key: str, field: str | None = None) -> Any:
    if key not in document:
        raise SchemaError(f"missing field {key!r}", field)
    return document[key]


def _check_header(document: Mapping, kind: str) -> None:
    version = _expect(document, "schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {version!r}")
    got = _expect(document, "kind")
    if got != kind:
        raise SchemaError(f"expected kind {kind!r}, found {got!r}")


# ---------------------------------------------------------------------------
# Scenario and model documents
# ---------------------------------------------------------------------------


def scenario_to_dict(scenario: Scenario) -> dict:
    for m in scenario.measurements:
        _check_label(m, "measurements")
    for o in scenario.outcomes:
        _check_label(o, "outcomes")
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": KIND_SCENARIO,
        "measurements": list(scenario.measurements),
        "outcomes": list(scenario.outcomes),
        "maximal_contexts": [list(c) for c in scenario.maximal_contexts],
    }


def scenario_from_dict(document: Mapping) -> Scenario:
    _check_header(document, KIND_SCENARIO)
    return _scenario_from_fields(document, field="")


def _scenario_from_fields(document: Mapping, field: str) -> Scenario:
    measurements = [_check_label(m, field + "measurements") for m in _expect(document, "measurements", field)]
    outcomes = [_check_label(o, field + "outcomes") for o in _expect(document, "outcomes", field)]
    contexts = _expect(document, "maximal_contexts", field)
    try:
        return Scenario(measurements, [tuple(c) for c in contexts], outcomes)
    except ValueError as exc:
        raise SchemaError(str(exc), field + "maximal_contexts") from None


def model_to_dict(model: EmpiricalModel) -> dict:
    scenario = model.scenario
    header = scenario_to_dict(scenario)
    tables: dict[str, dict[str, str]] = {}
    for context in scenario.maximal_contexts:
        key = ",".join(context)
        table = model.table(context)
        tables[key] = {
            ",".join(s.values): str(table.weight(s))
            for s in sections_over(scenario, context)
        }
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": KIND_MODEL,
        "scenario": {
            "measurements": header["measurements"],
            "outcomes": header["outcomes"],
            "maximal_contexts": header["maximal_contexts"],
        },
        "tables": tables,
    }


def model_from_dict(document: Mapping) -> EmpiricalModel:
    """Parse a model document.  Structure is validated here; the exact
    no-signaling condition is the caller's check to run and report."""
    _check_header(document, KIND_MODEL)
    scenario = _scenario_from_fields(_expect(document, "scenario"), field="scenario.")
    tables_doc = _expect(document, "tables")
    tables = {}
    for key, rows in tables_doc.items():
        field = f"tables.{key}"
        context = tuple(key.split(","))
        try:
            context = scenario.canonical_context(context)
        except Exception:
            raise SchemaError(f"unknown context key {key!r}", field) from None
        if context not in scenario.maximal_contexts:
            raise SchemaError(f"{key!r} is not a maximal context", field)
        weights = {}
        for section_key, raw in rows.items():
            outcomes = tuple(section_key.split(","))
            if len(outcomes) != len(context):
                raise SchemaError(f"section key {section_key!r} has wrong arity", field)
            try:
                section = scenario.section(dict(zip(context, outcomes)))
            except Exception:
                raise SchemaError(f"bad section key {section_key!r}", f"{field}.{section_key}") from None
            weights[section] = _fraction_from(raw, f"{field}.{section_key}")
        try:
            tables[context] = Distribution(scenario, context, weights)
        except Exception as exc:
            raise SchemaError(str(exc), field) from None
    try:
        return EmpiricalModel(scenario, tables)
    except Exception as exc:
        raise SchemaError(str(exc), "tables") from None


# ---------------------------------------------------------------------------
# Certificates, witnesses, extensions
# ---------------------------------------------------------------------------


def _event_to_labels(rep: WpsRepresentation, event) -> list[str]:
    return list(rep.sorted_points(event))


def _event_from_labels(rep: WpsRepresentation, labels, field: str) -> frozenset:
    for label in labels:
        if label not in rep.sample_space:
            raise SchemaError(f"unknown sample point {label!r}", field)
    return frozenset(labels)


def certificate_to_dict(rep: WpsRepresentation, certificate: DutchBookCertificate) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": KIND_CERTIFICATE,
        "stakes": [
            {"event": _event_to_labels(rep, event), "stake": str(stake)}
            for event, stake in certificate.stakes
        ],
        "loss_bound": str(certificate.loss_bound),
    }


def certificate_from_dict(rep: WpsRepresentation, document: Mapping) -> DutchBookCertificate:
    _check_header(document, KIND_CERTIFICATE)
    stakes = []
    for i, item in enumerate(_expect(document, "stakes")):
        event = _event_from_labels(rep, _expect(item, "event", f"stakes[{i}]"), f"stakes[{i}].event")
        stakes.append((event, _fraction_from(_expect(item, "stake", f"stakes[{i}]"), f"stakes[{i}].stake")))
    bound = _fraction_from(_expect(document, "loss_bound"), "loss_bound")
    if bound <= 0:
        raise SchemaError("loss_bound must be positive", "loss_bound")
    return DutchBookCertificate(tuple(stakes), bound)


def witness_to_dict(rep: WpsRepresentation, witness: ViolationWitness) -> dict:
    document = {
        "schema_version": SCHEMA_VERSION,
        "kind": KIND_WITNESS,
        "violation": witness.kind.value,
        "collection": [_event_to_labels(rep, e) for e in witness.collection],
        "defect": str(witness.defect),
    }
    data = witness.support_data
    if isinstance(data, MarginalizationFailure):
        document["support"] = {
            "context": list(data.context),
            "section": list(data.section.values),
            "extension_kind": data.extension_kind,
        }
    return document


def witness_from_dict(rep: WpsRepresentation, document: Mapping) -> ViolationWitness:
    _check_header(document, KIND_WITNESS)
    try:
        kind = ViolationKind(_expect(document, "violation"))
    except ValueError:
        raise SchemaError(f"unknown violation kind {document.get('violation')!r}", "violation") from None
    collection = tuple(
        _event_from_labels(rep, labels, f"collection[{i}]")
        for i, labels in enumerate(_expect(document, "collection"))
    )
    defect = _fraction_from(_expect(document, "defect"), "defect")
    support = None
    if "support" in document and kind is ViolationKind.MONOTONIC_ADDITIVITY:
        raw = document["support"]
        context = rep.model.scenario.canonical_context(tuple(raw["context"]))
        section = rep.model.scenario.section(dict(zip(tuple(raw["context"]), tuple(raw["section"]))))
        support = MarginalizationFailure(context, section, rep.event(section), raw.get("extension_kind", "unknown"), None)
    return ViolationWitness(kind, collection, defect, support)


def extension_to_dict(rep: WpsRepresentation, extension: ExplicitExtension, extension_kind: str) -> dict:
    if extension_kind not in ("monotonic", "classical"):
        raise SchemaError("extension_kind must be 'monotonic' or 'classical'")
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": KIND_EXTENSION,
        "extension_kind": extension_kind,
        "values": [
            {"event": _event_to_labels(rep, e), "value": str(v)}
            for e, v in sorted(extension.values.items(), key=rep.event_key)
        ],
    }


def extension_from_dict(rep: WpsRepresentation, document: Mapping) -> tuple[ExplicitExtension, str]:
    _check_header(document, KIND_EXTENSION)
    extension_kind = _expect(document, "extension_kind")
    if extension_kind not in ("monotonic", "classical"):
        raise SchemaError(f"unknown extension_kind {extension_kind!r}", "extension_kind")
    values = {}
    for i, item in enumerate(_expect(document, "values")):
        event = _event_from_labels(rep, _expect(item, "event", f"values[{i}]"), f"values[{i}].event")
        values[event] = _fraction_from(_expect(item, "value", f"values[{i}]"), f"values[{i}].value")
    return ExplicitExtension(rep, values), extension_kind


# ---------------------------------------------------------------------------
# File plumbing
# ---------------------------------------------------------------------------


def dumps(document: Mapping) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def loads(text: str) -> dict:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from None
    if not isinstance(document, dict):
        raise SchemaError("the top-level JSON value must be an object")
    return document


def save(path, document: Mapping) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps(document))


def load(path) -> dict:
    with open(path, encoding="utf-8") as handle:
        return loads(handle.read())
