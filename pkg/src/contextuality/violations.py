"""Subadditivity defects, violation witnesses, and classical extensions.

The defect of a finite collection of events is the value of its union minus
the sum of its members' values.  Positive defect on some collection breaks
subadditivity; defect one with a union of full measure is the maximal
break; and a disjoint collection with non-zero defect breaks additivity
outright.  The witness constructions here mirror the excision argument:
contradictory overlaps and outcome-free residues are measure zero, every
surviving core point lives inside the image of a unique global section, and
the tier of the underlying model dictates how cheaply the core can be
covered by null events.

Everything in this module is exact.  Where a claim quantifies over all
monotonic extensions it is decided by the feasibility system over global
sections (whose Farkas certificate is attached to the witness) and spot
checked on concretely constructed extensions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .classifier import (
    GlobalDistributionCertificate,
    Tier,
    global_distribution,
    is_logically_contextual,
    is_strongly_contextual,
)
from .distribution import Distribution
from .errors import (
    DEFAULT_ENUMERATION_CAP,
    EnumerationCapError,
    InternalConsistencyError,
    NonCombinatorialError,
    NotAnEventError,
    NotAnExtensionError,
    TierMismatchError,
    UnionNotEvaluableError,
)
from .extensions import (
    CoverExtension,
    EnvelopeExtension,
    canonical_monotone_extension,
    cheapest_cover_of_space,
)
from .feasibility import solve_nonnegative
from .scenario import Section, restrict, sections_over
from .wps import Event, WpsRepresentation, excise

ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# Defect and additive covers
# ---------------------------------------------------------------------------


def defect(rep: WpsRepresentation, collection: Iterable[Event], extension=None) -> Fraction:
    """Value of the union minus the sum of member values.

    Without an extension, members must belong to the event family and the
    union must itself carry a value there (for combinatorial representations
    every union of one context's cells does; anything else has no canonical
    additive value and is rejected).  With an extension, values are taken
    from it.
    """
    events = [frozenset(e) for e in dict.fromkeys(map(frozenset, collection))]
    union = frozenset().union(*events) if events else frozenset()
    if extension is None:
        for e in events:
            if not rep.in_sigma(e):
                raise NotAnEventError("a witness member is outside the event family")
        if not rep.in_sigma(union):
            raise UnionNotEvaluableError("the union of the collection carries no value in the event family")
        union_value = rep.mu_of(union)
        member_sum = sum((rep.mu_of(e) for e in events), ZERO)
    else:
        union_value = extension.value(union)
        member_sum = sum((extension.value(e) for e in events), ZERO)
    return union_value - member_sum


class AdditiveCover:
    """Mutually disjoint events covering the sample space with zero defect."""

    __slots__ = ("rep", "events")

    def __init__(self, rep: WpsRepresentation, events: Iterable[Event]):
        events = rep.sorted_events(events)
        union: set = set()
        for i, a in enumerate(events):
            for b in events[i + 1:]:
                if a & b:
                    raise InternalConsistencyError("additive cover members overlap")
            union.update(a)
        if frozenset(union) != rep.sample_space:
            raise InternalConsistencyError("additive cover does not cover the sample space")
        if defect(rep, events) != 0:
            raise InternalConsistencyError("additive cover has non-zero defect")
        self.rep = rep
        self.events = events


def context_additive_cover(rep: WpsRepresentation, context) -> AdditiveCover:
    """The additive cover formed by one maximal context's section images."""
    scenario = rep.model.scenario
    context = scenario.canonical_context(context)
    return AdditiveCover(rep, [rep.event(s) for s in sections_over(scenario, context)])


def subadditivity_violation_by_cover(rep: WpsRepresentation) -> Optional[ViolationWitness]:
    """A family cover of the sample space cheaper than the space itself, if any.

    Such a cover is a subadditivity violation whose union is the whole
    sample space, and its existence rules out every subadditive extension:
    any subadditive value for the space would be bounded by the cover's
    total weight.  Decided exactly by minimum-weight set cover.
    """
    events, total = cheapest_cover_of_space(rep)
    if total >= rep.mu_of(rep.sample_space):
        return None
    witness = ViolationWitness(ViolationKind.SUBADDITIVITY, events, defect(rep, events))
    if witness.defect != rep.mu_of(rep.sample_space) - total:
        raise InternalConsistencyError("cover witness defect disagrees with the solver total")
    return witness


# ---------------------------------------------------------------------------
# Witness objects
# ---------------------------------------------------------------------------


class ViolationKind(Enum):
    MAXIMAL_SUBADDITIVITY = "MaximalSubadditivity"
    SUBADDITIVITY = "Subadditivity"
    MONOTONIC_ADDITIVITY = "MonotonicAdditivity"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class MarginalizationFailure:
    """A maximal-context event whose value no extension recovers by summation."""

    context: tuple
    section: Section
    event: Event
    extension_kind: str
    certificate: Optional[GlobalDistributionCertificate]


@dataclass(frozen=True)
class CoveredSupportEvent:
    """A positive-measure event swallowed by the union of null events."""

    context: tuple
    section: Section
    event: Event


@dataclass(frozen=True)
class ViolationWitness:
    kind: ViolationKind
    collection: tuple[Event, ...]
    defect: Fraction
    support_data: object = None

    def __str__(self) -> str:
        return f"{self.kind} witness: {len(self.collection)} events, defect {self.defect}"


def verify_witness(rep: WpsRepresentation, witness: ViolationWitness, extension=None) -> bool:
    """Recompute a witness's defect and kind constraints from scratch."""
    if witness.kind is ViolationKind.MAXIMAL_SUBADDITIVITY:
        if any(rep.mu_of(e) != 0 for e in witness.collection):
            return False
        union = frozenset().union(*witness.collection)
        if union != rep.sample_space:
            return False
        return defect(rep, witness.collection) == witness.defect == 1
    if witness.kind is ViolationKind.SUBADDITIVITY:
        return defect(rep, witness.collection) == witness.defect > 0
    ext = extension
    if ext is None:
        data = witness.support_data
        ext = _extension_by_kind(rep, data.extension_kind if isinstance(data, MarginalizationFailure) else "canonical")
    events = list(witness.collection)
    for i, a in enumerate(events):
        for b in events[i + 1:]:
            if a & b:
                return False
    value = defect(rep, witness.collection, extension=ext)
    ok = value == witness.defect != 0
    data = witness.support_data
    if isinstance(data, MarginalizationFailure) and data.certificate is not None:
        ok = ok and data.certificate.verify(rep.model)
    return ok


def _extension_by_kind(rep: WpsRepresentation, kind: str):
    if kind == CoverExtension.kind:
        return CoverExtension(rep)
    if kind == EnvelopeExtension.kind:
        return EnvelopeExtension(rep)
    return canonical_monotone_extension(rep)


# ---------------------------------------------------------------------------
# Excision-based witness constructions (work on any representation)
# ---------------------------------------------------------------------------


def _excision_null_events(rep: WpsRepresentation) -> list[Event]:
    report = excise(rep)
    return list(report.d1 | report.d2)


def _null_context_events(rep: WpsRepresentation) -> list[Event]:
    return [e for e in rep.maximal_context_events() if rep.mu_of(e) == 0]


def core_parts_of_global_sections(rep: WpsRepresentation, context, section,
                                  core: Optional[Event] = None) -> tuple[Event, ...]:
    """Core parts of the global-section events extending one context section."""
    if core is None:
        core = excise(rep).z
    scenario = rep.model.scenario
    parts = []
    for g in scenario.global_sections():
        if restrict(g, context) == section:
            parts.append(rep.transfer[g] & core)
    return rep.sorted_events(p for p in parts if p)


def marginalization_failure(rep: WpsRepresentation, extension,
                            certificate: Optional[GlobalDistributionCertificate] = None
                            ) -> Optional[tuple[MarginalizationFailure, tuple[Event, ...], Fraction]]:
    """First maximal-context event whose extension values fail to sum to it.

    Scans contexts and sections in canonical order; returns the failure
    record, the disjoint collection of core parts of the extending global
    sections, and its (non-zero) defect under the extension.
    """
    scenario = rep.model.scenario
    core = excise(rep).z
    for context in scenario.maximal_contexts:
        for section in sections_over(scenario, context):
            parts = core_parts_of_global_sections(rep, context, section, core=core)
            value = defect(rep, parts, extension=extension)
            if value != 0:
                record = MarginalizationFailure(
                    context, section, rep.event(section),
                    getattr(extension, "kind", "unknown"), certificate,
                )
                return record, parts, value
    return None


def tier_violation_witness(rep: WpsRepresentation, tier: Tier,
                           cap: int = DEFAULT_ENUMERATION_CAP) -> ViolationWitness:
    """Build the violation witness certifying a contextuality tier.

    The representation's model must actually have the named property (a
    strongly contextual model has all three).  Strong contextuality yields
    a measure-zero collection covering the sample space, defect exactly
    one.  Logical contextuality yields a cover of the sample space whose
    only positive-measure members are the other events of the witness
    section's context, defect equal to the witness weight.  Probabilistic
    contextuality yields a disjoint collection violating additivity in the
    canonical extension, with the feasibility certificate attached.
    """
    model = rep.model
    report = excise(rep)
    base_nulls = list(report.d1 | report.d2)

    if tier is Tier.STRONG:
        if not is_strongly_contextual(model, cap=cap):
            raise TierMismatchError("the model is not strongly contextual")
        collection = rep.sorted_events(base_nulls + _null_context_events(rep))
        union = frozenset().union(*collection) if collection else frozenset()
        if union != rep.sample_space:
            raise InternalConsistencyError("null collection fails to cover the sample space")
        value = defect(rep, collection)
        if value != 1:
            raise InternalConsistencyError(f"maximal witness has defect {value}")
        return ViolationWitness(ViolationKind.MAXIMAL_SUBADDITIVITY, collection, value)

    if tier is Tier.LOGICAL:
        logical, witness_section = is_logically_contextual(model, cap=cap)
        if not logical:
            raise TierMismatchError("the model is not logically contextual")
        context = witness_section.domain
        others = [
            rep.event(s)
            for s in sections_over(model.scenario, context, cap=cap)
            if s != witness_section
        ]
        collection = rep.sorted_events(base_nulls + _null_context_events(rep) + others)
        value = defect(rep, collection)
        if value <= 0:
            raise InternalConsistencyError(f"subadditivity witness has defect {value}")
        data = CoveredSupportEvent(context, witness_section, rep.event(witness_section))
        return ViolationWitness(ViolationKind.SUBADDITIVITY, collection, value, data)

    if tier is Tier.PROBABILISTIC:
        result = global_distribution(model, cap=cap)
        if isinstance(result, Distribution):
            raise TierMismatchError("the model admits a global distribution")
        extension = canonical_monotone_extension(rep)
        found = marginalization_failure(rep, extension, certificate=result)
        if found is None:
            raise InternalConsistencyError(
                "no marginalization failure found although the global system is infeasible"
            )
        record, parts, value = found
        return ViolationWitness(ViolationKind.MONOTONIC_ADDITIVITY, parts, value, record)

    raise TierMismatchError(f"no violation witness exists for tier {tier}")


# ---------------------------------------------------------------------------
# Maximal-context-event violations on combinatorial representations
# ---------------------------------------------------------------------------


def _require_combinatorial(rep: WpsRepresentation) -> None:
    if not rep.combinatorial:
        raise NonCombinatorialError("this check applies to combinatorial representations only")


def strong_subadditivity_violation(rep: WpsRepresentation) -> tuple[bool, Optional[ViolationWitness]]:
    """Do the measure-zero maximal-context events cover the sample space?"""
    _require_combinatorial(rep)
    nulls = rep.sorted_events(_null_context_events(rep))
    union = frozenset().union(*nulls) if nulls else frozenset()
    if union != rep.sample_space:
        return False, None
    witness = ViolationWitness(ViolationKind.MAXIMAL_SUBADDITIVITY, nulls, defect(rep, nulls))
    return True, witness


def logical_subadditivity_violation(rep: WpsRepresentation) -> tuple[bool, Optional[ViolationWitness]]:
    """Do the null maximal-context events swallow some positive-measure one?

    The additive cover searched is always one maximal context's own family
    of section images, taking the canonically least context and section
    exhibiting the violation.
    """
    _require_combinatorial(rep)
    nulls = _null_context_events(rep)
    null_union = frozenset().union(*nulls) if nulls else frozenset()
    scenario = rep.model.scenario
    for context in scenario.maximal_contexts:
        cover = context_additive_cover(rep, context)
        for section in sections_over(scenario, context):
            event = rep.event(section)
            if rep.mu_of(event) > 0 and event <= null_union:
                collection = rep.sorted_events(nulls + [e for e in cover.events if e != event])
                witness = ViolationWitness(
                    ViolationKind.SUBADDITIVITY, collection, defect(rep, collection),
                    CoveredSupportEvent(context, section, event),
                )
                if witness.defect <= 0:
                    raise InternalConsistencyError("covered support event gave non-positive defect")
                return True, witness
    return False, None


def additivity_violation(rep: WpsRepresentation) -> tuple[bool, Optional[ViolationWitness]]:
    """Must every monotonic extension break additivity on maximal-context events?

    Decided exactly by the feasibility of the global-section system whose
    right-hand sides are the representation's own maximal-context values;
    the Farkas certificate is attached to the witness, together with the
    marginalization failure of the canonical extension.
    """
    _require_combinatorial(rep)
    scenario = rep.model.scenario
    columns = scenario.global_sections()
    col_index = {s: j for j, s in enumerate(columns)}
    rows = []
    rhs = []
    labels = []
    for context in scenario.maximal_contexts:
        for section in sections_over(scenario, context):
            row = [ZERO] * len(columns)
            for g in columns:
                if restrict(g, context) == section:
                    row[col_index[g]] = Fraction(1)
            rows.append(row)
            rhs.append(rep.mu_of(rep.event(section)))
            labels.append((context, section))
    outcome = solve_nonnegative(rows, rhs)
    if outcome.feasible:
        return False, None
    certificate = GlobalDistributionCertificate(tuple(labels), outcome.certificate.coefficients)
    if not certificate.verify(rep.model):
        raise InternalConsistencyError("additivity certificate failed independent verification")
    extension = canonical_monotone_extension(rep)
    found = marginalization_failure(rep, extension, certificate=certificate)
    if found is None:
        raise InternalConsistencyError("infeasible system but every extension marginal matched")
    record, parts, value = found
    return True, ViolationWitness(ViolationKind.MONOTONIC_ADDITIVITY, parts, value, record)


# ---------------------------------------------------------------------------
# Classical extensions
# ---------------------------------------------------------------------------


def has_classical_extension(rep: WpsRepresentation) -> Optional[dict[str, Fraction]]:
    """Point weights reproducing every family value, or None.

    A probability-space extension of the representation exists exactly when
    some point distribution sums to the stored value on every family
    member.  Per context it is enough to match the algebra's atoms; the
    returned weights are re-checked against the full family afterwards.
    """
    points = list(rep.points)
    col = {p: j for j, p in enumerate(points)}
    seen: dict[Event, Fraction] = {}
    for context in rep.sigma_algebras:
        for atom in rep.context_atoms(context):
            value = rep.mu_of(atom)
            if seen.setdefault(atom, value) != value:
                raise InternalConsistencyError("inconsistent atom values across algebras")
    rows = []
    rhs = []
    for atom in rep.sorted_events(seen):
        row = [ZERO] * len(points)
        for p in atom:
            row[col[p]] = Fraction(1)
        rows.append(row)
        rhs.append(seen[atom])
    outcome = solve_nonnegative(rows, rhs)
    if not outcome.feasible:
        return None
    weights = {p: outcome.solution[col[p]] for p in points}
    for event in rep.sigma:
        total = sum((weights[p] for p in event), ZERO)
        if total != rep.mu_of(event):
            raise InternalConsistencyError("atom solution fails on a non-atomic family member")
    return weights


# ---------------------------------------------------------------------------
# Extension verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtensionFailure:
    condition: str
    detail: str

    def __str__(self) -> str:
        return f"[{self.condition}] {self.detail}"


@dataclass(frozen=True)
class ExtensionVerdict:
    ok: bool
    failures: tuple[ExtensionFailure, ...]

    def __str__(self) -> str:
        return "extension verified" if self.ok else "; ".join(map(str, self.failures))


def verify_extension(rep: WpsRepresentation, candidate, kind: str = "monotonic",
                     cap: int = DEFAULT_ENUMERATION_CAP) -> ExtensionVerdict:
    """Check that a candidate extends the representation and behaves as claimed.

    ``kind`` is "monotonic" or "classical".  A candidate that disagrees
    with the stored values, or whose explicit domain misses part of the
    generated algebra, raises :class:`NotAnExtensionError`.  Explicit
    candidates are checked exhaustively over their domain; functional
    candidates (whose domain is the whole power set) are checked on every
    family member, every one-point enlargement of a family member, and all
    disjoint family pairs.
    """
    if kind not in ("monotonic", "classical"):
        raise ValueError("kind must be 'monotonic' or 'classical'")
    failures: list[ExtensionFailure] = []
    events = rep.sorted_events(rep.sigma)
    for event in events:
        if candidate.value(event) != rep.mu_of(event):
            raise NotAnExtensionError(
                f"candidate values an event at {candidate.value(event)}, stored {rep.mu_of(event)}"
            )

    domain = candidate.domain()
    if domain is not None:
        algebra = _generated_algebra(rep, cap=cap)
        missing = [e for e in algebra if e not in domain]
        if missing:
            raise NotAnExtensionError(
                "candidate domain misses the algebra generated by the event family"
            )
        universe = sorted(domain, key=lambda e: (len(e), rep.event_key(e)))
        if kind == "monotonic":
            for a in universe:
                for b in universe:
                    if a < b and candidate.value(a) > candidate.value(b):
                        failures.append(ExtensionFailure(
                            "monotonicity",
                            f"a set of value {candidate.value(a)} sits inside one of value {candidate.value(b)}",
                        ))
                        return ExtensionVerdict(False, tuple(failures))
        else:
            for i, a in enumerate(universe):
                for b in universe[i:]:
                    if a & b or (a | b) not in domain:
                        continue
                    total = candidate.value(a | b)
                    if total != candidate.value(a) + candidate.value(b):
                        failures.append(ExtensionFailure(
                            "additivity",
                            f"disjoint sets valued {candidate.value(a)} and {candidate.value(b)} join to {total}",
                        ))
                        return ExtensionVerdict(False, tuple(failures))
        return ExtensionVerdict(not failures, tuple(failures))

    # Functional candidates are total on the power set; check the family,
    # its one-point enlargements, and (for additivity) disjoint family pairs.
    if kind == "monotonic":
        for a in events:
            for b in events:
                if a < b and candidate.value(a) > candidate.value(b):
                    failures.append(ExtensionFailure(
                        "monotonicity",
                        f"a family member of value {candidate.value(a)} sits inside one of value {candidate.value(b)}",
                    ))
                    return ExtensionVerdict(False, tuple(failures))
        for event in events:
            base = candidate.value(event)
            for p in rep.points:
                if p not in event:
                    if candidate.value(frozenset(event) | {p}) < base:
                        failures.append(ExtensionFailure(
                            "monotonicity", "adding a point decreased the value"))
                        return ExtensionVerdict(False, tuple(failures))
    else:
        for i, a in enumerate(events):
            for b in events[i:]:
                if a & b:
                    continue
                total = candidate.value(a | b)
                if total != candidate.value(a) + candidate.value(b):
                    failures.append(ExtensionFailure(
                        "additivity",
                        f"disjoint sets valued {candidate.value(a)} and {candidate.value(b)} join to {total}",
                    ))
                    return ExtensionVerdict(False, tuple(failures))
    return ExtensionVerdict(not failures, tuple(failures))


def _generated_algebra(rep: WpsRepresentation, cap: int) -> tuple[Event, ...]:
    """The algebra generated by the whole event family, as unions of its atoms."""
    cells: dict[tuple, set] = {}
    members = rep.sorted_events(rep.sigma)
    for p in rep.points:
        cells.setdefault(tuple(p in m for m in members), set()).add(p)
    atoms = [frozenset(c) for c in cells.values()]
    if 2 ** len(atoms) > cap:
        raise EnumerationCapError(2 ** len(atoms), cap, what="generated-algebra members")
    out = []
    for r in range(len(atoms) + 1):
        for chosen in itertools.combinations(atoms, r):
            out.append(frozenset().union(*chosen) if chosen else frozenset())
    return tuple(dict.fromkeys(out))
