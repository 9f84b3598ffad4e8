"""Formal Dutch Books: atomic functionals, convexity membership, certificates.

A set function on events avoids Dutch Books exactly when it is a convex
combination of the atomic functionals given by sample-space points.  The
membership question is an exact feasibility problem; its failure yields a
separating rational functional that normalizes into a stake function whose
payoff is strictly negative against every point, verifiable by exhaustive
enumeration.  On combinatorial representations the points are in bijection
with global sections, which turns the convexity question over the
maximal-context events into the global-distribution question; the same
bijection grades convexity-violation into the three familiar strengths.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .distribution import Distribution
from .errors import (
    InternalConsistencyError,
    NonCombinatorialError,
    NotAnEventError,
    ScenarioMismatchError,
)
from .feasibility import solve_nonnegative
from .scenario import Section, restrict, sections_over
from .wps import Event, WpsRepresentation

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# Atomic functionals and the two bijections
# ---------------------------------------------------------------------------


class AtomicFunctional:
    """Membership evaluation of events at one sample point."""

    __slots__ = ("point", "values")

    def __init__(self, point: str, values: Mapping[Event, int]):
        self.point = point
        self.values = {frozenset(e): int(v) for e, v in values.items()}

    def value(self, event: Event) -> int:
        try:
            return self.values[frozenset(event)]
        except KeyError:
            raise NotAnEventError("functional not evaluated on that event") from None

    def __eq__(self, other) -> bool:
        if not isinstance(other, AtomicFunctional):
            return NotImplemented
        return self.point == other.point and self.values == other.values

    def __repr__(self) -> str:
        return f"AtomicFunctional({self.point!r}, on {len(self.values)} events)"


def atomic_functional(rep: WpsRepresentation, point: str, events: Optional[Iterable[Event]] = None) -> AtomicFunctional:
    """The functional of one point, tabulated over the given events (default: the family)."""
    rep.point_index(point)
    pool = rep.sorted_events(rep.sigma) if events is None else rep.sorted_events(events)
    return AtomicFunctional(point, {e: int(point in e) for e in pool})


def section_to_functional(rep: WpsRepresentation, global_section: Section) -> AtomicFunctional:
    """The atomic functional of a global section, restricted to maximal-context events.

    On a combinatorial representation this is one direction of the bijection
    between global sections and restricted atomic functionals: the value at
    a maximal-context event is one exactly when the section restricts to
    that event's section.
    """
    if not rep.combinatorial:
        raise NonCombinatorialError("the section-functional bijection needs a combinatorial representation")
    image = rep.event(global_section)
    if len(image) != 1:
        raise InternalConsistencyError("a combinatorial global-section image must be one point")
    (point,) = image
    return atomic_functional(rep, point, rep.maximal_context_events())


def distribution_to_convex_point(rep: WpsRepresentation, global_distribution: Distribution) -> dict[Event, Fraction]:
    """Push a global distribution to a convex combination of restricted functionals.

    The value at a maximal-context event equals the distribution's marginal
    weight of the corresponding section.
    """
    if not rep.combinatorial:
        raise NonCombinatorialError("the distribution bijection needs a combinatorial representation")
    scenario = rep.model.scenario
    if global_distribution.context != scenario.measurements:
        raise ScenarioMismatchError("a distribution over the global sections is required")
    out: dict[Event, Fraction] = {}
    for event in rep.maximal_context_events():
        section = rep.section_of(event)
        total = ZERO
        for g, w in global_distribution.weights.items():
            if restrict(g, section.domain) == section:
                total += w
        out[event] = total
    return out


# ---------------------------------------------------------------------------
# Convexity membership
# ---------------------------------------------------------------------------


def _membership_system(rep: WpsRepresentation, events: list[Event]):
    points = list(rep.points)
    col = {p: j for j, p in enumerate(points)}
    rows = [[ONE] * len(points)]
    rhs = [ONE]
    labels: list[Event] = [rep.sample_space]
    for event in events:
        row = [ZERO] * len(points)
        for p in event:
            row[col[p]] = ONE
        rows.append(row)
        rhs.append(rep.mu_of(event))
        labels.append(event)
    return rows, rhs, labels


def _solve_membership(rep: WpsRepresentation, restriction: Optional[Iterable[Event]]):
    """Solve the convexity-membership system; return (weights, labels, certificate)."""
    if restriction is None:
        seen: dict[Event, None] = {}
        for context in rep.sigma_algebras:
            for atom in rep.context_atoms(context):
                seen.setdefault(atom, None)
        events = rep.sorted_events(seen)
        verify_against: Iterable[Event] = rep.sorted_events(rep.sigma)
    else:
        events = rep.sorted_events(restriction)
        for event in events:
            if not rep.in_sigma(event):
                raise NotAnEventError("restriction sets must belong to the event family")
        verify_against = events
    rows, rhs, labels = _membership_system(rep, events)
    outcome = solve_nonnegative(rows, rhs)
    if not outcome.feasible:
        return None, labels, outcome.certificate
    weights = {p: outcome.solution[j] for j, p in enumerate(rep.points)}
    for event in verify_against:
        got = sum((weights[p] for p in event), ZERO)
        if got != rep.mu_of(event):
            raise InternalConsistencyError("membership weights fail to reproduce an event value")
    return weights, labels, None


def convexity_membership(rep: WpsRepresentation,
                         restriction: Optional[Iterable[Event]] = None) -> Optional[dict[str, Fraction]]:
    """Convex weights over points reproducing the set function on a restriction.

    ``restriction`` defaults to the full event family (per-context algebra
    atoms decide the system; the returned weights are re-verified against
    every family member).  Returns the weights, or None when the function
    lies outside the convex hull of the atomic functionals there.
    """
    weights, _, _ = _solve_membership(rep, restriction)
    return weights


# ---------------------------------------------------------------------------
# Dutch-book certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DutchBookCertificate:
    """Stakes over events guaranteeing a loss of at least the bound at every point."""

    stakes: tuple[tuple[Event, Fraction], ...]
    loss_bound: Fraction

    def __post_init__(self):
        if self.loss_bound <= 0:
            raise ValueError("the guaranteed loss bound must be positive")

    def payoff(self, rep: WpsRepresentation, point: str) -> Fraction:
        total = ZERO
        for event, stake in self.stakes:
            total += stake * (int(point in event) - rep.mu_of(event))
        return total


def verify_certificate(rep: WpsRepresentation, certificate: DutchBookCertificate) -> bool:
    """Exhaustively check the payoff at every sample point.

    True exactly when every point loses at least the bound.  Stakes over
    sets outside the event family are rejected.
    """
    for event, _ in certificate.stakes:
        if not rep.in_sigma(event):
            raise NotAnEventError("a stake references a set outside the event family")
    if certificate.loss_bound <= 0:
        return False
    return all(
        certificate.payoff(rep, point) <= -certificate.loss_bound
        for point in rep.points
    )


def _null_cover_certificate(rep: WpsRepresentation) -> Optional[DutchBookCertificate]:
    """Stake minus one on every null maximal-context event, when those cover the space."""
    nulls = rep.sorted_events(
        e for e in rep.maximal_context_events() if rep.mu_of(e) == 0
    )
    if not nulls:
        return None
    union = frozenset().union(*nulls)
    if union != rep.sample_space:
        return None
    counts = [sum(1 for e in nulls if p in e) for p in rep.points]
    bound = Fraction(min(counts))
    return DutchBookCertificate(tuple((e, Fraction(-1)) for e in nulls), bound)


def find_dutch_book(rep: WpsRepresentation) -> Optional[DutchBookCertificate]:
    """A verified stake certificate, or None when the set function is convex.

    Convexity membership over the whole event family decides existence.  On
    representations whose null maximal-context events cover the sample
    space the certificate is the canonical uniform stake of minus one on
    those events; otherwise the separating functional from the membership
    system is normalized to a guaranteed loss of one.
    """
    weights, labels, farkas = _solve_membership(rep, None)
    if weights is not None:
        return None
    certificate = _null_cover_certificate(rep)
    if certificate is None:
        stakes = [
            (event, coef)
            for event, coef in zip(labels, farkas.coefficients)
            if coef != 0
        ]
        worst = max(
            sum((coef * int(p in event) for event, coef in stakes), ZERO)
            for p in rep.points
        )
        mean = sum((coef * rep.mu_of(event) for event, coef in stakes), ZERO)
        bound = mean - worst
        if bound <= 0:
            raise InternalConsistencyError("separating functional produced no guaranteed loss")
        stakes = [(event, coef / bound) for event, coef in stakes]
        certificate = DutchBookCertificate(tuple(stakes), ONE)
    if not verify_certificate(rep, certificate):
        raise InternalConsistencyError("constructed certificate failed exhaustive verification")
    return certificate


# ---------------------------------------------------------------------------
# The convexity-violation hierarchy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConvexityVerdict:
    strong_violation: bool
    logical_violation: bool
    probabilistic_violation: bool
    convex_weights: Optional[dict[str, Fraction]] = None

    def __post_init__(self):
        if self.strong_violation and not self.logical_violation:
            raise InternalConsistencyError("strong convexity-violation without logical")
        if self.logical_violation and not self.probabilistic_violation:
            raise InternalConsistencyError("logical convexity-violation without probabilistic")


def convexity_hierarchy(rep: WpsRepresentation,
                        restriction: Optional[Iterable[Event]] = None) -> ConvexityVerdict:
    """Grade the failure of convexity over the maximal-context events.

    Probabilistic: the restricted set function is outside the convex hull
    of the restricted atomic functionals.  Logical: its support indicator
    is not the pointwise Boolean sum of any set of restricted functionals,
    equivalently some positive-measure event contains no point lying only
    in positive-measure events.  Strong: no functional is dominated by the
    support indicator, equivalently no point lies only in positive-measure
    events.  Requires a combinatorial representation.
    """
    if not rep.combinatorial:
        raise NonCombinatorialError("the convexity hierarchy needs a combinatorial representation")
    events = rep.sorted_events(rep.maximal_context_events() if restriction is None else restriction)
    weights = convexity_membership(rep, events)
    probabilistic = weights is None

    nulls = [e for e in events if rep.mu_of(e) == 0]
    clean_points = [
        p for p in rep.points if not any(p in e for e in nulls)
    ]
    clean = frozenset(clean_points)
    logical = any(
        rep.mu_of(e) > 0 and not (e & clean)
        for e in events
    )
    strong = not clean
    return ConvexityVerdict(strong, logical, probabilistic, weights)
