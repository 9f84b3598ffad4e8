"""The contextuality hierarchy: strong, logical, probabilistic, or neither.

Strong and logical contextuality are possibilistic: they depend only on
which sections carry non-zero weight.  The probabilistic tier asks whether
any global distribution marginalizes exactly to every context table; that
question is decided by the exact feasibility solver, and a negative answer
comes with a rational separating functional that can be re-evaluated
against the tables independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .distribution import Distribution, marginalize
from .errors import DEFAULT_ENUMERATION_CAP
from .feasibility import FarkasCertificate, solve_nonnegative
from .model import EmpiricalModel
from .scenario import Section, restrict, sections_over


class Tier(Enum):
    STRONG = "Strong"
    LOGICAL = "Logical"
    PROBABILISTIC = "Probabilistic"
    NONCONTEXTUAL = "Noncontextual"

    def __str__(self) -> str:
        return self.value


def consistent_global_sections(model: EmpiricalModel, cap: int = DEFAULT_ENUMERATION_CAP) -> tuple[Section, ...]:
    """Global sections whose restriction to every maximal context is in the support."""
    scenario = model.scenario
    supports = {c: model.support(c) for c in scenario.maximal_contexts}
    out = []
    for s in scenario.global_sections(cap=cap):
        if all(restrict(s, c) in supports[c] for c in scenario.maximal_contexts):
            out.append(s)
    return tuple(out)


def is_strongly_contextual(model: EmpiricalModel, cap: int = DEFAULT_ENUMERATION_CAP) -> bool:
    """True when no global section is consistent with the support."""
    return not consistent_global_sections(model, cap=cap)


def is_logically_contextual(model: EmpiricalModel, cap: int = DEFAULT_ENUMERATION_CAP) -> tuple[bool, Optional[Section]]:
    """Find a support section over a maximal context with no consistent global extension.

    Returns the canonically least such witness section (contexts in scenario
    order, sections in enumeration order), or ``(False, None)``.
    """
    scenario = model.scenario
    consistent = consistent_global_sections(model, cap=cap)
    for context in scenario.maximal_contexts:
        support = model.support(context)
        reached = {restrict(g, context) for g in consistent}
        for s in sections_over(scenario, context, cap=cap):
            if s in support and s not in reached:
                return True, s
    return False, None


@dataclass(frozen=True)
class GlobalDistributionCertificate:
    """Rational functional separating the global-marginal system from feasibility.

    ``coefficients`` pairs one rational with each (maximal context, section)
    constraint.  Infeasibility of a global distribution is witnessed by:
    for every global section the coefficients of the constraints it feeds
    sum to at most zero, while the weighted sum of the table values is
    strictly positive.
    """

    rows: tuple[tuple[tuple, Section], ...]
    coefficients: tuple[Fraction, ...]

    def verify(self, model: EmpiricalModel, cap: int = DEFAULT_ENUMERATION_CAP) -> bool:
        scenario = model.scenario
        weight_of = dict(zip(self.rows, self.coefficients))
        if len(weight_of) != len(self.rows):
            return False
        for g in scenario.global_sections(cap=cap):
            total = sum(
                (weight_of[(c, restrict(g, c))] for c in scenario.maximal_contexts),
                Fraction(0),
            )
            if total > 0:
                return False
        value = sum(
            (coef * model.table(c).weight(s) for (c, s), coef in weight_of.items()),
            Fraction(0),
        )
        return value > 0


def global_distribution(model: EmpiricalModel, cap: int = DEFAULT_ENUMERATION_CAP):
    """Solve for a global distribution marginalizing to every table.

    Returns a :class:`Distribution` over the global sections, or a
    :class:`GlobalDistributionCertificate` when none exists.
    """
    scenario = model.scenario
    columns = scenario.global_sections(cap=cap)
    col_index = {s: j for j, s in enumerate(columns)}
    row_labels: list[tuple[tuple, Section]] = []
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for context in scenario.maximal_contexts:
        table = model.table(context)
        for s in sections_over(scenario, context, cap=cap):
            row = [Fraction(0)] * len(columns)
            for g in columns:
                if restrict(g, context) == s:
                    row[col_index[g]] = Fraction(1)
            row_labels.append((context, s))
            rows.append(row)
            rhs.append(table.weight(s))
    outcome = solve_nonnegative(rows, rhs)
    if outcome.feasible:
        weights = {s: outcome.solution[j] for j, s in enumerate(columns)}
        return Distribution(scenario, scenario.measurements, weights, cap=cap)
    certificate = GlobalDistributionCertificate(tuple(row_labels), outcome.certificate.coefficients)
    if not certificate.verify(model, cap=cap):
        raise AssertionError("infeasibility certificate failed independent verification")
    return certificate


@dataclass(frozen=True)
class TierVerdict:
    """Classification outcome plus the witness appropriate to the tier."""

    tier: Tier
    logical_witness: Optional[Section] = None
    certificate: Optional[GlobalDistributionCertificate] = None
    global_distribution: Optional[Distribution] = None

    def __str__(self) -> str:
        return str(self.tier)


def classify(model: EmpiricalModel, cap: int = DEFAULT_ENUMERATION_CAP) -> TierVerdict:
    """Place a model in the hierarchy, strongest applicable tier first."""
    if is_strongly_contextual(model, cap=cap):
        return TierVerdict(Tier.STRONG)
    logical, witness = is_logically_contextual(model, cap=cap)
    if logical:
        return TierVerdict(Tier.LOGICAL, logical_witness=witness)
    result = global_distribution(model, cap=cap)
    if isinstance(result, Distribution):
        verify_global_distribution(model, result)
        return TierVerdict(Tier.NONCONTEXTUAL, global_distribution=result)
    return TierVerdict(Tier.PROBABILISTIC, certificate=result)


def verify_global_distribution(model: EmpiricalModel, dist: Distribution) -> None:
    """Assert that a candidate global distribution reproduces every table exactly."""
    for context in model.scenario.maximal_contexts:
        if marginalize(dist, context) != model.table(context):
            raise AssertionError(f"global distribution does not marginalize to {context!r}")
