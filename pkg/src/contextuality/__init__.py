"""Exact classification of contextual models and their Dutch-book witnesses.

The package works with exact rational probabilities end to end: empirical
models over measurement scenarios, the strong/logical/probabilistic
hierarchy with verified witnesses, weak-probability-space representations,
additivity-violation witnesses, and stake certificates whose guaranteed
loss is checked by exhaustive enumeration.
"""

from .classifier import (
    GlobalDistributionCertificate,
    Tier,
    TierVerdict,
    classify,
    consistent_global_sections,
    global_distribution,
    is_logically_contextual,
    is_strongly_contextual,
)
from .distribution import Distribution, marginalize, point_mass, uniform
from .dutchbook import (
    AtomicFunctional,
    ConvexityVerdict,
    DutchBookCertificate,
    atomic_functional,
    convexity_hierarchy,
    convexity_membership,
    distribution_to_convex_point,
    find_dutch_book,
    section_to_functional,
    verify_certificate,
)
from .errors import ContextualityError, DEFAULT_ENUMERATION_CAP
from .extensions import (
    CoverExtension,
    EnvelopeExtension,
    ExplicitExtension,
    MixedExtension,
    PointMeasureExtension,
    canonical_monotone_extension,
    cheapest_cover_of_space,
    sample_monotone_extensions,
)
from .model import (
    CompatibilityReport,
    EmpiricalModel,
    check_model,
    deterministic_model,
    mixture,
    model_from_tables,
)
from .quantum import (
    QuantumExperiment,
    ghz_experiment,
    is_weak_hv_representation,
    quantum_to_empirical,
    singlet_experiment,
    snap_to_rational,
    weak_hv_report,
)
from .scenario import Scenario, Section, all_contexts, glue, restrict, sections_over
from .violations import (
    AdditiveCover,
    MarginalizationFailure,
    ViolationKind,
    ViolationWitness,
    additivity_violation,
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
from .wps import (
    ExcisionReport,
    PadPoint,
    WpsRepresentation,
    build_combinatorial_rep,
    build_padded_rep,
    excise,
    extend_event,
    verify_rep,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
