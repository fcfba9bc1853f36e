"""Certifying recognition of interval orders with prescribed interval lengths.

Given a poset and a length per element, either build closed rational
intervals with exactly those lengths that realize the order, or return a
small forbidden substructure proving that none exist.
"""

from .certificates import Certificate01, Certificate12, extract_01_certificate, extract_12_certificate, verify_certificate
from .digraph import (
    ArcType,
    ConstraintDigraph,
    EpsWeight,
    QualifyingCycle,
    build_constraint_digraph,
    compute_potential,
    epsilon,
    find_min_arc_qualifying_cycle,
    materialize,
)
from .errors import (
    CycleDetected,
    DuplicateElement,
    IntervalLengthsError,
    InvariantViolation,
    MissingElement,
    NegativeCyclePresent,
    NoBadPattern,
    NotIntervalOrder,
    NotTransitive,
    PosetError,
    SizeLimit,
    TooManyVariables,
    UnclassifiableCycle,
    UnknownElement,
    WeightOutOfRange,
)
from .oracle import Setting, build_system, enumerate_posets, fm_feasible, forbidden_scan, random_instance
from .patterns import Kind12, family_pattern, fig3_pattern, h_poset, pattern_12
from .poset import (
    ANY,
    PatternKind,
    PatternWitness,
    Poset,
    WeightedPoset,
    dual,
    find_pattern,
    find_weighted_embedding,
    from_relations,
    incomparability_set,
    induced,
    is_co_simplicial,
)
from .represent import (
    IntervalRepresentation,
    Violation,
    canonical_01_weights,
    represent,
    represent_01,
    represent_12,
    verify_representation,
)

__version__ = "0.1.0"
