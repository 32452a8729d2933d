"""Coherent risk measures on finite spaces: pasting, time consistency and
the classification of measures that are time-consistent for every filtration."""

from .classify import (
    Classification,
    LemmaCase,
    LemmaChain,
    Witness,
    atom_range,
    classify,
    disjoint_identity_check,
    find_witness,
    lemma_case,
    lemma_chain,
    max_side_chain,
)
from .errors import (
    IllDefinedPaste,
    InvalidObject,
    NotUniversalError,
    NoWitnessFound,
    PolarBlock,
    PreconditionError,
    SpaceMismatch,
    TcriskError,
)
from .extensions import (
    DynamicRiskMeasure,
    entropic_consistency_demo,
    entropic_rho,
    extend,
    semigroup_residual,
)
from .measure import (
    Filtration,
    Measure,
    Partition,
    Position,
    Space,
    conditional_esssup,
    conditional_expectation,
    expectation,
    is_polar,
    p_esssup,
)
from .pasting import (
    RectangleReport,
    conditional_polytope,
    is_filtration_consistent,
    is_step_consistent,
    marginal_polytope,
    paste,
    recursion_residual,
    rectangle_vertices,
)
from .risk import (
    MembershipCertificate,
    RiskMeasure,
    conditional_rho,
    is_strictly_monotone,
    membership,
    reduce_to_vertices,
    rho,
)

__version__ = "0.1.0"
