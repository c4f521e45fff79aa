"""wdlat: weighted-differential distributive lattices.

Finitary distributive lattices are lattices of finite order ideals of a
poset of weighted points. A lattice is weighted differential when, at
every ideal, the weights of its insertion points sum to the weights of
its deletion points plus the element's differential degree. This package
constructs such lattices by iterating over ideals, searches the
nondeterministic weighted variants, and verifies the defining condition
and its structural consequences on given posets.
"""

from .analyze import (
    DerivedRelationsReport,
    OrphanReport,
    RelationCheck,
    UnverifiedPosetError,
    VerificationReport,
    derived_relations,
    orphan_report,
    triple_orphan_check,
    verify_differential,
)
from .canon import CanonicalSizeError, canonical_form
from .fileio import (
    FormatError,
    export_dot,
    poset_from_text,
    poset_to_text,
    read_poset,
    trace_from_text,
    trace_records,
    trace_to_text,
    write_poset,
    write_trace,
)
from .ideals import (
    RankProfile,
    enumerate_ideals,
    ideals_by_level,
    partition_convolution_oracle,
    quadrant_check,
    rank_profile,
)
from .poset import Ideal, Poset, PosetError, point_name
from .process import (
    ConstructionFailed,
    ConstructResult,
    DegreeFunction,
    FailureWitness,
    ProcessError,
    ProcessTrace,
    ProcessWarning,
    SearchResult,
    StepOutcome,
    TraceRecord,
    WeightPolicy,
    apply_new_points,
    construct,
    search,
    step,
    weight_multisets,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalSizeError",
    "ConstructionFailed",
    "ConstructResult",
    "DegreeFunction",
    "DerivedRelationsReport",
    "FailureWitness",
    "FormatError",
    "Ideal",
    "OrphanReport",
    "Poset",
    "PosetError",
    "ProcessError",
    "ProcessTrace",
    "ProcessWarning",
    "RankProfile",
    "RelationCheck",
    "SearchResult",
    "StepOutcome",
    "TraceRecord",
    "UnverifiedPosetError",
    "VerificationReport",
    "WeightPolicy",
    "apply_new_points",
    "canonical_form",
    "construct",
    "derived_relations",
    "enumerate_ideals",
    "export_dot",
    "ideals_by_level",
    "orphan_report",
    "partition_convolution_oracle",
    "point_name",
    "poset_from_text",
    "poset_to_text",
    "quadrant_check",
    "rank_profile",
    "read_poset",
    "search",
    "step",
    "trace_from_text",
    "trace_records",
    "trace_to_text",
    "triple_orphan_check",
    "verify_differential",
    "weight_multisets",
    "write_poset",
    "write_trace",
]
