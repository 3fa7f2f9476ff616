"""Ontology-driven conceptual navigation.

Resources are indexed with weighted concept-graph vectors; a proximity score
ranks them against a learner's objective; navigation strategies assemble
ordered, time-budgeted course plans; a session service lets a learner
consult resources and steer the navigation live.
"""

from .engine import (
    CoursePlan,
    Curriculum,
    LearnerProfile,
    PedagogicRule,
    PlannerConfig,
    PlanStatus,
    PlanStep,
    apply_pedagogic_rules,
    backward_navigate,
    conceptual_expansion,
    fill_time_gap,
    forward_navigate,
    order_by_prerequisites,
    template_instantiate,
    top_down_expand,
    update_objective,
)
from .graphs import (
    GENERIC,
    ConceptGraph,
    ConceptTerm,
    ConceptVector,
    MatchMode,
    WeightedGraph,
    conceptual_proximity,
    covers,
    graph_from_text,
    graph_to_text,
    match_strict,
    match_subsume,
    merge_into,
    simplify,
    withdraw,
)
from .ontology import (
    ConceptTypeDecl,
    Diagnostic,
    Ontology,
    RelationSignature,
    load_ontology,
    serialize_ontology,
)
from .store import (
    PedagogicRole,
    ResourceDescription,
    ResourceStore,
    Segment,
    SelectionUnit,
    load_corpus,
    parse_rd,
    rank_by_cp,
    serialize_rd,
    validate_rd,
)

__version__ = "0.1.0"

__all__ = [
    "GENERIC",
    "ConceptGraph",
    "ConceptTerm",
    "ConceptTypeDecl",
    "ConceptVector",
    "CoursePlan",
    "Curriculum",
    "Diagnostic",
    "LearnerProfile",
    "MatchMode",
    "Ontology",
    "PedagogicRole",
    "PedagogicRule",
    "PlanStatus",
    "PlanStep",
    "PlannerConfig",
    "RelationSignature",
    "ResourceDescription",
    "ResourceStore",
    "Segment",
    "SelectionUnit",
    "WeightedGraph",
    "apply_pedagogic_rules",
    "backward_navigate",
    "conceptual_expansion",
    "conceptual_proximity",
    "covers",
    "fill_time_gap",
    "forward_navigate",
    "graph_from_text",
    "graph_to_text",
    "load_corpus",
    "load_ontology",
    "match_strict",
    "match_subsume",
    "merge_into",
    "order_by_prerequisites",
    "parse_rd",
    "rank_by_cp",
    "serialize_ontology",
    "serialize_rd",
    "simplify",
    "template_instantiate",
    "top_down_expand",
    "update_objective",
    "validate_rd",
    "withdraw",
]
