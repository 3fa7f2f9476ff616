"""Concept terms, three-slot concept graphs, weighted vectors, and their algebra.

A graph asserts at most {source, predicate, destination}; a vector is a
weighted set of graphs and is the unit used for content, prerequisites,
objectives, and learner knowledge. Matching comes in two modes: Strict
(slot-for-slot equality) and Subsume (candidate types may sit below the
objective's types in the ontology hierarchy).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Iterator

from .errors import EmptyObjective, ParseError

if TYPE_CHECKING:
    from .ontology import Ontology

#: Referent marker for "some unnamed individual". A named referent can never
#: be this string because the wire formats reserve it.
GENERIC = "#"


@dataclass(frozen=True)
class ConceptTerm:
    """A typed concept with an optional referent.

    ``referent`` is ``None`` for a bare term, ``GENERIC`` for an unnamed
    individual, or a non-empty name.
    """

    type_name: str
    referent: str | None = None

    def __post_init__(self) -> None:
        if not self.type_name:
            raise ValueError("concept term needs a non-empty type name")
        if self.referent == "":
            raise ValueError("named referent must be non-empty")

    @property
    def is_generic(self) -> bool:
        return self.referent == GENERIC


@dataclass(frozen=True)
class ConceptGraph:
    """An assertion of up to three terms: source, predicate, destination."""

    source: ConceptTerm
    predicate: ConceptTerm | None = None
    destination: ConceptTerm | None = None

    def __post_init__(self) -> None:
        if self.destination is not None and self.predicate is None:
            raise ValueError("a destination requires a predicate")

    def terms(self) -> Iterator[ConceptTerm]:
        yield self.source
        if self.predicate is not None:
            yield self.predicate
        if self.destination is not None:
            yield self.destination

    def type_names(self) -> Iterator[str]:
        for term in self.terms():
            yield term.type_name


@dataclass(frozen=True)
class WeightedGraph:
    graph: ConceptGraph
    weight: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.weight <= 1.0:
            raise ValueError(f"weight must be in [0, 1], got {self.weight}")


@dataclass(frozen=True)
class ConceptVector:
    """An ordered weighted set of concept graphs.

    Construction accepts duplicates; ``simplify`` collapses them. Operations
    below that build new vectors always return simplified results.
    """

    entries: tuple[WeightedGraph, ...] = field(default_factory=tuple)

    @classmethod
    def of(cls, items: Iterable[WeightedGraph | tuple[ConceptGraph, float] | ConceptGraph]) -> ConceptVector:
        out = []
        for item in items:
            if isinstance(item, WeightedGraph):
                out.append(item)
            elif isinstance(item, ConceptGraph):
                out.append(WeightedGraph(item))
            else:
                graph, weight = item
                out.append(WeightedGraph(graph, weight))
        return cls(tuple(out))

    def __iter__(self) -> Iterator[WeightedGraph]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def is_empty(self) -> bool:
        return not self.entries

    def graphs(self) -> Iterator[ConceptGraph]:
        for entry in self.entries:
            yield entry.graph


EMPTY_VECTOR = ConceptVector()


class MatchMode(enum.Enum):
    STRICT = "strict"
    SUBSUME = "subsume"


def _referents_compatible(a: str | None, b: str | None) -> bool:
    # Generic matches anything; named referents must agree; a bare term
    # matches bare or generic, never a named one.
    if a == GENERIC or b == GENERIC:
        return True
    return a == b


def _same_shape(a: ConceptGraph, b: ConceptGraph) -> bool:
    # A slot empty on one side and filled on the other is a non-match.
    return (a.predicate is None) == (b.predicate is None) and (
        a.destination is None
    ) == (b.destination is None)


def match_strict(a: ConceptGraph, b: ConceptGraph) -> bool:
    """Slot-for-slot match: identical shape, equal types, compatible referents."""
    if not _same_shape(a, b):
        return False
    for ta, tb in zip(a.terms(), b.terms()):
        if ta.type_name != tb.type_name:
            return False
        if not _referents_compatible(ta.referent, tb.referent):
            return False
    return True


def match_subsume(objective: ConceptGraph, candidate: ConceptGraph, ont: Ontology) -> bool:
    """Like ``match_strict`` but the candidate's types may be subtypes of the
    objective's. Raises UnknownType for any type absent from the ontology."""
    for name in (*objective.type_names(), *candidate.type_names()):
        ont.require(name)
    if not _same_shape(objective, candidate):
        return False
    for t_obj, t_cand in zip(objective.terms(), candidate.terms()):
        if not ont.is_subtype(t_cand.type_name, t_obj.type_name):
            return False
        if not _referents_compatible(t_obj.referent, t_cand.referent):
            return False
    return True


def _matches(objective: ConceptGraph, candidate: ConceptGraph, mode: MatchMode, ont: Ontology | None) -> bool:
    if mode is MatchMode.STRICT:
        return match_strict(objective, candidate)
    if ont is None:
        raise ValueError("subsume matching needs an ontology")
    return match_subsume(objective, candidate, ont)


def withdraw(
    a: ConceptVector,
    b: ConceptVector,
    mode: MatchMode = MatchMode.STRICT,
    ont: Ontology | None = None,
) -> ConceptVector:
    """Remove from ``a`` every entry whose graph matches any graph in ``b``.

    Weights play no part in the removal decision; survivors keep theirs.
    In Subsume mode the ``a`` side is the objective and ``b`` entries are
    candidates.
    """
    kept = tuple(
        entry
        for entry in a.entries
        if not any(_matches(entry.graph, other.graph, mode, ont) for other in b.entries)
    )
    return ConceptVector(kept)


def simplify(csv: ConceptVector) -> ConceptVector:
    """Collapse structurally identical graphs, keeping the maximum weight and
    the order of first occurrence."""
    seen: dict[ConceptGraph, int] = {}
    out: list[WeightedGraph] = []
    for entry in csv.entries:
        at = seen.get(entry.graph)
        if at is None:
            seen[entry.graph] = len(out)
            out.append(entry)
        elif entry.weight > out[at].weight:
            out[at] = entry
    return ConceptVector(tuple(out))


def merge_into(target: ConceptVector, addition: ConceptVector) -> ConceptVector:
    """Union of entries; duplicate graphs keep the maximum weight."""
    return simplify(ConceptVector(target.entries + addition.entries))


def covers(objective: ConceptVector, knowledge: ConceptVector, ont: Ontology | None = None) -> bool:
    """True iff strict withdrawal of ``knowledge`` empties the objective."""
    return withdraw(objective, knowledge, MatchMode.STRICT, ont).is_empty


def conceptual_proximity(objective: ConceptVector, resource: ConceptVector, ont: Ontology) -> float:
    """Weighted coverage of the objective by the resource, in [0, 1].

    Each objective entry contributes its weight times the best weight among
    resource entries that subsume-match it (0 if none); the total is divided
    by the objective's weight sum. Asymmetric by construction.
    """
    if objective.is_empty:
        raise EmptyObjective("conceptual proximity needs a non-empty objective")
    numerator = 0.0
    denominator = 0.0
    for entry in objective.entries:
        best = 0.0
        for other in resource.entries:
            if other.weight > best and match_subsume(entry.graph, other.graph, ont):
                best = other.weight
        numerator += entry.weight * best
        denominator += entry.weight
    if denominator == 0.0:
        return 0.0
    return numerator / denominator


# --- compact text notation -------------------------------------------------
#
# [TYPE], [TYPE:name], [TYPE:#]; slots joined by "->". Used by fixtures, CLI
# output, and curriculum labels.

_TERM_RE = re.compile(r"^\[\s*([^\[\]:]+?)\s*(?::\s*([^\[\]]+?)\s*)?\]$")


def term_to_text(term: ConceptTerm) -> str:
    if term.referent is None:
        return f"[{term.type_name}]"
    return f"[{term.type_name}:{term.referent}]"


def graph_to_text(graph: ConceptGraph) -> str:
    return "->".join(term_to_text(t) for t in graph.terms())


def term_from_text(text: str) -> ConceptTerm:
    m = _TERM_RE.match(text.strip())
    if not m:
        raise ParseError(f"bad concept term: {text!r}")
    return ConceptTerm(m.group(1), m.group(2))


def graph_from_text(text: str) -> ConceptGraph:
    parts = [p for p in text.split("->") if p.strip()]
    if not 1 <= len(parts) <= 3:
        raise ParseError(f"a graph has one to three terms: {text!r}")
    terms = [term_from_text(p) for p in parts]
    try:
        return ConceptGraph(*terms)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
