"""JSON encoding of graphs, vectors, profiles, and plans.

Vector entries mirror the ``phrase_kldp`` attributes with English keys:
{source, source_ref?, predicate?, destination?, destination_ref?, weight?}.
Absent keys mean absent slots; a missing weight means 1.0; the referent
value ``#`` is the generic marker.
"""

from __future__ import annotations

from typing import Any, Mapping, Sequence

from .engine import CoursePlan, LearnerProfile, PlanStep
from .errors import InvariantViolation, ParseError
from .graphs import ConceptGraph, ConceptTerm, ConceptVector, WeightedGraph
from .ontology import Ontology
from .store import ResourceDescription, ResourceStore


def entry_to_json(entry: WeightedGraph) -> dict[str, Any]:
    g = entry.graph
    out: dict[str, Any] = {"source": g.source.type_name}
    if g.source.referent is not None:
        out["source_ref"] = g.source.referent
    if g.predicate is not None:
        if g.predicate.referent is not None:
            raise InvariantViolation("a predicate referent is not representable")
        out["predicate"] = g.predicate.type_name
    if g.destination is not None:
        out["destination"] = g.destination.type_name
        if g.destination.referent is not None:
            out["destination_ref"] = g.destination.referent
    if entry.weight != 1.0:
        out["weight"] = entry.weight
    return out


def vector_to_json(csv: ConceptVector) -> list[dict[str, Any]]:
    return [entry_to_json(entry) for entry in csv.entries]


def entry_from_json(item: Mapping[str, Any]) -> WeightedGraph:
    source = item.get("source")
    if not source or not isinstance(source, str):
        raise ParseError(f"vector entry needs a string 'source': {item!r}")
    try:
        src = ConceptTerm(source, item.get("source_ref"))
        predicate = item.get("predicate")
        destination = item.get("destination")
        graph = ConceptGraph(
            src,
            ConceptTerm(predicate) if predicate else None,
            ConceptTerm(destination, item.get("destination_ref")) if destination else None,
        )
        return WeightedGraph(graph, float(item.get("weight", 1.0)))
    except (ValueError, TypeError) as exc:
        raise ParseError(f"bad vector entry {item!r}: {exc}") from exc


def vector_from_json(items: Sequence[Mapping[str, Any]]) -> ConceptVector:
    return ConceptVector(tuple(entry_from_json(item) for item in items))


def profile_from_json(data: Mapping[str, Any]) -> LearnerProfile:
    budget = data.get("time_budget")
    try:
        return LearnerProfile(
            known=vector_from_json(data.get("known", [])),
            objective=vector_from_json(data.get("objective", [])),
            time_budget=None if budget is None else float(budget),
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def profile_to_json(profile: LearnerProfile) -> dict[str, Any]:
    return {
        "known": vector_to_json(profile.known),
        "objective": vector_to_json(profile.objective),
        "time_budget": profile.time_budget,
    }


def step_to_json(step: PlanStep, store: ResourceStore) -> dict[str, Any]:
    cand = store.resolve(step.candidate_id)
    return {
        "id": step.candidate_id,
        "title": cand.title,
        "uri": cand.uri,
        "time": step.time_value,
        "cp": step.cp_at_selection,
        "round": step.selection_round,
    }


def plan_to_json(plan: CoursePlan, store: ResourceStore) -> dict[str, Any]:
    return {
        "steps": [step_to_json(step, store) for step in plan.steps],
        "total_time": plan.total_time,
        "within_budget": plan.within_budget,
        "status": plan.status.value,
        "residual_objective": vector_to_json(plan.residual_objective),
        "warnings": list(plan.warnings),
    }


def rd_to_json(rd: ResourceDescription) -> dict[str, Any]:
    return {
        "id": rd.id,
        "uri": rd.uri,
        "title": rd.title,
        "media": rd.media,
        "ontology_uri": rd.ontology_uri,
        "time_value": rd.time_value,
        "pedagogic_role": rd.pedagogic_role.name if rd.pedagogic_role else None,
        "content": vector_to_json(rd.content),
        "prerequisites": vector_to_json(rd.prerequisites),
        "relations": vector_to_json(rd.relations),
        "segments": [
            {
                "id": seg.id,
                "time_value": seg.time_value,
                "content": vector_to_json(seg.content),
                "relations": vector_to_json(seg.relations),
            }
            for seg in rd.segments
        ],
    }


def ontology_to_json(ont: Ontology) -> dict[str, Any]:
    return {
        "uri": ont.uri,
        "types": [
            {"name": decl.name, "parents": list(decl.parents)} for decl in ont.types
        ],
        "signatures": [
            {
                "source": sig.source_type,
                "predicate": sig.predicate_type,
                "destination": sig.destination_type,
            }
            for sig in ont.signatures
        ],
    }
