"""Resource descriptions: parsing, canonical serialization, validation,
storage, and proximity ranking.

Descriptions are stored independently of the resources they describe, one
XML document per resource (root element ``materiau``). The store is an
in-memory index keyed by id with a resource-level tag set; planning runs
layer their own exclusions on top via the ``exclude`` argument of
``rank_by_cp``.
"""

from __future__ import annotations

import enum
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .errors import DuplicateId, EmptyObjective, InvariantViolation, NotFound, ParseError
from .graphs import (
    EMPTY_VECTOR,
    ConceptGraph,
    ConceptTerm,
    ConceptVector,
    WeightedGraph,
    conceptual_proximity,
)
from .ontology import Diagnostic, Ontology

#: Joins a resource id and a segment id into one candidate id.
SEGMENT_SEP = "#"


@dataclass(frozen=True)
class PedagogicRole:
    """The argumentative function of a resource. Known names get canonical
    instances; anything else is carried verbatim (lowercased)."""

    name: str

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("pedagogic role needs a name")

    @classmethod
    def parse(cls, text: str) -> PedagogicRole:
        return cls(text.strip().lower())


EXPOSURE = PedagogicRole("exposure")
EXAMPLE = PedagogicRole("example")
EXPLANATION = PedagogicRole("explanation")
TEST = PedagogicRole("test")


@dataclass(frozen=True)
class Segment:
    id: str
    content: ConceptVector
    relations: ConceptVector = EMPTY_VECTOR
    time_value: float = 0.0

    def __post_init__(self) -> None:
        if self.content.is_empty:
            raise InvariantViolation(f"segment {self.id!r} has empty content")
        if self.time_value < 0:
            raise InvariantViolation(f"segment {self.id!r} has negative time")


@dataclass(frozen=True)
class ResourceDescription:
    id: str
    uri: str
    title: str
    content: ConceptVector
    ontology_uri: str
    time_value: float
    prerequisites: ConceptVector = EMPTY_VECTOR
    relations: ConceptVector = EMPTY_VECTOR
    pedagogic_role: PedagogicRole | None = None
    media: str | None = None
    segments: tuple[Segment, ...] = ()

    def __post_init__(self) -> None:
        if self.content.is_empty:
            raise InvariantViolation(f"resource {self.id!r} has empty content")
        if self.time_value < 0:
            raise InvariantViolation(f"resource {self.id!r} has negative time")
        seen = set()
        for seg in self.segments:
            if seg.id in seen:
                raise InvariantViolation(f"resource {self.id!r} repeats segment id {seg.id!r}")
            seen.add(seg.id)


class SelectionUnit(enum.Enum):
    RESOURCE = "resource"
    SEGMENT = "segment"


@dataclass(frozen=True)
class Candidate:
    """A selectable unit: a whole resource, or one of its segments."""

    id: str
    resource_id: str
    segment_id: str | None
    title: str
    uri: str
    content: ConceptVector
    prerequisites: ConceptVector
    relations: ConceptVector
    time_value: float
    pedagogic_role: PedagogicRole | None


@dataclass(frozen=True)
class Ranked:
    candidate_id: str
    cp: float
    time_value: float


class ResourceStore:
    """Keyed collection of resource descriptions plus a tag set of ids
    excluded from selection."""

    def __init__(self) -> None:
        self._descriptions: dict[str, ResourceDescription] = {}
        self._tags: set[str] = set()

    def add(self, rd: ResourceDescription) -> None:
        if rd.id in self._descriptions:
            raise DuplicateId(rd.id)
        self._descriptions[rd.id] = rd

    def get(self, rid: str) -> ResourceDescription:
        try:
            return self._descriptions[rid]
        except KeyError:
            raise NotFound(rid) from None

    def remove(self, rid: str) -> None:
        if rid not in self._descriptions:
            raise NotFound(rid)
        del self._descriptions[rid]
        self._tags.discard(rid)

    def ids(self) -> list[str]:
        return sorted(self._descriptions)

    def list(self) -> list[ResourceDescription]:
        return [self._descriptions[rid] for rid in self.ids()]

    def __len__(self) -> int:
        return len(self._descriptions)

    def __contains__(self, rid: str) -> bool:
        return rid in self._descriptions

    # -- tagging ------------------------------------------------------------

    @property
    def tags(self) -> frozenset[str]:
        return frozenset(self._tags)

    def tag(self, rid: str) -> None:
        if rid not in self._descriptions:
            raise NotFound(rid)
        self._tags.add(rid)

    def untag(self, rid: str) -> None:
        if rid not in self._descriptions:
            raise NotFound(rid)
        self._tags.discard(rid)

    def clear_tags(self) -> None:
        self._tags.clear()

    # -- candidates ----------------------------------------------------------

    def resolve(self, candidate_id: str) -> Candidate:
        """Look up a candidate by resource id or ``resource#segment`` id."""
        if SEGMENT_SEP in candidate_id:
            rid, seg_id = candidate_id.split(SEGMENT_SEP, 1)
            rd = self.get(rid)
            for seg in rd.segments:
                if seg.id == seg_id:
                    return self._segment_candidate(rd, seg)
            raise NotFound(candidate_id)
        rd = self.get(candidate_id)
        return Candidate(
            id=rd.id,
            resource_id=rd.id,
            segment_id=None,
            title=rd.title,
            uri=rd.uri,
            content=rd.content,
            prerequisites=rd.prerequisites,
            relations=rd.relations,
            time_value=rd.time_value,
            pedagogic_role=rd.pedagogic_role,
        )

    @staticmethod
    def _segment_candidate(rd: ResourceDescription, seg: Segment) -> Candidate:
        return Candidate(
            id=f"{rd.id}{SEGMENT_SEP}{seg.id}",
            resource_id=rd.id,
            segment_id=seg.id,
            title=f"{rd.title} [{seg.id}]",
            uri=f"{rd.uri}{SEGMENT_SEP}{seg.id}",
            content=seg.content,
            prerequisites=EMPTY_VECTOR,
            relations=seg.relations,
            time_value=seg.time_value,
            pedagogic_role=rd.pedagogic_role,
        )

    def candidates(self, unit: SelectionUnit = SelectionUnit.RESOURCE) -> Iterator[Candidate]:
        for rid in self.ids():
            rd = self._descriptions[rid]
            if unit is SelectionUnit.RESOURCE:
                yield self.resolve(rid)
            else:
                for seg in rd.segments:
                    yield self._segment_candidate(rd, seg)


def rank_by_cp(
    store: ResourceStore,
    objective: ConceptVector,
    ont: Ontology,
    unit: SelectionUnit = SelectionUnit.RESOURCE,
    exclude: frozenset[str] | set[str] = frozenset(),
) -> list[Ranked]:
    """Untagged candidates with CP > 0, ordered by CP descending, then time
    ascending, then id — a deterministic total order.

    ``exclude`` holds per-run exclusions layered over the store's tags; a
    resource id in either set also suppresses its segments.
    """
    if objective.is_empty:
        raise EmptyObjective("ranking needs a non-empty objective")
    blocked = store.tags | set(exclude)
    out = []
    for cand in store.candidates(unit):
        if cand.resource_id in blocked or cand.id in blocked:
            continue
        cp = conceptual_proximity(objective, cand.content, ont)
        if cp > 0.0:
            out.append(Ranked(cand.id, cp, cand.time_value))
    # CP quantized to the 1e-9 tie tolerance so equal scores computed along
    # different float paths still compare equal.
    out.sort(key=lambda r: (-round(r.cp, 9), r.time_value, r.candidate_id))
    return out


# -- XML parsing ---------------------------------------------------------------


def _parse_float(text: str, what: str) -> float:
    try:
        return float(text)
    except ValueError as exc:
        raise ParseError(f"bad decimal for {what}: {text!r}") from exc


def _parse_phrase(el: ET.Element) -> WeightedGraph:
    source = el.attrib.get("source")
    if not source:
        raise ParseError("phrase_kldp needs a 'source' attribute")
    src = ConceptTerm(source, el.attrib.get("source_ref"))
    predicate = el.attrib.get("predicat")
    destination = el.attrib.get("destination")
    pred = ConceptTerm(predicate) if predicate else None
    dest = (
        ConceptTerm(destination, el.attrib.get("destination_ref")) if destination else None
    )
    try:
        graph = ConceptGraph(src, pred, dest)
    except ValueError as exc:
        raise InvariantViolation(str(exc)) from exc
    weight = 1.0
    if "poids" in el.attrib:
        weight = _parse_float(el.attrib["poids"], "poids")
        if not 0.0 <= weight <= 1.0:
            raise InvariantViolation(f"poids out of [0, 1]: {weight}")
    return WeightedGraph(graph, weight)


def _parse_vector(el: ET.Element | None) -> ConceptVector:
    if el is None:
        return EMPTY_VECTOR
    entries = []
    for child in el:
        if child.tag != "phrase_kldp":
            raise ParseError(f"unexpected element {child.tag!r} in {el.tag!r}")
        entries.append(_parse_phrase(child))
    return ConceptVector(tuple(entries))


def _parse_segment(el: ET.Element) -> Segment:
    seg_id = el.attrib.get("id")
    if not seg_id:
        raise ParseError("segment needs an 'id' attribute")
    if "temps_utilisation" not in el.attrib:
        raise ParseError(f"segment {seg_id!r} needs a 'temps_utilisation' attribute")
    time_value = _parse_float(el.attrib["temps_utilisation"], "temps_utilisation")
    content_el = el.find("description_conceptuelle")
    if content_el is None:
        raise InvariantViolation(f"segment {seg_id!r} is missing description_conceptuelle")
    return Segment(
        id=seg_id,
        content=_parse_vector(content_el),
        relations=_parse_vector(el.find("relation_conceptuelle")),
        time_value=time_value,
    )


def parse_rd(text: str) -> ResourceDescription:
    """Parse one resource description document.

    Raises ParseError for malformed documents and InvariantViolation when the
    parsed value would break a domain invariant (empty content, negative
    time, weight outside [0, 1]).
    """
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise ParseError(f"bad resource XML: {exc}") from exc
    if root.tag != "materiau":
        raise ParseError(f"expected root element 'materiau', got {root.tag!r}")
    for attr in ("id", "uri", "titre"):
        if attr not in root.attrib:
            raise ParseError(f"materiau needs an {attr!r} attribute")

    ontology_el = root.find("ontologie")
    if ontology_el is None:
        raise InvariantViolation("materiau is missing the ontologie element")
    time_el = root.find("temps_utilisation")
    if time_el is None:
        raise InvariantViolation("materiau is missing temps_utilisation")
    content_el = root.find("description_conceptuelle")
    if content_el is None:
        raise InvariantViolation("materiau is missing description_conceptuelle")

    role_el = root.find("type_pedagogique")
    role = PedagogicRole.parse(role_el.text or "") if role_el is not None else None

    return ResourceDescription(
        id=root.attrib["id"],
        uri=root.attrib["uri"],
        title=root.attrib["titre"],
        media=root.attrib.get("media"),
        ontology_uri=(ontology_el.text or "").strip(),
        time_value=_parse_float((time_el.text or "").strip(), "temps_utilisation"),
        pedagogic_role=role,
        content=_parse_vector(content_el),
        prerequisites=_parse_vector(root.find("pre_requis")),
        relations=_parse_vector(root.find("relation_conceptuelle")),
        segments=tuple(_parse_segment(el) for el in root.findall("segment")),
    )


# -- canonical serialization ---------------------------------------------------


def _format_decimal(value: float) -> str:
    return repr(float(value))


def _phrase_element(parent: ET.Element, entry: WeightedGraph) -> None:
    g = entry.graph
    attrs: dict[str, str] = {"source": g.source.type_name}
    if g.source.referent is not None:
        attrs["source_ref"] = g.source.referent
    if g.predicate is not None:
        if g.predicate.referent is not None:
            raise InvariantViolation("a predicate referent is not representable")
        attrs["predicat"] = g.predicate.type_name
    if g.destination is not None:
        attrs["destination"] = g.destination.type_name
        if g.destination.referent is not None:
            attrs["destination_ref"] = g.destination.referent
    if entry.weight != 1.0:
        attrs["poids"] = _format_decimal(entry.weight)
    ET.SubElement(parent, "phrase_kldp", attrs)


def _vector_element(parent: ET.Element, tag: str, csv: ConceptVector) -> None:
    el = ET.SubElement(parent, tag)
    for entry in csv.entries:
        _phrase_element(el, entry)


def serialize_rd(rd: ResourceDescription) -> str:
    """Canonical form: fixed element and attribute order, unit weights and
    empty optional vectors omitted. Stable byte-for-byte."""
    attrs = {"id": rd.id, "uri": rd.uri, "titre": rd.title}
    if rd.media is not None:
        attrs["media"] = rd.media
    root = ET.Element("materiau", attrs)
    ET.SubElement(root, "ontologie").text = rd.ontology_uri
    ET.SubElement(root, "temps_utilisation").text = _format_decimal(rd.time_value)
    if rd.pedagogic_role is not None:
        ET.SubElement(root, "type_pedagogique").text = rd.pedagogic_role.name
    _vector_element(root, "description_conceptuelle", rd.content)
    if not rd.prerequisites.is_empty:
        _vector_element(root, "pre_requis", rd.prerequisites)
    if not rd.relations.is_empty:
        _vector_element(root, "relation_conceptuelle", rd.relations)
    for seg in rd.segments:
        seg_el = ET.SubElement(
            root,
            "segment",
            {"id": seg.id, "temps_utilisation": _format_decimal(seg.time_value)},
        )
        _vector_element(seg_el, "description_conceptuelle", seg.content)
        if not seg.relations.is_empty:
            _vector_element(seg_el, "relation_conceptuelle", seg.relations)
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"


# -- validation ----------------------------------------------------------------


def _vector_diagnostics(
    rd_id: str, csv_name: str, csv: ConceptVector, ont: Ontology
) -> list[Diagnostic]:
    out = []
    for index, entry in enumerate(csv.entries):
        for diag in ont.validate_graph(entry.graph):
            out.append(
                Diagnostic(
                    code=diag.code,
                    message=diag.message,
                    severity=diag.severity,
                    resource_id=rd_id,
                    csv_name=csv_name,
                    entry_index=index,
                )
            )
    return out


def validate_rd(rd: ResourceDescription, ont: Ontology) -> list[Diagnostic]:
    """Check every graph of every vector against the ontology; collect
    diagnostics instead of raising."""
    diags: list[Diagnostic] = []
    if rd.ontology_uri != ont.uri:
        diags.append(
            Diagnostic(
                code="ontology_mismatch",
                message=f"resource indexed against {rd.ontology_uri!r}, not {ont.uri!r}",
                severity="warning",
                resource_id=rd.id,
            )
        )
    diags += _vector_diagnostics(rd.id, "content", rd.content, ont)
    diags += _vector_diagnostics(rd.id, "prerequisites", rd.prerequisites, ont)
    diags += _vector_diagnostics(rd.id, "relations", rd.relations, ont)
    for seg in rd.segments:
        diags += _vector_diagnostics(rd.id, f"segment {seg.id} content", seg.content, ont)
        diags += _vector_diagnostics(rd.id, f"segment {seg.id} relations", seg.relations, ont)
    if rd.segments:
        seg_total = sum(seg.time_value for seg in rd.segments)
        if seg_total > rd.time_value:
            diags.append(
                Diagnostic(
                    code="segment_time_exceeds",
                    message=(
                        f"segments sum to {seg_total} min, more than the"
                        f" resource's {rd.time_value} min"
                    ),
                    severity="warning",
                    resource_id=rd.id,
                )
            )
    return diags


def has_errors(diags: list[Diagnostic]) -> bool:
    return any(d.severity == "error" for d in diags)


# -- corpus loading --------------------------------------------------------------


def load_corpus(directory: str | Path) -> tuple[Ontology | None, ResourceStore]:
    """Scan a directory tree for one ontology document and any number of
    resource descriptions, building the in-memory index."""
    from .ontology import load_ontology

    directory = Path(directory)
    ontology: Ontology | None = None
    store = ResourceStore()
    for path in sorted(directory.rglob("*")):
        if not path.is_file() or path.suffix not in (".xml", ".ont", ".txt"):
            continue
        text = path.read_text(encoding="utf-8")
        stripped = text.lstrip()
        if stripped.startswith("<"):
            root_tag = stripped[1:].split(None, 1)[0].rstrip(">")
            if root_tag == "ontologie":
                if ontology is not None:
                    raise ParseError(f"second ontology document: {path}")
                ontology = load_ontology(text)
            elif root_tag == "materiau":
                store.add(parse_rd(text))
            else:
                raise ParseError(f"{path}: unrecognized root element {root_tag!r}")
        elif path.suffix in (".ont", ".txt"):
            if ontology is not None:
                raise ParseError(f"second ontology document: {path}")
            ontology = load_ontology(text)
    return ontology, store
