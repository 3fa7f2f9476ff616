"""Concept-type hierarchy, relation signatures, and the queries built on them.

An ontology is immutable once loaded: a DAG of concept types (multiple
parents allowed, every type reaching the implicit root ``T``) plus a set of
(source, predicate, destination) signatures stating which assertions are
legal. Subsumption is reachability along child-to-parent edges.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Iterable, Literal

from .errors import CycleError, DanglingReference, ParseError, UnknownType
from .graphs import ConceptGraph

#: Universal root type; every declared type is a subtype of it.
ROOT_TYPE = "T"


@dataclass(frozen=True)
class ConceptTypeDecl:
    name: str
    parents: tuple[str, ...] = ()


@dataclass(frozen=True)
class RelationSignature:
    source_type: str
    predicate_type: str
    destination_type: str


@dataclass(frozen=True)
class Diagnostic:
    """A validation finding. ``error`` severity blocks acceptance of the
    value; ``warning`` does not."""

    code: str
    message: str
    severity: Literal["error", "warning"] = "error"
    resource_id: str | None = None
    csv_name: str | None = None
    entry_index: int | None = None


class Ontology:
    """Validated, query-ready type hierarchy plus relation signatures."""

    def __init__(
        self,
        uri: str,
        types: Iterable[ConceptTypeDecl],
        signatures: Iterable[RelationSignature] = (),
    ):
        self.uri = uri
        self.types = tuple(types)
        self.signatures = tuple(signatures)

        self._decls: dict[str, ConceptTypeDecl] = {}
        for decl in self.types:
            if decl.name in self._decls:
                raise ParseError(f"duplicate concept type: {decl.name!r}")
            if decl.name == ROOT_TYPE and decl.parents:
                raise ParseError(f"root type {ROOT_TYPE!r} cannot declare parents")
            self._decls[decl.name] = decl

        for decl in self.types:
            for parent in decl.parents:
                if parent != ROOT_TYPE and parent not in self._decls:
                    raise DanglingReference(
                        f"concept {decl.name!r} declares unknown parent {parent!r}"
                    )

        seen: set[tuple[str, str, str]] = set()
        for sig in self.signatures:
            triple = (sig.source_type, sig.predicate_type, sig.destination_type)
            if triple in seen:
                raise ParseError(f"duplicate signature: {triple}")
            seen.add(triple)
            for name in triple:
                if not self.declares(name):
                    raise DanglingReference(f"signature {triple} uses unknown type {name!r}")

        self._ancestors = self._compute_ancestors()

    # -- hierarchy ----------------------------------------------------------

    def declares(self, name: str) -> bool:
        return name == ROOT_TYPE or name in self._decls

    def require(self, name: str) -> None:
        if not self.declares(name):
            raise UnknownType(name)

    def _parents_of(self, name: str) -> tuple[str, ...]:
        if name == ROOT_TYPE:
            return ()
        decl = self._decls[name]
        # Types with no declared parent hang off the root.
        return decl.parents if decl.parents else (ROOT_TYPE,)

    def _compute_ancestors(self) -> dict[str, frozenset[str]]:
        ancestors: dict[str, frozenset[str]] = {ROOT_TYPE: frozenset()}
        state: dict[str, int] = {}  # 1 = in progress, 2 = done

        def visit(name: str, trail: list[str]) -> frozenset[str]:
            if name in ancestors:
                return ancestors[name]
            if state.get(name) == 1:
                cycle = trail[trail.index(name):] + [name]
                raise CycleError(tuple(cycle))
            state[name] = 1
            trail.append(name)
            acc: set[str] = set()
            for parent in self._parents_of(name):
                acc.add(parent)
                acc |= visit(parent, trail)
            trail.pop()
            state[name] = 2
            ancestors[name] = frozenset(acc)
            return ancestors[name]

        for decl in self.types:
            visit(decl.name, [])
        return ancestors

    def ancestors(self, name: str) -> frozenset[str]:
        self.require(name)
        return self._ancestors[name]

    def descendants(self, name: str) -> frozenset[str]:
        """Declared subtypes of ``name``, transitively (excluding itself)."""
        self.require(name)
        return frozenset(t for t in self._ancestors if t != name and name in self._ancestors[t])

    def is_subtype(self, a: str, b: str) -> bool:
        """True iff ``a`` equals ``b`` or ``b`` is reachable via parent edges."""
        self.require(a)
        self.require(b)
        return a == b or b in self._ancestors[a]

    # -- signature queries ----------------------------------------------------

    def valid_predicates(self, source: str) -> set[str]:
        """Predicate types usable from ``source``, inherited from supertypes."""
        self.require(source)
        return {
            sig.predicate_type
            for sig in self.signatures
            if self.is_subtype(source, sig.source_type)
        }

    def valid_destinations(self, source: str, predicate: str) -> set[str]:
        """Destination types (with their declared subtypes) licensed for the
        (source, predicate) pair."""
        self.require(source)
        self.require(predicate)
        out: set[str] = set()
        for sig in self.signatures:
            if self.is_subtype(source, sig.source_type) and self.is_subtype(
                predicate, sig.predicate_type
            ):
                out.add(sig.destination_type)
                out |= self.descendants(sig.destination_type)
        return out

    def validate_graph(self, g: ConceptGraph) -> list[Diagnostic]:
        """Diagnostics for a graph: undeclared types, unlicensed assertions.

        Returns an empty list when the graph is acceptable. Never raises on
        content problems.
        """
        diags = [
            Diagnostic("unknown_type", f"type {name!r} is not declared")
            for name in g.type_names()
            if not self.declares(name)
        ]
        if diags:
            return diags
        if g.predicate is not None and g.destination is not None:
            licensed = any(
                self.is_subtype(g.source.type_name, sig.source_type)
                and self.is_subtype(g.predicate.type_name, sig.predicate_type)
                and self.is_subtype(g.destination.type_name, sig.destination_type)
                for sig in self.signatures
            )
            if not licensed:
                triple = (g.source.type_name, g.predicate.type_name, g.destination.type_name)
                diags.append(
                    Diagnostic("unlicensed_assertion", f"no signature licenses {triple}")
                )
        return diags

    def decompose(self, concept: str, relation: str) -> list[str]:
        """Destination types of signatures (s, relation, d) applicable to
        ``concept``, in declaration order."""
        self.require(concept)
        self.require(relation)
        return [
            sig.destination_type
            for sig in self.signatures
            if sig.predicate_type == relation and self.is_subtype(concept, sig.source_type)
        ]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ontology):
            return NotImplemented
        return (
            self.uri == other.uri
            and self.types == other.types
            and self.signatures == other.signatures
        )

    def __repr__(self) -> str:
        return (
            f"Ontology(uri={self.uri!r}, types={len(self.types)},"
            f" signatures={len(self.signatures)})"
        )


# -- loading and saving -------------------------------------------------------


def load_ontology(text: str) -> Ontology:
    """Load from the XML format, or the line-oriented fixture format when the
    document does not start with ``<``."""
    if text.lstrip().startswith("<"):
        return _load_xml(text)
    return _load_lines(text)


def _load_xml(text: str) -> Ontology:
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise ParseError(f"bad ontology XML: {exc}") from exc
    if root.tag != "ontologie":
        raise ParseError(f"expected root element 'ontologie', got {root.tag!r}")
    if "uri" not in root.attrib:
        raise ParseError("ontologie element needs a 'uri' attribute")
    uri = root.attrib["uri"]

    types: list[ConceptTypeDecl] = []
    signatures: list[RelationSignature] = []
    for child in root:
        if child.tag == "concept":
            name = child.attrib.get("nom")
            if not name:
                raise ParseError("concept element needs a 'nom' attribute")
            parents = tuple(child.attrib.get("parents", "").split())
            types.append(ConceptTypeDecl(name, parents))
        elif child.tag == "relation":
            try:
                signatures.append(
                    RelationSignature(
                        child.attrib["source"],
                        child.attrib["predicat"],
                        child.attrib["destination"],
                    )
                )
            except KeyError as exc:
                raise ParseError(f"relation element missing attribute {exc}") from exc
        else:
            raise ParseError(f"unexpected element {child.tag!r} in ontology")
    return Ontology(uri, types, signatures)


def _load_lines(text: str) -> Ontology:
    types: list[ConceptTypeDecl] = []
    signatures: list[RelationSignature] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "concept":
            if len(fields) >= 3 and fields[2] == "<":
                if len(fields) < 4:
                    raise ParseError(f"line {lineno}: 'concept NAME <' needs parents")
                types.append(ConceptTypeDecl(fields[1], tuple(fields[3:])))
            elif len(fields) == 2:
                types.append(ConceptTypeDecl(fields[1]))
            else:
                raise ParseError(f"line {lineno}: bad concept declaration: {line!r}")
        elif fields[0] == "relation":
            if len(fields) != 4:
                raise ParseError(f"line {lineno}: relation needs SRC PRED DST: {line!r}")
            signatures.append(RelationSignature(fields[1], fields[2], fields[3]))
        else:
            raise ParseError(f"line {lineno}: unknown directive {fields[0]!r}")
    return Ontology("", types, signatures)


def serialize_ontology(ont: Ontology) -> str:
    """Canonical XML: declaration order preserved, implicit root left implicit."""
    root = ET.Element("ontologie", {"uri": ont.uri})
    for decl in ont.types:
        attrs = {"nom": decl.name}
        if decl.parents:
            attrs["parents"] = " ".join(decl.parents)
        ET.SubElement(root, "concept", attrs)
    for sig in ont.signatures:
        ET.SubElement(
            root,
            "relation",
            {
                "source": sig.source_type,
                "predicat": sig.predicate_type,
                "destination": sig.destination_type,
            },
        )
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"
