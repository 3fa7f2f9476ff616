"""Shared fixtures: the Alice corpus, the music corpus, and small builders."""

from __future__ import annotations

from pathlib import Path

import pytest

from conceptnav import (
    ConceptVector,
    Ontology,
    ResourceDescription,
    ResourceStore,
    WeightedGraph,
    graph_from_text,
    load_ontology,
    parse_rd,
)

FIXTURES = Path(__file__).parent / "fixtures"


def g(text: str):
    """Graph from compact notation: '[TYPE:ref]->[PRED]->[TYPE:#]'."""
    return graph_from_text(text)


def wg(text: str, weight: float = 1.0) -> WeightedGraph:
    return WeightedGraph(g(text), weight)


def vec(*specs) -> ConceptVector:
    """Vector from 'text' or ('text', weight) items."""
    entries = []
    for spec in specs:
        if isinstance(spec, str):
            entries.append(wg(spec))
        else:
            text, weight = spec
            entries.append(wg(text, weight))
    return ConceptVector(tuple(entries))


def make_rd(
    rid: str,
    content: ConceptVector,
    time_value: float = 10.0,
    prerequisites: ConceptVector = ConceptVector(),
    relations: ConceptVector = ConceptVector(),
    role=None,
    ontology_uri: str = "http://example.org/ontology/test",
    segments=(),
) -> ResourceDescription:
    return ResourceDescription(
        id=rid,
        uri=f"http://example.org/resources/{rid}",
        title=f"Resource {rid}",
        content=content,
        prerequisites=prerequisites,
        relations=relations,
        ontology_uri=ontology_uri,
        time_value=time_value,
        pedagogic_role=role,
        segments=tuple(segments),
    )


def make_store(*rds: ResourceDescription) -> ResourceStore:
    store = ResourceStore()
    for rd in rds:
        store.add(rd)
    return store


@pytest.fixture(scope="session")
def alice_ontology() -> Ontology:
    return load_ontology((FIXTURES / "alice" / "ontologie.xml").read_text())


@pytest.fixture(scope="session")
def alice_rd_text() -> str:
    return (FIXTURES / "alice" / "caterpillar.xml").read_text()


@pytest.fixture()
def alice_rd(alice_rd_text):
    return parse_rd(alice_rd_text)


# Flat ontology over topic markers used by planner fixtures. Every TOPIC_*
# type hangs off the root; graphs are single-source assertions.
TOPIC_NAMES = tuple(f"TOPIC_{letter}" for letter in "ABCDEFGHJKLMNPQRSTUVWXYZ")


@pytest.fixture(scope="session")
def topic_ontology() -> Ontology:
    lines = [f"concept {name}" for name in TOPIC_NAMES]
    return load_ontology("\n".join(lines))


def topic(letter: str) -> str:
    return f"[TOPIC_{letter}]"


def topics(*letters: str) -> ConceptVector:
    return vec(*(topic(letter) for letter in letters))
