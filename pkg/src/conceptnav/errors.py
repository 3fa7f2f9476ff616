"""Exception types shared across the package."""

from __future__ import annotations


class ConceptNavError(Exception):
    """Base class for all domain errors."""


class ParseError(ConceptNavError):
    """A document is malformed or violates its schema."""


class CycleError(ConceptNavError):
    """The concept-type hierarchy contains a cycle."""

    def __init__(self, cycle: tuple[str, ...]):
        self.cycle = cycle
        super().__init__("subtype cycle: " + " -> ".join(cycle))


class DanglingReference(ConceptNavError):
    """A declaration refers to a concept type that is not declared."""


class UnknownType(ConceptNavError):
    """A concept type name is absent from the ontology."""

    def __init__(self, type_name: str):
        self.type_name = type_name
        super().__init__(f"unknown concept type: {type_name!r}")


class InvariantViolation(ConceptNavError):
    """A parsed or constructed value breaks a domain invariant."""


class EmptyObjective(ConceptNavError):
    """An operation requiring a non-empty objective got an empty one."""


class DuplicateId(ConceptNavError):
    """An id is already present in the store."""


class NotFound(ConceptNavError):
    """A resource, segment, or session id does not exist."""


class NoRelations(ConceptNavError):
    """Conceptual expansion was requested on a candidate with no relations."""


class EmptyTemplate(ConceptNavError):
    """Template instantiation needs at least one segment."""


class BudgetTooSmall(ConceptNavError):
    """The starting resource alone exceeds the time budget."""


class InvalidProfile(ConceptNavError):
    """A learner profile or strategy request is not usable."""


class RuleConflict(ConceptNavError):
    """Pedagogic precedence rules form a cycle."""

    def __init__(self, cycle: tuple[str, ...]):
        self.cycle = cycle
        super().__init__("pedagogic rule cycle: " + " -> ".join(cycle))
