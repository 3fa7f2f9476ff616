"""Navigation strategies over a validated resource store.

Backward navigation is goal-driven: each selected resource's prerequisites
become new objectives, the budget check happens at path completion, and a
LIFO backtracking pass revises earlier rounds when the total exceeds the
learner's time budget. The other strategies (expansion, forward walk,
template instantiation, top-down decomposition, pedagogic-rule ordering)
share the same ranking and coverage primitives.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Sequence

from .errors import BudgetTooSmall, EmptyObjective, EmptyTemplate, NoRelations, RuleConflict
from .graphs import (
    EMPTY_VECTOR,
    ConceptVector,
    MatchMode,
    covers,
    merge_into,
    withdraw,
)
from .ontology import Ontology
from .store import (
    Candidate,
    PedagogicRole,
    Ranked,
    ResourceStore,
    SelectionUnit,
    rank_by_cp,
)


@dataclass(frozen=True)
class LearnerProfile:
    """Initial knowledge, objective, and available time (None = unbounded)."""

    known: ConceptVector = EMPTY_VECTOR
    objective: ConceptVector = EMPTY_VECTOR
    time_budget: float | None = None

    def __post_init__(self) -> None:
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("a bounded time budget must be positive")


@dataclass(frozen=True)
class Curriculum:
    """A named list of (sentence, vector) contents; each sentence hides a
    vector. Used as an objective via the merged union of its vectors."""

    name: str
    contents: tuple[tuple[str, ConceptVector], ...]

    def __post_init__(self) -> None:
        if not self.contents:
            raise ValueError("a curriculum needs at least one content")

    def objective(self) -> ConceptVector:
        merged = EMPTY_VECTOR
        for _, csv in self.contents:
            merged = merge_into(merged, csv)
        return merged


@dataclass(frozen=True)
class PlanStep:
    candidate_id: str
    selection_round: int
    cp_at_selection: float
    time_value: float

    def __post_init__(self) -> None:
        if self.cp_at_selection <= 0:
            raise ValueError("a step is only selected with positive proximity")
        if self.selection_round < 1:
            raise ValueError("selection rounds are 1-based")


class PlanStatus(enum.Enum):
    COMPLETE = "complete"
    STARVED = "starved"
    OVER_BUDGET = "over_budget"


@dataclass(frozen=True)
class CoursePlan:
    steps: tuple[PlanStep, ...]
    total_time: float
    within_budget: bool
    residual_objective: ConceptVector
    status: PlanStatus
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class PedagogicRule:
    """Precedence between two roles when two steps treat the same topic."""

    before_role: PedagogicRole
    after_role: PedagogicRole
    scope: str = "same_topic"

    def __post_init__(self) -> None:
        if self.before_role == self.after_role:
            raise ValueError("a precedence rule needs two distinct roles")


@dataclass(frozen=True)
class PlannerConfig:
    max_backtracks: int = 100
    backtrack_relaxed: bool = False
    selection_unit: SelectionUnit = SelectionUnit.RESOURCE
    part_relation: str = "HAS_PART"
    expansion_limit: int = 10


DEFAULT_CONFIG = PlannerConfig()


def update_objective(profile: LearnerProfile, ont: Ontology) -> ConceptVector:
    """Withdraw everything the learner already knows from the objective."""
    return withdraw(profile.objective, profile.known, MatchMode.STRICT, ont)


# -- backward navigation -------------------------------------------------------


@dataclass
class _Round:
    """One selection round of the backward search, with enough state to be
    revisited during backtracking."""

    objective_before: ConceptVector
    knowledge_before: ConceptVector
    ranked: list[Ranked]
    chosen: Ranked
    tried: set[str] = field(default_factory=set)


def _qualifying_alternate(rnd: _Round, config: PlannerConfig) -> Ranked | None:
    for cand in rnd.ranked:
        if cand.candidate_id in rnd.tried:
            continue
        if config.backtrack_relaxed or cand.time_value < rnd.chosen.time_value:
            return cand
    return None


def _steps_from_rounds(rounds: Sequence[_Round]) -> tuple[PlanStep, ...]:
    return tuple(
        PlanStep(
            candidate_id=rnd.chosen.candidate_id,
            selection_round=number,
            cp_at_selection=rnd.chosen.cp,
            time_value=rnd.chosen.time_value,
        )
        for number, rnd in enumerate(rounds, start=1)
    )


def backward_navigate(
    profile: LearnerProfile,
    store: ResourceStore,
    ont: Ontology,
    config: PlannerConfig = DEFAULT_CONFIG,
) -> CoursePlan:
    """Select resources that cover the objective, folding prerequisites back
    into the objective, then order the result by prerequisites.

    Over-budget completions trigger LIFO backtracking over recorded
    alternates (strict policy: only strictly shorter candidates at a round;
    relaxed: any untried candidate). If no within-budget path is found the
    cheapest complete path is returned flagged OverBudget. A first greedy
    pass with no matching resources returns a Starved plan.
    """
    if profile.objective.is_empty:
        raise EmptyObjective("the profile has no objective to plan for")
    budget = profile.time_budget

    objective = update_objective(profile, ont)
    knowledge = profile.known

    rounds: list[_Round] = []
    complete_paths: list[tuple[float, tuple[PlanStep, ...]]] = []
    backtracks = 0

    def apply_selection(
        objective: ConceptVector, knowledge: ConceptVector, cand: Candidate
    ) -> tuple[ConceptVector, ConceptVector]:
        # Withdraw the content as if consulted, then fold in only those
        # prerequisites the (updated) knowledge does not already hold.
        objective = withdraw(objective, cand.content, MatchMode.STRICT, ont)
        knowledge = merge_into(knowledge, cand.content)
        missing = withdraw(cand.prerequisites, knowledge, MatchMode.STRICT, ont)
        objective = merge_into(objective, missing)
        return objective, knowledge

    while True:
        starved = False
        while not objective.is_empty:
            selected = {rnd.chosen.candidate_id for rnd in rounds}
            ranked = rank_by_cp(store, objective, ont, config.selection_unit, exclude=selected)
            if not ranked:
                starved = True
                break
            choice = ranked[0]
            rounds.append(
                _Round(objective, knowledge, ranked, choice, tried={choice.candidate_id})
            )
            objective, knowledge = apply_selection(
                objective, knowledge, store.resolve(choice.candidate_id)
            )

        if starved:
            if not complete_paths and backtracks == 0:
                # The primary greedy path ran out of matching resources.
                return _finish(
                    _steps_from_rounds(rounds), profile, store, ont,
                    residual=objective, status=PlanStatus.STARVED,
                )
        else:
            steps = _steps_from_rounds(rounds)
            total = sum(step.time_value for step in steps)
            if budget is None or total <= budget:
                return _finish(
                    steps, profile, store, ont,
                    residual=EMPTY_VECTOR, status=PlanStatus.COMPLETE,
                )
            complete_paths.append((total, steps))

        revised = False
        while rounds and backtracks < config.max_backtracks:
            last = rounds[-1]
            alternate = _qualifying_alternate(last, config)
            if alternate is None:
                rounds.pop()
                continue
            backtracks += 1
            objective, knowledge = last.objective_before, last.knowledge_before
            last.chosen = alternate
            last.tried.add(alternate.candidate_id)
            objective, knowledge = apply_selection(
                objective, knowledge, store.resolve(alternate.candidate_id)
            )
            revised = True
            break

        if not revised:
            # Alternates or the backtrack budget are exhausted: propose the
            # cheapest complete path even though it misses the constraint.
            assert complete_paths, "backtracking started from a complete path"
            _, steps = min(complete_paths, key=lambda pair: pair[0])
            return _finish(
                steps, profile, store, ont,
                residual=EMPTY_VECTOR, status=PlanStatus.OVER_BUDGET,
            )


def _finish(
    steps: tuple[PlanStep, ...],
    profile: LearnerProfile,
    store: ResourceStore,
    ont: Ontology,
    residual: ConceptVector,
    status: PlanStatus,
) -> CoursePlan:
    ordered, warnings = order_by_prerequisites(list(steps), profile.known, store, ont)
    total = sum(step.time_value for step in ordered)
    budget = profile.time_budget
    return CoursePlan(
        steps=tuple(ordered),
        total_time=total,
        within_budget=budget is None or total <= budget,
        residual_objective=residual,
        status=status,
        warnings=tuple(warnings),
    )


def order_by_prerequisites(
    steps: list[PlanStep],
    known: ConceptVector,
    store: ResourceStore,
    ont: Ontology,
) -> tuple[list[PlanStep], list[str]]:
    """Greedy topological order: emit the step whose prerequisites are covered
    by initial knowledge plus already-emitted contents; deepest selection
    round first on ties. Uncoverable leftovers are emitted by descending
    round with a CyclicPrerequisites warning."""
    remaining = list(steps)
    acc = known
    ordered: list[PlanStep] = []
    warnings: list[str] = []
    while remaining:
        ready = [
            step
            for step in remaining
            if covers(store.resolve(step.candidate_id).prerequisites, acc, ont)
        ]
        if not ready:
            leftovers = sorted(remaining, key=lambda s: (-s.selection_round, s.candidate_id))
            warnings.append(
                "CyclicPrerequisites: " + ", ".join(s.candidate_id for s in leftovers)
            )
            ordered.extend(leftovers)
            break
        ready.sort(key=lambda s: (-s.selection_round, s.candidate_id))
        step = ready[0]
        remaining.remove(step)
        ordered.append(step)
        acc = merge_into(acc, store.resolve(step.candidate_id).content)
    return ordered, warnings


# -- expansion-based strategies --------------------------------------------------


def conceptual_expansion(
    candidate_id: str,
    store: ResourceStore,
    ont: Ontology,
    limit: int = 10,
    unit: SelectionUnit = SelectionUnit.RESOURCE,
    exclude: frozenset[str] | set[str] = frozenset(),
) -> list[Ranked]:
    """Rank candidates against the candidate's relations vector — the
    conceptual counterpart of following a hyperlink."""
    cand = store.resolve(candidate_id)
    if cand.relations.is_empty:
        raise NoRelations(candidate_id)
    blocked = set(exclude) | {candidate_id}
    return rank_by_cp(store, cand.relations, ont, unit, exclude=blocked)[:limit]


def fill_time_gap(
    plan: CoursePlan,
    profile: LearnerProfile,
    store: ResourceStore,
    ont: Ontology,
    config: PlannerConfig = DEFAULT_CONFIG,
) -> CoursePlan:
    """Spend leftover budget by expanding from the last step and appending the
    best-ranked candidate that still fits. No-op on unbounded or exhausted
    plans."""
    budget = profile.time_budget
    if budget is None or not plan.within_budget or not plan.steps:
        return plan
    steps = list(plan.steps)
    in_plan = {step.candidate_id for step in steps}
    total = plan.total_time
    round_no = max(step.selection_round for step in steps)
    while True:
        remaining = budget - total
        try:
            expansion = conceptual_expansion(
                steps[-1].candidate_id, store, ont,
                config.expansion_limit, config.selection_unit, exclude=in_plan,
            )
        except NoRelations:
            break
        pick = next((r for r in expansion if r.time_value <= remaining), None)
        if pick is None:
            break
        round_no += 1
        steps.append(PlanStep(pick.candidate_id, round_no, pick.cp, pick.time_value))
        in_plan.add(pick.candidate_id)
        total += pick.time_value
    return replace(plan, steps=tuple(steps), total_time=total)


def forward_navigate(
    start_id: str,
    store: ResourceStore,
    ont: Ontology,
    budget: float,
    config: PlannerConfig = DEFAULT_CONFIG,
) -> CoursePlan:
    """Free conceptual walk: start somewhere and follow expansion until the
    budget is reached (Complete) or expansion dries up (Starved)."""
    start = store.resolve(start_id)
    if start.time_value > budget:
        raise BudgetTooSmall(
            f"{start_id} takes {start.time_value} min, budget is {budget} min"
        )
    steps = [PlanStep(start_id, 1, 1.0, start.time_value)]
    visited = {start_id}
    total = start.time_value
    status = PlanStatus.COMPLETE
    while True:
        remaining = budget - total
        try:
            expansion = conceptual_expansion(
                steps[-1].candidate_id, store, ont,
                config.expansion_limit, config.selection_unit, exclude=visited,
            )
        except NoRelations:
            status = PlanStatus.STARVED
            break
        if not expansion:
            status = PlanStatus.STARVED
            break
        pick = next((r for r in expansion if r.time_value <= remaining), None)
        if pick is None:
            break
        steps.append(PlanStep(pick.candidate_id, len(steps) + 1, pick.cp, pick.time_value))
        visited.add(pick.candidate_id)
        total += pick.time_value
    return CoursePlan(
        steps=tuple(steps),
        total_time=total,
        within_budget=True,
        residual_objective=EMPTY_VECTOR,
        status=status,
    )


def template_instantiate(
    template: Sequence[ConceptVector],
    profile: LearnerProfile,
    store: ResourceStore,
    ont: Ontology,
    config: PlannerConfig = DEFAULT_CONFIG,
) -> CoursePlan:
    """Instantiate a purely conceptual outline segment by segment.

    Each segment's vector, minus what the accumulating profile already
    covers, becomes the objective; the selected resource's content feeds the
    profile before the next segment. Already-covered segments are skipped;
    unmatchable ones are folded into the residual and the plan is Starved.
    """
    if not template:
        raise EmptyTemplate("a template needs at least one segment")
    acc = profile.known
    budget = profile.time_budget
    total = 0.0
    steps: list[PlanStep] = []
    chosen: set[str] = set()
    residual = EMPTY_VECTOR
    starved = False
    for segment_csv in template:
        segment_residual = withdraw(segment_csv, acc, MatchMode.STRICT, ont)
        if segment_residual.is_empty:
            continue
        remaining = None if budget is None else budget - total
        ranked = rank_by_cp(store, segment_residual, ont, config.selection_unit, exclude=chosen)
        pick = next(
            (r for r in ranked if remaining is None or r.time_value <= remaining), None
        )
        if pick is None:
            starved = True
            residual = merge_into(residual, segment_residual)
            continue
        steps.append(PlanStep(pick.candidate_id, len(steps) + 1, pick.cp, pick.time_value))
        chosen.add(pick.candidate_id)
        total += pick.time_value
        acc = merge_into(acc, store.resolve(pick.candidate_id).content)
    return CoursePlan(
        steps=tuple(steps),
        total_time=total,
        within_budget=budget is None or total <= budget,
        residual_objective=residual,
        status=PlanStatus.STARVED if starved else PlanStatus.COMPLETE,
    )


def top_down_expand(
    objective_concepts: Sequence[str],
    ont: Ontology,
    depth: int,
    part_relation: str = "HAS_PART",
) -> list[str]:
    """Exposition goal order: each concept immediately followed by its parts,
    recursively to the given depth."""
    for concept in objective_concepts:
        ont.require(concept)

    def expand(concept: str, remaining: int) -> list[str]:
        out = [concept]
        if remaining > 0:
            for part in ont.decompose(concept, part_relation):
                out.extend(expand(part, remaining - 1))
        return out

    goals: list[str] = []
    for concept in objective_concepts:
        goals.extend(expand(concept, depth))
    return goals


# -- pedagogic-rule ordering -------------------------------------------------------


def _topic_types(cand: Candidate) -> set[str]:
    names = set()
    for graph in cand.content.graphs():
        names.add(graph.source.type_name)
        if graph.destination is not None:
            names.add(graph.destination.type_name)
    return names


def apply_pedagogic_rules(
    plan: CoursePlan,
    rules: Sequence[PedagogicRule],
    store: ResourceStore,
    ont: Ontology,
) -> CoursePlan:
    """Reorder the plan so that for every rule, a before-role step precedes
    every same-topic after-role step; minimal stable reordering otherwise.

    Two steps share a topic when their content vectors share a source or
    destination concept type. Contradictory rule edges raise RuleConflict
    naming the cycle.
    """
    steps = list(plan.steps)
    if len(steps) < 2 or not rules:
        return plan

    roles: dict[str, PedagogicRole | None] = {}
    topics: dict[str, set[str]] = {}
    for step in steps:
        cand = store.resolve(step.candidate_id)
        roles[step.candidate_id] = cand.pedagogic_role
        topics[step.candidate_id] = _topic_types(cand)

    edges: set[tuple[str, str]] = set()
    for rule in rules:
        for x in steps:
            if roles[x.candidate_id] != rule.before_role:
                continue
            for y in steps:
                if x.candidate_id == y.candidate_id:
                    continue
                if roles[y.candidate_id] != rule.after_role:
                    continue
                if topics[x.candidate_id] & topics[y.candidate_id]:
                    edges.add((x.candidate_id, y.candidate_id))
    if not edges:
        return plan

    position = {step.candidate_id: index for index, step in enumerate(steps)}
    indegree = {step.candidate_id: 0 for step in steps}
    successors: dict[str, list[str]] = {step.candidate_id: [] for step in steps}
    for before, after in sorted(edges):
        indegree[after] += 1
        successors[before].append(after)

    ordered_ids: list[str] = []
    pending = {cid for cid in indegree}
    while pending:
        ready = [cid for cid in pending if indegree[cid] == 0]
        if not ready:
            raise RuleConflict(_find_cycle(pending, edges))
        pick = min(ready, key=position.__getitem__)
        pending.remove(pick)
        ordered_ids.append(pick)
        for nxt in successors[pick]:
            indegree[nxt] -= 1

    by_id = {step.candidate_id: step for step in steps}
    return replace(plan, steps=tuple(by_id[cid] for cid in ordered_ids))


def _find_cycle(pending: set[str], edges: set[tuple[str, str]]) -> tuple[str, ...]:
    # Every stuck node keeps an incoming edge from another stuck node, so
    # walking predecessors must revisit one; the reversed trail is the cycle
    # in rule direction.
    node = min(pending)
    trail = [node]
    seen = {node}
    while True:
        node = min(b for b, a in edges if a == node and b in pending)
        if node in seen:
            loop = trail[trail.index(node):]
            return (node, *reversed(loop))
        seen.add(node)
        trail.append(node)
