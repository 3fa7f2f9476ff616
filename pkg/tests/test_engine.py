"""Navigation strategies, checked against exhaustive and greedy oracles that
re-implement selection with plain set arithmetic."""

from __future__ import annotations

import itertools
import random

import pytest

from conceptnav import (
    ConceptVector,
    Curriculum,
    LearnerProfile,
    PedagogicRule,
    PlannerConfig,
    PlanStatus,
    SelectionUnit,
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
from conceptnav.engine import PlanStep
from conceptnav.errors import (
    BudgetTooSmall,
    EmptyObjective,
    EmptyTemplate,
    NoRelations,
    NotFound,
    RuleConflict,
    UnknownType,
)
from conceptnav.store import EXAMPLE, EXPLANATION, Segment, PedagogicRole

from conftest import make_rd, make_store, topic, topics, vec


# -- oracles ---------------------------------------------------------------------
#
# Planner fixtures use source-only topic graphs with unit weights and a flat
# hierarchy, so strict matching degenerates to set membership and CP to
# |objective ∩ content| / |objective|. The oracles below work on those sets.


def as_set(csv: ConceptVector) -> frozenset[str]:
    return frozenset(entry.graph.source.type_name for entry in csv)


def oracle_greedy(known, objective, resources):
    """Re-run the selection loop with set arithmetic.

    ``resources``: id -> (content set, prereq set, time). Returns the chosen
    id sequence and the residual objective set.
    """
    objective = set(objective) - set(known)
    profile = set(known)
    chosen: list[str] = []
    while objective:
        scored = []
        for rid, (content, prereqs, time_value) in resources.items():
            if rid in chosen:
                continue
            cp = len(objective & content) / len(objective)
            if cp > 0:
                scored.append((-round(cp, 9), time_value, rid))
        if not scored:
            return chosen, objective
        scored.sort()
        rid = scored[0][2]
        chosen.append(rid)
        content, prereqs, _ = resources[rid]
        objective -= content
        profile |= content
        objective |= prereqs - profile
    return chosen, set()


def oracle_valid_plans(known, objective, resources, max_len=None):
    """All orderings of all subsets that cover the objective with
    prerequisites satisfied in order. Exhaustive; fixture scale only."""
    ids = list(resources)
    needed = set(objective) - set(known)
    plans = []
    limit = max_len or len(ids)
    for size in range(0, limit + 1):
        for subset in itertools.combinations(ids, size):
            for order in itertools.permutations(subset):
                acc = set(known)
                ok = True
                for rid in order:
                    content, prereqs, _ = resources[rid]
                    if not prereqs <= acc:
                        ok = False
                        break
                    acc |= content
                if ok and needed <= acc:
                    total = sum(resources[rid][2] for rid in order)
                    plans.append((list(order), total))
    return plans


def res_table(store):
    return {
        rd.id: (as_set(rd.content), as_set(rd.prerequisites), rd.time_value)
        for rd in store.list()
    }


def selection_sequence(plan):
    return [s.candidate_id for s in sorted(plan.steps, key=lambda s: s.selection_round)]


def presentation(plan):
    return [s.candidate_id for s in plan.steps]


# -- update_objective ---------------------------------------------------------------


def test_update_objective_full_knowledge(topic_ontology):
    profile = LearnerProfile(known=topics("A", "B"), objective=topics("A", "B"))
    assert update_objective(profile, topic_ontology).is_empty


def test_update_objective_no_knowledge(topic_ontology):
    profile = LearnerProfile(objective=topics("C"))
    assert update_objective(profile, topic_ontology) == topics("C")


def test_update_objective_partial(topic_ontology):
    profile = LearnerProfile(known=topics("A"), objective=topics("A", "B"))
    assert update_objective(profile, topic_ontology) == topics("B")


# -- backward navigation: the two-resource chain -----------------------------------------


@pytest.fixture()
def chain_store():
    r1 = make_rd("r1", topics("C"), prerequisites=topics("B"), time_value=10.0)
    r2 = make_rd("r2", topics("B"), prerequisites=topics("A"), time_value=10.0)
    return make_store(r1, r2)


def test_backward_chain_fixture(chain_store, topic_ontology):
    profile = LearnerProfile(known=topics("A"), objective=topics("C"), time_budget=30.0)
    plan = backward_navigate(profile, chain_store, topic_ontology)
    assert presentation(plan) == ["r2", "r1"]
    assert plan.status is PlanStatus.COMPLETE
    assert plan.total_time == 20.0
    assert plan.within_budget
    assert plan.residual_objective.is_empty
    assert plan.warnings == ()

    # Exhaustive confirmation: minimal valid plan, and ours is one of them.
    valid = oracle_valid_plans({"TOPIC_A"}, {"TOPIC_C"}, res_table(chain_store))
    assert (["r2", "r1"], 20.0) in valid
    assert min(total for _, total in valid) == 20.0


def test_backward_nothing_to_learn(chain_store, topic_ontology):
    profile = LearnerProfile(known=topics("A", "B", "C"), objective=topics("C"))
    plan = backward_navigate(profile, chain_store, topic_ontology)
    assert plan.steps == ()
    assert plan.status is PlanStatus.COMPLETE
    assert plan.within_budget


def test_backward_requires_objective(chain_store, topic_ontology):
    with pytest.raises(EmptyObjective):
        backward_navigate(LearnerProfile(), chain_store, topic_ontology)


def test_backward_starves_without_matches(topic_ontology):
    store = make_store(make_rd("r1", topics("Z")))
    profile = LearnerProfile(objective=topics("C"))
    plan = backward_navigate(profile, store, topic_ontology)
    assert plan.status is PlanStatus.STARVED
    assert plan.steps == ()
    assert plan.residual_objective == topics("C")


def test_backward_starves_midway(topic_ontology):
    # The prerequisite B has no covering resource.
    store = make_store(make_rd("r1", topics("C"), prerequisites=topics("B"), time_value=10.0))
    profile = LearnerProfile(objective=topics("C"))
    plan = backward_navigate(profile, store, topic_ontology)
    assert plan.status is PlanStatus.STARVED
    assert presentation(plan) == ["r1"]
    assert plan.residual_objective == topics("B")


def test_backward_tie_break_prefers_shorter(topic_ontology):
    slow = make_rd("slow", topics("C"), time_value=30.0)
    fast = make_rd("fast", topics("C"), time_value=10.0)
    store = make_store(slow, fast)
    profile = LearnerProfile(objective=topics("C"))
    for _ in range(100):
        plan = backward_navigate(profile, store, topic_ontology)
        assert presentation(plan) == ["fast"]


# -- backward navigation: backtracking ------------------------------------------------


@pytest.fixture()
def budget_store():
    # Greedy picks ra (5 min beats rb's 20 on the CP tie), which drags in a
    # 30-minute prerequisite; only [rb] fits a
    # 25-minute budget.
    ra = make_rd("ra", topics("C"), prerequisites=topics("B"), time_value=5.0)
    rb = make_rd("rb", topics("C"), time_value=20.0)
    rc = make_rd("rc", topics("B"), time_value=30.0)
    rd = make_rd("rd", topics("B"), time_value=35.0)
    return make_store(ra, rb, rc, rd)


def test_backtracking_strict_policy_returns_shortest_complete(budget_store, topic_ontology):
    profile = LearnerProfile(objective=topics("C"), time_budget=25.0)
    plan = backward_navigate(profile, budget_store, topic_ontology)
    # No alternate is strictly shorter at its round, so the literal policy
    # ends up proposing the cheapest complete path over budget.
    assert plan.status is PlanStatus.OVER_BUDGET
    assert not plan.within_budget
    assert plan.total_time == 35.0
    assert set(presentation(plan)) == {"ra", "rc"}
    assert presentation(plan) == ["rc", "ra"]  # prerequisite order


def test_backtracking_relaxed_policy_finds_budget_plan(budget_store, topic_ontology):
    profile = LearnerProfile(objective=topics("C"), time_budget=25.0)
    config = PlannerConfig(backtrack_relaxed=True)
    plan = backward_navigate(profile, budget_store, topic_ontology, config)
    assert plan.status is PlanStatus.COMPLETE
    assert plan.within_budget
    assert presentation(plan) == ["rb"]
    assert plan.total_time == 20.0

    # The exhaustive oracle agrees that [rb] is the unique within-budget plan.
    in_budget = [
        plan_ids
        for plan_ids, total in oracle_valid_plans(set(), {"TOPIC_C"}, res_table(budget_store))
        if total <= 25.0
    ]
    assert in_budget == [["rb"]]


def test_backtracking_strict_policy_uses_shorter_alternate(topic_ontology):
    # Same CP at round one; the 10-minute alternate is strictly shorter than
    # the chosen 8-minute one? No - craft it so greedy picks the cheap one
    # whose prerequisite blows the budget, and the alternate is *longer*,
    # qualifying only under relaxed. For the strict rule to fire, the round
    # choice must be the longer one: distinct CPs force the pick.
    lead = make_rd("lead", topics("C", "D"), prerequisites=topics("B"), time_value=30.0)
    alt = make_rd("alt", topics("C"), time_value=10.0)
    extra = make_rd("extra", topics("D"), time_value=10.0)
    helper = make_rd("helper", topics("B"), time_value=40.0)
    store = make_store(lead, alt, extra, helper)
    profile = LearnerProfile(objective=topics("C", "D"), time_budget=30.0)
    plan = backward_navigate(profile, store, topic_ontology)
    # Greedy: lead (cp 1.0, 30) -> helper (40): total 70, over budget.
    # Strict backtrack at round one: alt (10 < 30) qualifies; path
    # alt -> extra covers C and D in 20 <= 30.
    assert plan.status is PlanStatus.COMPLETE
    assert plan.within_budget
    assert set(presentation(plan)) == {"alt", "extra"}
    assert plan.total_time == 20.0


def test_backtracking_respects_max_backtracks(budget_store, topic_ontology):
    profile = LearnerProfile(objective=topics("C"), time_budget=25.0)
    config = PlannerConfig(backtrack_relaxed=True, max_backtracks=0)
    plan = backward_navigate(profile, budget_store, topic_ontology, config)
    assert plan.status is PlanStatus.OVER_BUDGET
    assert plan.total_time == 35.0


def test_backward_segment_unit(topic_ontology):
    rd = make_rd(
        "res",
        topics("A"),
        time_value=20.0,
        segments=[
            Segment("s1", topics("C"), time_value=5.0),
            Segment("s2", topics("B"), time_value=5.0),
        ],
    )
    store = make_store(rd)
    profile = LearnerProfile(objective=topics("C"))
    config = PlannerConfig(selection_unit=SelectionUnit.SEGMENT)
    plan = backward_navigate(profile, store, topic_ontology, config)
    assert presentation(plan) == ["res#s1"]
    assert plan.total_time == 5.0


# -- backward navigation: randomized corpora against the greedy oracle --------------------


def random_corpus(rng: random.Random):
    levels = [["A", "B", "C"], ["D", "E", "F"], ["G", "H", "J"], ["K", "L", "M"]]
    resources = {}
    n = rng.randint(2, 8)
    for i in range(n):
        level = rng.randint(0, 3)
        content = rng.sample(levels[level], rng.randint(1, 2))
        prereqs = (
            rng.sample(levels[level + 1], rng.randint(0, 2)) if level < 3 else []
        )
        time_value = float(rng.randint(5, 30))
        resources[f"m{i:02d}"] = (content, prereqs, time_value)
    known = rng.sample(levels[3], rng.randint(0, 2))
    objective = rng.sample(levels[0], rng.randint(1, 2))
    return resources, known, objective


def build_store(resources):
    return make_store(
        *(
            make_rd(rid, topics(*content), prerequisites=topics(*prereqs), time_value=t)
            for rid, (content, prereqs, t) in resources.items()
        )
    )


def check_plan_validity(plan, known, resources):
    acc = {f"TOPIC_{x}" for x in known}
    for step in plan.steps:
        content, prereqs, _ = resources[step.candidate_id]
        assert {f"TOPIC_{x}" for x in prereqs} <= acc, "prerequisite order violated"
        acc |= {f"TOPIC_{x}" for x in content}


def test_backward_matches_greedy_oracle_on_random_corpora(topic_ontology):
    rng = random.Random(20240811)
    for trial in range(200):
        resources, known, objective = random_corpus(rng)
        store = build_store(resources)
        profile = LearnerProfile(known=topics(*known), objective=topics(*objective))
        plan = backward_navigate(profile, store, topic_ontology)

        table = res_table(store)
        chosen, residual = oracle_greedy(
            {f"TOPIC_{x}" for x in known}, {f"TOPIC_{x}" for x in objective}, table
        )
        assert selection_sequence(plan) == chosen, f"trial {trial}"
        if residual:
            assert plan.status is PlanStatus.STARVED
            assert as_set(plan.residual_objective) == residual
        else:
            assert plan.status is PlanStatus.COMPLETE
            if not plan.warnings:
                check_plan_validity(plan, known, resources)
        # Determinism and no duplicate steps.
        again = backward_navigate(profile, store, topic_ontology)
        assert again == plan
        ids = presentation(plan)
        assert len(ids) == len(set(ids))


# -- presentation ordering ---------------------------------------------------------------


def test_order_by_prerequisites_example(chain_store, topic_ontology):
    steps = [
        PlanStep("r1", 1, 1.0, 10.0),
        PlanStep("r2", 2, 1.0, 10.0),
    ]
    ordered, warnings = order_by_prerequisites(steps, topics("A"), chain_store, topic_ontology)
    assert [s.candidate_id for s in ordered] == ["r2", "r1"]
    assert warnings == []


def test_order_single_step(topic_ontology):
    store = make_store(make_rd("solo", topics("A")))
    steps = [PlanStep("solo", 1, 1.0, 10.0)]
    ordered, warnings = order_by_prerequisites(steps, ConceptVector(), store, topic_ontology)
    assert [s.candidate_id for s in ordered] == ["solo"]
    assert warnings == []


def test_order_cycle_warns(topic_ontology):
    a = make_rd("a", topics("A"), prerequisites=topics("B"))
    b = make_rd("b", topics("B"), prerequisites=topics("A"))
    store = make_store(a, b)
    steps = [PlanStep("a", 1, 1.0, 10.0), PlanStep("b", 2, 1.0, 10.0)]
    ordered, warnings = order_by_prerequisites(steps, ConceptVector(), store, topic_ontology)
    assert {s.candidate_id for s in ordered} == {"a", "b"}
    # Deepest selection round first in the fallback output.
    assert [s.candidate_id for s in ordered] == ["b", "a"]
    assert len(warnings) == 1 and "CyclicPrerequisites" in warnings[0]


# -- conceptual expansion ------------------------------------------------------------------


@pytest.fixture()
def expansion_store():
    first = make_rd("first", topics("A"), relations=topics("Q"), time_value=10.0)
    about_q = make_rd("about-q", topics("Q"), relations=topics("R"), time_value=10.0)
    about_r = make_rd("about-r", topics("R"), time_value=10.0)
    return make_store(first, about_q, about_r)


def test_expansion_ranks_related(expansion_store, topic_ontology):
    ranked = conceptual_expansion("first", expansion_store, topic_ontology)
    assert [r.candidate_id for r in ranked] == ["about-q"]
    assert ranked[0].cp == 1.0


def test_expansion_never_lists_self(topic_ontology):
    selfish = make_rd("selfish", topics("Q"), relations=topics("Q"))
    other = make_rd("other", topics("Q"))
    store = make_store(selfish, other)
    ranked = conceptual_expansion("selfish", store, topic_ontology)
    assert [r.candidate_id for r in ranked] == ["other"]


def test_expansion_requires_relations(expansion_store, topic_ontology):
    with pytest.raises(NoRelations):
        conceptual_expansion("about-r", expansion_store, topic_ontology)
    with pytest.raises(NotFound):
        conceptual_expansion("ghost", expansion_store, topic_ontology)


def test_expansion_limit(topic_ontology):
    hub = make_rd("hub", topics("A"), relations=topics("Q"))
    spokes = [make_rd(f"spoke{i}", topics("Q"), time_value=float(i)) for i in range(5)]
    store = make_store(hub, *spokes)
    ranked = conceptual_expansion("hub", store, topic_ontology, limit=3)
    assert [r.candidate_id for r in ranked] == ["spoke0", "spoke1", "spoke2"]


# -- fill_time_gap ------------------------------------------------------------------------


def make_plan(store, ont, profile):
    return backward_navigate(profile, store, ont)


def test_fill_gap_no_remaining_budget(expansion_store, topic_ontology):
    profile = LearnerProfile(objective=topics("A"), time_budget=10.0)
    plan = make_plan(expansion_store, topic_ontology, profile)
    assert plan.total_time == 10.0
    assert fill_time_gap(plan, profile, expansion_store, topic_ontology) == plan


def test_fill_gap_appends_fitting_candidate(topic_ontology):
    start = make_rd("start", topics("A"), relations=topics("Q"), time_value=10.0)
    big = make_rd("big-q", topics("Q"), time_value=20.0)
    small = make_rd("small-q", topics("Q"), time_value=10.0)
    store = make_store(start, big, small)
    profile = LearnerProfile(objective=topics("A"), time_budget=25.0)
    plan = make_plan(store, topic_ontology, profile)
    filled = fill_time_gap(plan, profile, store, topic_ontology)
    # 15 minutes remain; the 20-minute candidate does not fit, the 10 does.
    assert presentation(filled) == ["start", "small-q"]
    assert filled.total_time == 20.0
    assert filled.within_budget


def test_fill_gap_stops_on_empty_expansion(topic_ontology):
    start = make_rd("start", topics("A"), relations=topics("Q"), time_value=10.0)
    store = make_store(start)
    profile = LearnerProfile(objective=topics("A"), time_budget=60.0)
    plan = make_plan(store, topic_ontology, profile)
    assert fill_time_gap(plan, profile, store, topic_ontology) == plan


def test_fill_gap_unbounded_is_noop(expansion_store, topic_ontology):
    profile = LearnerProfile(objective=topics("A"))
    plan = make_plan(expansion_store, topic_ontology, profile)
    assert fill_time_gap(plan, profile, expansion_store, topic_ontology) == plan


# -- forward navigation ---------------------------------------------------------------------


def test_forward_follows_chain(expansion_store, topic_ontology):
    plan = forward_navigate("first", expansion_store, topic_ontology, budget=100.0)
    assert presentation(plan) == ["first", "about-q", "about-r"]
    # about-r has no relations, so the walk starves rather than hitting budget.
    assert plan.status is PlanStatus.STARVED
    assert plan.within_budget


def test_forward_budget_boundary(expansion_store, topic_ontology):
    plan = forward_navigate("first", expansion_store, topic_ontology, budget=10.0)
    assert presentation(plan) == ["first"]
    assert plan.status is PlanStatus.COMPLETE  # stopped by the budget
    assert plan.total_time == 10.0


def test_forward_empty_relations_starves(topic_ontology):
    lonely = make_rd("lonely", topics("A"), time_value=5.0)
    store = make_store(lonely)
    plan = forward_navigate("lonely", store, topic_ontology, budget=50.0)
    assert presentation(plan) == ["lonely"]
    assert plan.status is PlanStatus.STARVED


def test_forward_budget_too_small(expansion_store, topic_ontology):
    with pytest.raises(BudgetTooSmall):
        forward_navigate("first", expansion_store, topic_ontology, budget=5.0)


def test_forward_unknown_start(expansion_store, topic_ontology):
    with pytest.raises(NotFound):
        forward_navigate("ghost", expansion_store, topic_ontology, budget=50.0)


# -- template instantiation -------------------------------------------------------------------


@pytest.fixture()
def template_store():
    return make_store(
        make_rd("pq", topics("P", "Q"), time_value=10.0),
        make_rd("q-only", topics("Q"), time_value=5.0),
        make_rd("r-only", topics("R"), time_value=5.0),
        make_rd("s-only", topics("S"), time_value=5.0),
        make_rd("w-only", topics("W"), time_value=5.0),
        make_rd("decoy", topics("V"), time_value=5.0),
    )


def test_template_in_order(template_store, topic_ontology):
    template = [topics("P", "Q"), topics("R")]
    profile = LearnerProfile()
    plan = template_instantiate(template, profile, template_store, topic_ontology)
    assert presentation(plan) == ["pq", "r-only"]
    assert plan.status is PlanStatus.COMPLETE


def test_template_skips_covered_segment(template_store, topic_ontology):
    # Segment two's content is inside segment one's selected resource.
    template = [topics("P", "Q"), topics("Q"), topics("R")]
    profile = LearnerProfile()
    plan = template_instantiate(template, profile, template_store, topic_ontology)
    assert presentation(plan) == ["pq", "r-only"]
    assert plan.status is PlanStatus.COMPLETE


def test_template_unmatchable_segment_starves(template_store, topic_ontology):
    template = [topics("Z"), topics("R")]
    profile = LearnerProfile()
    plan = template_instantiate(template, profile, template_store, topic_ontology)
    assert presentation(plan) == ["r-only"]
    assert plan.status is PlanStatus.STARVED
    assert as_set(plan.residual_objective) == {"TOPIC_Z"}


def test_template_respects_budget(template_store, topic_ontology):
    template = [topics("P"), topics("R")]
    profile = LearnerProfile(time_budget=12.0)
    plan = template_instantiate(template, profile, template_store, topic_ontology)
    # pq (10) is selected first; r-only (5) does not fit the remaining 2.
    assert presentation(plan) == ["pq"]
    assert plan.status is PlanStatus.STARVED
    assert as_set(plan.residual_objective) == {"TOPIC_R"}


def test_template_empty_raises(template_store, topic_ontology):
    with pytest.raises(EmptyTemplate):
        template_instantiate([], LearnerProfile(), template_store, topic_ontology)


# -- top-down decomposition ---------------------------------------------------------------------


@pytest.fixture(scope="module")
def music_ontology():
    from conceptnav import load_ontology
    from conftest import FIXTURES

    return load_ontology((FIXTURES / "music" / "ontologie.xml").read_text())


def test_top_down_depth_one(music_ontology):
    assert top_down_expand(["SONATA"], music_ontology, depth=1) == [
        "SONATA",
        "EXPOSITION",
        "DEVELOPMENT",
        "RECAPITULATION",
        "CODA",
    ]


def test_top_down_depth_zero(music_ontology):
    assert top_down_expand(["SONATA"], music_ontology, depth=0) == ["SONATA"]


def test_top_down_no_parts(music_ontology):
    assert top_down_expand(["CODA"], music_ontology, depth=2) == ["CODA"]


def test_top_down_unknown_concept(music_ontology):
    with pytest.raises(UnknownType):
        top_down_expand(["CONCERTO"], music_ontology, depth=1)


def test_top_down_nested():
    from conceptnav import load_ontology

    ont = load_ontology(
        """
        concept WHOLE
        concept PART_ONE
        concept PART_TWO
        concept DETAIL
        concept HAS_PART
        relation WHOLE HAS_PART PART_ONE
        relation WHOLE HAS_PART PART_TWO
        relation PART_ONE HAS_PART DETAIL
        """
    )
    assert top_down_expand(["WHOLE"], ont, depth=2) == [
        "WHOLE",
        "PART_ONE",
        "DETAIL",
        "PART_TWO",
    ]


# -- pedagogic rules -------------------------------------------------------------------------


RULE = PedagogicRule(before_role=EXPLANATION, after_role=EXAMPLE)


@pytest.fixture()
def music_plan_store():
    return make_store(
        make_rd("sonata-example", topics("A"), role=EXAMPLE, time_value=8.0),
        make_rd("sonata-explanation", topics("A"), role=EXPLANATION, time_value=12.0),
        make_rd("coda-example", topics("B"), role=EXAMPLE, time_value=6.0),
    )


def plan_of(*ids_times):
    steps = tuple(
        PlanStep(cid, i + 1, 1.0, t) for i, (cid, t) in enumerate(ids_times)
    )
    total = sum(t for _, t in ids_times)
    return __import__("conceptnav").CoursePlan(
        steps=steps,
        total_time=total,
        within_budget=True,
        residual_objective=ConceptVector(),
        status=PlanStatus.COMPLETE,
    )


def test_rule_reorders_same_topic(music_plan_store, topic_ontology):
    plan = plan_of(("sonata-example", 8.0), ("sonata-explanation", 12.0))
    out = apply_pedagogic_rules(plan, [RULE], music_plan_store, topic_ontology)
    assert presentation(out) == ["sonata-explanation", "sonata-example"]
    assert out.total_time == plan.total_time


def test_rule_keeps_satisfied_plan(music_plan_store, topic_ontology):
    plan = plan_of(("sonata-explanation", 12.0), ("sonata-example", 8.0))
    out = apply_pedagogic_rules(plan, [RULE], music_plan_store, topic_ontology)
    assert presentation(out) == ["sonata-explanation", "sonata-example"]


def test_rule_ignores_disjoint_topics(music_plan_store, topic_ontology):
    plan = plan_of(("coda-example", 6.0), ("sonata-explanation", 12.0))
    out = apply_pedagogic_rules(plan, [RULE], music_plan_store, topic_ontology)
    assert presentation(out) == ["coda-example", "sonata-explanation"]


def test_rule_cycle_raises(music_plan_store, topic_ontology):
    inverse = PedagogicRule(before_role=EXAMPLE, after_role=EXPLANATION)
    plan = plan_of(("sonata-example", 8.0), ("sonata-explanation", 12.0))
    with pytest.raises(RuleConflict) as exc:
        apply_pedagogic_rules(plan, [RULE, inverse], music_plan_store, topic_ontology)
    assert {"sonata-example", "sonata-explanation"} <= set(exc.value.cycle)


def test_rule_unroled_steps_unconstrained(topic_ontology):
    store = make_store(
        make_rd("bare", topics("A"), time_value=5.0),
        make_rd("sonata-example", topics("A"), role=EXAMPLE, time_value=8.0),
    )
    plan = plan_of(("bare", 5.0), ("sonata-example", 8.0))
    out = apply_pedagogic_rules(plan, [RULE], store, topic_ontology)
    assert presentation(out) == ["bare", "sonata-example"]


def test_rule_requires_distinct_roles():
    with pytest.raises(ValueError):
        PedagogicRule(before_role=EXAMPLE, after_role=EXAMPLE)


def test_rule_topic_includes_destination_types(topic_ontology):
    # Shared topic via destination slot, not source.
    ex = make_rd("ex", vec("[TOPIC_A]->[TOPIC_B]->[TOPIC_C]"), role=EXAMPLE)
    expl = make_rd("expl", vec("[TOPIC_D]->[TOPIC_B]->[TOPIC_C]"), role=EXPLANATION)
    store = make_store(ex, expl)
    plan = plan_of(("ex", 10.0), ("expl", 10.0))
    out = apply_pedagogic_rules(plan, [RULE], store, topic_ontology)
    assert presentation(out) == ["expl", "ex"]


# -- curriculum -------------------------------------------------------------------------------


def test_curriculum_objective_is_merge():
    curriculum = Curriculum(
        name="basics",
        contents=(
            ("first things", topics("A", "B")),
            ("more things", vec(("[TOPIC_B]", 0.5), ("[TOPIC_C]", 1.0))),
        ),
    )
    assert curriculum.objective() == vec(
        ("[TOPIC_A]", 1.0), ("[TOPIC_B]", 1.0), ("[TOPIC_C]", 1.0)
    )


def test_curriculum_needs_contents():
    with pytest.raises(ValueError):
        Curriculum(name="empty", contents=())


def test_profile_budget_must_be_positive():
    with pytest.raises(ValueError):
        LearnerProfile(time_budget=0.0)
