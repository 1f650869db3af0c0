"""Curriculum authoring, plan search, and the teacher's step options."""

import pytest

from shrdlurn.blocks import make_state
from shrdlurn.curriculum import (
    PLAN_ACT_SIZE,
    TIER_SHAPE,
    default_curriculum,
    first_step_options,
    plan_repertoire,
    search_plan,
    tier_of,
    validate_level,
)
from shrdlurn.logic import execute, parse_lf


class TestSearchPlan:
    def test_trivial(self):
        s = make_state([["red"]])
        assert search_plan(s, s) == ()

    def test_single_step(self):
        s = make_state([["red"], ["cyan"]])
        goal = execute(parse_lf("add(all(),brown)"), s)
        plan = search_plan(s, goal)
        assert len(plan) == 1
        assert execute(plan[0], s) == goal

    def test_two_steps(self):
        s = make_state([["red"], ["cyan"], ["red"]])
        mid = execute(parse_lf("remove(with(red))"), s)
        goal = execute(parse_lf("add(with(cyan),orange)"), mid)
        plan = search_plan(s, goal)
        state = s
        for act in plan:
            state = execute(act, state)
        assert state == goal
        assert len(plan) <= 2

    def test_unreachable_within_depth(self):
        s = make_state([["red"]])
        far = make_state([["red", "red", "red", "red", "red", "red", "red"]])
        assert search_plan(s, far, max_depth=2) is None

    def test_deterministic(self):
        s = make_state([["red"], [], ["cyan"]])
        goal = execute(parse_lf("remove(rightmost(all()))"), s)
        assert search_plan(s, goal) == search_plan(s, goal)


class TestFirstStepOptions:
    def test_direct_options_all_reach_goal(self):
        s = make_state([["red"], ["cyan"], ["red"]])
        goal = execute(parse_lf("remove(with(red))"), s)
        options = first_step_options(s, goal)
        assert options
        for act in options:
            assert execute(act, s) == goal

    def test_two_step_options_can_finish(self):
        s = make_state([["red"], ["cyan"]])
        mid = execute(parse_lf("add(with(red),brown)"), s)
        goal = execute(parse_lf("add(with(cyan),orange)"), mid)
        if goal != s and not any(
            execute(a, s) == goal for a in plan_repertoire(PLAN_ACT_SIZE)
        ):
            options = first_step_options(s, goal)
            assert options
            for act in options[:10]:
                nxt = execute(act, s)
                assert any(
                    execute(b, nxt) == goal for b in plan_repertoire(PLAN_ACT_SIZE)
                )


class TestDefaultCurriculum:
    def test_shape(self):
        levels = default_curriculum()
        assert len(levels) == 50
        tiers = [tier_of(lv) for lv in levels]
        for t in range(1, 6):
            assert tiers.count(t) == 10

    def test_every_level_reachable(self):
        for level in default_curriculum():
            plan = validate_level(level)
            assert 1 <= len(plan) <= TIER_SHAPE[tier_of(level)][0]
            for act in plan:
                assert act.size <= PLAN_ACT_SIZE

    def test_early_levels_need_only_small_actions(self):
        for level in default_curriculum():
            if tier_of(level) == 1:
                plan = validate_level(level)
                assert all(act.size <= 3 for act in plan)

    def test_stack_counts_fixed_per_level(self):
        for level in default_curriculum():
            assert len(level.start) == len(level.goal)

    def test_goal_differs_from_start(self):
        for level in default_curriculum():
            assert level.start != level.goal

    def test_deterministic_authoring(self):
        assert default_curriculum() == default_curriculum()
        assert default_curriculum(seed=2017) != default_curriculum(seed=2016)


def test_repertoire_is_all_acts_in_fixed_order():
    acts = plan_repertoire(PLAN_ACT_SIZE)
    assert len(acts) == len(set(acts))
    assert {a.canonical for a in acts} == {
        a.canonical for a in plan_repertoire(PLAN_ACT_SIZE)
    }
    assert all(2 <= a.size <= PLAN_ACT_SIZE for a in acts)
    assert plan_repertoire(PLAN_ACT_SIZE) == plan_repertoire(PLAN_ACT_SIZE)
