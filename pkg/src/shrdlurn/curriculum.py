"""Task curricula and breadth-first plan search over actions.

A curriculum is 50 tasks in five tiers of ten, in increasing complexity:
early tiers need one action of at most 3 predicates, later tiers chain two
actions of up to 5 predicates.  Tasks are authored around target actions
dealt from a shuffled pool so a playthrough exercises a wide slice of the
action space: for every authored step, the state is rejection-sampled until
the plan search's first choice is exactly the dealt action (the search
scans actions in a fixed generation order, which would otherwise collapse
onto the few earliest actions).  Actions up to size 5 always survive beam
pruning at width >= 147, so a teacher planning over this repertoire can
always point at the denotation it meant.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .blocks import COLORS, State
from .enumeration import generate_acts
from .logic import LogicalForm, execute
from .session import Level

PLAN_ACT_SIZE = 5
# the size-5 Act cell holds 147 forms; narrower beams could prune plan acts
PLAN_BEAM_WIDTH = 160
TIERS = 5
TASKS_PER_TIER = 10

# (number of actions, action size range) per tier
TIER_SHAPE: dict[int, tuple[int, tuple[int, int]]] = {
    1: (2, (2, 3)),
    2: (2, (3, 4)),
    3: (1, (4, 5)),
    4: (2, (3, 4)),
    5: (2, (4, 5)),
}

_plan_cache: dict[tuple[State, State, int], tuple[LogicalForm, ...]] = {}
_fail_cache: dict[tuple[State, State, int], int] = {}


@lru_cache(maxsize=None)
def plan_repertoire(max_act_size: int = PLAN_ACT_SIZE) -> tuple[LogicalForm, ...]:
    """The actions the plan search scans, in a fixed shuffled order.

    Scanning in canonical order would make every tie-break land on the same
    few alphabetically-early actions; a fixed arbitrary order spreads plan
    choices across the action space while staying fully deterministic."""
    acts = list(generate_acts(max_act_size))
    random.Random(8971).shuffle(acts)
    return tuple(acts)


def search_plan(
    start: State,
    goal: State,
    max_act_size: int = PLAN_ACT_SIZE,
    max_depth: int = 4,
) -> tuple[LogicalForm, ...] | None:
    """Shortest action sequence from start to goal, or None within the depth
    bound.  Deterministic: actions are tried in generation order.  Found
    plans (including their suffixes) are memoized."""
    if start == goal:
        return ()
    key = (start, goal, max_act_size)
    cached = _plan_cache.get(key)
    if cached is not None:
        return cached if len(cached) <= max_depth else None
    if _fail_cache.get(key, 0) >= max_depth:
        return None
    acts = plan_repertoire(max_act_size)
    # parent[state] = (previous state, action that got here)
    parent: dict[State, tuple[State, LogicalForm] | None] = {start: None}
    frontier = [start]
    for _ in range(max_depth):
        next_frontier: list[State] = []
        for state in frontier:
            for act in acts:
                successor = execute(act, state)
                if successor in parent:
                    continue
                parent[successor] = (state, act)
                if successor == goal:
                    plan: list[LogicalForm] = []
                    node = successor
                    while node != start:
                        prev, step = parent[node]  # type: ignore[misc]
                        plan.append(step)
                        node = prev
                    plan.reverse()
                    states = [start]
                    for step in plan:
                        states.append(execute(step, states[-1]))
                    for i in range(len(plan)):
                        _plan_cache[(states[i], goal, max_act_size)] = tuple(plan[i:])
                    return tuple(plan)
                next_frontier.append(successor)
        frontier = next_frontier
    _fail_cache[key] = max(max_depth, _fail_cache.get(key, 0))
    return None


def validate_level(level: Level, max_depth: int = 4) -> tuple[LogicalForm, ...]:
    """Reachability oracle for authored tasks; raises on authoring bugs."""
    plan = search_plan(level.start, level.goal, max_depth=max_depth)
    if plan is None:
        raise ValueError(f"level {level.id}: goal unreachable within {max_depth} actions")
    return plan


_options_cache: dict[tuple[State, State, int], tuple[LogicalForm, ...]] = {}


def first_step_options(
    start: State,
    goal: State,
    max_act_size: int = PLAN_ACT_SIZE,
) -> tuple[LogicalForm, ...]:
    """Every action that begins some shortest plan from start to goal,
    for plans of one or two steps (deeper goals fall back to search_plan).

    Offering all of them lets a teacher vary its wording instead of funneling
    every equivalent goal through the same action."""
    key = (start, goal, max_act_size)
    cached = _options_cache.get(key)
    if cached is not None:
        return cached
    acts = plan_repertoire(max_act_size)
    direct = tuple(a for a in acts if execute(a, start) == goal)
    if direct:
        _options_cache[key] = direct
        return direct
    finishable: dict[State, bool] = {}
    options = []
    for a in acts:
        mid = execute(a, start)
        if mid == start:
            continue
        done = finishable.get(mid)
        if done is None:
            done = any(execute(b, mid) == goal for b in acts)
            finishable[mid] = done
        if done:
            options.append(a)
    result = tuple(options)
    _options_cache[key] = result
    return result


def first_choice_is(act: LogicalForm, state: State, max_act_size: int = PLAN_ACT_SIZE) -> bool:
    """True when a plan search from state to execute(act, state) would pick
    exactly this action, i.e. no earlier-generated action reaches the same
    successor."""
    target = execute(act, state)
    if target == state:
        return False
    for candidate in plan_repertoire(max_act_size):
        if candidate == act:
            return True
        if execute(candidate, state) == target:
            return False
    return False


def _has_one_step(start: State, goal: State, max_act_size: int = PLAN_ACT_SIZE) -> bool:
    return any(execute(a, start) == goal for a in plan_repertoire(max_act_size))


def _random_state(rng: random.Random, stacks: int) -> State:
    out = []
    for _ in range(stacks):
        height = rng.choice((0, 1, 1, 2, 2, 3))
        out.append(tuple(rng.choice(COLORS) for _ in range(height)))
    state = tuple(out)
    if all(not s for s in state):  # fully empty boards make dull tasks
        return _random_state(rng, stacks)
    return state


class _Dealer:
    """Deals actions of a size range from a shuffled pool, reshuffling when
    exhausted, so consecutive tasks exercise different parts of the space."""

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.pools: dict[tuple[int, int], list[LogicalForm]] = {}

    def deal(self, size_range: tuple[int, int]) -> LogicalForm:
        pool = self.pools.get(size_range)
        if not pool:
            lo, hi = size_range
            pool = [a for a in generate_acts(PLAN_ACT_SIZE) if lo <= a.size <= hi]
            self.rng.shuffle(pool)
            self.pools[size_range] = pool
        return pool.pop()


def _author_task(rng: random.Random, dealer: _Dealer, tier: int) -> tuple[State, State]:
    steps, size_range = TIER_SHAPE[tier]
    while True:
        stacks = rng.choice((3, 4, 4, 5)) if tier >= 3 else rng.choice((3, 3, 4))
        start = _random_state(rng, stacks)
        state = start
        ok = True
        for _ in range(steps):
            placed = False
            for _attempt in range(40):
                act = dealer.deal(size_range)
                successor = execute(act, state)
                if successor != start and first_choice_is(act, state):
                    state = successor
                    placed = True
                    break
            if not placed:
                ok = False
                break
        if not ok or state == start:
            continue
        if steps > 1 and _has_one_step(start, state):
            continue  # the whole task must genuinely need several actions
        return start, state


@lru_cache(maxsize=None)
def _authored(seed: int) -> tuple[Level, ...]:
    rng = random.Random(seed)
    dealer = _Dealer(rng)
    levels = []
    for tier in range(1, TIERS + 1):
        for k in range(1, TASKS_PER_TIER + 1):
            start, goal = _author_task(rng, dealer, tier)
            levels.append(Level(id=f"T{tier}.{k:02d}", start=start, goal=goal))
    return tuple(levels)


def default_curriculum(seed: int = 2016) -> list[Level]:
    """The stock 50-task curriculum: 5 tiers of 10 tasks each."""
    return list(_authored(seed))


def tier_of(level: Level) -> int:
    return int(level.id.split(".")[0][1:])
