"""Replay logs and synthetic-teacher games through model variants and
report online accuracy and scroll counts per setting.

The synthetic teacher stands in for a human player: it plans a correct next
action, renders it through its own lexicon, submits the utterance, and
always selects the correct denotation (honest labeling).  rho controls how
consistently it uses its canonical words; rho=1 is a fully deterministic
language.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field

from .blocks import make_state
from .curriculum import (
    PLAN_ACT_SIZE,
    PLAN_BEAM_WIDTH,
    default_curriculum,
    first_step_options,
    plan_repertoire,
    search_plan,
    tier_of,
)
from .enumeration import enumerate_beam, rank_candidates
from .features import tokenize
from .learner import (
    Model,
    Scorer,
    UnreachableLabelError,
    adagrad_update,
    consistent_posterior,
    dump_model,
    loss_and_gradient,
)
from .logic import LogicalForm, execute
from .pragmatics import PragmaticsState
from .session import Level, Session, SessionConfig, online_accuracy, average_scrolls, parse_log

# canonical token first, then synonyms; empty strings render as nothing
DEFAULT_LEXICON: dict[str, tuple[str, ...]] = {
    "remove": ("remove", "delete"),
    "add": ("add", "put"),
    "all": ("everything", "all"),
    "with": ("",),
    "not": ("except", "but"),
    "leftmost": ("leftmost", "first"),
    "rightmost": ("rightmost", "last"),
    "cyan": ("cyan", "blue"),
    "brown": ("brown", "tan"),
    "red": ("red", "scarlet"),
    "orange": ("orange", "amber"),
}

GRID_ALL: tuple[tuple[str, bool], ...] = (
    ("memorize", False),
    ("memorize", True),
    ("half", False),
    ("half", True),
    ("full", False),
    ("full", True),
)


@dataclass
class TeacherConfig:
    rho: float = 1.0
    lexicon: dict[str, tuple[str, ...]] = field(default_factory=lambda: dict(DEFAULT_LEXICON))
    word_order: str = "head-first"  # or "head-last": arguments before predicates

    def __post_init__(self):
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError("rho must lie in [0, 1]")
        if self.word_order not in ("head-first", "head-last"):
            raise ValueError(f"unknown word order {self.word_order!r}")


class SyntheticTeacher:
    """Scripted player with a consistent (or deliberately noisy) language."""

    def __init__(self, config: TeacherConfig, seed: int = 0):
        self.config = config
        self.rng = random.Random(seed)
        self.used: dict[str, int] = {}

    def _word(self, head: str) -> str:
        options = self.config.lexicon[head]
        if len(options) == 1 or self.rng.random() < self.config.rho:
            return options[0]
        return self.rng.choice(options[1:])

    def render(self, form: LogicalForm) -> str:
        nodes = list(form.nodes())
        if self.config.word_order == "head-last":
            nodes.reverse()
        words = [w for w in (self._word(node.head) for node in nodes) if w]
        return " ".join(words)

    def next_action(self, state, goal) -> LogicalForm:
        """A correct next step toward the goal.  Among the first steps of
        shortest plans, prefer the action taught least so far: a teacher
        keeps its language varied rather than leaning on one phrasing."""
        options = first_step_options(state, goal, PLAN_ACT_SIZE)
        if not options:
            plan = search_plan(state, goal, PLAN_ACT_SIZE)
            if plan is None:
                raise RuntimeError("teacher cannot reach the goal state")
            return plan[0]
        order = {a: i for i, a in enumerate(plan_repertoire(PLAN_ACT_SIZE))}
        act = min(options, key=lambda a: (self.used.get(a.canonical, 0), order[a]))
        self.used[act.canonical] = self.used.get(act.canonical, 0) + 1
        return act

    def play(self, session: Session, max_interactions: int) -> int:
        """Drive a session until the curriculum ends or the budget is spent.
        Returns the number of labeled interactions."""
        cfg = session.config
        if cfg.max_size < PLAN_ACT_SIZE or (
            cfg.beam_width is not None and cfg.beam_width < PLAN_BEAM_WIDTH
        ):
            raise ValueError(
                "teacher plans need max_size >= "
                f"{PLAN_ACT_SIZE} and beam_width >= {PLAN_BEAM_WIDTH} so intended "
                "actions cannot be pruned off the beam"
            )
        done = 0
        while not session.complete and done < max_interactions:
            goal = session.current_level.goal
            act = self.next_action(session.state, goal)
            intended = execute(act, session.state)
            candidates = session.submit_utterance(self.render(act))
            index = next(
                (i for i, e in enumerate(candidates) if e.denotation == intended), None
            )
            if index is None:
                # Cannot happen while the plan repertoire fits inside the
                # never-pruned small beam cells; guard anyway.
                raise RuntimeError("intended denotation missing from candidate list")
            session.select_candidate(index)
            done += 1
        return done


@dataclass
class ReportRow:
    variant: str
    pragmatics: bool
    online_accuracy: float
    average_scrolls: float
    interactions: int
    wall_time: float
    seeds: int = 1
    per_seed_accuracy: list[float] = field(default_factory=list)
    final_model_dump: str | None = None

    def label(self) -> str:
        return self.variant + (" + prag" if self.pragmatics else "")

    def to_dict(self) -> dict:
        return {
            "variant": self.variant,
            "pragmatics": self.pragmatics,
            "online_accuracy": self.online_accuracy,
            "average_scrolls": self.average_scrolls,
            "interactions": self.interactions,
            "wall_time": self.wall_time,
            "seeds": self.seeds,
            "per_seed_accuracy": self.per_seed_accuracy,
        }


@dataclass
class Report:
    rows: list[ReportRow]

    def row(self, variant: str, pragmatics: bool) -> ReportRow:
        for r in self.rows:
            if r.variant == variant and r.pragmatics == pragmatics:
                return r
        raise KeyError(f"no report row for {variant} prag={pragmatics}")

    def table(self) -> str:
        header = ("setting", "accuracy", "scrolls", "examples", "seeds", "secs")
        body = [
            (
                r.label(),
                f"{r.online_accuracy:.3f}",
                f"{r.average_scrolls:.2f}",
                str(r.interactions),
                str(r.seeds),
                f"{r.wall_time:.1f}",
            )
            for r in self.rows
        ]
        widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
        fmt = "  ".join("{:<%d}" % w for w in widths)
        lines = [fmt.format(*header), fmt.format(*("-" * w for w in widths))]
        lines += [fmt.format(*row) for row in body]
        return "\n".join(lines)

    def machine_lines(self) -> str:
        return "\n".join(json.dumps(r.to_dict(), sort_keys=True) for r in self.rows)


def _shuffled(levels: list[Level], rng: random.Random, tag: str) -> list[Level]:
    """Shuffle task order within each tier so different seeds see different
    interaction orders; tiers stay in curriculum order."""
    out: list[Level] = []
    by_tier: dict[int, list[Level]] = {}
    for lv in levels:
        by_tier.setdefault(tier_of(lv), []).append(lv)
    for tier in sorted(by_tier):
        group = list(by_tier[tier])
        rng.shuffle(group)
        out.extend(Level(id=f"{lv.id}/{tag}", start=lv.start, goal=lv.goal) for lv in group)
    return out


def _session_levels(base: list[Level] | None, seed: int, interactions: int) -> list[Level]:
    """Enough curriculum to fill the interaction budget.  With the default
    curriculum, extra batches are authored fresh (new tasks, same tiers)
    rather than repeating tasks the model has already seen."""
    rng = random.Random(1000 + seed)
    if base is not None:
        levels = _shuffled(base, rng, "b0")
        batch = 1
        while sum(len(search_plan(lv.start, lv.goal) or ()) for lv in levels) < interactions:
            levels += _shuffled(base, rng, f"b{batch}")
            batch += 1
        return levels
    levels = []
    batch = 0
    while sum(len(search_plan(lv.start, lv.goal) or ()) for lv in levels) < interactions:
        batch_levels = default_curriculum(seed=2016 + batch)
        if batch > 0:
            # later batches skip the basics tier: its tiny action pool would
            # only replay utterances the model has already been taught
            batch_levels = [lv for lv in batch_levels if tier_of(lv) >= 2]
        levels += _shuffled(batch_levels, rng, f"b{batch}")
        batch += 1
    return levels


def synthetic_session_config(variant: str, pragmatics: bool, seed: int,
                             **overrides) -> SessionConfig:
    cfg = dict(variant=variant, pragmatics=pragmatics, seed=seed,
               max_size=PLAN_ACT_SIZE, beam_width=PLAN_BEAM_WIDTH)
    cfg.update(overrides)
    return SessionConfig(**cfg)


def run_synthetic(
    teacher: TeacherConfig,
    curriculum: list[Level] | None = None,
    grid: tuple[tuple[str, bool], ...] = GRID_ALL,
    seeds: int = 5,
    interactions: int = 200,
    config_overrides: dict | None = None,
) -> Report:
    """Play the grid of (variant, pragmatics) settings with the synthetic
    teacher, each setting averaged over independent seeds."""
    rows = []
    for variant, prag in grid:
        accs, scrolls_list, totals = [], [], []
        t0 = time.monotonic()
        for seed in range(seeds):
            levels = _session_levels(curriculum, seed, interactions)
            session = Session(
                synthetic_session_config(variant, prag, seed, **(config_overrides or {})),
                levels,
                session_id=f"synth-{variant}-{prag}-{seed}",
            )
            player = SyntheticTeacher(teacher, seed=seed)
            done = player.play(session, interactions)
            accs.append(online_accuracy(session.history))
            scrolls_list.append(average_scrolls(session.history))
            totals.append(done)
        rows.append(
            ReportRow(
                variant=variant,
                pragmatics=prag,
                online_accuracy=sum(accs) / len(accs),
                average_scrolls=sum(scrolls_list) / len(scrolls_list),
                interactions=sum(totals),
                wall_time=time.monotonic() - t0,
                seeds=seeds,
                per_seed_accuracy=accs,
            )
        )
    return Report(rows)


def replay(log_text: str, config: SessionConfig) -> ReportRow:
    """Stream a journal through a fresh model in a single pass: predict,
    then update, per labeled record.  The journaled candidate lists supply
    the labels; the replayed model builds its own beams."""
    _, records = parse_log(log_text)
    model = Model.fresh(config.variant, eta=config.eta, l2=config.l2,
                        adagrad_eps=config.adagrad_eps)
    prag = (
        PragmaticsState(alpha=config.alpha, beta=config.beta, epsilon=config.epsilon)
        if config.pragmatics
        else None
    )
    correct = labeled = 0
    scroll_sum = scroll_n = 0
    t0 = time.monotonic()
    for rec in records:
        if rec["selected_index"] is None:
            continue
        labeled += 1
        tokens = tokenize(rec["utterance"])
        state = make_state(rec["start_state"])
        label = make_state(rec["candidates"][rec["selected_index"]])
        beam = enumerate_beam(tokens, model, config.max_size, config.beam_width)
        candidates = rank_candidates(beam, state, model, tokens, prag)
        if candidates[0].denotation == label:
            correct += 1
        position = next(
            (i for i, e in enumerate(candidates) if e.denotation == label), None
        )
        if position is not None:
            scroll_sum += position
            scroll_n += 1
        try:
            denotations = {z: e.denotation for e in candidates for z in e.support}
            _, gradient = loss_and_gradient(model, tokens, state, label, beam,
                                            denotations=denotations)
        except UnreachableLabelError:
            continue  # prediction already counted; no parameters to update
        adagrad_update(model, gradient)
        if prag is not None:
            literal_after = Scorer(model, tokens).distribution(beam)
            posterior = consistent_posterior(literal_after, state, label,
                                             denotations=denotations)
            prag.observe(literal_after, posterior)
    if labeled == 0:
        raise ValueError("log contains no labeled interactions")
    return ReportRow(
        variant=config.variant,
        pragmatics=config.pragmatics,
        online_accuracy=correct / labeled,
        average_scrolls=scroll_sum / scroll_n if scroll_n else float("nan"),
        interactions=labeled,
        wall_time=time.monotonic() - t0,
        final_model_dump=dump_model(model),
    )
