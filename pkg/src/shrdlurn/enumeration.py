"""Candidate generation: size-incremental beam search over the grammar,
plus denotation grouping and ranking.

Forms are built from smallest to largest; each (size, category) cell keeps
the beam_width best forms by model score, ties broken by canonical text so
runs are reproducible.  The final beam is the union of all Act cells.
Candidate denotations are ranked by the maximum probability of any form
that produced them (summing instead would drown everything under the
many-ways-to-empty-every-stack outcome).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING

from .blocks import COLORS, State
from .learner import Model, Scorer
from .logic import ACT, COLOR, SET, LogicalForm, execute, lf

if TYPE_CHECKING:
    from .pragmatics import PragmaticsState


@dataclass(frozen=True)
class CandidateEntry:
    """One distinct denotation with the forms that produced it."""

    denotation: State
    best_lf: LogicalForm
    max_prob: float
    support: tuple[LogicalForm, ...]


def enumerate_beam(
    tokens: list[str],
    model: Model,
    max_size: int = 8,
    beam_width: int | None = 100,
) -> list[LogicalForm]:
    """All Act forms surviving the per-(size, category) beams, sizes 2..max_size.

    beam_width=None disables pruning.  Cells are kept per category as well
    as per size so Act forms cannot starve the Set subforms needed later.
    """
    if max_size < 2:
        raise ValueError("max_size must be at least 2 (the smallest Act)")
    scorer = Scorer(model, tokens)

    def prune(forms: list[LogicalForm]) -> list[LogicalForm]:
        ranked = sorted(forms, key=lambda z: (-scorer.score(z), z.canonical))
        return ranked if beam_width is None else ranked[:beam_width]

    cells: dict[tuple[int, str], list[LogicalForm]] = {}
    cells[(1, SET)] = prune([lf("all")])
    cells[(1, COLOR)] = prune([lf(c) for c in COLORS])
    cells[(1, ACT)] = []

    for n in range(2, max_size + 1):
        sets: list[LogicalForm] = []
        for c in cells.get((n - 1, COLOR), ()):
            sets.append(lf("with", c))
        for s in cells.get((n - 1, SET), ()):
            sets.append(lf("not", s))
            sets.append(lf("leftmost", s))
            sets.append(lf("rightmost", s))
        acts: list[LogicalForm] = []
        for s in cells.get((n - 1, SET), ()):
            acts.append(lf("remove", s))
        for k in range(1, n - 1):
            for s in cells.get((k, SET), ()):
                for c in cells.get((n - 1 - k, COLOR), ()):
                    acts.append(lf("add", s, c))
        cells[(n, SET)] = prune(sets)
        cells[(n, COLOR)] = []
        cells[(n, ACT)] = prune(acts)

    beam: list[LogicalForm] = []
    for n in range(2, max_size + 1):
        beam.extend(cells[(n, ACT)])
    return beam


def dump_beams(
    tokens: list[str],
    model: Model,
    max_size: int = 8,
    beam_width: int | None = 100,
) -> str:
    """Per-(size, category) cell contents with scores, for debugging."""
    scorer = Scorer(model, tokens)
    beam = enumerate_beam(tokens, model, max_size, beam_width)
    by_size: dict[int, list[LogicalForm]] = {}
    for z in beam:
        by_size.setdefault(z.size, []).append(z)
    lines = []
    for size in sorted(by_size):
        lines.append(f"[size {size}] {len(by_size[size])} act forms")
        for z in by_size[size]:
            lines.append(f"  {scorer.score(z):+.4f}  {z.canonical}")
    return "\n".join(lines) + "\n"


@lru_cache(maxsize=None)
def _all_acts(max_size: int) -> tuple[LogicalForm, ...]:
    return tuple(enumerate_beam([], Model.fresh("full"), max_size, beam_width=None))


def generate_acts(max_size: int = 4) -> tuple[LogicalForm, ...]:
    """Every well-typed Act up to max_size, in deterministic order (cached)."""
    return _all_acts(max_size)


def rank_candidates(
    forms: list[LogicalForm],
    state: State,
    model: Model,
    tokens: list[str],
    prag: "PragmaticsState | None" = None,
) -> list[CandidateEntry]:
    """Execute every beam form, group by denotation, rank groups by their
    best form's probability (pragmatic listener probability when a
    pragmatics state is supplied; it never feeds back into learning)."""
    probs = Scorer(model, tokens).distribution(forms)
    if prag is not None:
        weights = prag.listener_weights(probs)
        total = sum(weights.values())
        probs = {z: w / total for z, w in weights.items()}

    groups: dict[State, list[LogicalForm]] = {}
    for z in forms:
        groups.setdefault(execute(z, state), []).append(z)

    entries = []
    for denotation, members in groups.items():
        members.sort(key=lambda z: (-probs[z], z.canonical))
        best = members[0]
        entries.append(
            CandidateEntry(
                denotation=denotation,
                best_lf=best,
                max_prob=probs[best],
                support=tuple(members),
            )
        )
    entries.sort(key=lambda e: (-e.max_prob, e.best_lf.canonical))
    return entries
