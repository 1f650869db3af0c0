"""The interactive game loop: levels, utterance -> candidates -> selection,
online learning, metrics, and the append-only journal format.

A session is a pure function of its config, curriculum, and the sequence of
submitted utterances and selections; replaying the exported journal with the
same config reproduces the model weights bit for bit.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, asdict
from typing import Callable

from .blocks import State, make_state, state_to_lists
from .enumeration import CandidateEntry, enumerate_beam, rank_candidates
from .features import VARIANTS, tokenize
from .learner import (
    DEFAULT_ADAGRAD_EPS,
    DEFAULT_ETA,
    Model,
    Scorer,
    adagrad_update,
    consistent_posterior,
    loss_and_gradient,
)
from .logic import LogicalForm
from .pragmatics import DEFAULT_ALPHA, DEFAULT_BETA, DEFAULT_EPSILON, PragmaticsState


class ProtocolError(Exception):
    """Submit/select called out of turn or with a bad index."""


class EmptyHistoryError(Exception):
    """Metrics requested before any labeled interaction."""


@dataclass(frozen=True)
class Level:
    """One task: transform the start state into the goal state."""

    id: str
    start: State
    goal: State

    def __post_init__(self):
        if len(self.start) != len(self.goal):
            raise ValueError(f"level {self.id}: start and goal stack counts differ")


@dataclass
class SessionConfig:
    variant: str = "full"
    beam_width: int = 100
    max_size: int = 8
    eta: float | None = None
    l2: float = 0.0
    adagrad_eps: float = DEFAULT_ADAGRAD_EPS
    pragmatics: bool = False
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    epsilon: float = DEFAULT_EPSILON
    seed: int = 0

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.beam_width is not None and self.beam_width < 1:
            raise ValueError("beam_width must be positive")
        if self.max_size < 2:
            raise ValueError("max_size must be at least 2 (the smallest action)")
        if self.eta is None:
            self.eta = DEFAULT_ETA[self.variant]

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "SessionConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config field: {sorted(unknown)[0]}")
        return cls(**data)


@dataclass
class InteractionRecord:
    seq: int
    level_id: str
    utterance: str
    start_state: State
    candidates: tuple[State, ...]
    selected_index: int | None
    predicted_top: State
    selected_denotation: State | None
    scrolls: int | None
    timestamp: float

    @property
    def labeled(self) -> bool:
        return self.selected_index is not None


@dataclass
class _Pending:
    utterance: str
    level_id: str
    state: State
    tokens: list[str]
    beam: list[LogicalForm]
    denotations: dict[LogicalForm, State]
    candidates: list[CandidateEntry]


class Session:
    """One human (or scripted teacher) playing through a curriculum."""

    def __init__(
        self,
        config: SessionConfig,
        curriculum: list[Level],
        session_id: str = "local",
        on_record: Callable[[InteractionRecord], None] | None = None,
    ):
        if not curriculum:
            raise ValueError("curriculum must contain at least one level")
        self.config = config
        self.curriculum = list(curriculum)
        self.session_id = session_id
        self.on_record = on_record
        self.model = Model.fresh(config.variant, eta=config.eta, l2=config.l2,
                                 adagrad_eps=config.adagrad_eps)
        self.prag = (
            PragmaticsState(alpha=config.alpha, beta=config.beta, epsilon=config.epsilon)
            if config.pragmatics
            else None
        )
        self.level_index = 0
        self.state: State = self.curriculum[0].start
        self.history: list[InteractionRecord] = []
        self._pending: _Pending | None = None

    @property
    def complete(self) -> bool:
        return self.level_index >= len(self.curriculum)

    @property
    def current_level(self) -> Level:
        if self.complete:
            raise ProtocolError("session complete: no current level")
        return self.curriculum[self.level_index]

    def submit_utterance(self, text: str) -> list[CandidateEntry]:
        """Parse, enumerate, and rank: no learning happens until a selection.

        Resubmitting without selecting abandons the previous pending list
        (logged unlabeled, excluded from metrics).
        """
        if self.complete:
            raise ProtocolError("session complete")
        if self._pending is not None:
            self._abandon_pending()
        tokens = tokenize(text)
        beam = enumerate_beam(tokens, self.model, self.config.max_size, self.config.beam_width)
        assert beam, "the beam always contains the size-2 action"
        candidates = rank_candidates(beam, self.state, self.model, tokens, self.prag)
        denotations = {z: e.denotation for e in candidates for z in e.support}
        self._pending = _Pending(
            utterance=text,
            level_id=self.current_level.id,
            state=self.state,
            tokens=tokens,
            beam=beam,
            denotations=denotations,
            candidates=candidates,
        )
        return candidates

    def _finalize(self, selected_index: int | None) -> InteractionRecord:
        pending = self._pending
        assert pending is not None
        selected = (
            pending.candidates[selected_index].denotation if selected_index is not None else None
        )
        record = InteractionRecord(
            seq=len(self.history),
            level_id=pending.level_id,
            utterance=pending.utterance,
            start_state=pending.state,
            candidates=tuple(e.denotation for e in pending.candidates),
            selected_index=selected_index,
            predicted_top=pending.candidates[0].denotation,
            selected_denotation=selected,
            scrolls=selected_index,
            timestamp=time.time(),
        )
        self.history.append(record)
        self._pending = None
        if self.on_record is not None:
            self.on_record(record)
        return record

    def _abandon_pending(self) -> None:
        self._finalize(None)

    def select_candidate(self, index: int) -> InteractionRecord:
        """Record the choice, update the model (and pragmatics counts), move
        the world to the chosen denotation, and advance the level on goal."""
        pending = self._pending
        if pending is None:
            raise ProtocolError("no pending candidate list to select from")
        if not 0 <= index < len(pending.candidates):
            raise ProtocolError(
                f"selection index {index} out of range 0..{len(pending.candidates) - 1}"
            )
        label = pending.candidates[index].denotation
        record = self._finalize(index)

        _, gradient = loss_and_gradient(
            self.model, pending.tokens, pending.state, label, pending.beam,
            denotations=pending.denotations,
        )
        adagrad_update(self.model, gradient)
        if self.prag is not None:
            literal_after = Scorer(self.model, pending.tokens).distribution(pending.beam)
            posterior = consistent_posterior(
                literal_after, pending.state, label, denotations=pending.denotations
            )
            self.prag.observe(literal_after, posterior)

        self.state = label
        if self.state == self.current_level.goal:
            self.level_index += 1
            if not self.complete:
                self.state = self.curriculum[self.level_index].start
        return record

    # -- journal -----------------------------------------------------------

    def export_log(self) -> str:
        """Line-delimited JSON: config + curriculum header, then one object
        per finalized interaction.  Round-trips bit-exactly."""
        header = {
            "type": "session",
            "session_id": self.session_id,
            "config": self.config.to_dict(),
            "curriculum": [
                {"id": lv.id, "start": state_to_lists(lv.start), "goal": state_to_lists(lv.goal)}
                for lv in self.curriculum
            ],
        }
        lines = [_dumps(header)]
        for r in self.history:
            lines.append(_dumps(record_to_dict(r, self.session_id)))
        return "\n".join(lines) + "\n"

    @classmethod
    def import_log(cls, text: str,
                   on_record: Callable[[InteractionRecord], None] | None = None) -> "Session":
        """Rebuild a session by replaying its own journal; recomputed
        candidate lists must match the journaled ones exactly."""
        header, records = parse_log(text)
        session = cls(
            SessionConfig.from_dict(header["config"]),
            [
                Level(lv["id"], make_state(lv["start"]), make_state(lv["goal"]))
                for lv in header["curriculum"]
            ],
            session_id=header["session_id"],
        )
        for rec in records:
            candidates = session.submit_utterance(rec["utterance"])
            got = [state_to_lists(e.denotation) for e in candidates]
            if got != rec["candidates"]:
                raise ValueError(
                    f"journal mismatch at seq {rec['seq']}: recomputed candidates differ"
                )
            if rec["selected_index"] is not None:
                session.select_candidate(rec["selected_index"])
        if session._pending is not None:
            session._abandon_pending()
        session.on_record = on_record
        return session


def record_to_dict(r: InteractionRecord, session_id: str) -> dict:
    return {
        "type": "interaction",
        "session_id": session_id,
        "seq": r.seq,
        "level_id": r.level_id,
        "utterance": r.utterance,
        "start_state": state_to_lists(r.start_state),
        "candidates": [state_to_lists(c) for c in r.candidates],
        "selected_index": r.selected_index,
    }


def parse_log(text: str) -> tuple[dict, list[dict]]:
    """Split a journal into its header and interaction dicts, validating
    line structure; raises ValueError naming the offending line number."""
    header: dict | None = None
    records: list[dict] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as err:
            raise ValueError(f"malformed log line {line_no}: {err}") from err
        if line_no == 1 or (header is None and obj.get("type") == "session"):
            if obj.get("type") != "session":
                raise ValueError(f"malformed log line {line_no}: missing session header")
            header = obj
            continue
        if obj.get("type") != "interaction":
            raise ValueError(f"malformed log line {line_no}: unexpected record type")
        for fld in ("seq", "utterance", "start_state", "candidates"):
            if fld not in obj:
                raise ValueError(f"malformed log line {line_no}: missing field {fld!r}")
        records.append(obj)
    if header is None:
        raise ValueError("malformed log line 1: empty log")
    return header, records


def _dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def labeled_records(history: list[InteractionRecord]) -> list[InteractionRecord]:
    return [r for r in history if r.labeled]


def online_accuracy(history: list[InteractionRecord]) -> float:
    """Fraction of labeled interactions whose pre-update top candidate was
    the one the player selected."""
    labeled = labeled_records(history)
    if not labeled:
        raise EmptyHistoryError("no labeled interactions")
    return sum(r.selected_denotation == r.predicted_top for r in labeled) / len(labeled)


def average_scrolls(history: list[InteractionRecord]) -> float:
    """Mean selected-candidate position (top of the list = 0 scrolls)."""
    labeled = labeled_records(history)
    if not labeled:
        raise EmptyHistoryError("no labeled interactions")
    return sum(r.scrolls for r in labeled) / len(labeled)
