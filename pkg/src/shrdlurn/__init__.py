"""SHRDLURN: teach the computer a language, one block at a time.

A human and the computer share a board of block stacks.  The human types an
utterance; the computer enumerates candidate actions, executes them, and
shows the resulting states ranked by its current model (optionally through
a pragmatic listener); the human picks the intended one and the model takes
an online gradient step.
"""

from .blocks import COLORS, State, make_state, state_to_lists
from .enumeration import (
    CandidateEntry,
    dump_beams,
    enumerate_beam,
    generate_acts,
    rank_candidates,
)
from .features import phi, tokenize, tree_grams, utterance_features
from .learner import (
    Model,
    UnreachableLabelError,
    adagrad_update,
    distribution,
    dump_model,
    load_model,
    loss_and_gradient,
    score,
)
from .logic import LogicalForm, canonical, eval_set, execute, lf, lf_size, parse_lf
from .pragmatics import PragmaticsState, listener_matrix, speaker_matrix
from .session import (
    InteractionRecord,
    Level,
    Session,
    SessionConfig,
    average_scrolls,
    online_accuracy,
)

__version__ = "0.1.0"

__all__ = [
    "COLORS",
    "CandidateEntry",
    "InteractionRecord",
    "Level",
    "LogicalForm",
    "Model",
    "PragmaticsState",
    "Session",
    "SessionConfig",
    "State",
    "UnreachableLabelError",
    "adagrad_update",
    "average_scrolls",
    "canonical",
    "distribution",
    "dump_beams",
    "dump_model",
    "enumerate_beam",
    "eval_set",
    "execute",
    "generate_acts",
    "lf",
    "lf_size",
    "listener_matrix",
    "load_model",
    "loss_and_gradient",
    "make_state",
    "online_accuracy",
    "parse_lf",
    "phi",
    "rank_candidates",
    "score",
    "speaker_matrix",
    "state_to_lists",
    "tokenize",
    "tree_grams",
    "utterance_features",
]
