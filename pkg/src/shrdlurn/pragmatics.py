"""Pragmatic listener for candidate ranking: mutual exclusivity online.

Two pieces live here.  The batch speaker/listener construction works on a
full utterance-by-form probability matrix: the speaker column-normalizes
the (sharpened) literal matrix, the listener row-normalizes the speaker.
The online state replaces the intractable speaker normalization with
running counts: Q(z) accumulates the sharpened literal probabilities each
form has received so far (what the literal listener keeps preferring), and
C(z) accumulates pseudocounts of forms consistent with the chosen
denotations, smoothed into a prior P(z).  Ranking weight:

    L(z | x)  proportional to  P(z) / Q(z) * p(z | x) ** beta

The pragmatic ranking never feeds back into the model's gradient updates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .logic import LogicalForm

DEFAULT_ALPHA = 1.0
DEFAULT_BETA = 3.0
DEFAULT_EPSILON = 0.01


def speaker_matrix(literal: np.ndarray, beta: float = 1.0) -> np.ndarray:
    """S(x|z): column-normalized literal**beta (uniform utterance prior).

    literal[i, j] = p(form j | utterance i); columns must have positive sum.
    """
    sharp = np.asarray(literal, dtype=float) ** beta
    return sharp / sharp.sum(axis=0, keepdims=True)


def listener_matrix(literal: np.ndarray, beta: float = 1.0) -> np.ndarray:
    """L(z|x): row-normalized speaker matrix (uniform form prior)."""
    spk = speaker_matrix(literal, beta)
    return spk / spk.sum(axis=1, keepdims=True)


@dataclass
class PragmaticsState:
    """Running pseudocounts keyed by canonical logical-form text."""

    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    epsilon: float = DEFAULT_EPSILON
    counts: dict[str, float] = field(default_factory=dict)   # C(z)
    usage: dict[str, float] = field(default_factory=dict)    # Q(z)

    def prior_denominator(self) -> float:
        return sum(c + self.alpha for c in self.counts.values() if c > 0.0)

    def prior(self, key: str, denominator: float) -> float:
        return (self.counts.get(key, 0.0) + self.alpha) / denominator

    def listener_weights(self, literal: dict[LogicalForm, float]) -> dict[LogicalForm, float]:
        """Unnormalized L(z|x) for every form of a literal beam distribution.

        Before any consistent form has been counted the prior is uniform, so
        with beta=1 the ranking reduces to the literal one.
        """
        denom = self.prior_denominator()
        uniform = 1.0 / len(literal) if literal else 0.0
        out: dict[LogicalForm, float] = {}
        for z, p in literal.items():
            prior = self.prior(z.canonical, denom) if denom > 0.0 else uniform
            q = self.usage.get(z.canonical, self.epsilon)
            out[z] = prior / q * p ** self.beta
        return out

    def observe(
        self,
        literal: dict[LogicalForm, float],
        posterior: dict[LogicalForm, float],
    ) -> None:
        """Record one labeled interaction, after the model update:
        Q gets the sharpened post-update literal probabilities of the whole
        beam, C gets the consistent-set posterior pseudocounts."""
        for z, p in literal.items():
            key = z.canonical
            self.usage[key] = self.usage.get(key, self.epsilon) + p ** self.beta
        for z, q in posterior.items():
            key = z.canonical
            self.counts[key] = self.counts.get(key, 0.0) + q

    def dump(self) -> str:
        """C/Q/P table for inspection, one form per line."""
        denom = self.prior_denominator()
        keys = sorted(set(self.counts) | set(self.usage))
        lines = ["form\tC\tQ\tP"]
        for key in keys:
            c = self.counts.get(key, 0.0)
            q = self.usage.get(key, self.epsilon)
            p = self.prior(key, denom) if denom > 0.0 else float("nan")
            lines.append(f"{key}\t{c!r}\t{q!r}\t{p!r}")
        return "\n".join(lines) + "\n"
