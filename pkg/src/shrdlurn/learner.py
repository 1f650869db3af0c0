"""Log-linear model over logical forms with online AdaGrad updates.

Weights are stored nested as ``weights[u_part][lf_part]`` mirroring the
cross-product feature structure; since every feature of a form shares the
same utterance side, scoring a form costs one lookup per logical-form
feature once the utterance side has been collapsed into a single map.
Gradients use the same nested layout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .blocks import State
from .features import feature_key, lf_side, split_key, utterance_side
from .logic import LogicalForm, execute

Sparse = dict[str, dict[str, float]]

DEFAULT_ETA = {"memorize": 1.0, "half": 0.1, "full": 0.1}
DEFAULT_ADAGRAD_EPS = 1e-6


class UnreachableLabelError(Exception):
    """No logical form on the beam produces the labeled denotation."""


@dataclass
class Model:
    variant: str
    eta: float
    l2: float = 0.0
    adagrad_eps: float = DEFAULT_ADAGRAD_EPS
    weights: Sparse = field(default_factory=dict)
    accum: Sparse = field(default_factory=dict)

    @classmethod
    def fresh(cls, variant: str = "full", eta: float | None = None,
              l2: float = 0.0, adagrad_eps: float = DEFAULT_ADAGRAD_EPS) -> "Model":
        if variant not in DEFAULT_ETA:
            raise ValueError(f"unknown variant {variant!r}")
        if eta is None:
            eta = DEFAULT_ETA[variant]
        return cls(variant=variant, eta=eta, l2=l2, adagrad_eps=adagrad_eps)


class Scorer:
    """Scores many forms against one utterance under a fixed model."""

    def __init__(self, model: Model, tokens: list[str]):
        self.model = model
        self.u_parts = utterance_side(tokens, model.variant)
        collapsed: dict[str, float] = {}
        for u in self.u_parts:
            for t, w in model.weights.get(u, {}).items():
                collapsed[t] = collapsed.get(t, 0.0) + w
        self._collapsed = collapsed

    def score(self, form: LogicalForm) -> float:
        collapsed = self._collapsed
        if not collapsed:
            return 0.0
        return sum(collapsed.get(t, 0.0) for t in lf_side(form, self.model.variant))

    def distribution(self, forms: list[LogicalForm]) -> dict[LogicalForm, float]:
        """Softmax over the given forms, max-subtracted for overflow safety."""
        if not forms:
            raise ValueError("distribution over an empty beam")
        scores = [self.score(z) for z in forms]
        top = max(scores)
        exps = [math.exp(s - top) for s in scores]
        total = sum(exps)
        return {z: e / total for z, e in zip(forms, exps)}


def score(model: Model, tokens: list[str], form: LogicalForm) -> float:
    return Scorer(model, tokens).score(form)


def distribution(model: Model, tokens: list[str], forms: list[LogicalForm]) -> dict[LogicalForm, float]:
    return Scorer(model, tokens).distribution(forms)


def consistent_posterior(
    probs: dict[LogicalForm, float],
    state: State,
    label: State,
    denotations: dict[LogicalForm, State] | None = None,
) -> dict[LogicalForm, float]:
    """Renormalize a beam distribution over the forms whose denotation is
    the label.  Raises UnreachableLabelError when no form is consistent."""
    if denotations is None:
        denotations = {z: execute(z, state) for z in probs}
    consistent = {z: p for z, p in probs.items() if denotations[z] == label}
    mass = sum(consistent.values())
    if not consistent or mass <= 0.0:
        raise UnreachableLabelError("label not reachable from the beam")
    return {z: p / mass for z, p in consistent.items()}


def loss_and_gradient(
    model: Model,
    tokens: list[str],
    state: State,
    label: State,
    forms: list[LogicalForm],
    denotations: dict[LogicalForm, State] | None = None,
) -> tuple[float, Sparse]:
    """Negative log-probability of the labeled denotation, summed over all
    consistent forms on the beam, plus L2 regularization.

    The gradient is E_p[phi] - E_{p restricted to consistent forms}[phi]
    (+ 2*l2*weights), in the nested sparse layout.
    """
    scorer = Scorer(model, tokens)
    probs = scorer.distribution(forms)
    posterior = consistent_posterior(probs, state, label, denotations)

    loss = -math.log(sum(probs[z] for z in posterior))

    diff: dict[str, float] = {}
    for z, p in probs.items():
        q = posterior.get(z, 0.0)
        if p == q:
            continue
        for t in lf_side(z, model.variant):
            diff[t] = diff.get(t, 0.0) + (p - q)

    gradient: Sparse = {u: dict(diff) for u in scorer.u_parts}

    if model.l2 > 0.0:
        for u, row in model.weights.items():
            grow = gradient.setdefault(u, {})
            for t, w in row.items():
                grow[t] = grow.get(t, 0.0) + 2.0 * model.l2 * w
                loss += model.l2 * w * w
    return loss, gradient


def adagrad_update(model: Model, gradient: Sparse) -> Model:
    """One AdaGrad step, in place: per key, accumulate the squared gradient
    and step by eta * g / (eps + sqrt(accum))."""
    eta, eps = model.eta, model.adagrad_eps
    for u, row in gradient.items():
        wrow = model.weights.setdefault(u, {})
        arow = model.accum.setdefault(u, {})
        for t, g in row.items():
            if g == 0.0:
                continue
            a = arow.get(t, 0.0) + g * g
            arow[t] = a
            wrow[t] = wrow.get(t, 0.0) - eta * g / (eps + math.sqrt(a))
    return model


def flatten(nested: Sparse, variant: str) -> dict[str, float]:
    """Nested sparse vector -> flat printable-key vector (drops zeros)."""
    flat: dict[str, float] = {}
    for u, row in nested.items():
        for t, v in row.items():
            if v != 0.0:
                flat[feature_key(u, t, variant)] = v
    return flat


def dump_model(model: Model) -> str:
    """Line-delimited ``key<TAB>weight<TAB>accum``, sorted by key."""
    keys: dict[tuple[str, str], None] = {}
    for u, row in model.weights.items():
        for t in row:
            keys.setdefault((u, t))
    for u, row in model.accum.items():
        for t in row:
            keys.setdefault((u, t))
    lines = []
    for u, t in sorted(keys, key=lambda ut: feature_key(ut[0], ut[1], model.variant)):
        w = model.weights.get(u, {}).get(t, 0.0)
        a = model.accum.get(u, {}).get(t, 0.0)
        lines.append(f"{feature_key(u, t, model.variant)}\t{w!r}\t{a!r}")
    return "\n".join(lines) + ("\n" if lines else "")


def load_model(text: str, variant: str, eta: float | None = None,
               l2: float = 0.0, adagrad_eps: float = DEFAULT_ADAGRAD_EPS) -> Model:
    model = Model.fresh(variant, eta=eta, l2=l2, adagrad_eps=adagrad_eps)
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            key, w, a = line.split("\t")
            u, t = split_key(key, variant)
            model.weights.setdefault(u, {})[t] = float(w)
            model.accum.setdefault(u, {})[t] = float(a)
        except ValueError as err:
            raise ValueError(f"bad model dump line {line_no}: {line!r}") from err
    return model
