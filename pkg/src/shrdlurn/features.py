"""Sparse features pairing utterance n-grams with logical-form tree-grams.

Every variant's feature space factorizes as a cross product of an utterance
side and a logical-form side:

  memorize  {whole utterance}          x  {whole-form text}
  half      {n-grams of the utterance} x  {whole-form text}
  full      {n-grams of the utterance} x  {tree-grams of the form}

The learner exploits this factorization; ``phi`` materializes the flat
cross-product vector with printable keys like ``u:remove|z:(remove,1,all)``.
"""

from __future__ import annotations

from .logic import LogicalForm

VARIANTS = ("memorize", "half", "full")

TREE_GRAM_DEPTH = 3


def tokenize(utterance: str) -> list[str]:
    """Lowercase and split on runs of whitespace."""
    return utterance.lower().split()


def utterance_features(tokens: list[str]) -> list[str]:
    """Unigrams, bigrams, trigrams, and skip-trigrams (w_i, *, w_{i+2}).

    Unigrams are position-independent.  The result is duplicate-free and in a
    deterministic first-occurrence order.  N-gram parts are joined with
    spaces, which tokens cannot contain.
    """
    feats: dict[str, None] = {}
    for tok in tokens:
        feats.setdefault(tok)
    for a, b in zip(tokens, tokens[1:]):
        feats.setdefault(f"{a} {b}")
    for a, b, c in zip(tokens, tokens[1:], tokens[2:]):
        feats.setdefault(f"{a} {b} {c}")
    for a, c in zip(tokens, tokens[2:]):
        feats.setdefault(f"{a} * {c}")
    return list(feats)


def _psi(node: LogicalForm, depth: int) -> list[str]:
    if depth == 0:
        return [node.head]
    out = []
    for i, arg in enumerate(node.args, start=1):
        for sub in _psi(arg, depth - 1):
            out.append(f"({node.head},{i},{sub})")
    return out


def tree_grams(form: LogicalForm, max_depth: int = TREE_GRAM_DEPTH) -> tuple[str, ...]:
    """Recursive predicate-and-arguments features, per node and depth 0..max_depth."""
    if max_depth == TREE_GRAM_DEPTH and form._tree_grams is not None:
        return form._tree_grams
    feats: dict[str, None] = {}
    for node in form.nodes():
        for d in range(max_depth + 1):
            for f in _psi(node, d):
                feats.setdefault(f)
    result = tuple(feats)
    if max_depth == TREE_GRAM_DEPTH:
        form._tree_grams = result
    return result


def utterance_side(tokens: list[str], variant: str) -> list[str]:
    if variant == "memorize":
        return [" ".join(tokens)]
    return utterance_features(tokens)


def lf_side(form: LogicalForm, variant: str) -> tuple[str, ...]:
    if variant == "full":
        return tree_grams(form)
    return (form.canonical,)


def feature_key(u_part: str, lf_part: str, variant: str) -> str:
    """Printable flat key.  Separators differ per variant so variants and
    whole-form vs tree-gram parts can never collide in key space."""
    if variant == "full":
        return f"u:{u_part}|z:{lf_part}"
    if variant == "half":
        return f"u:{u_part}|z={lf_part}"
    if variant == "memorize":
        return f"x={u_part}|z={lf_part}"
    raise ValueError(f"unknown variant {variant!r}")


def split_key(key: str, variant: str) -> tuple[str, str]:
    """Inverse of feature_key.  LF parts never contain '|', so splitting on
    the last separator occurrence is unambiguous."""
    sep = "|z:" if variant == "full" else "|z="
    prefix = "x=" if variant == "memorize" else "u:"
    if not key.startswith(prefix) or sep not in key:
        raise ValueError(f"bad {variant} feature key: {key!r}")
    u_part, lf_part = key[len(prefix):].rsplit(sep, 1)
    return u_part, lf_part


def phi(tokens: list[str], form: LogicalForm, variant: str = "full") -> dict[str, float]:
    """The flat feature vector: cross product of the two sides, counts >= 1."""
    vec: dict[str, float] = {}
    for u in utterance_side(tokens, variant):
        for t in lf_side(form, variant):
            key = feature_key(u, t, variant)
            vec[key] = vec.get(key, 0.0) + 1.0
    return vec
