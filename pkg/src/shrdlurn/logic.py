"""Logical forms over the block-world action grammar, and their execution.

The grammar has three categories:

  Set    all() | with(Color) | not(Set) | leftmost(Set) | rightmost(Set)
  Color  cyan | brown | red | orange
  Act    add(Set, Color) | remove(Set)

A logical form is an immutable tree of predicates.  Executing an Act on a
state yields the successor state (its denotation); Set subterms denote a
selection of stack indices.
"""

from __future__ import annotations

from typing import Iterator

from .blocks import COLORS, State, is_color

SET, COLOR, ACT = "Set", "Color", "Act"

# predicate -> (argument categories, result category)
SIGNATURES: dict[str, tuple[tuple[str, ...], str]] = {
    "all": ((), SET),
    "with": ((COLOR,), SET),
    "not": ((SET,), SET),
    "leftmost": ((SET,), SET),
    "rightmost": ((SET,), SET),
    "add": ((SET, COLOR), ACT),
    "remove": ((SET,), ACT),
}
for _c in COLORS:
    SIGNATURES[_c] = ((), COLOR)


class LfTypeError(ValueError):
    """Raised when predicates are combined against the grammar signatures."""


class LogicalForm:
    """An immutable, well-typed tree of grammar predicates.

    Equality and hashing follow the canonical text, which is unique per
    structure: ``canonical(a) == canonical(b)`` iff a and b are the same tree.
    """

    __slots__ = ("head", "args", "category", "canonical", "size", "_hash", "_tree_grams")

    def __init__(self, head: str, args: tuple["LogicalForm", ...] = ()):
        sig = SIGNATURES.get(head)
        if sig is None:
            raise LfTypeError(f"unknown predicate {head!r}")
        arg_cats, result = sig
        if len(args) != len(arg_cats):
            raise LfTypeError(f"{head} takes {len(arg_cats)} argument(s), got {len(args)}")
        for i, (arg, want) in enumerate(zip(args, arg_cats)):
            if arg.category != want:
                raise LfTypeError(
                    f"argument {i + 1} of {head} must be {want}, got {arg.category} ({arg.canonical})"
                )
        self.head = head
        self.args = args
        self.category = result
        if not arg_cats:
            # Nullary Set/Act predicates keep their parens; colors are bare.
            self.canonical = head if result == COLOR else head + "()"
        else:
            self.canonical = head + "(" + ",".join(a.canonical for a in args) + ")"
        self.size = 1 + sum(a.size for a in args)
        self._hash = hash(self.canonical)
        self._tree_grams: tuple[str, ...] | None = None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LogicalForm) and self.canonical == other.canonical

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Lf({self.canonical})"

    def nodes(self) -> Iterator["LogicalForm"]:
        """All subtrees, preorder."""
        yield self
        for a in self.args:
            yield from a.nodes()


def lf(head: str, *args: LogicalForm) -> LogicalForm:
    return LogicalForm(head, args)


def lf_size(form: LogicalForm) -> int:
    """Predicate count: every function symbol and color literal is one node."""
    return form.size


def canonical(form: LogicalForm) -> str:
    return form.canonical


class LfParseError(ValueError):
    """Parse failure; carries the character position of the offending token."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def parse_lf(text: str, category: str | None = None) -> LogicalForm:
    """Inverse of ``canonical``.  Rejects malformed or ill-typed text.

    When ``category`` is given, the result must have that category.
    """
    form, end = _parse_expr(text, 0)
    if end != len(text):
        raise LfParseError(f"trailing input {text[end:]!r}", end)
    if category is not None and form.category != category:
        raise LfParseError(f"expected a {category} form, got {form.category}", 0)
    return form


def _parse_expr(text: str, pos: int) -> tuple[LogicalForm, int]:
    start = pos
    while pos < len(text) and (text[pos].isalnum() or text[pos] == "_"):
        pos += 1
    name = text[start:pos]
    if not name:
        found = text[pos] if pos < len(text) else "end of input"
        raise LfParseError(f"expected a predicate name, found {found!r}", start)
    if name not in SIGNATURES:
        raise LfParseError(f"unknown predicate {name!r}", start)
    arg_cats = SIGNATURES[name][0]
    if is_color(name):
        # Color literals are bare: no parens allowed.
        return LogicalForm(name), pos
    if pos >= len(text) or text[pos] != "(":
        raise LfParseError(f"{name} requires parentheses", pos)
    pos += 1
    args: list[LogicalForm] = []
    if pos < len(text) and text[pos] == ")":
        pos += 1
    else:
        while True:
            arg, pos = _parse_expr(text, pos)
            args.append(arg)
            if pos >= len(text):
                raise LfParseError("unclosed argument list", pos)
            if text[pos] == ",":
                pos += 1
                continue
            if text[pos] == ")":
                pos += 1
                break
            raise LfParseError(f"expected ',' or ')', found {text[pos]!r}", pos)
    try:
        form = LogicalForm(name, tuple(args))
    except LfTypeError as err:
        raise LfParseError(str(err), start) from err
    return form, pos


def eval_set(form: LogicalForm, state: State) -> tuple[int, ...]:
    """Denotation of a Set form: stack indices, in increasing order.

    all() includes empty stacks; with(c) selects non-empty stacks whose top
    block is c; leftmost/rightmost of an empty selection stay empty.
    """
    if form.category != SET:
        raise LfTypeError(f"eval_set needs a Set form, got {form.category}")
    head = form.head
    if head == "all":
        return tuple(range(len(state)))
    if head == "with":
        color = form.args[0].head
        return tuple(i for i, stack in enumerate(state) if stack and stack[-1] == color)
    if head == "not":
        inner = set(eval_set(form.args[0], state))
        return tuple(i for i in range(len(state)) if i not in inner)
    if head == "leftmost":
        inner = eval_set(form.args[0], state)
        return (inner[0],) if inner else ()
    if head == "rightmost":
        inner = eval_set(form.args[0], state)
        return (inner[-1],) if inner else ()
    raise LfTypeError(f"not a Set predicate: {head}")


def execute(form: LogicalForm, state: State) -> State:
    """Successor state from an Act.  Pure: the input state is never mutated.

    add pushes one block on every selected stack; remove pops the top block
    of every selected non-empty stack (a no-op on selected empty stacks).
    """
    if form.category != ACT:
        raise LfTypeError(f"execute needs an Act form, got {form.category}")
    if form.head == "add":
        selected = set(eval_set(form.args[0], state))
        color = form.args[1].head
        return tuple(
            stack + (color,) if i in selected else stack for i, stack in enumerate(state)
        )
    if form.head == "remove":
        selected = set(eval_set(form.args[0], state))
        return tuple(
            stack[:-1] if i in selected and stack else stack for i, stack in enumerate(state)
        )
    raise LfTypeError(f"not an Act predicate: {form.head}")
