"""Block-world states: a fixed line of stacks of colored blocks.

A state is represented as a tuple of stacks, each stack a tuple of color
names ordered bottom-to-top.  States are plain immutable tuples so they can
be hashed, compared structurally, and shared freely between threads.
"""

from __future__ import annotations

from typing import Iterable, Sequence

# The four block colors, in their fixed canonical order.
COLORS: tuple[str, ...] = ("cyan", "brown", "red", "orange")

_COLOR_RANK = {c: i for i, c in enumerate(COLORS)}

State = tuple[tuple[str, ...], ...]


def is_color(name: str) -> bool:
    return name in _COLOR_RANK


def color_rank(name: str) -> int:
    """Position of a color in the canonical order (cyan < brown < red < orange)."""
    return _COLOR_RANK[name]


def make_state(stacks: Iterable[Sequence[str]]) -> State:
    """Build and validate a state from any nested sequence of color names."""
    out = tuple(tuple(stack) for stack in stacks)
    if not out:
        raise ValueError("a state needs at least one stack")
    for i, stack in enumerate(out):
        for block in stack:
            if not is_color(block):
                raise ValueError(f"unknown color {block!r} in stack {i}")
    return out


def state_to_lists(state: State) -> list[list[str]]:
    """Serialize as an array of arrays of color names, bottom-to-top."""
    return [list(stack) for stack in state]


def block_count(state: State) -> int:
    return sum(len(stack) for stack in state)


def top_color(stack: tuple[str, ...]) -> str | None:
    """Topmost color of a stack, or None when the stack is empty."""
    return stack[-1] if stack else None
