// Rendering of block states: one column per stack, blocks bottom-up.

import type { BlockState } from "./protocol.js";

export const KNOWN_COLORS = ["cyan", "brown", "red", "orange"];

function maxHeight(state: BlockState, other?: BlockState): number {
  let height = 1;
  for (const stack of state) height = Math.max(height, stack.length);
  if (other) for (const stack of other) height = Math.max(height, stack.length);
  return height;
}

// Returns a .board element; when a goal is given, cells that disagree with
// it (missing, extra, or differently colored) get the .mismatch class.
export function renderBoard(
  state: BlockState,
  goal?: BlockState,
  compact = false,
): HTMLElement {
  const board = document.createElement("div");
  board.className = compact ? "board compact" : "board";
  const height = maxHeight(state, goal);
  for (let column = 0; column < state.length; column++) {
    const stack = state[column];
    const el = document.createElement("div");
    el.className = "stack";
    for (let row = height - 1; row >= 0; row--) {
      const cell = document.createElement("div");
      const color = stack[row];
      if (row < stack.length) {
        cell.className = "cell block";
        if (KNOWN_COLORS.includes(color)) {
          cell.classList.add(color);
        } else {
          cell.classList.add("unknown");
          cell.title = `unknown color: ${color}`;
          cell.textContent = "?";
        }
      } else {
        cell.className = "cell empty";
      }
      if (goal) {
        const want = (goal[column] ?? [])[row];
        if (want !== color) cell.classList.add("mismatch");
      }
      el.appendChild(cell);
    }
    board.appendChild(el);
  }
  return board;
}

export function statesEqual(a: BlockState, b: BlockState): boolean {
  if (a.length !== b.length) return false;
  for (let i = 0; i < a.length; i++) {
    if (a[i].length !== b[i].length) return false;
    for (let j = 0; j < a[i].length; j++) {
      if (a[i][j] !== b[i][j]) return false;
    }
  }
  return true;
}
