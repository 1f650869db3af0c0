import { describe, expect, it } from "vitest";

import { renderBoard, statesEqual } from "../src/board.js";

describe("renderBoard", () => {
  it("renders one column per stack", () => {
    const board = renderBoard([["red"], ["cyan"]]);
    expect(board.querySelectorAll(".stack").length).toBe(2);
    expect(board.querySelectorAll(".cell.block.red").length).toBe(1);
    expect(board.querySelectorAll(".cell.block.cyan").length).toBe(1);
  });

  it("shows empty stacks as empty columns", () => {
    const board = renderBoard([[], []]);
    expect(board.querySelectorAll(".stack").length).toBe(2);
    expect(board.querySelectorAll(".cell.block").length).toBe(0);
    expect(board.querySelectorAll(".cell.empty").length).toBe(2);
  });

  it("pads all columns to the tallest stack", () => {
    const board = renderBoard([["red", "red", "red"], []]);
    const stacks = board.querySelectorAll(".stack");
    expect(stacks[0].children.length).toBe(3);
    expect(stacks[1].children.length).toBe(3);
  });

  it("marks cells that disagree with the goal", () => {
    const board = renderBoard([["red"], ["cyan"]], [["red"], ["brown", "brown"]]);
    const stacks = board.querySelectorAll(".stack");
    expect(stacks[0].querySelectorAll(".mismatch").length).toBe(0);
    expect(stacks[1].querySelectorAll(".mismatch").length).toBe(2);
  });

  it("flags unknown colors with a visible badge", () => {
    const board = renderBoard([["chartreuse"]]);
    const bad = board.querySelector(".cell.block.unknown") as HTMLElement;
    expect(bad).toBeTruthy();
    expect(bad.title).toContain("chartreuse");
  });
});

describe("statesEqual", () => {
  it("compares structurally", () => {
    expect(statesEqual([["red"], []], [["red"], []])).toBe(true);
    expect(statesEqual([["red"], []], [[], ["red"]])).toBe(false);
    expect(statesEqual([["red"]], [["red"], []])).toBe(false);
  });
});
