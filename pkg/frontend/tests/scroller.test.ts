import { beforeEach, describe, expect, it } from "vitest";

import type { Candidate } from "../src/protocol.js";
import { CandidateScroller, ScrollCursor } from "../src/scroller.js";

function candidates(n: number): Candidate[] {
  return Array.from({ length: n }, (_, i) => ({
    state: [["red"], []],
    best_lf: `lf${i}`,
    prob: 1 / n,
  }));
}

describe("ScrollCursor", () => {
  it("starts at the top with zero scrolls", () => {
    const cursor = new ScrollCursor(5);
    expect(cursor.position).toBe(0);
    expect(cursor.scrolls).toBe(0);
  });

  it("clamps at both ends", () => {
    const cursor = new ScrollCursor(3);
    cursor.move(-2);
    expect(cursor.position).toBe(0);
    cursor.move(10);
    expect(cursor.position).toBe(2);
  });

  it("scroll count equals the cursor index", () => {
    const cursor = new ScrollCursor(10);
    cursor.move(3);
    cursor.move(-1);
    cursor.move(2);
    expect(cursor.scrolls).toBe(4);
  });
});

describe("CandidateScroller", () => {
  let list: HTMLElement;
  let counter: HTMLElement;
  let accepted: number[];
  let scroller: CandidateScroller;

  beforeEach(() => {
    list = document.createElement("div");
    counter = document.createElement("span");
    accepted = [];
    scroller = new CandidateScroller(list, counter, (i) => accepted.push(i));
  });

  it("renders one row per candidate and highlights the cursor", () => {
    scroller.show(candidates(4));
    expect(list.children.length).toBe(4);
    expect(list.children[0].classList.contains("selected")).toBe(true);
    expect(counter.textContent).toBe("0");
  });

  it("arrow keys move the cursor and the live counter follows", () => {
    scroller.show(candidates(4));
    const down = new KeyboardEvent("keydown", { key: "ArrowDown", cancelable: true });
    scroller.handleKey(down);
    scroller.handleKey(new KeyboardEvent("keydown", { key: "ArrowDown", cancelable: true }));
    scroller.handleKey(new KeyboardEvent("keydown", { key: "ArrowUp", cancelable: true }));
    expect(counter.textContent).toBe("1");
    expect(list.children[1].classList.contains("selected")).toBe(true);
  });

  it("enter accepts the highlighted index", () => {
    scroller.show(candidates(4));
    scroller.handleKey(new KeyboardEvent("keydown", { key: "ArrowDown", cancelable: true }));
    scroller.handleKey(new KeyboardEvent("keydown", { key: "Enter", cancelable: true }));
    expect(accepted).toEqual([1]);
  });

  it("counter resets for each new utterance", () => {
    scroller.show(candidates(4));
    scroller.move(3);
    expect(counter.textContent).toBe("3");
    scroller.clear();
    expect(counter.textContent).toBe("–");
    scroller.show(candidates(2));
    expect(counter.textContent).toBe("0");
  });

  it("ignores keys when no list is shown", () => {
    const handled = scroller.handleKey(
      new KeyboardEvent("keydown", { key: "ArrowDown", cancelable: true }),
    );
    expect(handled).toBe(false);
  });

  it("clicking a row accepts its index", () => {
    scroller.show(candidates(3));
    (list.children[2] as HTMLElement).click();
    expect(accepted).toEqual([2]);
  });

  it("debug mode reveals the canonical form", () => {
    scroller.debug = true;
    scroller.show(candidates(2));
    expect(list.querySelector("code.lf")?.textContent).toBe("lf0");
  });
});
