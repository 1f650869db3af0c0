// Scripted end-to-end run against the real game server: a "player" drives
// the mounted app through one full task by typing, scrolling with arrow
// keys, and accepting with enter. Candidate states are read back off the
// rendered previews (the player judges what they see), and every request
// payload is recorded to check what travels to the learner.

import { spawn, ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, dirname } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { mount } from "../src/app.js";
import { GameClient, BlockState } from "../src/protocol.js";

const here = dirname(fileURLToPath(import.meta.url));
// must match the environment origin pinned in vitest.config.ts
const PORT = 18288;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess | null = null;

interface Sent {
  url: string;
  body: unknown;
}

const sent: Sent[] = [];
const realFetch = globalThis.fetch;

function recordingFetch(input: RequestInfo | URL, init?: RequestInit) {
  const url = String(input);
  if (init?.method === "POST") {
    sent.push({ url, body: init.body ? JSON.parse(String(init.body)) : null });
  }
  return realFetch(input, init);
}

async function waitFor(check: () => boolean, ms = 20_000): Promise<void> {
  const deadline = Date.now() + ms;
  while (Date.now() < deadline) {
    if (check()) return;
    await new Promise((r) => setTimeout(r, 25));
  }
  throw new Error("timed out waiting for condition");
}

function mismatch(a: BlockState, b: BlockState): number {
  let total = 0;
  for (let i = 0; i < a.length; i++) {
    const height = Math.max(a[i].length, (b[i] ?? []).length);
    for (let j = 0; j < height; j++) {
      if (a[i][j] !== (b[i] ?? [])[j]) total += 1;
    }
  }
  return total;
}

// read the block state back out of a rendered board preview
function stateFromBoard(board: Element): BlockState {
  const stacks: BlockState = [];
  for (const stackEl of board.querySelectorAll(".stack")) {
    const stack: string[] = [];
    const cells = Array.from(stackEl.children).reverse(); // bottom-up
    for (const cell of cells) {
      if (cell.classList.contains("block")) {
        const color = Array.from(cell.classList).find(
          (c) => c !== "cell" && c !== "block" && c !== "mismatch",
        );
        stack.push(color ?? "unknown");
      }
    }
    stacks.push(stack);
  }
  return stacks;
}

beforeAll(async () => {
  const dataDir = mkdtempSync(join(tmpdir(), "shrdlurn-e2e-"));
  server = spawn(
    "python3",
    ["-m", "shrdlurn.cli", "serve", "--port", String(PORT), "--data-dir", dataDir],
    { cwd: join(here, "..", ".."), stdio: "ignore" },
  );
  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      const res = await realFetch(`${BASE}/sessions/none`);
      if (res.status === 404) break;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error("server did not start");
    await new Promise((r) => setTimeout(r, 150));
  }
  globalThis.fetch = recordingFetch as typeof fetch;
});

afterAll(() => {
  globalThis.fetch = realFetch;
  server?.kill();
});

function installDom(): void {
  const html = readFileSync(join(here, "..", "index.html"), "utf8");
  const body = html.split(/<body>|<\/body>/)[1].replace(/<script[\s\S]*?<\/script>/g, "");
  document.body.innerHTML = body;
}

function key(name: string): void {
  document.dispatchEvent(
    new KeyboardEvent("keydown", { key: name, bubbles: true, cancelable: true }),
  );
}

describe("one full task through the browser client", () => {
  it("types, scrolls, selects, and reaches the goal", async () => {
    installDom();
    const app = mount(new GameClient(BASE));
    await app.start();
    expect(app.view).not.toBeNull();
    expect(app.view!.goal_state).toBeTruthy();
    const goalJson = JSON.stringify(app.view!.goal_state);

    const input = document.getElementById("utterance") as HTMLInputElement;
    const counter = document.getElementById("scroll-count")!;
    const candidatesEl = document.getElementById("candidates")!;
    const words = [
      "remove red", "add orange", "fix the left", "make it so",
      "remove cyan", "top off",
    ];
    const selections: Array<{ displayed: number; posted: number }> = [];

    let steps = 0;
    while (app.view!.level_index === 0 && steps < 25) {
      input.value = words[steps % words.length];
      input.dispatchEvent(
        new KeyboardEvent("keydown", { key: "Enter", bubbles: true, cancelable: true }),
      );
      await waitFor(() => candidatesEl.children.length > 0);

      // the player (who knows the goal) scrolls to the most helpful preview
      const goal = app.view!.goal_state!;
      const rows = Array.from(candidatesEl.children);
      let target = 0;
      let best = Infinity;
      rows.forEach((row, index) => {
        const board = row.querySelector(".board");
        const score = board ? mismatch(stateFromBoard(board), goal) : Infinity;
        if (score < best) {
          best = score;
          target = index;
        }
      });

      for (let i = 0; i < target; i++) key("ArrowDown");
      expect(counter.textContent).toBe(String(target));
      const displayed = Number(counter.textContent);
      key("Enter");
      await waitFor(() => candidatesEl.children.length === 0);
      const posted = [...sent].reverse().find((s) => s.url.endsWith("/selection"));
      selections.push({ displayed, posted: (posted!.body as { index: number }).index });
      steps += 1;
    }

    // the goal was reached and the level advanced
    expect(app.view!.level_index).toBeGreaterThanOrEqual(1);
    expect(selections.length).toBeGreaterThan(0);

    // the scroll count shown at selection time is the index that was posted
    for (const { displayed, posted } of selections) {
      expect(displayed).toBe(posted);
    }

    // learner-facing payloads carry only the utterance text or the index;
    // in particular no goal state ever travels to those endpoints
    for (const { url, body } of sent) {
      if (url.endsWith("/utterance")) {
        expect(Object.keys(body as object)).toEqual(["text"]);
      } else if (url.endsWith("/selection")) {
        expect(Object.keys(body as object)).toEqual(["index"]);
      }
      if (url.endsWith("/utterance") || url.endsWith("/selection")) {
        expect(JSON.stringify(body)).not.toContain(goalJson);
        expect(JSON.stringify(body)).not.toContain("goal");
      }
    }
  });
});
