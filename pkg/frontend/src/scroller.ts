// The candidate list the player scrolls through. The scroll counter shown
// to the player is the cursor position, which is exactly the index posted
// back on selection (and the game's per-utterance effort metric).

import { renderBoard } from "./board.js";
import type { Candidate } from "./protocol.js";

export class ScrollCursor {
  position = 0;

  constructor(readonly size: number) {}

  move(delta: number): number {
    const next = Math.min(Math.max(this.position + delta, 0), this.size - 1);
    this.position = next;
    return next;
  }

  get scrolls(): number {
    return this.position;
  }
}

export class CandidateScroller {
  private cursor: ScrollCursor = new ScrollCursor(0);
  private candidates: Candidate[] = [];
  private rows: HTMLElement[] = [];
  debug = false;

  constructor(
    private readonly list: HTMLElement,
    private readonly counter: HTMLElement,
    private readonly onAccept: (index: number) => void,
  ) {
    list.addEventListener("wheel", (event) => {
      if (!this.active) return;
      event.preventDefault();
      this.move(event.deltaY > 0 ? 1 : -1);
    });
  }

  get active(): boolean {
    return this.candidates.length > 0;
  }

  get position(): number {
    return this.cursor.position;
  }

  show(candidates: Candidate[]): void {
    this.candidates = candidates;
    this.cursor = new ScrollCursor(candidates.length);
    this.render();
  }

  clear(): void {
    this.candidates = [];
    this.rows = [];
    this.list.replaceChildren();
    this.counter.textContent = "–";
  }

  move(delta: number): void {
    if (!this.active) return;
    this.cursor.move(delta);
    this.update();
  }

  accept(): void {
    if (!this.active) return;
    this.onAccept(this.cursor.position);
  }

  handleKey(event: KeyboardEvent): boolean {
    if (!this.active) return false;
    if (event.key === "ArrowDown") {
      this.move(1);
    } else if (event.key === "ArrowUp") {
      this.move(-1);
    } else if (event.key === "Enter") {
      this.accept();
    } else {
      return false;
    }
    event.preventDefault();
    return true;
  }

  private render(): void {
    this.rows = this.candidates.map((candidate, index) => {
      const row = document.createElement("div");
      row.className = "candidate";
      row.dataset.index = String(index);
      row.appendChild(renderBoard(candidate.state, undefined, true));
      if (this.debug) {
        const lf = document.createElement("code");
        lf.className = "lf";
        lf.textContent = candidate.best_lf;
        row.appendChild(lf);
      }
      row.addEventListener("click", () => {
        this.cursor.position = index;
        this.update();
        this.accept();
      });
      return row;
    });
    this.list.replaceChildren(...this.rows);
    this.update();
  }

  private update(): void {
    this.rows.forEach((row, index) => {
      row.classList.toggle("selected", index === this.cursor.position);
    });
    this.counter.textContent = String(this.cursor.scrolls);
    const current = this.rows[this.cursor.position];
    if (current && typeof current.scrollIntoView === "function") {
      current.scrollIntoView({ block: "nearest" });
    }
  }
}
