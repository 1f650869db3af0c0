// Wires the utterance bar, candidate scroller, boards, and metrics panel
// to the game server. Keyboard-first: Enter submits, arrows scroll, Enter
// accepts the highlighted candidate.

import { renderBoard } from "./board.js";
import { ApiError, GameClient, Metrics, View } from "./protocol.js";
import { CandidateScroller } from "./scroller.js";

export interface AppElements {
  utterance: HTMLInputElement;
  submit: HTMLButtonElement;
  candidates: HTMLElement;
  scrollCount: HTMLElement;
  current: HTMLElement;
  goal: HTMLElement;
  level: HTMLElement;
  metrics: HTMLElement;
  toast: HTMLElement;
  debugToggle: HTMLInputElement;
}

export class App {
  readonly scroller: CandidateScroller;
  view: View | null = null;
  sessionId = "";
  private busy = false;

  constructor(
    private readonly client: GameClient,
    private readonly el: AppElements,
  ) {
    this.scroller = new CandidateScroller(el.candidates, el.scrollCount, (index) => {
      void this.select(index);
    });
    el.submit.addEventListener("click", () => void this.submit());
    el.utterance.addEventListener("keydown", (event) => {
      if (event.key === "Enter") {
        event.preventDefault();
        void this.submit();
      }
    });
    document.addEventListener("keydown", (event) => {
      if (event.target === el.utterance) return;
      this.scroller.handleKey(event);
    });
    el.debugToggle.addEventListener("change", () => {
      this.scroller.debug = el.debugToggle.checked;
    });
  }

  async start(): Promise<void> {
    await this.guard(async () => {
      const created = await this.client.createSession();
      this.sessionId = created.session_id;
      this.applyView(created.view);
    }, "creating session");
  }

  async submit(): Promise<void> {
    if (this.busy || !this.view || this.view.complete) return;
    const text = this.el.utterance.value.trim();
    await this.guard(async () => {
      const response = await this.client.submitUtterance(this.sessionId, text);
      this.scroller.show(response.candidates);
      this.el.utterance.select();
    }, "sending utterance");
  }

  async select(index: number): Promise<void> {
    if (this.busy) return;
    await this.guard(async () => {
      const response = await this.client.selectCandidate(this.sessionId, index);
      this.scroller.clear();
      this.el.utterance.value = "";
      this.applyView(response.view, response.metrics);
      this.el.utterance.focus();
    }, "sending selection");
  }

  private applyView(view: View, metrics?: Metrics): void {
    this.view = view;
    if (view.complete) {
      this.el.level.textContent = `all ${view.level_count} tasks complete`;
      this.el.current.replaceChildren();
      this.el.goal.replaceChildren();
    } else {
      this.el.level.textContent =
        `task ${view.level_index + 1} / ${view.level_count} (${view.level_id})`;
      this.el.current.replaceChildren(
        renderBoard(view.current_state!, view.goal_state),
      );
      this.el.goal.replaceChildren(renderBoard(view.goal_state!));
    }
    if (metrics) this.renderMetrics(metrics);
  }

  private renderMetrics(metrics: Metrics): void {
    if (metrics.empty) {
      this.el.metrics.textContent = "no labeled interactions yet";
      return;
    }
    const accuracy = (metrics.online_accuracy! * 100).toFixed(1);
    const scrolls = metrics.average_scrolls!.toFixed(2);
    this.el.metrics.textContent =
      `online accuracy ${accuracy}% · avg scrolls ${scrolls} · ` +
      `${metrics.interactions} interactions`;
  }

  private async guard(action: () => Promise<void>, what: string): Promise<void> {
    this.busy = true;
    this.el.utterance.disabled = true;
    this.el.submit.disabled = true;
    try {
      await action();
      this.hideToast();
    } catch (error) {
      if (error instanceof ApiError) {
        this.showToast(`${what} failed: ${error.message}`);
      } else {
        this.showToast(`network error while ${what}`, () => void this.guard(action, what));
      }
    } finally {
      this.busy = false;
      this.el.utterance.disabled = false;
      this.el.submit.disabled = false;
    }
  }

  private showToast(message: string, retry?: () => void): void {
    this.el.toast.replaceChildren();
    this.el.toast.classList.add("visible");
    const text = document.createElement("span");
    text.textContent = message;
    this.el.toast.appendChild(text);
    if (retry) {
      const button = document.createElement("button");
      button.textContent = "retry";
      button.addEventListener("click", retry);
      this.el.toast.appendChild(button);
    }
  }

  private hideToast(): void {
    this.el.toast.classList.remove("visible");
    this.el.toast.replaceChildren();
  }
}

export function mount(client: GameClient, root: Document = document): App {
  const byId = <T extends HTMLElement>(id: string): T => {
    const found = root.getElementById(id);
    if (!found) throw new Error(`missing #${id}`);
    return found as T;
  };
  return new App(client, {
    utterance: byId<HTMLInputElement>("utterance"),
    submit: byId<HTMLButtonElement>("submit"),
    candidates: byId("candidates"),
    scrollCount: byId("scroll-count"),
    current: byId("current-board"),
    goal: byId("goal-board"),
    level: byId("level-progress"),
    metrics: byId("metrics"),
    toast: byId("toast"),
    debugToggle: byId<HTMLInputElement>("debug-toggle"),
  });
}
