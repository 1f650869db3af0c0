// Thin client for the game server's JSON endpoints. The UI never computes
// block semantics itself: every state it shows came out of these calls.

export type BlockState = string[][];

export interface Candidate {
  state: BlockState;
  best_lf: string;
  prob: number;
}

export interface View {
  session_id: string;
  complete: boolean;
  level_index: number;
  level_count: number;
  config: Record<string, unknown>;
  level_id?: string;
  current_state?: BlockState;
  start_state?: BlockState;
  goal_state?: BlockState;
}

export interface LevelMetrics {
  level_id: string;
  interactions: number;
  online_accuracy: number;
  average_scrolls: number;
}

export interface Metrics {
  empty: boolean;
  online_accuracy?: number;
  average_scrolls?: number;
  interactions?: number;
  per_level?: LevelMetrics[];
}

export class ApiError extends Error {
  constructor(readonly status: number, detail: string) {
    super(detail);
  }
}

async function request<T>(url: string, body?: unknown): Promise<T> {
  const response = await fetch(url, {
    method: body === undefined ? "GET" : "POST",
    headers: { "Content-Type": "application/json" },
    body: body === undefined ? undefined : JSON.stringify(body),
  });
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const parsed = await response.json();
      if (parsed && typeof parsed.detail === "string") detail = parsed.detail;
    } catch {
      // keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export class GameClient {
  constructor(readonly base: string = "") {}

  createSession(overrides: Record<string, unknown> = {}) {
    return request<{ session_id: string; view: View }>(
      `${this.base}/sessions`,
      overrides,
    );
  }

  // learner-facing: the payload is the utterance text, nothing else
  submitUtterance(sessionId: string, text: string) {
    return request<{ utterance: string; candidates: Candidate[] }>(
      `${this.base}/sessions/${sessionId}/utterance`,
      { text },
    );
  }

  // learner-facing: the payload is the scrolled-to index, nothing else
  selectCandidate(sessionId: string, index: number) {
    return request<{ view: View; metrics: Metrics }>(
      `${this.base}/sessions/${sessionId}/selection`,
      { index },
    );
  }

  view(sessionId: string) {
    return request<View>(`${this.base}/sessions/${sessionId}`);
  }

  metrics(sessionId: string) {
    return request<Metrics>(`${this.base}/sessions/${sessionId}/metrics`);
  }
}
