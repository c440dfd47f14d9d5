/** Typed client for the game's /api endpoints. */

export interface UnfunTask {
  task: "unfun";
  headline: string;
  headline_id: string;
}

export interface RateItem {
  id: string;
  text: string;
}

export interface RateTask {
  task: "rate";
  items: RateItem[];
}

export type Task = UnfunTask | RateTask;

export interface SubmissionReply {
  submission_id: string;
  modified_id: string;
  pending_reward: boolean;
}

export interface RatingsReply {
  reward: number;
}

export interface LeaderboardEntry {
  player_id: string;
  total_reward: number;
  unfun_reward: number;
  rating_reward: number;
}

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(`${status}: ${detail}`);
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let detail = response.statusText;
  try {
    const body = await response.json();
    if (typeof body.detail === "string") detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, detail);
}

export class Api {
  /**
   * In the browser the session rides on the server-set cookie; tests and
   * scripted sessions pass an explicit token instead.
   */
  constructor(private base = "", private token?: string) {}

  private headers(json = false): Record<string, string> {
    const h: Record<string, string> = {};
    if (json) h["Content-Type"] = "application/json";
    if (this.token) h["X-Session-Token"] = this.token;
    return h;
  }

  private async get<T>(path: string): Promise<T> {
    const response = await fetch(this.base + path, { headers: this.headers() });
    if (!response.ok) throw await parseError(response);
    return response.json();
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(this.base + path, {
      method: "POST",
      headers: this.headers(true),
      body: JSON.stringify(body),
    });
    if (!response.ok) throw await parseError(response);
    return response.json();
  }

  getTask(): Promise<Task> {
    return this.get("/api/task");
  }

  submitUnfun(headlineId: string, modifiedText: string): Promise<SubmissionReply> {
    return this.post("/api/unfun", { headline_id: headlineId, modified_text: modifiedText });
  }

  submitRatings(values: { id: string; value: number }[]): Promise<RatingsReply> {
    return this.post("/api/ratings", { items: values });
  }

  leaderboard(): Promise<LeaderboardEntry[]> {
    return this.get("/api/leaderboard");
  }

  me(): Promise<{ player_id: string; total_reward: number }> {
    return this.get("/api/me");
  }
}
