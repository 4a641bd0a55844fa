/** Typed client for the play service's JSON API.
 *
 * The UI never reimplements game rules: legality, positions, and
 * analysis all come from these endpoints.
 */

export type Mover = "human" | "engine";
export type OutcomeLabel = "P" | "N";

export type MovePayload = Record<string, unknown>;

export interface GameInfo {
  id: string;
  name: string;
  params: ParamSchema;
  move_help: string;
}

export interface FieldSchema {
  name: string;
  type: string;
  min?: number;
  max?: number;
  default?: number;
  max_count?: number;
}

export type ParamSchema =
  | { type: "fields"; fields: FieldSchema[] }
  | {
      type: "variants";
      selector: string;
      variants: Record<string, { fields: FieldSchema[] }>;
    };

export interface SessionState {
  id: string;
  game: string;
  params: Record<string, unknown>;
  status: "in_progress" | "human_won" | "engine_won";
  winner: Mover | null;
  next_mover: Mover | null;
  position: Record<string, unknown>;
  legal_moves: MovePayload[];
  history: { mover: Mover; move: MovePayload }[];
  engine_move?: MovePayload;
  left_outcome?: OutcomeLabel | null;
}

export interface Analysis {
  outcome: OutcomeLabel;
  grundy: number | null;
  moves: { move: MovePayload; leaves: OutcomeLabel }[];
}

export class ApiError extends Error {
  constructor(public code: number, message: string) {
    super(message);
  }
}

export class Client {
  constructor(
    private base: string = "",
    private fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.base}${path}`, {
      headers: { "Content-Type": "application/json" },
      ...init,
    });
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      const message =
        typeof body?.message === "string" ? body.message : response.statusText;
      throw new ApiError(body?.code ?? response.status, message);
    }
    return body as T;
  }

  listGames(): Promise<{ games: GameInfo[] }> {
    return this.request("/api/games");
  }

  createSession(
    game: string,
    params: Record<string, unknown>,
    engineFirst = false,
  ): Promise<SessionState> {
    return this.request("/api/sessions", {
      method: "POST",
      body: JSON.stringify({ game, params, engine_first: engineFirst }),
    });
  }

  getSession(id: string): Promise<SessionState> {
    return this.request(`/api/sessions/${id}`);
  }

  postMove(id: string, move: MovePayload): Promise<SessionState> {
    return this.request(`/api/sessions/${id}/moves`, {
      method: "POST",
      body: JSON.stringify(move),
    });
  }

  engineMove(id: string): Promise<SessionState> {
    return this.request(`/api/sessions/${id}/engine-move`, { method: "POST" });
  }

  analysis(id: string): Promise<Analysis> {
    return this.request(`/api/sessions/${id}/analysis`);
  }
}
