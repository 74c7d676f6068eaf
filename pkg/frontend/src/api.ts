import type { GameConfig, MoveBody, Snapshot, Suggestion } from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    detail: string,
  ) {
    super(detail);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function detailOf(resp: Response): Promise<string> {
  try {
    const body = await resp.json();
    if (body && typeof body.detail === "string") return body.detail;
    return JSON.stringify(body);
  } catch {
    return resp.statusText || `HTTP ${resp.status}`;
  }
}

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const resp = await this.fetchImpl(this.base + path, init);
    if (!resp.ok) throw new ApiError(resp.status, await detailOf(resp));
    return resp;
  }

  private post(path: string, body: unknown): Promise<Response> {
    return this.request(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  async createGame(config: GameConfig): Promise<{ id: string; snapshot: Snapshot }> {
    const resp = await this.post("/games", config);
    return resp.json();
  }

  async getGame(id: string): Promise<Snapshot> {
    return (await this.request(`/games/${id}`)).json();
  }

  async postMove(id: string, move: MoveBody): Promise<Snapshot> {
    return (await this.post(`/games/${id}/moves`, move)).json();
  }

  /** null when the board has nothing to suggest (204). */
  async getSuggestion(id: string): Promise<Suggestion | null> {
    const resp = await this.request(`/games/${id}/suggestion`);
    if (resp.status === 204) return null;
    return resp.json();
  }

  async postAnnotation(id: string, text: string): Promise<{ stored: boolean; tick?: number }> {
    return (await this.post(`/games/${id}/annotations`, { text })).json();
  }

  async getSavefile(id: string): Promise<string> {
    return (await this.request(`/games/${id}/savefile`)).text();
  }
}
