import type { SessionState, VariableInfo, VertexId } from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function asJson<T>(resp: Response): Promise<T> {
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = await resp.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      /* keep statusText */
    }
    throw new ApiError(resp.status, detail);
  }
  return (await resp.json()) as T;
}

export class ExplorerClient {
  constructor(
    private base: string,
    private doFetch: typeof fetch = fetch.bind(globalThis),
  ) {}

  async createSession(n: number): Promise<{ id: string; state: SessionState }> {
    const resp = await this.doFetch(`${this.base}/sessions`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ n }),
    });
    return asJson(resp);
  }

  async mutate(id: string, vertex: VertexId): Promise<SessionState> {
    const resp = await this.doFetch(`${this.base}/sessions/${id}/mutate`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ vertex }),
    });
    return asJson(resp);
  }

  async undo(id: string): Promise<SessionState> {
    const resp = await this.doFetch(`${this.base}/sessions/${id}/undo`, {
      method: "POST",
    });
    return asJson(resp);
  }

  async state(id: string): Promise<SessionState> {
    const resp = await this.doFetch(`${this.base}/sessions/${id}/state`);
    return asJson(resp);
  }

  async variable(id: string, vertex: VertexId): Promise<VariableInfo> {
    const resp = await this.doFetch(
      `${this.base}/sessions/${id}/variable/${vertex[0]},${vertex[1]}`,
    );
    return asJson(resp);
  }

  async drop(id: string): Promise<void> {
    const resp = await this.doFetch(`${this.base}/sessions/${id}`, {
      method: "DELETE",
    });
    if (!resp.ok) throw new ApiError(resp.status, resp.statusText);
  }
}
