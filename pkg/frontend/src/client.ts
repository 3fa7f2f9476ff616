// Thin typed client over the session HTTP API. The fetch implementation is
// injectable so tests can run against an in-memory fixture server.

import type {
  CreateSessionBody,
  ExpansionResponse,
  ReadinessReport,
  SessionState,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (!response.ok) {
      let detail = `${response.status}`;
      try {
        const body = (await response.json()) as { detail?: string };
        if (body.detail) detail = body.detail;
      } catch {
        // keep the bare status
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body?: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
  }

  createSession(body: CreateSessionBody): Promise<SessionState> {
    return this.post<SessionState>("/sessions", body);
  }

  getSession(id: string): Promise<SessionState> {
    return this.request<SessionState>(`/sessions/${encodeURIComponent(id)}`);
  }

  readiness(id: string): Promise<ReadinessReport> {
    return this.request<ReadinessReport>(
      `/sessions/${encodeURIComponent(id)}/readiness`,
    );
  }

  markConsulted(id: string, candidateId: string): Promise<SessionState> {
    return this.post<SessionState>(
      `/sessions/${encodeURIComponent(id)}/consulted/${encodeURIComponent(candidateId)}`,
    );
  }

  more(id: string, candidateId: string): Promise<ExpansionResponse> {
    return this.post<ExpansionResponse>(
      `/sessions/${encodeURIComponent(id)}/more/${encodeURIComponent(candidateId)}`,
    );
  }

  adopt(id: string, candidateId: string): Promise<SessionState> {
    return this.post<SessionState>(
      `/sessions/${encodeURIComponent(id)}/adopt/${encodeURIComponent(candidateId)}`,
    );
  }
}
