/** Typed fetch client for the assistant service. */

import type {
  CreateSessionOptions,
  SessionView,
  VocabularyInfo,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: unknown,
  ) {
    super(typeof detail === "string" ? detail : JSON.stringify(detail));
    this.name = "ApiError";
  }
}

/** 409: the reported colors rule out every remaining word. */
export class ContradictionError extends ApiError {
  constructor(detail: unknown) {
    super(409, detail);
    this.name = "ContradictionError";
  }

  get hint(): string {
    const d = this.detail as { hint?: string } | null;
    return d && typeof d.hint === "string" ? d.hint : "undo the last report";
  }
}

export class AssistantClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await this.fetchFn(`${this.baseUrl}${path}`, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    let body: unknown = null;
    const text = await res.text();
    if (text) {
      try {
        body = JSON.parse(text);
      } catch {
        body = text;
      }
    }
    if (!res.ok) {
      const detail =
        body && typeof body === "object" && "detail" in body
          ? (body as { detail: unknown }).detail
          : body;
      if (res.status === 409) throw new ContradictionError(detail);
      throw new ApiError(res.status, detail);
    }
    return body as T;
  }

  vocabularies(): Promise<VocabularyInfo[]> {
    return this.request("/v1/vocabularies");
  }

  createSession(opts: CreateSessionOptions = {}): Promise<SessionView> {
    return this.request("/v1/sessions", {
      method: "POST",
      body: JSON.stringify(opts),
    });
  }

  getSession(id: string): Promise<SessionView> {
    return this.request(`/v1/sessions/${id}`);
  }

  feedback(id: string, guess: string, pattern: string): Promise<SessionView> {
    return this.request(`/v1/sessions/${id}/feedback`, {
      method: "POST",
      body: JSON.stringify({ guess, pattern }),
    });
  }

  undo(id: string): Promise<SessionView> {
    return this.request(`/v1/sessions/${id}/undo`, { method: "POST" });
  }
}
