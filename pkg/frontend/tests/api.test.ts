import { describe, expect, it } from "vitest";

import { ApiError, AssistantClient, ContradictionError } from "../src/api.js";

interface Captured {
  url: string;
  method: string;
  body: unknown;
}

function stubFetch(
  status: number,
  payload: unknown,
): { fetchFn: typeof fetch; calls: Captured[] } {
  const calls: Captured[] = [];
  const fetchFn = (async (input: RequestInfo | URL, init?: RequestInit) => {
    calls.push({
      url: String(input),
      method: init?.method ?? "GET",
      body: init?.body ? JSON.parse(String(init.body)) : null,
    });
    return new Response(JSON.stringify(payload), {
      status,
      headers: { "content-type": "application/json" },
    });
  }) as typeof fetch;
  return { fetchFn, calls };
}

describe("AssistantClient", () => {
  it("creates sessions against the configured base url", async () => {
    const { fetchFn, calls } = stubFetch(201, { id: "abc", suggestion: "aue" });
    const client = new AssistantClient("http://svc:9", fetchFn);
    const view = await client.createSession({ vocabulary: "words_3", algorithm: "greedy" });
    expect(view.id).toBe("abc");
    expect(calls[0]?.url).toBe("http://svc:9/v1/sessions");
    expect(calls[0]?.method).toBe("POST");
    expect(calls[0]?.body).toEqual({ vocabulary: "words_3", algorithm: "greedy" });
  });

  it("posts feedback with guess and pattern", async () => {
    const { fetchFn, calls } = stubFetch(200, { id: "abc", solved: false });
    const client = new AssistantClient("http://svc:9", fetchFn);
    await client.feedback("abc", "aue", "XYG");
    expect(calls[0]?.url).toBe("http://svc:9/v1/sessions/abc/feedback");
    expect(calls[0]?.body).toEqual({ guess: "aue", pattern: "XYG" });
  });

  it("maps 409 to ContradictionError with the service hint", async () => {
    const detail = { error: "contradiction", message: "m", hint: "undo it" };
    const { fetchFn } = stubFetch(409, { detail });
    const client = new AssistantClient("http://svc:9", fetchFn);
    const err = await client.feedback("abc", "aue", "XXX").catch((e) => e);
    expect(err).toBeInstanceOf(ContradictionError);
    expect((err as ContradictionError).hint).toBe("undo it");
    expect((err as ContradictionError).status).toBe(409);
  });

  it("maps other failures to ApiError with status and detail", async () => {
    const { fetchFn } = stubFetch(404, { detail: "no session xyz" });
    const client = new AssistantClient("http://svc:9", fetchFn);
    const err = await client.getSession("xyz").catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err).not.toBeInstanceOf(ContradictionError);
    expect((err as ApiError).status).toBe(404);
    expect((err as ApiError).message).toContain("no session");
  });

  it("undo posts to the undo route", async () => {
    const { fetchFn, calls } = stubFetch(200, { id: "abc" });
    const client = new AssistantClient("http://svc:9", fetchFn);
    await client.undo("abc");
    expect(calls[0]?.url).toBe("http://svc:9/v1/sessions/abc/undo");
    expect(calls[0]?.method).toBe("POST");
  });
});
