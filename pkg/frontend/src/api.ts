/** Thin fetch client for the analysis service. */

import type {
  AnalysisReport,
  FamilyInfo,
  GraphJson,
  HealthInfo,
  MoveJson,
  PositionJson,
} from "./types.js";

/** Non-2xx answer from the service; `reason` is set for 409/422 bodies. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
    readonly reason?: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** FastAPI wraps error payloads in {"detail": string | {reason, detail}}. */
function toApiError(status: number, body: unknown): ApiError {
  if (body && typeof body === "object" && "detail" in body) {
    const detail = (body as { detail: unknown }).detail;
    if (detail && typeof detail === "object") {
      const d = detail as { reason?: string; detail?: string };
      return new ApiError(status, d.detail ?? JSON.stringify(detail), d.reason);
    }
    return new ApiError(status, String(detail));
  }
  return new ApiError(status, `service answered ${status}`);
}

export type FetchLike = (
  url: string,
  init?: RequestInit,
) => Promise<Response>;

export class ApiClient {
  constructor(
    readonly base: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request(
    path: string,
    init?: RequestInit,
  ): Promise<unknown> {
    const response = await this.fetchFn(this.base + path, init);
    let body: unknown = null;
    try {
      body = await response.json();
    } catch {
      // non-JSON error page; fall through with body null
    }
    if (!response.ok) throw toApiError(response.status, body);
    return body;
  }

  private post(path: string, payload: unknown, signal?: AbortSignal) {
    return this.request(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
      signal,
    });
  }

  /** Graph bodies double as empty positions; the service accepts both. */
  analyze(
    position: PositionJson | GraphJson,
    signal?: AbortSignal,
  ): Promise<AnalysisReport> {
    return this.post("/api/analyze", position, signal) as Promise<AnalysisReport>;
  }

  move(position: PositionJson | GraphJson, move: MoveJson): Promise<PositionJson> {
    return this.post("/api/move", { position, move }) as Promise<PositionJson>;
  }

  async families(): Promise<FamilyInfo[]> {
    const body = (await this.request("/api/families")) as {
      families: FamilyInfo[];
    };
    return body.families;
  }

  family(
    name: string,
    params: Record<string, string | number | boolean> = {},
  ): Promise<GraphJson> {
    const query = new URLSearchParams();
    for (const [key, value] of Object.entries(params)) {
      query.set(key, String(value));
    }
    const suffix = query.size > 0 ? `?${query}` : "";
    return this.request(
      `/api/families/${encodeURIComponent(name)}${suffix}`,
    ) as Promise<GraphJson>;
  }

  health(): Promise<HealthInfo> {
    return this.request("/api/health") as Promise<HealthInfo>;
  }
}

/**
 * Keeps at most one analyze request in flight. A new call aborts the
 * previous one; a response that was superseded while in flight resolves
 * to null so the caller never applies a stale report.
 */
export class SingleFlight {
  private seq = 0;
  private controller: AbortController | null = null;

  async run<T>(job: (signal: AbortSignal) => Promise<T>): Promise<T | null> {
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    const ticket = ++this.seq;
    try {
      const value = await job(controller.signal);
      return ticket === this.seq ? value : null;
    } catch (err) {
      if (ticket !== this.seq) return null; // aborted by a newer request
      throw err;
    }
  }
}
