/** Thin typed client for the /v1 JSON API; no math, only transport. */

import type {
  ComputeReport,
  CurvesResponse,
  FoldReport,
  GeometryResponse,
  ScenarioDoc,
  SessionView,
  Sign,
} from "./types";

/** A typed error body returned by the service. */
export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ServiceError";
  }
}

/** The service could not be reached at all. */
export class ConnectionError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "ConnectionError";
  }
}

async function parseError(response: Response): Promise<never> {
  let code = "HttpError";
  let message = `${response.status} ${response.statusText}`;
  try {
    const body = (await response.json()) as { error?: { code: string; message: string } };
    if (body.error) {
      code = body.error.code;
      message = body.error.message;
    }
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new ServiceError(response.status, code, message);
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response;
    try {
      response = await fetch(`${this.baseUrl}${path}`, {
        method,
        headers: body === undefined ? undefined : { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      throw new ConnectionError(`service unreachable at ${this.baseUrl}: ${String(err)}`);
    }
    if (!response.ok) {
      await parseError(response);
    }
    return (await response.json()) as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("GET", "/v1/health");
  }

  compute(doc: ScenarioDoc): Promise<ComputeReport> {
    return this.request("POST", "/v1/compute", doc);
  }

  createSession(doc: ScenarioDoc): Promise<SessionView> {
    return this.request("POST", "/v1/sessions", doc);
  }

  getSession(id: string): Promise<SessionView> {
    return this.request("GET", `/v1/sessions/${id}`);
  }

  /** Raw GET of the session, for byte-level comparisons. */
  async getSessionText(id: string): Promise<string> {
    const response = await fetch(`${this.baseUrl}/v1/sessions/${id}`);
    if (!response.ok) {
      await parseError(response);
    }
    return response.text();
  }

  appendOutcome(id: string, test: string, result: Sign): Promise<FoldReport> {
    return this.request("POST", `/v1/sessions/${id}/outcomes`, { test, result });
  }

  undoLast(id: string): Promise<FoldReport> {
    return this.request("DELETE", `/v1/sessions/${id}/outcomes/last`);
  }

  whatIf(id: string, test: string, result: Sign): Promise<FoldReport> {
    return this.request("POST", `/v1/sessions/${id}/whatif`, { test, result });
  }

  curves(a: number, b: number, n: number): Promise<CurvesResponse> {
    return this.request("GET", `/v1/curves?a=${a}&b=${b}&n=${n}`);
  }

  geometry(a: number, b: number): Promise<GeometryResponse> {
    return this.request("GET", `/v1/geometry?a=${a}&b=${b}`);
  }
}
