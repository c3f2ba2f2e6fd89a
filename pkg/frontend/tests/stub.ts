/** A programmable fetch stub standing in for the /v1 service.
 *
 * Responses are literal fixtures -- nothing is computed -- so tests can
 * assert that every numeral the UI renders is one of these fields.
 */

import type { FoldReport, SessionView } from "../src/types";

export interface Call {
  method: string;
  path: string;
  body: unknown;
}

type Responder = (call: Call) => { status: number; body: unknown } | undefined;

export class StubService {
  calls: Call[] = [];
  private responders: Responder[] = [];
  private original: typeof fetch | undefined;

  on(method: string, pathPrefix: string, handler: (call: Call) => { status: number; body: unknown }): this {
    this.responders.push((call) => {
      if (call.method === method && call.path.startsWith(pathPrefix)) {
        return handler(call);
      }
      return undefined;
    });
    return this;
  }

  install(): void {
    this.original = globalThis.fetch;
    globalThis.fetch = (async (input: RequestInfo | URL, init?: RequestInit) => {
      const url = new URL(String(input));
      const call: Call = {
        method: init?.method ?? "GET",
        path: url.pathname + url.search,
        body: init?.body ? JSON.parse(String(init.body)) : undefined,
      };
      this.calls.push(call);
      for (const responder of this.responders) {
        const hit = responder(call);
        if (hit) {
          return new Response(JSON.stringify(hit.body), {
            status: hit.status,
            headers: { "Content-Type": "application/json" },
          });
        }
      }
      return new Response(JSON.stringify({ error: { code: "NotFound", message: call.path } }), {
        status: 404,
        headers: { "Content-Type": "application/json" },
      });
    }) as typeof fetch;
  }

  restore(): void {
    if (this.original) {
      globalThis.fetch = this.original;
    }
  }

  callsTo(method: string, pathPrefix: string): Call[] {
    return this.calls.filter((c) => c.method === method && c.path.startsWith(pathPrefix));
  }
}

/** Collect every numeric leaf of a fixture as its full-precision string. */
export function numericLeaves(value: unknown, into = new Set<string>()): Set<string> {
  if (typeof value === "number") {
    into.add(String(value));
  } else if (Array.isArray(value)) {
    for (const item of value) numericLeaves(item, into);
  } else if (value !== null && typeof value === "object") {
    for (const item of Object.values(value)) numericLeaves(item, into);
  }
  return into;
}

/** Fixture session: deliberately non-round numbers. */
export const SESSION_EMPTY: SessionView = {
  session_id: "stub-session",
  created: "2026-08-11T09:00:00+00:00",
  updated: "2026-08-11T09:00:00+00:00",
  scenario: {
    pretest_probability: 0.1371,
    tests: {
      igm: { sensitivity: 0.7213, specificity: 0.9465 },
      pcr: { sensitivity: 0.8123, specificity: 0.9017 },
    },
    sequence: [],
  },
  posterior_trace: [],
  posterior_disease: 0.1371,
  posterior_no_disease: 0.8629,
  formula_used: null,
};

export const SESSION_AFTER_APPEND: SessionView = {
  ...SESSION_EMPTY,
  updated: "2026-08-11T09:01:00+00:00",
  scenario: {
    ...SESSION_EMPTY.scenario,
    sequence: [{ test: "pcr", result: "positive" }],
  },
  posterior_trace: [{ outcome: "pcr+", posterior_disease: 0.5676544201 }],
  posterior_disease: 0.5676544201,
  posterior_no_disease: 0.4323455799,
  formula_used: "SerialPPV",
};

export const APPEND_REPORT: FoldReport = {
  posterior_disease: 0.5676544201,
  posterior_no_disease: 0.4323455799,
  formula_used: "SerialPPV",
  trace: [{ outcome: "pcr+", posterior_disease: 0.5676544201 }],
};

export const WHATIF_REPORT: FoldReport = {
  posterior_disease: 0.9143261772,
  posterior_no_disease: 0.0856738228,
  formula_used: "SerialPPV",
  trace: [
    { outcome: "pcr+", posterior_disease: 0.5676544201 },
    { outcome: "igm+", posterior_disease: 0.9143261772 },
  ],
};

/** Dominance strings only; the UI renders no numerals from this payload. */
export const DOMINANCE_REPORT = {
  pretest_probability: 0.1371,
  tests: {
    igm: {
      sensitivity: 0.7213,
      specificity: 0.9465,
      informative: true,
      ppv: 0.682,
      npv: 0.95,
      prevalence_threshold: 0.2,
      dominance: "NegativeDominant",
    },
    pcr: {
      sensitivity: 0.8123,
      specificity: 0.9017,
      informative: true,
      ppv: 0.568,
      npv: 0.967,
      prevalence_threshold: 0.25,
      dominance: "NegativeDominant",
    },
  },
  sequence: null,
};

export const CURVES_FIXTURE = {
  phi_values: [0.0, 0.25, 0.5, 0.75, 1.0],
  ppv_values: [0.0, 0.7341, 0.8918, 0.9612, 1.0],
  npv_values: [1.0, 0.9234, 0.8271, 0.6423, 0.0],
};

export const GEOMETRY_FIXTURE = {
  sensitivity: 0.8123,
  specificity: 0.9017,
  prevalence_threshold: 0.2563718904,
  intersection: { phi_i: 0.4321987654, method: "ClosedForm", residual: 1e-13 },
  ndp_area: 0.1034567,
  pdp_area: 0.1934571,
  quadrature_error_estimate: 3e-11,
};
