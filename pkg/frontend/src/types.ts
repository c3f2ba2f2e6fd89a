/** Wire types of the /v1 JSON API. */

export type Sign = "positive" | "negative";

export interface TestSpec {
  sensitivity: number;
  specificity: number;
}

export interface SequenceEntry {
  test: string;
  result: Sign;
}

export interface ScenarioDoc {
  pretest_probability: number;
  tests: Record<string, TestSpec>;
  sequence: SequenceEntry[];
  targets?: { target_ppv: number };
}

export interface TraceEntry {
  outcome: string;
  posterior_disease: number;
}

export interface SessionView {
  session_id: string;
  created: string;
  updated: string;
  scenario: ScenarioDoc;
  posterior_trace: TraceEntry[];
  posterior_disease: number;
  posterior_no_disease: number;
  formula_used: string | null;
}

export interface FoldReport {
  posterior_disease: number;
  posterior_no_disease: number;
  formula_used: string | null;
  trace: TraceEntry[];
}

export interface CurvesResponse {
  phi_values: number[];
  ppv_values: number[];
  npv_values: number[];
}

export interface GeometryResponse {
  sensitivity: number;
  specificity: number;
  prevalence_threshold: number;
  intersection: { phi_i: number; method: string; residual: number };
  ndp_area: number;
  pdp_area: number;
  quadrature_error_estimate: number;
}

export interface ErrorField {
  error: { code: string; message: string };
}

export interface ComputeTestEntry {
  sensitivity: number;
  specificity: number;
  informative: boolean;
  ppv: number;
  npv: number;
  prevalence_threshold: number | ErrorField;
  dominance: string | ErrorField;
  iterations_needed?: number;
}

export interface ComputeReport {
  pretest_probability: number;
  tests: Record<string, ComputeTestEntry>;
  sequence: (FoldReport & { outcomes: string[] }) | null;
}
