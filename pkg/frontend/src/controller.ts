/** Session controller: owns the client-side view state and talks to the
 * service. Optimistic updates are deliberately absent -- every state
 * change round-trips, and the session view is always re-fetched from the
 * service after a mutation. */

import { ApiClient, ServiceError } from "./api";
import type {
  ComputeReport,
  CurvesResponse,
  GeometryResponse,
  ScenarioDoc,
  SessionView,
  Sign,
  FoldReport,
  TestSpec,
} from "./types";

export interface WhatIfProjection {
  test: string;
  result: Sign;
  report: FoldReport;
}

export interface CurvePanelData {
  test: string;
  spec: TestSpec;
  curves: CurvesResponse;
  /** null when the service reports the geometry as undefined; the notice
   * explains why markers are missing. */
  geometry: GeometryResponse | null;
  notice: string | null;
}

export class SessionController {
  session: SessionView | null = null;
  projections: WhatIfProjection[] = [];
  /** Per-test dominance strings at the current posterior, straight from
   * the compute endpoint. */
  dominance: ComputeReport | null = null;
  curvePanel: CurvePanelData | null = null;

  constructor(readonly api: ApiClient) {}

  async start(pretestProbability: number, roster: Record<string, TestSpec>): Promise<void> {
    const doc: ScenarioDoc = {
      pretest_probability: pretestProbability,
      tests: roster,
      sequence: [],
    };
    this.session = await this.api.createSession(doc);
    this.projections = [];
    this.curvePanel = null;
    await this.refreshDominance();
  }

  private requireSession(): SessionView {
    if (!this.session) {
      throw new Error("no active session");
    }
    return this.session;
  }

  /** Re-fetch the canonical session state after a mutation. */
  private async refresh(): Promise<void> {
    const current = this.requireSession();
    this.session = await this.api.getSession(current.session_id);
    this.projections = [];
    await this.refreshDominance();
  }

  /** Ask the service which curve dominates each roster test at the
   * session's current posterior. Pure data plumbing: the pretest field
   * of the stateless compute call is the posterior the service itself
   * reported. */
  private async refreshDominance(): Promise<void> {
    const session = this.requireSession();
    this.dominance = await this.api.compute({
      pretest_probability: session.posterior_disease,
      tests: session.scenario.tests,
      sequence: [],
    });
  }

  async recordOutcome(test: string, result: Sign): Promise<void> {
    const session = this.requireSession();
    await this.api.appendOutcome(session.session_id, test, result);
    await this.refresh();
  }

  async undo(): Promise<void> {
    const session = this.requireSession();
    await this.api.undoLast(session.session_id);
    await this.refresh();
  }

  get canUndo(): boolean {
    return (this.session?.posterior_trace.length ?? 0) > 0;
  }

  /** Fetch a hypothetical posterior; the session itself is untouched. */
  async exploreWhatIf(test: string, result: Sign): Promise<void> {
    const session = this.requireSession();
    const report = await this.api.whatIf(session.session_id, test, result);
    this.projections = this.projections
      .filter((p) => !(p.test === test && p.result === result))
      .concat([{ test, result, report }]);
  }

  async loadCurvePanel(test: string): Promise<void> {
    const session = this.requireSession();
    const spec = session.scenario.tests[test];
    if (!spec) {
      throw new Error(`undeclared test ${test}`);
    }
    const curves = await this.api.curves(spec.sensitivity, spec.specificity, 101);
    let geometry: GeometryResponse | null = null;
    let notice: string | null = null;
    try {
      geometry = await this.api.geometry(spec.sensitivity, spec.specificity);
    } catch (err) {
      if (err instanceof ServiceError) {
        notice = `${err.code}: ${err.message}`;
      } else {
        notice = err instanceof Error ? err.message : String(err);
      }
    }
    this.curvePanel = { test, spec, curves, geometry, notice };
  }
}
