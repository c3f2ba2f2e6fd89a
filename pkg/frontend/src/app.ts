/** App wiring: state transitions, error surfacing, re-render loop. */

import { ApiClient, ConnectionError, ServiceError } from "./api";
import { SessionController } from "./controller";
import { render, type Actions, type UiState } from "./render";
import type { Sign, TestSpec } from "./types";

export interface App {
  controller: SessionController;
  state: UiState;
  /** Resolves when the in-flight action (if any) has settled. */
  idle(): Promise<void>;
  rerender(): void;
}

/** Numbers in form fields are parsed as-is and sent to the service; the
 * service is the sole validator (out-of-range values come back as 400s
 * and are shown inline). */
function parseField(raw: string): number {
  return Number(raw);
}

export function createApp(root: HTMLElement, api: ApiClient): App {
  const controller = new SessionController(api);
  const state: UiState = { banner: null, formError: null, dialog: null, rosterRows: 3 };
  let pending: Promise<void> = Promise.resolve();

  const rerender = () => render(root, controller, state, actions);

  function surface(err: unknown, where: "form" | "dialog"): void {
    if (err instanceof ConnectionError) {
      state.banner = err.message;
      return;
    }
    if (err instanceof ServiceError) {
      if (where === "form") {
        state.formError = `${err.code}: ${err.message}`;
      } else {
        state.dialog = { code: err.code, message: err.message };
      }
      return;
    }
    state.dialog = { code: "Error", message: err instanceof Error ? err.message : String(err) };
  }

  function run(where: "form" | "dialog", task: () => Promise<void>): void {
    pending = (async () => {
      state.banner = null;
      if (where === "form") {
        state.formError = null;
      }
      try {
        await task();
      } catch (err) {
        surface(err, where);
      }
      rerender();
    })();
  }

  const actions: Actions = {
    start(pretest, roster) {
      run("form", async () => {
        const tests: Record<string, TestSpec> = {};
        for (const row of roster) {
          tests[row.name] = {
            sensitivity: parseField(row.sensitivity),
            specificity: parseField(row.specificity),
          };
        }
        await controller.start(parseField(pretest), tests);
      });
    },
    record(test, result: Sign) {
      run("dialog", () => controller.recordOutcome(test, result));
    },
    undo() {
      run("dialog", () => controller.undo());
    },
    whatIf(test, result: Sign) {
      run("dialog", () => controller.exploreWhatIf(test, result));
    },
    showCurves(test) {
      run("dialog", () => controller.loadCurvePanel(test));
    },
    dismissDialog() {
      state.dialog = null;
      rerender();
    },
  };

  rerender();
  return {
    controller,
    state,
    idle: () => pending,
    rerender,
  };
}
