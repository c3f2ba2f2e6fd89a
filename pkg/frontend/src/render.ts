/** Pure DOM rendering of the app state. All numerals pass through the
 * metric cell so they can be audited against service responses. */

import { renderCurvePanel } from "./chart";
import type { SessionController } from "./controller";
import { el, metric } from "./dom";
import type { Sign } from "./types";

export interface Actions {
  start(pretest: string, roster: { name: string; sensitivity: string; specificity: string }[]): void;
  record(test: string, result: Sign): void;
  undo(): void;
  whatIf(test: string, result: Sign): void;
  showCurves(test: string): void;
  dismissDialog(): void;
}

export interface UiState {
  banner: string | null;
  formError: string | null;
  dialog: { code: string; message: string } | null;
  rosterRows: number;
}

function startForm(state: UiState, actions: Actions): HTMLElement {
  const pretest = el("input", {
    name: "pretest",
    "data-testid": "pretest-input",
    placeholder: "pretest probability",
  });
  const rows: { name: HTMLInputElement; se: HTMLInputElement; sp: HTMLInputElement }[] = [];
  const rosterBox = el("div", { class: "roster" });
  for (let i = 0; i < state.rosterRows; i++) {
    const name = el("input", { placeholder: "test name", "data-testid": `roster-name-${i}` });
    const se = el("input", { placeholder: "sensitivity", "data-testid": `roster-se-${i}` });
    const sp = el("input", { placeholder: "specificity", "data-testid": `roster-sp-${i}` });
    rows.push({ name, se, sp });
    rosterBox.append(el("div", { class: "roster-row" }, name, se, sp));
  }
  const submit = el("button", { "data-testid": "start-session" }, "start session");
  submit.addEventListener("click", () => {
    actions.start(
      pretest.value,
      rows
        .filter((r) => r.name.value.trim() !== "")
        .map((r) => ({
          name: r.name.value.trim(),
          sensitivity: r.se.value,
          specificity: r.sp.value,
        })),
    );
  });
  const form = el(
    "section",
    { class: "start-form", "data-testid": "start-form" },
    el("h2", {}, "new session"),
    el("div", {}, pretest),
    rosterBox,
    submit,
  );
  if (state.formError) {
    form.append(el("p", { class: "form-error", "data-testid": "form-error" }, state.formError));
  }
  return form;
}

function scenarioSummary(controller: SessionController): HTMLElement {
  const session = controller.session!;
  const list = el("dl", { class: "scenario-summary" });
  list.append(
    el("dt", {}, "pretest probability"),
    el("dd", {}, metric("scenario.pretest_probability", session.scenario.pretest_probability)),
  );
  for (const [name, spec] of Object.entries(session.scenario.tests)) {
    list.append(
      el("dt", {}, name),
      el(
        "dd",
        {},
        "sensitivity ",
        metric(`scenario.tests.${name}.sensitivity`, spec.sensitivity),
        " / specificity ",
        metric(`scenario.tests.${name}.specificity`, spec.specificity),
      ),
    );
  }
  return el("section", { class: "scenario" }, el("h3", {}, "scenario"), list);
}

function traceList(controller: SessionController): HTMLElement {
  const session = controller.session!;
  const items = el("ol", { class: "trace", "data-testid": "trace" });
  for (const [i, entry] of session.posterior_trace.entries()) {
    items.append(
      el(
        "li",
        { class: "trace-step" },
        el("span", { class: "trace-outcome" }, entry.outcome),
        " ",
        metric(`posterior_trace[${i}].posterior_disease`, entry.posterior_disease),
      ),
    );
  }
  if (session.posterior_trace.length === 0) {
    items.append(el("li", { class: "trace-empty" }, "no results recorded yet"));
  }
  return el("section", { class: "trace-panel" }, el("h3", {}, "posterior trace"), items);
}

function dominanceBadges(controller: SessionController): HTMLElement {
  const box = el("div", { class: "dominance", "data-testid": "dominance" });
  const report = controller.dominance;
  if (report) {
    for (const [name, entry] of Object.entries(report.tests)) {
      const value = entry.dominance;
      const text = typeof value === "string" ? value : value.error.code;
      box.append(el("span", { class: `badge badge-${text}` }, `${name}: ${text}`));
    }
  }
  return box;
}

function currentPosterior(controller: SessionController, actions: Actions): HTMLElement {
  const session = controller.session!;
  const undo = el("button", { "data-testid": "undo" }, "undo last");
  if (!controller.canUndo) {
    undo.setAttribute("disabled", "disabled");
  }
  undo.addEventListener("click", () => actions.undo());
  return el(
    "section",
    { class: "posterior-panel" },
    el("h3", {}, "current posterior"),
    el(
      "p",
      {},
      "disease ",
      metric("posterior_disease", session.posterior_disease),
      "  no disease ",
      metric("posterior_no_disease", session.posterior_no_disease),
    ),
    el("p", { class: "formula" }, session.formula_used ? `formula: ${session.formula_used}` : "prior only"),
    dominanceBadges(controller),
    undo,
  );
}

function outcomeButtons(controller: SessionController, actions: Actions): HTMLElement {
  const session = controller.session!;
  const box = el("section", { class: "record-panel" }, el("h3", {}, "record result"));
  for (const name of Object.keys(session.scenario.tests)) {
    const row = el("div", { class: "record-row" }, el("span", { class: "record-name" }, name));
    for (const sign of ["positive", "negative"] as Sign[]) {
      const btn = el(
        "button",
        { "data-testid": `record-${name}-${sign}` },
        sign === "positive" ? `${name} +` : `${name} −`,
      );
      btn.addEventListener("click", () => actions.record(name, sign));
      row.append(btn);
    }
    const curvesBtn = el("button", { "data-testid": `curves-${name}`, class: "link" }, "curves");
    curvesBtn.addEventListener("click", () => actions.showCurves(name));
    row.append(curvesBtn);
    box.append(row);
  }
  return box;
}

function whatIfPanel(controller: SessionController, actions: Actions): HTMLElement {
  const session = controller.session!;
  const box = el("section", { class: "whatif-panel", "data-testid": "whatif-panel" });
  box.append(el("h3", {}, "what if the next result were…"));
  for (const name of Object.keys(session.scenario.tests)) {
    const row = el("div", { class: "whatif-row" }, el("span", {}, name));
    for (const sign of ["positive", "negative"] as Sign[]) {
      const btn = el(
        "button",
        { "data-testid": `whatif-${name}-${sign}` },
        sign === "positive" ? "+" : "−",
      );
      btn.addEventListener("click", () => actions.whatIf(name, sign));
      row.append(btn);
    }
    box.append(row);
  }
  for (const [i, projection] of controller.projections.entries()) {
    box.append(
      el(
        "div",
        { class: "projection", "data-testid": `projection-${projection.test}-${projection.result}` },
        el("span", {}, `${projection.test} ${projection.result === "positive" ? "+" : "−"} → disease `),
        metric(`projections[${i}].posterior_disease`, projection.report.posterior_disease),
        el("span", {}, " (current "),
        metric("posterior_disease", controller.session!.posterior_disease),
        el("span", {}, ")"),
      ),
    );
  }
  return box;
}

export function render(
  root: HTMLElement,
  controller: SessionController,
  state: UiState,
  actions: Actions,
): void {
  root.replaceChildren();
  if (state.banner) {
    root.append(el("div", { class: "banner", "data-testid": "connection-banner" }, state.banner));
  }
  root.append(el("h1", {}, "sequential screening console"));
  if (!controller.session) {
    root.append(startForm(state, actions));
  } else {
    root.append(
      scenarioSummary(controller),
      currentPosterior(controller, actions),
      traceList(controller),
      outcomeButtons(controller, actions),
      whatIfPanel(controller, actions),
    );
    if (controller.curvePanel) {
      root.append(
        renderCurvePanel(controller.curvePanel, controller.session.scenario.pretest_probability),
      );
    }
  }
  if (state.dialog) {
    const dismiss = el("button", { "data-testid": "dismiss-dialog" }, "dismiss");
    dismiss.addEventListener("click", () => actions.dismissDialog());
    root.append(
      el(
        "div",
        { class: "dialog-backdrop" },
        el(
          "div",
          { class: "dialog", role: "alertdialog", "data-testid": "error-dialog" },
          el("h3", {}, state.dialog.code),
          el("p", {}, state.dialog.message),
          dismiss,
        ),
      ),
    );
  }
}
