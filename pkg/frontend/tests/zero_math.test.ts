// @vitest-environment jsdom
/** Zero-math audit and what-if purity against a stubbed service. */

import { afterEach, beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { createApp, type App } from "../src/app";
import { auditRenderedNumerals } from "./audit";
import {
  APPEND_REPORT,
  CURVES_FIXTURE,
  DOMINANCE_REPORT,
  GEOMETRY_FIXTURE,
  SESSION_AFTER_APPEND,
  SESSION_EMPTY,
  StubService,
  WHATIF_REPORT,
  numericLeaves,
} from "./stub";

let stub: StubService;
let root: HTMLElement;
let app: App;

function freshApp(): App {
  root = document.createElement("div");
  document.body.replaceChildren(root);
  return createApp(root, new ApiClient("http://stub.test"));
}

async function startSession(): Promise<void> {
  (root.querySelector('[data-testid="pretest-input"]') as HTMLInputElement).value = "0.1371";
  (root.querySelector('[data-testid="roster-name-0"]') as HTMLInputElement).value = "pcr";
  (root.querySelector('[data-testid="roster-se-0"]') as HTMLInputElement).value = "0.8123";
  (root.querySelector('[data-testid="roster-sp-0"]') as HTMLInputElement).value = "0.9017";
  (root.querySelector('[data-testid="roster-name-1"]') as HTMLInputElement).value = "igm";
  (root.querySelector('[data-testid="roster-se-1"]') as HTMLInputElement).value = "0.7213";
  (root.querySelector('[data-testid="roster-sp-1"]') as HTMLInputElement).value = "0.9465";
  (root.querySelector('[data-testid="start-session"]') as HTMLButtonElement).click();
  await app.idle();
}

beforeEach(() => {
  stub = new StubService();
  let session = SESSION_EMPTY;
  stub
    .on("POST", "/v1/sessions/stub-session/outcomes", () => {
      session = SESSION_AFTER_APPEND;
      return { status: 200, body: APPEND_REPORT };
    })
    .on("POST", "/v1/sessions/stub-session/whatif", () => ({ status: 200, body: WHATIF_REPORT }))
    .on("POST", "/v1/sessions", () => ({ status: 201, body: session }))
    .on("GET", "/v1/sessions/stub-session", () => ({ status: 200, body: session }))
    .on("POST", "/v1/compute", () => ({ status: 200, body: DOMINANCE_REPORT }))
    .on("GET", "/v1/curves", () => ({ status: 200, body: CURVES_FIXTURE }))
    .on("GET", "/v1/geometry", () => ({ status: 200, body: GEOMETRY_FIXTURE }));
  stub.install();
  app = freshApp();
});

afterEach(() => {
  stub.restore();
});

const STUB_VALUES = numericLeaves({
  SESSION_EMPTY,
  SESSION_AFTER_APPEND,
  APPEND_REPORT,
  WHATIF_REPORT,
  CURVES_FIXTURE,
  GEOMETRY_FIXTURE,
  DOMINANCE_REPORT,
});

describe("zero-math audit", () => {
  it("renders only stub fields after starting a session", async () => {
    await startSession();
    expect(root.querySelector('[data-testid="trace"]')).not.toBeNull();
    const audited = auditRenderedNumerals(root, STUB_VALUES);
    expect(audited).toBeGreaterThan(5); // prior, two posteriors, roster values
  });

  it("renders only stub fields after recording an outcome", async () => {
    await startSession();
    (root.querySelector('[data-testid="record-pcr-positive"]') as HTMLButtonElement).click();
    await app.idle();
    const trace = root.querySelector('[data-testid="trace"]')!;
    expect(trace.textContent).toContain("pcr+");
    expect(trace.textContent).toContain("0.5677"); // formatted stub field
    auditRenderedNumerals(root, STUB_VALUES);
  });

  it("renders only stub fields in what-if projections, on both signs", async () => {
    await startSession();
    (root.querySelector('[data-testid="whatif-igm-positive"]') as HTMLButtonElement).click();
    await app.idle();
    (root.querySelector('[data-testid="whatif-igm-negative"]') as HTMLButtonElement).click();
    await app.idle();
    expect(root.querySelector('[data-testid="projection-igm-positive"]')).not.toBeNull();
    expect(root.querySelector('[data-testid="projection-igm-negative"]')).not.toBeNull();
    auditRenderedNumerals(root, STUB_VALUES);
  });

  it("renders only stub fields in the curve panel, markers included", async () => {
    await startSession();
    (root.querySelector('[data-testid="curves-pcr"]') as HTMLButtonElement).click();
    await app.idle();
    const panel = root.querySelector('[data-testid="curve-panel"]')!;
    expect(panel.querySelectorAll("polyline").length).toBe(2);
    expect(panel.textContent).toContain("0.2564"); // threshold marker, formatted
    expect(panel.textContent).toContain("0.4322"); // crossing marker, formatted
    auditRenderedNumerals(root, STUB_VALUES);
  });

  it("full precision is exposed on hover titles", async () => {
    await startSession();
    const prior = root.querySelector<HTMLElement>('[data-metric="scenario.pretest_probability"]')!;
    expect(prior.getAttribute("title")).toBe("0.1371");
    expect(prior.textContent).toBe("0.1371");
  });
});

describe("what-if purity", () => {
  it("never calls a mutating endpoint and leaves the session view unchanged", async () => {
    await startSession();
    const before = root.querySelector(".posterior-panel")!.innerHTML;
    for (const id of [
      "whatif-pcr-positive",
      "whatif-pcr-negative",
      "whatif-igm-positive",
    ]) {
      (root.querySelector(`[data-testid="${id}"]`) as HTMLButtonElement).click();
      await app.idle();
    }
    expect(stub.callsTo("POST", "/v1/sessions/stub-session/outcomes")).toHaveLength(0);
    expect(stub.callsTo("DELETE", "/v1/sessions")).toHaveLength(0);
    expect(root.querySelector(".posterior-panel")!.innerHTML).toBe(before);
  });
});

describe("undo affordance", () => {
  it("is disabled on an empty trace and enabled after an append", async () => {
    await startSession();
    expect(
      (root.querySelector('[data-testid="undo"]') as HTMLButtonElement).disabled,
    ).toBe(true);
    (root.querySelector('[data-testid="record-pcr-positive"]') as HTMLButtonElement).click();
    await app.idle();
    expect(
      (root.querySelector('[data-testid="undo"]') as HTMLButtonElement).disabled,
    ).toBe(false);
  });
});
