// @vitest-environment jsdom
/** End-to-end against the real service: spawn it, drive a session from
 * the DOM, and check the low-prior plan plays out as computed. */

import { spawn, type ChildProcess } from "node:child_process";
import net from "node:net";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { createApp, type App } from "../src/app";

let service: ChildProcess;
let baseUrl: string;

async function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = net.createServer();
    probe.once("error", reject);
    probe.listen(0, "127.0.0.1", () => {
      const address = probe.address() as net.AddressInfo;
      probe.close(() => resolve(address.port));
    });
  });
}

beforeAll(async () => {
  const port = await freePort();
  baseUrl = `http://127.0.0.1:${port}`;
  service = spawn(
    "python3",
    ["-m", "seqscreen.cli", "serve", "--bind", "127.0.0.1", "--port", String(port)],
    { stdio: "ignore" },
  );
  const deadline = Date.now() + 20_000;
  for (;;) {
    try {
      const response = await fetch(`${baseUrl}/v1/health`);
      if (response.ok) break;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) {
      throw new Error("service did not come up");
    }
    await new Promise((r) => setTimeout(r, 150));
  }
});

afterAll(() => {
  service?.kill("SIGINT");
});

describe("live session", () => {
  it("reaches the planned posterior after the planned number of positives", async () => {
    const api = new ApiClient(baseUrl);
    const root = document.createElement("div");
    document.body.replaceChildren(root);
    const app: App = createApp(root, api);

    // The plan: how many serial positives of this test does the service
    // say are needed to clear 0.95 from a 1% prior?
    const plan = await api.compute({
      pretest_probability: 0.01,
      tests: { pcr: { sensitivity: 0.9, specificity: 0.9 } },
      sequence: [],
      targets: { target_ppv: 0.95 },
    });
    const planned = plan.tests.pcr.iterations_needed!;
    expect(planned).toBe(4);

    (root.querySelector('[data-testid="pretest-input"]') as HTMLInputElement).value = "0.01";
    (root.querySelector('[data-testid="roster-name-0"]') as HTMLInputElement).value = "pcr";
    (root.querySelector('[data-testid="roster-se-0"]') as HTMLInputElement).value = "0.9";
    (root.querySelector('[data-testid="roster-sp-0"]') as HTMLInputElement).value = "0.9";
    (root.querySelector('[data-testid="start-session"]') as HTMLButtonElement).click();
    await app.idle();
    expect(root.querySelector('[data-testid="trace"]')!.textContent).toContain(
      "no results recorded yet",
    );
    const prior = root.querySelector<HTMLElement>('[data-metric="posterior_disease"]')!;
    expect(prior.textContent).toBe("0.0100");

    for (let i = 0; i < planned; i++) {
      (root.querySelector('[data-testid="record-pcr-positive"]') as HTMLButtonElement).click();
      await app.idle();
    }
    const posterior = root.querySelector<HTMLElement>('[data-metric="posterior_disease"]')!;
    expect(Number(posterior.getAttribute("title"))).toBeGreaterThanOrEqual(0.95);
    expect(root.querySelectorAll(".trace-step").length).toBe(planned);
    // One fewer positive must not reach the target: undo and compare.
    (root.querySelector('[data-testid="undo"]') as HTMLButtonElement).click();
    await app.idle();
    const shorter = root.querySelector<HTMLElement>('[data-metric="posterior_disease"]')!;
    expect(Number(shorter.getAttribute("title"))).toBeLessThan(0.95);
  });

  it("what-if round trips leave the stored session byte-identical", async () => {
    const api = new ApiClient(baseUrl);
    const session = await api.createSession({
      pretest_probability: 0.2,
      tests: { pcr: { sensitivity: 0.85, specificity: 0.9 } },
      sequence: [{ test: "pcr", result: "positive" }],
    });
    const before = await api.getSessionText(session.session_id);
    for (const result of ["positive", "negative", "positive"] as const) {
      await api.whatIf(session.session_id, "pcr", result);
    }
    const after = await api.getSessionText(session.session_id);
    expect(after).toBe(before);
  });

  it("shows curve markers straight from the geometry endpoint", async () => {
    const api = new ApiClient(baseUrl);
    const root = document.createElement("div");
    document.body.replaceChildren(root);
    const app: App = createApp(root, api);
    (root.querySelector('[data-testid="pretest-input"]') as HTMLInputElement).value = "0.3";
    (root.querySelector('[data-testid="roster-name-0"]') as HTMLInputElement).value = "elisa";
    (root.querySelector('[data-testid="roster-se-0"]') as HTMLInputElement).value = "0.8";
    (root.querySelector('[data-testid="roster-sp-0"]') as HTMLInputElement).value = "0.95";
    (root.querySelector('[data-testid="start-session"]') as HTMLButtonElement).click();
    await app.idle();
    (root.querySelector('[data-testid="curves-elisa"]') as HTMLButtonElement).click();
    await app.idle();
    const threshold = root.querySelector<HTMLElement>(
      '[data-metric="geometry.prevalence_threshold"]',
    )!;
    expect(threshold.textContent).toBe("0.2000");
    const geometry = await api.geometry(0.8, 0.95);
    expect(threshold.getAttribute("title")).toBe(String(geometry.prevalence_threshold));
  });
});
