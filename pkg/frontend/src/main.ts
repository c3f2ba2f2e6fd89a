/** Entry point: base-URL setting plus app bootstrap. */

import { ApiClient } from "./api";
import { createApp } from "./app";
import { el } from "./dom";

const DEFAULT_BASE_URL = "http://127.0.0.1:8000";

function boot(): void {
  const mount = document.querySelector<HTMLDivElement>("#app");
  if (!mount) {
    throw new Error("missing #app mount point");
  }
  const baseUrl = localStorage.getItem("seqscreen.baseUrl") ?? DEFAULT_BASE_URL;

  const urlInput = el("input", { value: baseUrl, class: "base-url" }) as HTMLInputElement;
  urlInput.value = baseUrl;
  const apply = el("button", {}, "reconnect");
  const configBar = el("div", { class: "config-bar" }, el("span", {}, "service "), urlInput, apply);
  const appRoot = el("div", {});
  mount.replaceChildren(configBar, appRoot);

  let app = start(appRoot, baseUrl);
  apply.addEventListener("click", () => {
    localStorage.setItem("seqscreen.baseUrl", urlInput.value);
    app = start(appRoot, urlInput.value);
  });
  void app;
}

function start(root: HTMLElement, baseUrl: string) {
  const api = new ApiClient(baseUrl);
  const app = createApp(root, api);
  // Surface unreachable services immediately rather than on first action.
  api.health().catch((err) => {
    app.state.banner = err instanceof Error ? err.message : String(err);
    app.rerender();
  });
  return app;
}

boot();
