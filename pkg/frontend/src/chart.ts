/** SVG chart of the two predictive curves with service-provided markers.
 *
 * Coordinate mapping is presentation only; every numeral shown on the
 * chart is a service response field rendered through the metric cell.
 */

import { el, metric } from "./dom";
import type { CurvePanelData } from "./controller";

const WIDTH = 560;
const HEIGHT = 320;
const PAD = 16;

const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

function x(phi: number): number {
  return PAD + phi * (WIDTH - 2 * PAD);
}

function y(value: number): number {
  return HEIGHT - PAD - value * (HEIGHT - 2 * PAD);
}

function polyline(phis: number[], values: number[], cssClass: string): SVGElement {
  const points = phis
    .map((phi, i) => (Number.isNaN(values[i]) ? null : `${x(phi)},${y(values[i])}`))
    .filter((p): p is string => p !== null)
    .join(" ");
  return svgEl("polyline", { points, class: cssClass, fill: "none" });
}

function markerLine(phi: number, cssClass: string): SVGElement {
  return svgEl("line", {
    x1: String(x(phi)),
    y1: String(y(0)),
    x2: String(x(phi)),
    y2: String(y(1)),
    class: cssClass,
  });
}

export function renderCurvePanel(panel: CurvePanelData, prior: number): HTMLElement {
  const svg = svgEl("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "curve-chart",
    role: "img",
  }) as SVGSVGElement;
  svg.append(
    svgEl("rect", {
      x: String(PAD),
      y: String(PAD),
      width: String(WIDTH - 2 * PAD),
      height: String(HEIGHT - 2 * PAD),
      class: "chart-frame",
      fill: "none",
    }),
    polyline(panel.curves.phi_values, panel.curves.ppv_values, "curve-ppv"),
    polyline(panel.curves.phi_values, panel.curves.npv_values, "curve-npv"),
    markerLine(prior, "marker-prior"),
  );
  if (panel.geometry) {
    svg.append(
      markerLine(panel.geometry.prevalence_threshold, "marker-threshold"),
      markerLine(panel.geometry.intersection.phi_i, "marker-crossing"),
    );
  }

  const legend = el(
    "div",
    { class: "chart-legend" },
    el("span", { class: "legend-ppv" }, "positive predictive value"),
    el("span", { class: "legend-npv" }, "negative predictive value"),
  );
  const markers = el("dl", { class: "chart-markers" });
  markers.append(
    el("dt", {}, "session prior"),
    el("dd", {}, metric("session.prior_marker", prior)),
  );
  if (panel.geometry) {
    markers.append(
      el("dt", {}, "prevalence threshold"),
      el("dd", {}, metric("geometry.prevalence_threshold", panel.geometry.prevalence_threshold)),
      el("dt", {}, "curve crossing"),
      el("dd", {}, metric("geometry.intersection.phi_i", panel.geometry.intersection.phi_i)),
    );
  }

  const children: (HTMLElement | SVGElement)[] = [
    el("h3", {}, `curves: ${panel.test}`),
    legend,
    svg,
    markers,
  ];
  if (!panel.geometry) {
    children.push(
      el("p", { class: "notice", "data-testid": "geometry-notice" },
        `markers unavailable: ${panel.notice ?? "geometry undefined"}`),
    );
  }
  const root = el("section", { class: "curve-panel", "data-testid": "curve-panel" });
  root.append(...children);
  return root;
}
