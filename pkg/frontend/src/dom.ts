/** Tiny DOM helpers: element construction and the service-value cell. */

import { formatProbability, fullPrecision } from "./format";

type Child = Node | string | null | undefined;

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: Child[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  for (const child of children) {
    if (child === null || child === undefined) continue;
    node.append(child instanceof Node ? child : document.createTextNode(child));
  }
  return node;
}

/**
 * A numeric cell whose value came from a service response field.
 *
 * Every numeral the app renders goes through this helper: the visible
 * text is the 4-decimal formatting of the value, the title carries the
 * full precision, and the data attributes let the zero-math audit map
 * each rendered numeral back to the response field it came from.
 */
export function metric(field: string, value: number): HTMLElement {
  return el(
    "span",
    { class: "metric", "data-metric": field, title: fullPrecision(value) },
    formatProbability(value),
  );
}
