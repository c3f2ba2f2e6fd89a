/** The zero-math audit: every numeral in the rendered document must be a
 * value the stubbed service sent, formatted by the one display rule. */

import { expect } from "vitest";

import { formatProbability } from "../src/format";

const NUMERAL = /-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?/g;

export function auditRenderedNumerals(root: HTMLElement, stubValues: Set<string>): number {
  // Every metric cell carries the untouched service value in its title
  // and the canonical formatting of exactly that value as its text.
  const metrics = Array.from(root.querySelectorAll<HTMLElement>("[data-metric]"));
  for (const cell of metrics) {
    const full = cell.getAttribute("title") ?? "";
    expect(stubValues, `metric ${cell.dataset.metric} title ${full}`).toContain(full);
    expect(cell.textContent).toBe(formatProbability(Number(full)));
  }

  // And no numeral may appear anywhere else in the document.
  const walker = document.createTreeWalker(root, NodeFilter.SHOW_TEXT);
  let checked = 0;
  for (let node = walker.nextNode(); node; node = walker.nextNode()) {
    const text = node.textContent ?? "";
    if (!NUMERAL.test(text)) {
      NUMERAL.lastIndex = 0;
      continue;
    }
    NUMERAL.lastIndex = 0;
    const owner = (node.parentElement as HTMLElement | null)?.closest("[data-metric]");
    expect(owner, `numeral outside a metric cell: ${JSON.stringify(text)}`).not.toBeNull();
    checked += 1;
  }
  return metrics.length + checked;
}
