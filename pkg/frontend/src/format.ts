/** Display formatting. The UI never computes probabilities; it only
 * formats values received from the service. */

/** Four decimal places for display; the full-precision value goes into
 * the element's title (hover). */
export function formatProbability(value: number): string {
  return value.toFixed(4);
}

/** Full-precision string used for hover titles and audits. */
export function fullPrecision(value: number): string {
  return String(value);
}
