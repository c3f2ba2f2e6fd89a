"""Pure-Python (numpy) fallback for the compiled hot kernels.

Mirrors the API of the Cython extension ``seqscreen._kernels``.  Which of
the two actually backs the package is decided once, at import time, by
``seqscreen._backend``.

Kernel semantics shared by both implementations:

* curve evaluation pins 0/0 points to the boundary value (0 for the
  positive curve at pretest 0, 1 at pretest 1, mirrored for the negative
  curve) and yields NaN for points that are genuinely undefined in the
  interior;
* ``gap_integral`` is adaptive Simpson quadrature with interval
  subdivision, a per-interval acceptance test scaled to the interval's
  share of the requested absolute tolerance, and Richardson extrapolation
  of accepted panels.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"

_MAX_SUBDIVISIONS = 4096
_MAX_ROUNDS = 64


def ppv_values(sensitivity: float, specificity: float, pretest: np.ndarray) -> np.ndarray:
    """Positive-predictive-value curve over an array of pretest probabilities."""
    phi = np.asarray(pretest, dtype=np.float64)
    num = sensitivity * phi
    den = num + (1.0 - specificity) * (1.0 - phi)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(den != 0.0, num / np.where(den != 0.0, den, 1.0), np.nan)
    zero = den == 0.0
    if np.any(zero):
        out = np.where(zero & (phi <= 0.0), 0.0, out)
        out = np.where(zero & (phi >= 1.0), 1.0, out)
    return out


def npv_values(sensitivity: float, specificity: float, pretest: np.ndarray) -> np.ndarray:
    """Negative-predictive-value curve over an array of pretest probabilities."""
    phi = np.asarray(pretest, dtype=np.float64)
    num = specificity * (1.0 - phi)
    den = phi * (1.0 - sensitivity) + num
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(den != 0.0, num / np.where(den != 0.0, den, 1.0), np.nan)
    zero = den == 0.0
    if np.any(zero):
        out = np.where(zero & (phi >= 1.0), 0.0, out)
        out = np.where(zero & (phi <= 0.0), 1.0, out)
    return out


def cumulative_log_odds(prior_log_odds: float, log_likelihood_ratios: np.ndarray) -> np.ndarray:
    """Running log-odds after each outcome of a sequence."""
    llr = np.asarray(log_likelihood_ratios, dtype=np.float64)
    return prior_log_odds + np.cumsum(llr)


def gap_integral(
    sensitivity: float,
    specificity: float,
    lo: float,
    hi: float,
    direction: int,
    abs_tol: float,
) -> tuple[float, float, float, bool]:
    """Integrate the gap between the two predictive curves over [lo, hi].

    ``direction`` +1 integrates (negative curve - positive curve), -1 the
    reverse.  Returns (value, error_estimate, min_node_value, converged);
    ``min_node_value`` is the smallest integrand value seen at any node,
    which callers use to assert the integrand kept its expected sign.
    """
    width = hi - lo
    if width <= 0.0:
        return 0.0, 0.0, np.inf, True

    def f(x: np.ndarray) -> np.ndarray:
        gap = npv_values(sensitivity, specificity, x) - ppv_values(
            sensitivity, specificity, x
        )
        return gap if direction > 0 else -gap

    a = np.array([lo])
    b = np.array([hi])
    m = 0.5 * (a + b)
    fa, fm, fb = f(a), f(m), f(b)
    simpson = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    min_node = float(min(fa[0], fm[0], fb[0]))

    total = 0.0
    err_total = 0.0
    converged = True
    for _ in range(_MAX_ROUNDS):
        if a.size == 0:
            break
        mid = 0.5 * (a + b)
        lm = 0.5 * (a + mid)
        rm = 0.5 * (mid + b)
        flm = f(lm)
        frm = f(rm)
        min_node = min(min_node, float(flm.min()), float(frm.min()))
        s_left = (mid - a) / 6.0 * (fa + 4.0 * flm + fm)
        s_right = (b - mid) / 6.0 * (fm + 4.0 * frm + fb)
        delta = s_left + s_right - simpson
        local_tol = abs_tol * (b - a) / width
        done = np.abs(delta) <= 15.0 * local_tol
        if a.size > _MAX_SUBDIVISIONS:
            # Give up on further refinement: count the residual discrepancy
            # into the error estimate so the caller sees the miss.
            converged = False
            done = np.ones_like(done, dtype=bool)
            err_total += float(np.abs(delta[~(np.abs(delta) <= 15.0 * local_tol)]).sum())
        if np.any(done):
            total += float((s_left[done] + s_right[done] + delta[done] / 15.0).sum())
            err_total += float((np.abs(delta[done]) / 15.0).sum())
        keep = ~done
        if not np.any(keep):
            a = np.empty(0)
            break
        a = np.concatenate([a[keep], mid[keep]])
        b = np.concatenate([mid[keep], b[keep]])
        fa = np.concatenate([fa[keep], fm[keep]])
        fb = np.concatenate([fm[keep], fb[keep]])
        fm = np.concatenate([flm[keep], frm[keep]])
        simpson = np.concatenate([s_left[keep], s_right[keep]])
    else:
        converged = False
    if a.size > 0 and converged:
        converged = False
    return total, err_total, min_node, converged
