# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: predictive-curve evaluation, adaptive Simpson
quadrature of the curve gap, and the cumulative log-odds fold.

Semantics match ``seqscreen._kernels_py`` exactly; see that module for
the shared contract (boundary pinning, NaN for undefined interior points,
tolerance accounting of the quadrature).
"""

from libc.math cimport fabs, NAN, INFINITY

import numpy as np

BACKEND_NAME = "compiled"

DEF MAX_DEPTH = 48


cdef inline double _ppv_point(double se, double sp, double phi) noexcept nogil:
    cdef double num = se * phi
    cdef double den = num + (1.0 - sp) * (1.0 - phi)
    if den == 0.0:
        if phi <= 0.0:
            return 0.0
        if phi >= 1.0:
            return 1.0
        return NAN
    return num / den


cdef inline double _npv_point(double se, double sp, double phi) noexcept nogil:
    cdef double num = sp * (1.0 - phi)
    cdef double den = phi * (1.0 - se) + num
    if den == 0.0:
        if phi >= 1.0:
            return 0.0
        if phi <= 0.0:
            return 1.0
        return NAN
    return num / den


cdef inline double _gap_point(double se, double sp, int direction, double phi) noexcept nogil:
    cdef double gap = _npv_point(se, sp, phi) - _ppv_point(se, sp, phi)
    return gap if direction > 0 else -gap


def ppv_values(double sensitivity, double specificity, pretest):
    """Positive-predictive-value curve over an array of pretest probabilities."""
    phi_arr = np.ascontiguousarray(pretest, dtype=np.float64)
    out_arr = np.empty_like(phi_arr)
    cdef double[::1] phi = phi_arr
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, n = phi.shape[0]
    for i in range(n):
        out[i] = _ppv_point(sensitivity, specificity, phi[i])
    return out_arr


def npv_values(double sensitivity, double specificity, pretest):
    """Negative-predictive-value curve over an array of pretest probabilities."""
    phi_arr = np.ascontiguousarray(pretest, dtype=np.float64)
    out_arr = np.empty_like(phi_arr)
    cdef double[::1] phi = phi_arr
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, n = phi.shape[0]
    for i in range(n):
        out[i] = _npv_point(sensitivity, specificity, phi[i])
    return out_arr


def cumulative_log_odds(double prior_log_odds, log_likelihood_ratios):
    """Running log-odds after each outcome of a sequence."""
    llr_arr = np.ascontiguousarray(log_likelihood_ratios, dtype=np.float64)
    out_arr = np.empty_like(llr_arr)
    cdef double[::1] llr = llr_arr
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, n = llr.shape[0]
    cdef double acc = prior_log_odds
    for i in range(n):
        acc += llr[i]
        out[i] = acc
    return out_arr


cdef struct QuadAcc:
    double total
    double err
    double min_node
    int failed


cdef void _adapt(
    double se, double sp, int direction,
    double a, double fa, double m, double fm, double b, double fb,
    double simpson, double tol, int depth, QuadAcc* acc,
) noexcept nogil:
    cdef double lm = 0.5 * (a + m)
    cdef double rm = 0.5 * (m + b)
    cdef double flm = _gap_point(se, sp, direction, lm)
    cdef double frm = _gap_point(se, sp, direction, rm)
    if flm < acc.min_node:
        acc.min_node = flm
    if frm < acc.min_node:
        acc.min_node = frm
    cdef double s_left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    cdef double s_right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    cdef double delta = s_left + s_right - simpson
    if fabs(delta) <= 15.0 * tol:
        acc.total += s_left + s_right + delta / 15.0
        acc.err += fabs(delta) / 15.0
        return
    if depth <= 0:
        acc.total += s_left + s_right
        acc.err += fabs(delta)
        acc.failed = 1
        return
    _adapt(se, sp, direction, a, fa, lm, flm, m, fm, s_left, 0.5 * tol, depth - 1, acc)
    _adapt(se, sp, direction, m, fm, rm, frm, b, fb, s_right, 0.5 * tol, depth - 1, acc)


def gap_integral(
    double sensitivity,
    double specificity,
    double lo,
    double hi,
    int direction,
    double abs_tol,
):
    """Integrate the gap between the two predictive curves over [lo, hi].

    Returns (value, error_estimate, min_node_value, converged); see the
    fallback module for the full contract.
    """
    if hi - lo <= 0.0:
        return 0.0, 0.0, INFINITY, True
    cdef double fa = _gap_point(sensitivity, specificity, direction, lo)
    cdef double fb = _gap_point(sensitivity, specificity, direction, hi)
    cdef double m = 0.5 * (lo + hi)
    cdef double fm = _gap_point(sensitivity, specificity, direction, m)
    cdef double simpson = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb)
    cdef QuadAcc acc
    acc.total = 0.0
    acc.err = 0.0
    acc.min_node = min(fa, min(fm, fb))
    acc.failed = 0
    _adapt(
        sensitivity, specificity, direction,
        lo, fa, m, fm, hi, fb, simpson, abs_tol, MAX_DEPTH, &acc,
    )
    return acc.total, acc.err, acc.min_node, acc.failed == 0
