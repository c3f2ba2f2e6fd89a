"""Geometry of the two predictive-value curves.

The positive and negative curves of an informative test cross at a single
interior point.  This module locates that point in closed form (falling
back to a small specificity nudge when the quadratic degenerates at equal
sensitivity and specificity), classifies which curve dominates at a given
pretest probability, integrates the gap between the curves on either side
of the crossing, and samples both curves for export.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _backend
from .errors import NoUniqueIntersection, NumericalFailure, QuadratureFailure
from .screening import Probability, TestCharacteristics, npv, ppv

#: |leading quadratic coefficient| at or below which the closed form is
#: treated as degenerate (sensitivity ~ specificity) and perturbed.
DEGENERATE_COEFF_TOLERANCE = 1e-10

#: Specificity nudge applied on the degenerate branch.  Large enough to
#: escape the cancellation in the leading coefficient, small enough that
#: the crossing moves by well under 1e-4.
SPECIFICITY_NUDGE = 1e-6

#: Residual |positive curve - negative curve| a reported crossing must meet.
RESIDUAL_TOLERANCE = 1e-9

#: Absolute tolerance of the partition-area quadrature.
QUADRATURE_TOLERANCE = 1e-10

#: Sign slack allowed for the gap integrand at quadrature nodes.  The
#: perturbed branch reports a crossing for the nudged curve pair, which
#: sits within ~nudge of the true crossing, so the integrand may dip
#: negative by about that much near the subdomain boundary.
_POSITIVITY_FLOOR_EXACT = -1e-12
_POSITIVITY_FLOOR_PERTURBED = -1e-5


class IntersectionMethod(Enum):
    CLOSED_FORM = "ClosedForm"
    PERTURBED_CLOSED_FORM = "PerturbedClosedForm"


class Dominance(Enum):
    NEGATIVE_DOMINANT = "NegativeDominant"
    BALANCED = "Balanced"
    POSITIVE_DOMINANT = "PositiveDominant"


@dataclass(frozen=True)
class IntersectionResult:
    """Crossing point of the two predictive curves.

    ``residual`` is |positive curve - negative curve| evaluated at
    ``phi_i`` against the curve pair the closed form actually solved: the
    original test on the exact branch, the specificity-nudged test on the
    perturbed branch (where the crossing of the original pair is within
    about the nudge of the reported point).
    """

    phi_i: Probability
    method: IntersectionMethod
    residual: float

    def __post_init__(self):
        if self.residual > RESIDUAL_TOLERANCE:
            raise ValueError(f"residual {self.residual!r} above tolerance")


@dataclass(frozen=True)
class PartitionReport:
    """Areas of the two dominance partitions either side of the crossing."""

    phi_i: Probability
    ndp_area: float
    pdp_area: float
    quadrature_error_estimate: float

    def __post_init__(self):
        if self.ndp_area < 0.0 or self.pdp_area < 0.0:
            raise ValueError("partition areas must be nonnegative")
        if self.ndp_area > self.phi_i.value + 1e-9:
            raise ValueError("negative-dominant area exceeds its subdomain width")
        if self.pdp_area > 1.0 - self.phi_i.value + 1e-9:
            raise ValueError("positive-dominant area exceeds its subdomain width")


@dataclass(frozen=True)
class CurveSample:
    """Both predictive curves sampled on a common grid.

    Grid values are validated probabilities in strictly increasing order;
    curve values are floats (NaN marks points where a result is impossible
    under both hypotheses, which only degenerate tests produce).
    """

    phi_values: tuple[float, ...]
    ppv_values: tuple[float, ...]
    npv_values: tuple[float, ...]

    def __post_init__(self):
        if not (len(self.phi_values) == len(self.ppv_values) == len(self.npv_values)):
            raise ValueError("curve sample arrays must have equal lengths")
        for p in self.phi_values:
            if not (0.0 <= p <= 1.0):
                raise ValueError(f"grid value {p!r} outside [0, 1]")
        if any(b <= a for a, b in zip(self.phi_values, self.phi_values[1:])):
            raise ValueError("grid values must be strictly increasing")


def quadratic_coefficients(test: TestCharacteristics) -> tuple[float, float, float]:
    """Coefficients (A, B, C) of the quadratic whose root in [0, 1] is the
    crossing point of the two predictive curves."""
    se = test.sensitivity.value
    sp = test.specificity.value
    coeff_a = se - sp - se * se + sp * sp
    coeff_b = 2.0 * sp - 2.0 * sp * sp
    coeff_c = -(sp - sp * sp)
    return coeff_a, coeff_b, coeff_c


def _closed_form_root(se: float, sp: float) -> float:
    rooted = se * sp * (se * sp - se + 1.0 - sp)
    # Algebraically se*sp*(1-se)*(1-sp) >= 0; clip float dust.
    rooted = max(rooted, 0.0)
    num = -sp * sp + sp - math.sqrt(rooted)
    den = se * se - sp * sp - se + sp
    return num / den


def _residual_at(se: float, sp: float, phi: float) -> float:
    probe = TestCharacteristics("probe", se, sp)
    return abs(ppv(probe, phi).value - npv(probe, phi).value)


def intersection_point(test: TestCharacteristics) -> IntersectionResult:
    """Locate the crossing of the two predictive curves.

    Uses the closed-form quadratic root; when the leading coefficient
    degenerates (sensitivity ~ specificity) the specificity is nudged by
    ``SPECIFICITY_NUDGE`` and the closed form reapplied.  Raises
    NoUniqueIntersection for tests whose curves have no single interior
    crossing (sensitivity + specificity = 1, or a perfect test), and
    NumericalFailure when neither branch meets the residual tolerance.
    """
    se = test.sensitivity.value
    sp = test.specificity.value
    if not test.informative:
        raise NoUniqueIntersection(
            f"test {test.label!r} has sensitivity + specificity = 1; "
            "both predictive curves are degenerate"
        )
    if se == 1.0 and sp == 1.0:
        raise NoUniqueIntersection(
            f"test {test.label!r} is perfect; the curves coincide on the "
            "whole interior and no single crossing exists"
        )

    coeff_a, _, _ = quadratic_coefficients(test)
    if abs(coeff_a) > DEGENERATE_COEFF_TOLERANCE:
        phi = _clamped_root(se, sp)
        if phi is not None:
            residual = _residual_at(se, sp, phi)
            if residual <= RESIDUAL_TOLERANCE:
                return IntersectionResult(
                    phi_i=Probability(phi),
                    method=IntersectionMethod.CLOSED_FORM,
                    residual=residual,
                )

    nudge = SPECIFICITY_NUDGE if sp + SPECIFICITY_NUDGE <= 1.0 else -SPECIFICITY_NUDGE
    sp_nudged = sp + nudge
    phi = _clamped_root(se, sp_nudged)
    if phi is not None:
        residual = _residual_at(se, sp_nudged, phi)
        if residual <= RESIDUAL_TOLERANCE:
            return IntersectionResult(
                phi_i=Probability(phi),
                method=IntersectionMethod.PERTURBED_CLOSED_FORM,
                residual=residual,
            )
    raise NumericalFailure(
        f"no closed-form crossing met the {RESIDUAL_TOLERANCE} residual "
        f"tolerance for test {test.label!r}"
    )


def _clamped_root(se: float, sp: float) -> float | None:
    """Closed-form root clamped against float drift; None when far outside
    the unit interval or not finite."""
    try:
        phi = _closed_form_root(se, sp)
    except ZeroDivisionError:
        return None
    if not math.isfinite(phi):
        return None
    if -1e-9 <= phi < 0.0:
        phi = 0.0
    elif 1.0 < phi <= 1.0 + 1e-9:
        phi = 1.0
    if phi < 0.0 or phi > 1.0:
        return None
    return phi


def classify_dominance(
    test: TestCharacteristics, pretest_probability: Probability | float
) -> Dominance:
    """Which curve dominates at the given pretest probability.

    Balanced within 1e-12 of the crossing; propagates intersection errors.
    """
    phi = float(pretest_probability)
    phi_i = intersection_point(test).phi_i.value
    if abs(phi - phi_i) <= 1e-12:
        return Dominance.BALANCED
    if phi < phi_i:
        return Dominance.NEGATIVE_DOMINANT
    return Dominance.POSITIVE_DOMINANT


def partition_areas(test: TestCharacteristics) -> PartitionReport:
    """Integrate the curve gap on either side of the crossing.

    The negative-dominant area integrates (negative curve - positive
    curve) left of the crossing, the positive-dominant area the reverse on
    the right, by adaptive Simpson quadrature to ``QUADRATURE_TOLERANCE``.
    The integrand's sign is asserted at every quadrature node.
    """
    crossing = intersection_point(test)
    phi_i = crossing.phi_i.value
    se = test.sensitivity.value
    sp = test.specificity.value
    floor = (
        _POSITIVITY_FLOOR_EXACT
        if crossing.method is IntersectionMethod.CLOSED_FORM
        else _POSITIVITY_FLOOR_PERTURBED
    )

    areas = []
    err_total = 0.0
    for lo, hi, direction in ((0.0, phi_i, 1), (phi_i, 1.0, -1)):
        value, err, min_node, converged = _backend.gap_integral(
            se, sp, lo, hi, direction, QUADRATURE_TOLERANCE
        )
        if not converged or err > QUADRATURE_TOLERANCE:
            raise QuadratureFailure(
                f"partition quadrature on [{lo}, {hi}] for test {test.label!r} "
                f"did not reach tolerance (error estimate {err!r})"
            )
        if min_node < floor:
            raise NumericalFailure(
                f"gap integrand changed sign on [{lo}, {hi}] for test "
                f"{test.label!r} (minimum node value {min_node!r})"
            )
        areas.append(max(value, 0.0))
        err_total += err
    return PartitionReport(
        phi_i=crossing.phi_i,
        ndp_area=areas[0],
        pdp_area=areas[1],
        quadrature_error_estimate=err_total,
    )


def sample_curves(test: TestCharacteristics, n_points: int) -> CurveSample:
    """Both curves on a uniform grid over [0, 1], endpoints included."""
    if n_points < 2:
        raise ValueError(f"n_points must be at least 2, got {n_points}")
    grid = np.linspace(0.0, 1.0, n_points)
    ppv_arr = _backend.ppv_values(test.sensitivity.value, test.specificity.value, grid)
    npv_arr = _backend.npv_values(test.sensitivity.value, test.specificity.value, grid)
    return CurveSample(
        phi_values=tuple(float(x) for x in grid),
        ppv_values=tuple(float(x) for x in ppv_arr),
        npv_values=tuple(float(x) for x in npv_arr),
    )
