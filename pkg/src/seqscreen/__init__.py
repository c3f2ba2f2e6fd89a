"""Bayesian predictive-value calculus for sequential and orthogonal
screening tests.

The library computes single-test predictive values and prevalence
thresholds, posteriors over arbitrary sequences of positive/negative
results, the geometry of the predictive curves (crossing point, dominance
partitions), and exposes everything through a CLI and an HTTP JSON
service.  Hot numeric kernels run in a compiled extension when available,
with a numpy fallback selected at import (see ``seqscreen.BACKEND``).
"""

from ._backend import BACKEND
from .errors import (
    ConflictingCertainty,
    InvalidTarget,
    NoUniqueIntersection,
    NumericalFailure,
    QuadratureFailure,
    ScreeningError,
    TargetUnreachable,
    UndefinedPosterior,
    UninformativeTest,
    ValidationError,
)
from .geometry import (
    CurveSample,
    Dominance,
    IntersectionMethod,
    IntersectionResult,
    PartitionReport,
    classify_dominance,
    intersection_point,
    partition_areas,
    quadratic_coefficients,
    sample_curves,
)
from .screening import (
    LikelihoodRatios,
    Probability,
    TestCharacteristics,
    as_probability,
    fnr,
    fpr,
    likelihood_ratios,
    npv,
    ppv,
    prevalence_threshold,
)
from .sequence import (
    FoldFormula,
    PosteriorReport,
    TestOutcome,
    TestResult,
    TestSequence,
    conflicted_npv,
    conflicted_ppv,
    iterations_needed,
    posterior_fold,
    serial_npv,
    serial_ppv,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ConflictingCertainty",
    "CurveSample",
    "Dominance",
    "FoldFormula",
    "IntersectionMethod",
    "IntersectionResult",
    "InvalidTarget",
    "LikelihoodRatios",
    "NoUniqueIntersection",
    "NumericalFailure",
    "PartitionReport",
    "PosteriorReport",
    "Probability",
    "QuadratureFailure",
    "ScreeningError",
    "TargetUnreachable",
    "TestCharacteristics",
    "TestOutcome",
    "TestResult",
    "TestSequence",
    "UndefinedPosterior",
    "UninformativeTest",
    "ValidationError",
    "as_probability",
    "classify_dominance",
    "conflicted_npv",
    "conflicted_ppv",
    "fnr",
    "fpr",
    "intersection_point",
    "iterations_needed",
    "likelihood_ratios",
    "npv",
    "partition_areas",
    "posterior_fold",
    "ppv",
    "prevalence_threshold",
    "quadratic_coefficients",
    "sample_curves",
    "serial_npv",
    "serial_ppv",
    "__version__",
]
