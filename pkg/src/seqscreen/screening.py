"""Single-test Bayesian screening quantities.

Positive and negative predictive values, error rates, likelihood ratios,
and the prevalence threshold for one diagnostic test characterised by its
sensitivity and specificity.  Everything here is a pure function of
immutable values and is safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import UndefinedPosterior, UninformativeTest

#: Tolerance on |sensitivity + specificity - 1| below which a test is
#: treated as uninformative (its positive likelihood ratio is exactly 1).
INFORMATIVE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Probability:
    """A validated probability in [0, 1].

    Construction rejects anything outside the unit interval, including
    NaN and infinities, so downstream arithmetic never has to re-check
    its inputs.
    """

    value: float

    def __post_init__(self):
        v = self.value
        if isinstance(v, Probability):
            v = v.value
        if not isinstance(v, (int, float)):
            raise TypeError(f"probability must be a number, got {type(v).__name__}")
        v = float(v)
        if not math.isfinite(v) or v < 0.0 or v > 1.0:
            raise ValueError(f"probability must lie in [0, 1], got {v!r}")
        object.__setattr__(self, "value", v)

    def __float__(self) -> float:
        return self.value

    @property
    def complement(self) -> "Probability":
        return Probability(1.0 - self.value)


def as_probability(value: "Probability | float") -> Probability:
    """Coerce a float (or pass through a Probability) with validation."""
    if isinstance(value, Probability):
        return value
    return Probability(value)


@dataclass(frozen=True)
class TestCharacteristics:
    """A named diagnostic test: its sensitivity and specificity.

    Sensitivity is the probability a diseased subject tests positive;
    specificity is the probability a disease-free subject tests negative.
    Plain floats are accepted and validated on construction.
    """

    label: str
    sensitivity: Probability
    specificity: Probability

    def __post_init__(self):
        object.__setattr__(self, "sensitivity", as_probability(self.sensitivity))
        object.__setattr__(self, "specificity", as_probability(self.specificity))

    @property
    def informative(self) -> bool:
        """False when sensitivity + specificity = 1 (within tolerance): a
        positive result then has likelihood ratio exactly 1 and moves no
        posterior."""
        total = self.sensitivity.value + self.specificity.value
        return abs(total - 1.0) > INFORMATIVE_TOLERANCE


@dataclass(frozen=True)
class LikelihoodRatios:
    """Positive and negative likelihood ratios of a test.

    ``math.inf`` is the explicit marker for a ratio with a zero
    denominator (e.g. positive ratio of a perfectly specific test); it is
    never fed raw into probability arithmetic -- the sequence fold treats
    such outcomes as certainties instead.  A ratio whose numerator and
    denominator are both zero (an outcome the test can never produce) is
    reported as 0.0; the fold detects genuinely impossible outcomes
    separately.
    """

    positive_lr: float
    negative_lr: float


def ppv(test: TestCharacteristics, pretest_probability: Probability | float) -> Probability:
    """Probability of disease given one positive result at the given
    pretest probability.

    Returns 0 whenever the pretest probability is 0.  Raises
    UndefinedPosterior when a positive result has probability zero under
    both hypotheses (sensitivity 0 with specificity 1) at a nonzero
    pretest probability.
    """
    phi = as_probability(pretest_probability).value
    se = test.sensitivity.value
    sp = test.specificity.value
    num = se * phi
    den = num + (1.0 - sp) * (1.0 - phi)
    if den == 0.0:
        if phi == 0.0:
            return Probability(0.0)
        raise UndefinedPosterior(
            f"positive result from test {test.label!r} is impossible "
            "(sensitivity 0, specificity 1); posterior is undefined"
        )
    return Probability(num / den)


def npv(test: TestCharacteristics, pretest_probability: Probability | float) -> Probability:
    """Probability of no disease given one negative result at the given
    pretest probability.

    Returns 0 whenever the pretest probability is 1.  Raises
    UndefinedPosterior when a negative result has probability zero under
    both hypotheses (sensitivity 1 with specificity 0) at a pretest
    probability below 1.
    """
    phi = as_probability(pretest_probability).value
    se = test.sensitivity.value
    sp = test.specificity.value
    num = sp * (1.0 - phi)
    den = phi * (1.0 - se) + num
    if den == 0.0:
        if phi == 1.0:
            return Probability(0.0)
        raise UndefinedPosterior(
            f"negative result from test {test.label!r} is impossible "
            "(sensitivity 1, specificity 0); posterior is undefined"
        )
    return Probability(num / den)


def fnr(test: TestCharacteristics) -> Probability:
    """False negative rate: the complement of sensitivity."""
    return test.sensitivity.complement


def fpr(test: TestCharacteristics) -> Probability:
    """False positive rate: the complement of specificity."""
    return test.specificity.complement


def likelihood_ratios(test: TestCharacteristics) -> LikelihoodRatios:
    """Both likelihood ratios, with ``math.inf`` marking zero denominators."""
    se = test.sensitivity.value
    sp = test.specificity.value
    if se == 0.0:
        positive = 0.0
    elif sp == 1.0:
        positive = math.inf
    else:
        positive = se / (1.0 - sp)
    if se == 1.0:
        negative = 0.0
    elif sp == 0.0:
        negative = math.inf
    else:
        negative = (1.0 - se) / sp
    return LikelihoodRatios(positive_lr=positive, negative_lr=negative)


def prevalence_threshold(test: TestCharacteristics) -> Probability:
    """The pretest probability at which the positive-predictive-value
    curve has slope exactly 1.

    Below this point the reliability of a positive result degrades
    sharply as the pretest probability falls.  Requires an informative
    test; raises UninformativeTest otherwise.
    """
    if not test.informative:
        raise UninformativeTest(
            f"test {test.label!r} has sensitivity + specificity = 1; "
            "the prevalence threshold is undefined"
        )
    se = test.sensitivity.value
    sp = test.specificity.value
    value = (math.sqrt(se * (1.0 - sp)) + sp - 1.0) / (se + sp - 1.0)
    # Guard float drift at the boundaries (e.g. perfect tests give exactly 0).
    if -1e-12 <= value < 0.0:
        value = 0.0
    elif 1.0 < value <= 1.0 + 1e-12:
        value = 1.0
    return Probability(value)
