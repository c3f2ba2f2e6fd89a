"""Predictive values over ordered sequences of test results.

Closed-form serial products for all-positive and all-negative runs, the
two conflicted-run formulas (a run of positives interrupted by one
negative, and the mirror case), a general Bayes fold over arbitrary mixed
sequences that serves as the internal oracle unifying all four closed
forms, and iteration planning for repeated application of a single test.

All products are accumulated in log space: sequences of thousands of
outcomes would underflow linear-space products of small factors long
before they stop being clinically meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

from . import _backend
from .errors import (
    ConflictingCertainty,
    InvalidTarget,
    TargetUnreachable,
    UndefinedPosterior,
)
from .screening import Probability, TestCharacteristics, as_probability

#: Slack below an integer at which the iteration-count ceiling snaps down,
#: protecting against float artifacts like 3.0000000001 -> 4.
_CEILING_GUARD = 1e-9


class TestResult(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


class FoldFormula(Enum):
    """Which closed form matches the shape of a folded sequence."""

    SERIAL_PPV = "SerialPPV"
    SERIAL_NPV = "SerialNPV"
    CONFLICTED_NPV = "ConflictedNPV"
    CONFLICTED_PPV = "ConflictedPPV"
    GENERAL_FOLD = "GeneralFold"


@dataclass(frozen=True)
class TestOutcome:
    """One signed result: a test together with its observed sign."""

    test: TestCharacteristics
    result: TestResult

    def __post_init__(self):
        if not isinstance(self.result, TestResult):
            object.__setattr__(self, "result", TestResult(self.result))

    @property
    def is_positive(self) -> bool:
        return self.result is TestResult.POSITIVE

    @property
    def label(self) -> str:
        return f"{self.test.label}{'+' if self.is_positive else '-'}"


@dataclass(frozen=True)
class TestSequence:
    """A nonempty ordered list of outcomes."""

    outcomes: tuple[TestOutcome, ...]

    def __post_init__(self):
        object.__setattr__(self, "outcomes", tuple(self.outcomes))
        if not self.outcomes:
            raise ValueError("a test sequence must contain at least one outcome")

    def __len__(self) -> int:
        return len(self.outcomes)

    def __iter__(self) -> Iterator[TestOutcome]:
        return iter(self.outcomes)

    @property
    def n_positive(self) -> int:
        return sum(1 for o in self.outcomes if o.is_positive)

    @property
    def n_negative(self) -> int:
        return len(self.outcomes) - self.n_positive


@dataclass(frozen=True)
class PosteriorReport:
    """Posterior after folding a sequence, with its audit trail.

    ``per_step_trace`` holds one (outcome label, running posterior of
    disease) pair per outcome, in sequence order.
    """

    posterior_disease: Probability
    posterior_no_disease: Probability
    formula_used: FoldFormula
    per_step_trace: tuple[tuple[str, Probability], ...]

    def __post_init__(self):
        total = self.posterior_disease.value + self.posterior_no_disease.value
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"posterior pair must sum to 1, got {total!r}")
        if self.per_step_trace:
            last = self.per_step_trace[-1][1].value
            if last != self.posterior_disease.value:
                raise ValueError("final trace entry disagrees with the posterior")


def _expit(x: float) -> float:
    """Logistic function, stable on both tails."""
    if x >= 0.0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


def _posterior_from_log_masses(log_disease: float, log_no_disease: float) -> float:
    return _expit(log_disease - log_no_disease)


def serial_ppv(
    tests: Sequence[TestCharacteristics],
    pretest_probability: Probability | float,
) -> Probability:
    """Posterior probability of disease after independent positive results
    from every listed test."""
    if not tests:
        raise ValueError("tests must be nonempty")
    phi = as_probability(pretest_probability).value
    disease_zero = phi == 0.0 or any(t.sensitivity.value == 0.0 for t in tests)
    no_disease_zero = phi == 1.0 or any(t.specificity.value == 1.0 for t in tests)
    if disease_zero and no_disease_zero:
        if phi == 0.0:
            return Probability(0.0)
        raise UndefinedPosterior(
            "the observed all-positive sequence has probability zero under "
            "both hypotheses"
        )
    if disease_zero:
        return Probability(0.0)
    if no_disease_zero:
        return Probability(1.0)
    log_d = math.log(phi) + sum(math.log(t.sensitivity.value) for t in tests)
    log_nd = math.log1p(-phi) + sum(math.log1p(-t.specificity.value) for t in tests)
    return Probability(_posterior_from_log_masses(log_d, log_nd))


def serial_npv(
    tests: Sequence[TestCharacteristics],
    pretest_probability: Probability | float,
) -> Probability:
    """Posterior probability of no disease after independent negative
    results from every listed test."""
    if not tests:
        raise ValueError("tests must be nonempty")
    phi = as_probability(pretest_probability).value
    no_disease_zero = phi == 1.0 or any(t.specificity.value == 0.0 for t in tests)
    disease_zero = phi == 0.0 or any(t.sensitivity.value == 1.0 for t in tests)
    if disease_zero and no_disease_zero:
        if phi == 1.0:
            return Probability(0.0)
        raise UndefinedPosterior(
            "the observed all-negative sequence has probability zero under "
            "both hypotheses"
        )
    if no_disease_zero:
        return Probability(0.0)
    if disease_zero:
        return Probability(1.0)
    log_nd = math.log1p(-phi) + sum(math.log(t.specificity.value) for t in tests)
    log_d = math.log(phi) + sum(math.log1p(-t.sensitivity.value) for t in tests)
    return Probability(_posterior_from_log_masses(log_nd, log_d))


def conflicted_npv(
    positives: Sequence[TestCharacteristics],
    negative: TestCharacteristics,
    pretest_probability: Probability | float,
) -> Probability:
    """Posterior probability of no disease when a run of positive results
    is interrupted by one negative result.

    Only the counts matter, not the position of the interrupting test:
    conditional independence makes the product order-free.  With no
    positives this reduces exactly to the single-test negative predictive
    value.
    """
    phi = as_probability(pretest_probability).value
    b_neg = negative.specificity.value
    a_neg = negative.sensitivity.value
    no_disease_zero = (
        phi == 1.0 or b_neg == 0.0 or any(t.specificity.value == 1.0 for t in positives)
    )
    disease_zero = (
        phi == 0.0 or a_neg == 1.0 or any(t.sensitivity.value == 0.0 for t in positives)
    )
    if disease_zero and no_disease_zero:
        if phi == 1.0:
            return Probability(0.0)
        raise UndefinedPosterior(
            "the observed conflicted sequence has probability zero under "
            "both hypotheses"
        )
    if no_disease_zero:
        return Probability(0.0)
    if disease_zero:
        return Probability(1.0)
    log_nd = (
        math.log1p(-phi)
        + math.log(b_neg)
        + sum(math.log1p(-t.specificity.value) for t in positives)
    )
    log_d = (
        math.log(phi)
        + math.log1p(-a_neg)
        + sum(math.log(t.sensitivity.value) for t in positives)
    )
    return Probability(_posterior_from_log_masses(log_nd, log_d))


def conflicted_ppv(
    negatives: Sequence[TestCharacteristics],
    positive: TestCharacteristics,
    pretest_probability: Probability | float,
) -> Probability:
    """Posterior probability of disease when a run of negative results is
    interrupted by one positive result.

    Mirror of :func:`conflicted_npv`; with no negatives this reduces
    exactly to the single-test positive predictive value.
    """
    phi = as_probability(pretest_probability).value
    a_pos = positive.sensitivity.value
    b_pos = positive.specificity.value
    disease_zero = (
        phi == 0.0 or a_pos == 0.0 or any(t.sensitivity.value == 1.0 for t in negatives)
    )
    no_disease_zero = (
        phi == 1.0 or b_pos == 1.0 or any(t.specificity.value == 0.0 for t in negatives)
    )
    if disease_zero and no_disease_zero:
        if phi == 0.0:
            return Probability(0.0)
        raise UndefinedPosterior(
            "the observed conflicted sequence has probability zero under "
            "both hypotheses"
        )
    if disease_zero:
        return Probability(0.0)
    if no_disease_zero:
        return Probability(1.0)
    log_d = (
        math.log(phi)
        + math.log(a_pos)
        + sum(math.log1p(-t.sensitivity.value) for t in negatives)
    )
    log_nd = (
        math.log1p(-phi)
        + math.log1p(-b_pos)
        + sum(math.log(t.specificity.value) for t in negatives)
    )
    return Probability(_posterior_from_log_masses(log_d, log_nd))


def _outcome_likelihoods(outcome: TestOutcome) -> tuple[float, float]:
    """P(result | disease), P(result | no disease) for one outcome."""
    se = outcome.test.sensitivity.value
    sp = outcome.test.specificity.value
    if outcome.is_positive:
        return se, 1.0 - sp
    return 1.0 - se, sp


def _classify_shape(sequence: TestSequence) -> FoldFormula:
    n = len(sequence)
    n_pos = sequence.n_positive
    if n_pos == n:
        return FoldFormula.SERIAL_PPV
    if n_pos == 0:
        return FoldFormula.SERIAL_NPV
    if n - n_pos == 1:
        return FoldFormula.CONFLICTED_NPV
    if n_pos == 1:
        return FoldFormula.CONFLICTED_PPV
    return FoldFormula.GENERAL_FOLD


def posterior_fold(
    sequence: TestSequence | Iterable[TestOutcome],
    pretest_probability: Probability | float,
) -> PosteriorReport:
    """Fold prior odds through the likelihood ratio of every outcome.

    Works in log-odds space for any mixed sign pattern, recording the
    running posterior after each step.  The result depends only on the
    multiset of outcomes, never their order.  An outcome that is certain
    (zero likelihood under one hypothesis) pins the posterior at 0 or 1;
    two outcomes certain in opposite directions raise
    ConflictingCertainty, and an outcome impossible under both hypotheses
    raises UndefinedPosterior.
    """
    if not isinstance(sequence, TestSequence):
        sequence = TestSequence(tuple(sequence))
    phi = as_probability(pretest_probability).value

    certain_disease: str | None = None
    certain_no_disease: str | None = None
    likelihoods = []
    for outcome in sequence:
        p_d, p_nd = _outcome_likelihoods(outcome)
        if p_d == 0.0 and p_nd == 0.0:
            raise UndefinedPosterior(
                f"outcome {outcome.label} is impossible under both hypotheses"
            )
        if p_d == 0.0 and certain_no_disease is None:
            certain_no_disease = outcome.label
        if p_nd == 0.0 and certain_disease is None:
            certain_disease = outcome.label
        likelihoods.append((p_d, p_nd))
    if certain_disease is not None and certain_no_disease is not None:
        raise ConflictingCertainty(
            f"outcome {certain_disease} rules disease in while outcome "
            f"{certain_no_disease} rules it out",
            first=certain_disease,
            second=certain_no_disease,
        )
    if phi == 0.0 and certain_disease is not None:
        raise UndefinedPosterior(
            f"outcome {certain_disease} is impossible at pretest probability 0"
        )
    if phi == 1.0 and certain_no_disease is not None:
        raise UndefinedPosterior(
            f"outcome {certain_no_disease} is impossible at pretest probability 1"
        )

    formula = _classify_shape(sequence)

    # Certainty anywhere (prior or outcome) pins every later posterior, so
    # the trace can be walked with simple state; the pure finite path goes
    # through the kernel fold.
    pinned: float | None = None
    if phi == 0.0 or certain_no_disease is not None:
        pinned = 0.0
    if phi == 1.0 or certain_disease is not None:
        pinned = 1.0

    trace: list[tuple[str, Probability]] = []
    if pinned is None:
        prior_log_odds = math.log(phi) - math.log1p(-phi)
        llr = [math.log(p_d) - math.log(p_nd) for p_d, p_nd in likelihoods]
        running = _backend.cumulative_log_odds(prior_log_odds, llr)
        for outcome, log_odds in zip(sequence, running):
            trace.append((outcome.label, Probability(_expit(log_odds))))
        final_log_odds = float(running[-1])
        posterior_d = Probability(_expit(final_log_odds))
        posterior_nd = Probability(_expit(-final_log_odds))
    else:
        state: float | None = None
        if phi == 0.0:
            state = 0.0
        elif phi == 1.0:
            state = 1.0
        log_odds = None if state is not None else math.log(phi) - math.log1p(-phi)
        for outcome, (p_d, p_nd) in zip(sequence, likelihoods):
            if state is None:
                if p_d == 0.0:
                    state = 0.0
                elif p_nd == 0.0:
                    state = 1.0
                else:
                    log_odds += math.log(p_d) - math.log(p_nd)  # type: ignore[operator]
            current = state if state is not None else _expit(log_odds)  # type: ignore[arg-type]
            trace.append((outcome.label, Probability(current)))
        posterior_d = Probability(pinned)
        posterior_nd = Probability(1.0 - pinned)

    return PosteriorReport(
        posterior_disease=posterior_d,
        posterior_no_disease=posterior_nd,
        formula_used=formula,
        per_step_trace=tuple(trace),
    )


def iterations_needed(
    test: TestCharacteristics,
    pretest_probability: Probability | float,
    target_ppv: Probability | float,
) -> int:
    """Smallest number of serial positive repetitions of one test that
    pushes the posterior to at least ``target_ppv``.

    Evaluated in closed form on the log-odds quotient, with a small guard
    snapping near-integer quotients down before the ceiling; brute-force
    minimality over the fold is the arbiter in the test suite.
    """
    phi = as_probability(pretest_probability).value
    rho = as_probability(target_ppv).value
    if rho <= 0.0 or rho >= 1.0:
        raise InvalidTarget(f"target predictive value must lie in (0, 1), got {rho!r}")
    if rho <= phi:
        raise InvalidTarget(
            f"target predictive value {rho!r} is already met at pretest "
            f"probability {phi!r}"
        )
    if phi == 0.0:
        raise TargetUnreachable(
            "no sequence of positive results moves a pretest probability of 0"
        )
    se = test.sensitivity.value
    sp = test.specificity.value
    if sp == 1.0 and se > 0.0:
        return 1  # an infinite positive likelihood ratio is conclusive at once
    if se == 0.0 or se <= (1.0 - sp):
        raise TargetUnreachable(
            f"test {test.label!r} has positive likelihood ratio at or below 1; "
            "repeating it never raises the posterior"
        )
    log_odds_gain = (
        math.log(rho) - math.log1p(-rho) - math.log(phi) + math.log1p(-phi)
    )
    log_lr = math.log(se) - math.log1p(-sp)
    quotient = log_odds_gain / log_lr
    return max(1, math.ceil(quotient - _CEILING_GUARD))
