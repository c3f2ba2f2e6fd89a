"""Scenario documents: the JSON interchange format of the CLI and service.

A scenario declares a pretest probability, a named roster of tests, an
ordered result sequence referencing those names, and an optional target
predictive value.  Parsing is strict -- out-of-range probabilities are
rejected with a field path rather than clamped -- and serialization is
canonical (fixed field order, test names sorted, repr float formatting)
so that serialize -> parse -> serialize is byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Any, Mapping

from .errors import (
    NoUniqueIntersection,
    NumericalFailure,
    ScreeningError,
    UninformativeTest,
    ValidationError,
)
from .geometry import classify_dominance, intersection_point, partition_areas
from .screening import (
    Probability,
    TestCharacteristics,
    npv,
    ppv,
    prevalence_threshold,
)
from .sequence import (
    PosteriorReport,
    TestOutcome,
    TestResult,
    TestSequence,
    iterations_needed,
    posterior_fold,
)


@dataclass(frozen=True)
class ScenarioDocument:
    """A validated what-if scenario.

    ``sequence`` entries are (test name, result) pairs; every name must be
    declared in ``tests``.
    """

    pretest_probability: Probability
    tests: Mapping[str, TestCharacteristics]
    sequence: tuple[tuple[str, TestResult], ...] = ()
    target_ppv: Probability | None = None

    def __post_init__(self):
        object.__setattr__(self, "tests", dict(self.tests))
        object.__setattr__(self, "sequence", tuple(self.sequence))
        for name, _ in self.sequence:
            if name not in self.tests:
                raise ValidationError(f"sequence: undeclared test name {name!r}")

    def outcomes(self) -> tuple[TestOutcome, ...]:
        return tuple(
            TestOutcome(test=self.tests[name], result=result)
            for name, result in self.sequence
        )

    def with_outcome(self, name: str, result: TestResult) -> "ScenarioDocument":
        if name not in self.tests:
            raise ValidationError(f"sequence: undeclared test name {name!r}")
        return replace(self, sequence=self.sequence + ((name, result),))

    def without_last_outcome(self) -> "ScenarioDocument":
        if not self.sequence:
            raise ValidationError("sequence: nothing to undo")
        return replace(self, sequence=self.sequence[:-1])

    def to_dict(self) -> dict[str, Any]:
        """Canonical dictionary form (fixed key order, sorted test names)."""
        doc: dict[str, Any] = {
            "pretest_probability": self.pretest_probability.value,
            "tests": {
                name: {
                    "sensitivity": t.sensitivity.value,
                    "specificity": t.specificity.value,
                }
                for name, t in sorted(self.tests.items())
            },
            "sequence": [
                {"test": name, "result": result.value} for name, result in self.sequence
            ],
        }
        if self.target_ppv is not None:
            doc["targets"] = {"target_ppv": self.target_ppv.value}
        return doc


def serialize_scenario(doc: ScenarioDocument) -> str:
    """Canonical JSON text, newline terminated."""
    return json.dumps(doc.to_dict(), indent=2) + "\n"


def _require(data: Mapping[str, Any], key: str, path: str) -> Any:
    if key not in data:
        raise ValidationError(f"{path}{key}: required field is missing")
    return data[key]


def _parse_probability(value: Any, path: str) -> Probability:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{path}: expected a number, got {value!r}")
    try:
        return Probability(value)
    except ValueError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def parse_scenario(data: Any) -> ScenarioDocument:
    """Build a ScenarioDocument from parsed JSON, with field diagnostics."""
    if not isinstance(data, Mapping):
        raise ValidationError("document root must be a JSON object")
    known = {"pretest_probability", "tests", "sequence", "targets"}
    for key in data:
        if key not in known:
            raise ValidationError(f"{key}: unknown field")

    pretest = _parse_probability(
        _require(data, "pretest_probability", ""), "pretest_probability"
    )

    raw_tests = _require(data, "tests", "")
    if not isinstance(raw_tests, Mapping) or not raw_tests:
        raise ValidationError("tests: expected a nonempty object of named tests")
    tests: dict[str, TestCharacteristics] = {}
    for name, spec_map in raw_tests.items():
        path = f"tests.{name}"
        if not isinstance(spec_map, Mapping):
            raise ValidationError(f"{path}: expected an object")
        tests[name] = TestCharacteristics(
            label=name,
            sensitivity=_parse_probability(
                _require(spec_map, "sensitivity", path + "."), f"{path}.sensitivity"
            ),
            specificity=_parse_probability(
                _require(spec_map, "specificity", path + "."), f"{path}.specificity"
            ),
        )

    sequence: list[tuple[str, TestResult]] = []
    raw_sequence = data.get("sequence", [])
    if not isinstance(raw_sequence, list):
        raise ValidationError("sequence: expected a list")
    for i, entry in enumerate(raw_sequence):
        path = f"sequence[{i}]"
        if not isinstance(entry, Mapping):
            raise ValidationError(f"{path}: expected an object")
        name = _require(entry, "test", path + ".")
        if name not in tests:
            raise ValidationError(f"{path}.test: undeclared test name {name!r}")
        raw_result = _require(entry, "result", path + ".")
        try:
            result = TestResult(raw_result)
        except ValueError:
            raise ValidationError(
                f"{path}.result: expected 'positive' or 'negative', got {raw_result!r}"
            ) from None
        sequence.append((name, result))

    target = None
    if "targets" in data:
        raw_targets = data["targets"]
        if not isinstance(raw_targets, Mapping):
            raise ValidationError("targets: expected an object")
        for key in raw_targets:
            if key != "target_ppv":
                raise ValidationError(f"targets.{key}: unknown field")
        if "target_ppv" in raw_targets:
            target = _parse_probability(raw_targets["target_ppv"], "targets.target_ppv")

    return ScenarioDocument(
        pretest_probability=pretest,
        tests=tests,
        sequence=tuple(sequence),
        target_ppv=target,
    )


def parse_scenario_text(text: str) -> ScenarioDocument:
    """Parse scenario JSON text, mapping syntax errors to diagnostics with
    line and column."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return parse_scenario(data)


def _report_of_fold(report: PosteriorReport) -> dict[str, Any]:
    return {
        "posterior_disease": report.posterior_disease.value,
        "posterior_no_disease": report.posterior_no_disease.value,
        "formula_used": report.formula_used.value,
        "trace": [
            {"outcome": label, "posterior_disease": p.value}
            for label, p in report.per_step_trace
        ],
    }


def _error_field(exc: ScreeningError) -> dict[str, Any]:
    return {"error": {"code": exc.code, "message": exc.message}}


def build_compute_report(doc: ScenarioDocument) -> dict[str, Any]:
    """The full scenario report shared by the CLI and the service.

    Per-test descriptive fields that are undefined for a particular test
    (prevalence threshold of an uninformative test, dominance without a
    unique crossing) are embedded as error objects, since the rest of the
    scenario remains well-defined.  Errors in the sequence posterior or in
    iteration planning abort the report and propagate to the caller.
    """
    phi = doc.pretest_probability
    report: dict[str, Any] = {
        "pretest_probability": phi.value,
        "tests": {},
        "sequence": None,
    }
    for name, test in sorted(doc.tests.items()):
        entry: dict[str, Any] = {
            "sensitivity": test.sensitivity.value,
            "specificity": test.specificity.value,
            "informative": test.informative,
            "ppv": ppv(test, phi).value,
            "npv": npv(test, phi).value,
        }
        try:
            entry["prevalence_threshold"] = prevalence_threshold(test).value
        except UninformativeTest as exc:
            entry["prevalence_threshold"] = _error_field(exc)
        try:
            entry["dominance"] = classify_dominance(test, phi).value
        except (NoUniqueIntersection, NumericalFailure) as exc:
            entry["dominance"] = _error_field(exc)
        if doc.target_ppv is not None:
            entry["iterations_needed"] = iterations_needed(test, phi, doc.target_ppv)
        report["tests"][name] = entry

    outcomes = doc.outcomes()
    if outcomes:
        fold = posterior_fold(TestSequence(outcomes), phi)
        seq_report = _report_of_fold(fold)
        seq_report["outcomes"] = [o.label for o in outcomes]
        report["sequence"] = seq_report
    return report


def build_geometry_report(test: TestCharacteristics) -> dict[str, Any]:
    """Prevalence threshold, crossing point and partition areas for one test.

    Raises the underlying typed error (UninformativeTest first, since the
    threshold is computed first) rather than embedding it; callers render
    the error object.
    """
    threshold = prevalence_threshold(test)
    crossing = intersection_point(test)
    partition = partition_areas(test)
    return {
        "sensitivity": test.sensitivity.value,
        "specificity": test.specificity.value,
        "prevalence_threshold": threshold.value,
        "intersection": {
            "phi_i": crossing.phi_i.value,
            "method": crossing.method.value,
            "residual": crossing.residual,
        },
        "ndp_area": partition.ndp_area,
        "pdp_area": partition.pdp_area,
        "quadrature_error_estimate": partition.quadrature_error_estimate,
    }


def report_to_json(report: Mapping[str, Any]) -> str:
    """Deterministic JSON rendering shared by the CLI and the service."""
    return json.dumps(report, indent=2) + "\n"
