"""Command-line interface.

Subcommands: ``compute`` (scenario report), ``curve`` (CSV export of both
predictive curves), ``geometry`` (threshold, crossing and partition
areas) and ``serve`` (HTTP service).

Exit codes: 0 success, 2 validation failure (diagnostics on stderr),
3 computation error (typed error object on stdout), 4 unwritable output.
"""

from __future__ import annotations

import argparse
import os
import sys

from .errors import ScreeningError, ValidationError
from .geometry import sample_curves
from .scenario import (
    build_compute_report,
    build_geometry_report,
    parse_scenario_text,
    report_to_json,
)
from .screening import TestCharacteristics

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_COMPUTE = 3
EXIT_OUTPUT = 4

#: Values in curve CSV rows carry 12 significant digits.
_CSV_FLOAT = "{:.12g}"


def _write_output(text: str, output: str | None) -> int:
    if output is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"cannot write {output}: {exc}", file=sys.stderr)
        return EXIT_OUTPUT
    return EXIT_OK


def _emit_error(exc: ScreeningError) -> int:
    body = {"error": {"code": exc.code, "message": exc.message}}
    sys.stdout.write(report_to_json(body))
    return EXIT_COMPUTE


def _table_rows(rows: list[tuple[str, str]]) -> str:
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows) + "\n"


def _compute_table(report: dict) -> str:
    lines = [f"Pretest probability: {report['pretest_probability']:.6g}", ""]
    for name, entry in report["tests"].items():
        lines.append(f"Test {name}")
        rows = [
            ("  sensitivity", f"{entry['sensitivity']:.6g}"),
            ("  specificity", f"{entry['specificity']:.6g}"),
            ("  ppv", f"{entry['ppv']:.6g}"),
            ("  npv", f"{entry['npv']:.6g}"),
        ]
        threshold = entry["prevalence_threshold"]
        if isinstance(threshold, dict):
            rows.append(("  prevalence threshold", threshold["error"]["code"]))
        else:
            rows.append(("  prevalence threshold", f"{threshold:.6g}"))
        dominance = entry["dominance"]
        rows.append(
            ("  dominance", dominance["error"]["code"] if isinstance(dominance, dict) else dominance)
        )
        if "iterations_needed" in entry:
            rows.append(("  iterations needed", str(entry["iterations_needed"])))
        lines.append(_table_rows(rows).rstrip("\n"))
        lines.append("")
    seq = report["sequence"]
    if seq is not None:
        lines.append("Sequence " + " ".join(seq["outcomes"]))
        lines.append(f"  formula:               {seq['formula_used']}")
        lines.append(f"  posterior disease:     {seq['posterior_disease']:.6g}")
        lines.append(f"  posterior no disease:  {seq['posterior_no_disease']:.6g}")
    return "\n".join(lines).rstrip("\n") + "\n"


def _geometry_table(report: dict) -> str:
    rows = [
        ("sensitivity", f"{report['sensitivity']:.6g}"),
        ("specificity", f"{report['specificity']:.6g}"),
        ("prevalence threshold", f"{report['prevalence_threshold']:.6g}"),
        ("crossing point", f"{report['intersection']['phi_i']:.12g}"),
        ("method", report["intersection"]["method"]),
        ("residual", f"{report['intersection']['residual']:.3g}"),
        ("negative-dominant area", f"{report['ndp_area']:.12g}"),
        ("positive-dominant area", f"{report['pdp_area']:.12g}"),
        ("quadrature error", f"{report['quadrature_error_estimate']:.3g}"),
    ]
    return _table_rows(rows)


def _cmd_compute(args: argparse.Namespace) -> int:
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        doc = parse_scenario_text(text)
    except ValidationError as exc:
        print(f"invalid scenario: {exc.message}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        report = build_compute_report(doc)
    except ScreeningError as exc:
        return _emit_error(exc)
    text_out = report_to_json(report) if args.format == "json" else _compute_table(report)
    return _write_output(text_out, args.output)


def _parse_test_args(args: argparse.Namespace) -> TestCharacteristics:
    return TestCharacteristics(
        label="cli",
        sensitivity=args.sensitivity,
        specificity=args.specificity,
    )


def _cmd_curve(args: argparse.Namespace) -> int:
    try:
        test = _parse_test_args(args)
        if args.points < 2:
            raise ValueError(f"--points must be at least 2, got {args.points}")
        sample = sample_curves(test, args.points)
    except ValueError as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    if args.format == "json":
        text = report_to_json(
            {
                "phi_values": list(sample.phi_values),
                "ppv_values": list(sample.ppv_values),
                "npv_values": list(sample.npv_values),
            }
        )
        return _write_output(text, args.output)
    rows = ["phi,ppv,npv"]
    for phi, p, n in zip(sample.phi_values, sample.ppv_values, sample.npv_values):
        rows.append(
            f"{_CSV_FLOAT.format(phi)},{_CSV_FLOAT.format(p)},{_CSV_FLOAT.format(n)}"
        )
    return _write_output("\n".join(rows) + "\n", args.output)


def _cmd_geometry(args: argparse.Namespace) -> int:
    try:
        test = _parse_test_args(args)
    except ValueError as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        report = build_geometry_report(test)
    except ScreeningError as exc:
        return _emit_error(exc)
    text = report_to_json(report) if args.format == "json" else _geometry_table(report)
    return _write_output(text, args.output)


def _cmd_serve(args: argparse.Namespace) -> int:
    from .service import serve

    serve(
        bind=args.bind,
        port=args.port,
        snapshot_path=os.environ.get("SEQSCREEN_SNAPSHOT"),
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqscreen",
        description="Bayesian predictive values for sequential screening tests.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="evaluate a scenario document")
    p_compute.add_argument("--input", required=True, help="scenario JSON path")
    p_compute.add_argument("--output", default=None, help="write report here instead of stdout")
    p_compute.add_argument("--format", choices=["json", "table"], default="json")
    p_compute.set_defaults(func=_cmd_compute)

    p_curve = sub.add_parser("curve", help="export both predictive curves as CSV")
    p_curve.add_argument("-a", "--sensitivity", type=float, required=True)
    p_curve.add_argument("-b", "--specificity", type=float, required=True)
    p_curve.add_argument("--points", type=int, default=101, help="grid size (>= 2)")
    p_curve.add_argument("--output", default=None, help="CSV path (stdout by default)")
    p_curve.add_argument("--format", choices=["csv", "json"], default="csv")
    p_curve.set_defaults(func=_cmd_curve)

    p_geom = sub.add_parser("geometry", help="threshold, crossing and partition areas")
    p_geom.add_argument("-a", "--sensitivity", type=float, required=True)
    p_geom.add_argument("-b", "--specificity", type=float, required=True)
    p_geom.add_argument("--output", default=None)
    p_geom.add_argument("--format", choices=["json", "table"], default="json")
    p_geom.set_defaults(func=_cmd_geometry)

    p_serve = sub.add_parser("serve", help="run the HTTP JSON service")
    p_serve.add_argument("--bind", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
