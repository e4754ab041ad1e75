"""Command line front end.

Subcommands: validate, symbol, range, interval, verify, counterexample,
plot.  Operator spec files are JSON documents with integer ``period``,
integer ``band`` and a ``diagonals`` map from offset strings to arrays of
entries (bare reals or ``[re, im]`` pairs).

Exit codes: 0 success, 2 unreadable/unparseable input, 3 spec invariant
violation, 4 output I/O failure, 5 verification tolerance breach.
All file output is written atomically (temp file, then rename).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field

import numpy as np

from . import svg
from .curves import (
    NonrepresentabilityReport,
    boundary_quartic,
    ellipse_family_residual,
    envelope_residual,
    ellipse_family,
    evaluate_form,
    nonrepresentability_report,
)
from .operators import (
    TAU,
    PeriodicBandedSpec,
    SpecError,
    block_diagonalization_residual,
    counterexample_spec,
    lifting_residual_max,
    load_spec,
    spec_to_doc,
    spectrum_match_gap,
    symbol,
    symbol_batch,
)
from .ranges import (
    RangeReport,
    angular_resolution_gap,
    matrix_numerical_range,
    operator_range,
    selfadjoint_interval,
    truncation_inclusion_check,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_IO = 4
EXIT_TOLERANCE = 5

FORMATS = ("report-doc", "flat-table", "svg")


@dataclass
class RunConfig:
    command: str
    spec_path: str | None = None
    theta: float = 0.0
    theta_count: int = 720
    phi_count: int = 720
    s_values: list[int] = field(default_factory=list)
    direction_count: int = 720
    overlay_thetas: int = 0
    tol_scale: float = 1.0
    output_path: str | None = None
    format: str = "report-doc"


class OutputError(RuntimeError):
    """Failure while writing results (distinct from unreadable input)."""


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    tmp_path = None
    try:
        handle, tmp_path = tempfile.mkstemp(dir=directory, prefix=".toeprange-")
        with os.fdopen(handle, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp_path, path)
    except OSError as exc:
        if tmp_path is not None and os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise OutputError(str(exc)) from exc


def _load(config: RunConfig) -> PeriodicBandedSpec:
    if config.spec_path is None:
        raise SpecError("a spec file is required for this command")
    return load_spec(config.spec_path)


def _json(doc) -> str:
    return json.dumps(doc, indent=1) + "\n"


def cmd_validate(config: RunConfig) -> int:
    spec = _load(config)
    _write_output(_json(spec_to_doc(spec)), config.output_path)
    return EXIT_OK


def cmd_symbol(config: RunConfig) -> int:
    spec = _load(config)
    matrix = symbol(spec, config.theta)
    doc = {
        "kind": "symbol",
        "theta": config.theta,
        "period": spec.period,
        "matrix": [[[z.real, z.imag] for z in row] for row in matrix],
    }
    _write_output(_json(doc), config.output_path)
    return EXIT_OK


def _overlay_polygons(spec: PeriodicBandedSpec, config: RunConfig):
    overlays = []
    for j in range(config.overlay_thetas):
        theta = TAU * j / config.overlay_thetas
        poly = matrix_numerical_range(symbol_batch(spec, [theta])[0], config.phi_count)
        overlays.append((f"theta={theta:.6f}", poly.vertices))
    return overlays


def _emit_range(spec: PeriodicBandedSpec, report: RangeReport, config: RunConfig) -> None:
    if config.format == "flat-table":
        _write_output(report.flat_table(), config.output_path)
    elif config.format == "svg":
        figure = svg.range_figure(
            report.polygon.vertices, overlays=_overlay_polygons(spec, config)
        )
        _write_output(figure, config.output_path)
    else:
        _write_output(_json(report.to_dict()), config.output_path)


def cmd_range(config: RunConfig) -> int:
    spec = _load(config)
    report = operator_range(spec, config.theta_count, config.phi_count)
    _emit_range(spec, report, config)
    return EXIT_OK


def cmd_plot(config: RunConfig) -> int:
    config.format = "svg"
    return cmd_range(config)


def cmd_interval(config: RunConfig) -> int:
    spec = _load(config)
    a, b = selfadjoint_interval(spec, config.theta_count)
    doc = {"kind": "interval", "theta_count": config.theta_count, "a": a, "b": b}
    _write_output(_json(doc), config.output_path)
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    spec = _load(config)
    s_values = config.s_values or [3, 4, 6]
    for s in s_values:
        if s < 2 or s * spec.period < 2 * spec.band + 1:
            raise SpecError(
                f"s={s} violates the precondition s(n+1) >= 2m+1 "
                f"({s * spec.period} < {2 * spec.band + 1})"
            )
    report = operator_range(spec, config.theta_count, config.phi_count)
    scale = 1.0 + spec.max_entry()
    block_tol = 1e-10 * scale * config.tol_scale
    spectrum_tol = 1e-8 * config.tol_scale
    lift_tol = 1e-8 * config.tol_scale
    inclusion_tol = (
        angular_resolution_gap(report.polygon, config.phi_count) + 1e-8
    ) * config.tol_scale

    columns = (
        "s block_residual spectrum_gap lift_residual inclusion_excess status"
    )
    lines = [columns]
    all_ok = True
    for s in s_values:
        block = block_diagonalization_residual(spec, s)
        spectrum = spectrum_match_gap(spec, s)
        lift = lifting_residual_max(spec, s)
        excess = truncation_inclusion_check(spec, s * spec.period - spec.band, report)
        ok = (
            block <= block_tol
            and spectrum <= spectrum_tol
            and lift <= lift_tol
            and excess <= inclusion_tol
        )
        all_ok = all_ok and ok
        lines.append(
            f"{s} {_fmt(block)} {_fmt(spectrum)} {_fmt(lift)} {_fmt(excess)} "
            + ("PASS" if ok else "FAIL")
        )
    lines.append(
        "tolerances "
        f"{_fmt(block_tol)} {_fmt(spectrum_tol)} {_fmt(lift_tol)} {_fmt(inclusion_tol)}"
    )
    _write_output("\n".join(lines) + "\n", config.output_path)
    return EXIT_OK if all_ok else EXIT_TOLERANCE


def counterexample_doc(config: RunConfig) -> tuple[dict, str]:
    """Machine-readable counterexample pipeline report plus a summary."""
    spec = counterexample_spec()
    report = operator_range(spec, config.theta_count, config.phi_count)
    vertices = report.polygon.vertices
    quartic = boundary_quartic()
    residuals = np.abs(
        evaluate_form(quartic, 1.0, vertices[:, 0], vertices[:, 1])
    ) / (1.0 + np.hypot(vertices[:, 0], vertices[:, 1]) ** 4)
    family = ellipse_family()
    grid = np.linspace(0.0, TAU, 100, endpoint=False)
    family_residual = max(
        abs(ellipse_family_residual(th, tt)) for th in grid for tt in grid
    )
    envelope_extremes = max(
        abs(envelope_residual(family, 1.5, 0.0)),
        abs(envelope_residual(family, -2.5, 0.0)),
        abs(envelope_residual(family, 0.5, 0.0)),
    )
    pipeline = nonrepresentability_report(config.direction_count)
    doc = {
        "kind": "counterexample-report",
        "range_report": report.to_dict(),
        "quartic_residual_max": float(np.max(residuals)),
        "real_axis_extremes": [float(vertices[:, 0].min()), float(vertices[:, 0].max())],
        "ellipse_grid_residual": float(family_residual),
        "envelope_extreme_residual": float(envelope_extremes),
        "nonrepresentability": pipeline.to_dict(),
    }
    summary = "\n".join(
        [
            f"range polygon: {vertices.shape[0]} vertices at "
            f"{config.theta_count}x{config.phi_count} resolution",
            f"max normalized boundary quartic residual: {_fmt(doc['quartic_residual_max'])}",
            "real axis extremes: "
            f"{_fmt(doc['real_axis_extremes'][0])} .. {_fmt(doc['real_axis_extremes'][1])}",
            f"ellipse family residual (100x100 grid): {_fmt(doc['ellipse_grid_residual'])}",
            f"duality residual on sampled tangents: {_fmt(pipeline.duality_max_residual)}",
            f"dual quartic hyperbolic: {pipeline.verdict.hyperbolic}",
            f"witness direction angle: {_fmt(pipeline.verdict.witness_theta)}",
            f"witness max |Im root|: {_fmt(pipeline.verdict.max_imag)}",
            f"conclusion: {pipeline.conclusion}",
        ]
    )
    return doc, summary


def parse_counterexample_doc(doc: dict) -> tuple[RangeReport, NonrepresentabilityReport]:
    """Round-trip parser for the counterexample report document."""
    if doc.get("kind") != "counterexample-report":
        raise ValueError("not a counterexample-report document")
    return (
        RangeReport.from_dict(doc["range_report"]),
        NonrepresentabilityReport.from_dict(doc["nonrepresentability"]),
    )


def cmd_counterexample(config: RunConfig) -> int:
    doc, summary = counterexample_doc(config)
    print(summary)
    if config.output_path is not None:
        _write_output(_json(doc), config.output_path)
    return EXIT_OK


_HANDLERS = {
    "validate": cmd_validate,
    "symbol": cmd_symbol,
    "range": cmd_range,
    "interval": cmd_interval,
    "verify": cmd_verify,
    "counterexample": cmd_counterexample,
    "plot": cmd_plot,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toeprange",
        description="Numerical ranges of periodic banded Toeplitz operators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, spec_required=True, sweep=True):
        if spec_required:
            p.add_argument("spec", help="operator spec file (JSON)")
        if sweep:
            p.add_argument("--theta-count", type=int, default=720)
            p.add_argument("--phi-count", type=int, default=720)
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("validate", help="normalize and echo a spec file")
    add_common(p, sweep=False)

    p = sub.add_parser("symbol", help="evaluate the symbol matrix at an angle")
    add_common(p, sweep=False)
    p.add_argument("--theta", type=float, default=0.0)

    p = sub.add_parser("range", help="compute the operator range closure")
    add_common(p)
    p.add_argument("--format", choices=FORMATS, default="report-doc")
    p.add_argument("--overlay-thetas", type=int, default=0)

    p = sub.add_parser("interval", help="selfadjoint range interval [a, b]")
    add_common(p)

    p = sub.add_parser("verify", help="structural identity checks")
    add_common(p)
    p.add_argument(
        "--s", type=int, action="append", dest="s_values",
        help="replication count; repeatable (default 3 4 6)",
    )
    p.add_argument("--tol-scale", type=float, default=1.0)

    p = sub.add_parser(
        "counterexample",
        help="full envelope/duality/hyperbolicity pipeline for the bundled "
        "2-periodic 5-banded operator",
    )
    add_common(p, spec_required=False)
    p.add_argument("--direction-count", type=int, default=720)

    p = sub.add_parser("plot", help="render the range closure as SVG")
    add_common(p)
    p.add_argument("--overlay-thetas", type=int, default=6)
    return parser


def build_config(args: argparse.Namespace) -> RunConfig:
    config = RunConfig(command=args.command)
    for name in (
        "theta",
        "theta_count",
        "phi_count",
        "direction_count",
        "overlay_thetas",
        "tol_scale",
    ):
        if hasattr(args, name):
            setattr(config, name, getattr(args, name))
    config.spec_path = getattr(args, "spec", None)
    config.output_path = getattr(args, "out", None)
    config.format = getattr(args, "format", "report-doc")
    config.s_values = list(getattr(args, "s_values", None) or [])
    if config.theta_count < 1:
        raise SpecError("theta-count must be >= 1")
    if config.phi_count < 3:
        raise SpecError("phi-count must be >= 3")
    if config.overlay_thetas < 0:
        raise SpecError("overlay-thetas must be >= 0")
    return config


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = build_config(args)
        return _HANDLERS[args.command](config)
    except OutputError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except (json.JSONDecodeError, OSError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SpecError as exc:
        print(f"error: invalid spec: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
