"""Command-line front end.

Subcommands::

    spectrum      Fourier / Chebyshev coefficients (JSON or CSV)
    bounds        coefficient bounds report; exit 1 on any violation
    band-design   sufficient band widths and center for one harmonic
    band-verify   certify a candidate against a band; exit 1 if not certified
    clamp         clip a function into a band, written as a samples spec
    plot          CSV of x, f(x) and optionally the band columns

Exit codes: 0 success or certified, 1 bound violation or failed
certification, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .band import BandSpec, DesignRequest, clamp_candidate, design_band, make_center, verify_candidate
from .bounds import DEFAULT_ATOL, DEFAULT_RTOL, bound_report
from .errors import CenterNotZeroedError, DomainError, SpecError
from .functions import load_spec, sample_uniform, spec_from_dict, uniform_grid
from .spectral import spectrum

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2

DEFAULT_GRID = 4096
DEFAULT_ORDER = 16

BAND_REQUIRED = ("center", "delta", "j", "q", "a_j0")
BAND_OPTIONAL = (
    "b_j0",
    "n_extrema",
    "center_kind",
    "provenance",
    "delta_eq11",
    "delta_eq12",
    "delta_recommended",
    "variation_budget",
    "already_attained",
    "config",
)


class InputError(Exception):
    """Bad command-line input; maps to exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str | None
    band: str | None
    grid: int
    order: int
    j: int | None
    q: float | None
    n_extrema: int | None
    center: str
    delta: float | None
    a_j0: float | None
    tolerance: float | None
    plateau_tolerance: float
    output: str | None
    format: str


def _clean(obj):
    """Make a structure JSON-safe: numpy scalars to Python, non-finite floats to None."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        value = float(obj)
        return value if math.isfinite(value) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _num(value) -> str:
    if value is None:
        return ""
    return format(float(value), ".17g")


def _dump_json(payload: dict) -> str:
    return json.dumps(_clean(payload), indent=2) + "\n"


def _dump_csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else _num(v) for v in row))
    return "\n".join(lines) + "\n"


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _load(path: str | None, what: str = "--input"):
    if path is None:
        raise InputError(f"{what} is required")
    try:
        return load_spec(path)
    except OSError as err:
        raise InputError(f"cannot read {path}: {err.strerror}") from None
    except SpecError as err:
        raise InputError(f"{path}: {err}") from None


def load_band(path: str) -> BandSpec:
    """Read a band-spec JSON file."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as err:
        raise InputError(f"cannot read {path}: {err.strerror}") from None
    except json.JSONDecodeError as err:
        raise InputError(f"{path}: invalid JSON at line {err.lineno}, column {err.colno}: {err.msg}") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: band spec must be a JSON object")
    missing = [k for k in BAND_REQUIRED if k not in data]
    if missing:
        raise InputError(f"{path}: missing band field(s): {', '.join(missing)}")
    unknown = sorted(set(data) - set(BAND_REQUIRED) - set(BAND_OPTIONAL))
    if unknown:
        raise InputError(f"{path}: unknown band field(s): {', '.join(unknown)}")
    try:
        center = spec_from_dict(data["center"])
        request = DesignRequest(
            j=data["j"],
            q=data["q"],
            a_j0=data["a_j0"],
            b_j0=data.get("b_j0", 0.0),
            n_extrema=data.get("n_extrema"),
            center_kind=data.get("center_kind", "minimal"),
        )
        return BandSpec(center, float(data["delta"]), request, data.get("provenance", "eq12"))
    except (SpecError, DomainError, ValueError, TypeError) as err:
        raise InputError(f"{path}: {err}") from None


def band_to_dict(band: BandSpec) -> dict:
    req = band.request
    return {
        "center": band.center.to_dict(),
        "delta": band.delta,
        "j": req.j,
        "q": req.q,
        "a_j0": req.a_j0,
        "b_j0": req.b_j0,
        "n_extrema": req.n_extrema,
        "center_kind": req.center_kind,
        "provenance": band.provenance,
    }


def variation_to_dict(report) -> dict:
    return {
        "total_variation": report.total_variation,
        "extrema_count": report.extrema_count,
        "range": report.range,
        "deltas": list(report.deltas),
        "extrema": [{"x": e.x, "y": e.y, "kind": e.kind} for e in report.extrema],
        "plateau_tolerance": report.plateau_tolerance,
        "grid": report.grid,
        "domain": report.domain,
    }


def cmd_spectrum(cfg: RunConfig) -> int:
    spec = _load(cfg.input)
    table = spectrum(spec, cfg.order, cfg.grid)
    if cfg.format == "csv":
        rows = [(0, table.a0, 0.0 if table.basis == "trig" else None)]
        for j in range(1, table.order + 1):
            rows.append((j, table.a(j), table.b(j) if table.basis == "trig" else None))
        _write(_dump_csv(("j", "a_j", "b_j"), rows), cfg.output)
    else:
        payload = {
            "basis": table.basis,
            "a0": table.a0,
            "cos": list(table.cos),
            "sin": list(table.sin),
            "order": table.order,
            "grid": table.grid,
            "config": asdict(cfg),
        }
        _write(_dump_json(payload), cfg.output)
    return EXIT_OK


def cmd_bounds(cfg: RunConfig) -> int:
    spec = _load(cfg.input)
    atol = DEFAULT_ATOL if cfg.tolerance is None else cfg.tolerance
    report = bound_report(
        spec, cfg.order, cfg.grid, atol=atol, rtol=DEFAULT_RTOL, plateau_tolerance=cfg.plateau_tolerance
    )
    if cfg.format == "csv":
        header = (
            "j",
            "actual_abs_a",
            "actual_abs_b",
            "bound_variation",
            "bound_extrema",
            "bound_range",
            "ratio_tightness",
            "satisfied",
        )
        rows = [
            (
                r.j,
                r.actual_abs_a,
                r.actual_abs_b,
                r.bound_variation,
                r.bound_extrema,
                r.bound_range,
                r.ratio_tightness,
                "true" if r.satisfied else "false",
            )
            for r in report.rows
        ]
        _write(_dump_csv(header, rows), cfg.output)
    else:
        rows = []
        for r in report.rows:
            row = asdict(r)
            row["satisfied"] = r.satisfied
            rows.append(row)
        payload = {
            "basis": report.basis,
            "grid": report.grid,
            "order": cfg.order,
            "atol": report.atol,
            "rtol": report.rtol,
            "all_satisfied": report.all_satisfied,
            "variation": variation_to_dict(report.variation),
            "rows": rows,
            "config": asdict(cfg),
        }
        _write(_dump_json(payload), cfg.output)
    return EXIT_OK if report.all_satisfied else EXIT_FAIL


def cmd_band_design(cfg: RunConfig) -> int:
    spec = _load(cfg.input)
    if not spec.periodic:
        raise InputError("band design needs a periodic function spec")
    request, widths, band = design_band(
        spec,
        cfg.j,
        cfg.q,
        n_extrema=cfg.n_extrema,
        center_kind=cfg.center,
        grid=cfg.grid,
        a_j0=cfg.a_j0,
        delta=cfg.delta,
    )
    if band is None:
        payload = {
            "center": make_center(spec, request.j, request.center_kind, cfg.grid).to_dict(),
            "delta": 0.0,
            "j": request.j,
            "q": request.q,
            "a_j0": request.a_j0,
            "b_j0": request.b_j0,
            "n_extrema": request.n_extrema,
            "center_kind": request.center_kind,
            "provenance": widths.provenance,
        }
    else:
        payload = band_to_dict(band)
    payload.update(
        {
            "delta_eq11": widths.eq11,
            "delta_eq12": widths.eq12,
            "delta_recommended": widths.recommended,
            "variation_budget": widths.budget,
            "already_attained": widths.already_attained,
            "config": asdict(cfg),
        }
    )
    _write(_dump_json(payload), cfg.output)
    return EXIT_OK


def cmd_band_verify(cfg: RunConfig) -> int:
    candidate = _load(cfg.input)
    if cfg.band is None:
        raise InputError("--band is required")
    band = load_band(cfg.band)
    tol = DEFAULT_ATOL if cfg.tolerance is None else cfg.tolerance
    try:
        result = verify_candidate(candidate, band, cfg.grid, tol)
    except CenterNotZeroedError as err:
        raise InputError(str(err)) from None
    payload = asdict(result)
    payload["delta_report"] = variation_to_dict(result.delta_report)
    payload["config"] = asdict(cfg)
    _write(_dump_json(payload), cfg.output)
    return EXIT_OK if result.certified else EXIT_FAIL


def cmd_clamp(cfg: RunConfig) -> int:
    spec = _load(cfg.input)
    if cfg.band is None:
        raise InputError("--band is required")
    candidate = clamp_candidate(spec, load_band(cfg.band), cfg.grid)
    _write(json.dumps(candidate.to_dict()) + "\n", cfg.output)
    return EXIT_OK


def cmd_plot(cfg: RunConfig) -> int:
    spec = _load(cfg.input)
    if spec.periodic:
        x = uniform_grid(cfg.grid)
        fx = sample_uniform(spec, cfg.grid)
    else:
        x = np.linspace(-1.0, 1.0, cfg.grid)
        fx = spec(x)
    header = ["x", "f"]
    columns = [x, fx]
    if cfg.band is not None:
        if not spec.periodic:
            raise InputError("a band can only be plotted with a periodic function spec")
        band = load_band(cfg.band)
        header += ["center", "lower", "upper", "candidate"]
        columns += [
            band.center(x),
            band.lower(x),
            band.upper(x),
            np.asarray(clamp_candidate(spec, band, cfg.grid).values),
        ]
    _write(_dump_csv(header, zip(*columns)), cfg.output)
    return EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "bounds": cmd_bounds,
    "band-design": cmd_band_design,
    "band-verify": cmd_band_verify,
    "clamp": cmd_clamp,
    "plot": cmd_plot,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmonic-bounds",
        description="Fourier/Chebyshev coefficient bounds and harmonic-reduction bands.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", help="function spec JSON file")
        p.add_argument("--grid", type=int, default=DEFAULT_GRID, help="quadrature/sampling grid size")
        p.add_argument("--output", help="output file (default: stdout)")

    p = sub.add_parser("spectrum", help="expansion coefficients")
    common(p)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("bounds", help="check coefficient bounds")
    common(p)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--tolerance", type=float, help="absolute tolerance (default 1e-8)")
    p.add_argument("--plateau-tolerance", type=float, default=0.0)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("band-design", help="design a proximity band")
    common(p)
    p.add_argument("--j", type=int, required=True, help="target harmonic")
    p.add_argument("--q", type=float, required=True, help="reduction factor (> 1)")
    p.add_argument("--n-extrema", type=int, help="assumed extrema count of the distortion")
    p.add_argument("--center", choices=("trivial", "minimal"), default="minimal")
    p.add_argument("--delta", type=float, help="force this band width")
    p.add_argument("--a-j0", type=float, help="override the starting amplitude")

    p = sub.add_parser("band-verify", help="certify a candidate against a band")
    common(p)
    p.add_argument("--band", help="band spec JSON file")
    p.add_argument("--tolerance", type=float, help="absolute tolerance (default 1e-8)")

    p = sub.add_parser("clamp", help="clip a function into a band")
    common(p)
    p.add_argument("--band", help="band spec JSON file")

    p = sub.add_parser("plot", help="CSV plot data")
    common(p)
    p.add_argument("--band", help="band spec JSON file")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        input=args.input,
        band=getattr(args, "band", None),
        grid=args.grid,
        order=getattr(args, "order", DEFAULT_ORDER),
        j=getattr(args, "j", None),
        q=getattr(args, "q", None),
        n_extrema=getattr(args, "n_extrema", None),
        center=getattr(args, "center", "minimal"),
        delta=getattr(args, "delta", None),
        a_j0=getattr(args, "a_j0", None),
        tolerance=getattr(args, "tolerance", None),
        plateau_tolerance=getattr(args, "plateau_tolerance", 0.0),
        output=args.output,
        format=getattr(args, "format", "json"),
    )
    if cfg.input is None:
        raise InputError("--input is required")
    # per-operation minimums (aliasing, variation grids) are enforced by the library
    if cfg.grid < 4:
        raise InputError(f"--grid must be >= 4, got {cfg.grid}")
    if cfg.order < 1:
        raise InputError(f"--order must be >= 1, got {cfg.order}")
    if cfg.command == "band-design":
        if cfg.j < 1:
            raise InputError(f"--j must be >= 1, got {cfg.j}")
        if not cfg.q > 1:
            raise InputError(f"--q must be > 1, got {cfg.q}")
        if cfg.n_extrema is not None and cfg.n_extrema < 1:
            raise InputError(f"--n-extrema must be >= 1, got {cfg.n_extrema}")
        if cfg.delta is not None and not cfg.delta > 0:
            raise InputError(f"--delta must be > 0, got {cfg.delta}")
    if cfg.tolerance is not None and cfg.tolerance < 0:
        raise InputError("--tolerance must be >= 0")
    if cfg.plateau_tolerance < 0:
        raise InputError("--plateau-tolerance must be >= 0")
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[cfg.command](cfg)
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except (SpecError, DomainError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
