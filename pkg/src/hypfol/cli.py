"""Command line front end.

Subcommands: ``classify`` (grid classification of a family chart),
``scan-lambda`` (largest spiral pitch with positive margin, plus a margin
CSV), ``gauss`` (endpoint images and Jacobian ranks), ``critical``
(local minima of the squared distance).  Angles are radians.  Exit codes:
0 computed (whatever the verdict), 2 invalid configuration, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .errors import ConfigError, GeometryError, NumericalError
from .families import (
    SpiralParams,
    definiteness_margin,
    plane_normal_family,
    scan_lambda_max,
    spiral_chart,
    vertical_family,
)
from .foliation import (
    VERDICT_TOL,
    ball_samples,
    check_geodesic_field,
    classify_chart,
    critical_point_scan,
    grid_params,
    nondegeneracy_eigencheck,
    ring_growth_evidence,
)
from .geodesics import gauss_map, gauss_map_jacobian, svd_rank
from .lorentz import HPoint, mink_inner, project_to_hyperboloid, sphere_coords
from .report import report_payload, write_csv, write_report

FAMILIES = ("vertical", "plane-normal", "prop")


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration; serialized into every report."""

    command: str
    family: str | None
    alpha0: float
    delta: float
    lam: float | None
    grid: tuple[int, int]
    tol: float
    base_point: tuple[float, float, float, float] | None
    seed: int

    def to_dict(self) -> dict:
        d = asdict(self)
        d["grid"] = list(self.grid)
        if self.base_point is not None:
            d["base_point"] = list(self.base_point)
        return d


def _parse_grid(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise ConfigError(f"grid must look like NxM, got {text!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ConfigError(f"grid must look like NxM, got {text!r}") from None
    if n < 2 or m < 2:
        raise ConfigError("grid dimensions must be at least 2")
    return n, m


def _build_config(args: argparse.Namespace) -> RunConfig:
    if args.tol <= 0.0:
        raise ConfigError("--tol must be positive")
    family = getattr(args, "family", None)
    if family is not None and family not in FAMILIES:
        raise ConfigError(f"unknown family {family!r}")
    base_point = None
    if getattr(args, "base_point", None) is not None:
        base_point = tuple(float(x) for x in args.base_point)
    return RunConfig(
        command=args.command,
        family=family,
        alpha0=args.alpha0,
        delta=args.delta,
        lam=getattr(args, "lam", None),
        grid=_parse_grid(args.grid),
        tol=args.tol,
        base_point=base_point,
        seed=args.seed,
    )


def _resolve_family(cfg: RunConfig):
    """(chart, field-or-None) for the configured family."""
    if cfg.family == "vertical":
        field, chart = vertical_family()
        return chart, field
    if cfg.family == "plane-normal":
        field, chart = plane_normal_family()
        return chart, field
    if cfg.family == "prop":
        if cfg.lam is None:
            raise ConfigError("--lambda is required for the prop family")
        params = SpiralParams(alpha0=cfg.alpha0, lam=cfg.lam, delta=cfg.delta)
        return spiral_chart(params), None
    raise ConfigError("--family is required")


def _base_point(cfg: RunConfig) -> HPoint:
    if cfg.base_point is None:
        return HPoint((1.0, 0.0, 0.0, 0.0))
    arr = np.asarray(cfg.base_point, dtype=float)
    if abs(mink_inner(arr, arr) + 1.0) > 1e-6 * max(1.0, float(np.dot(arr, arr))):
        raise ConfigError("--base-point must satisfy -x0^2 + x1^2 + x2^2 + x3^2 = -1")
    if arr[0] <= 0.0:
        raise ConfigError("--base-point must have x0 > 0")
    return project_to_hyperboloid(arr)


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(cfg: RunConfig, out_base: str) -> int:
    chart, field = _resolve_family(cfg)
    rep = classify_chart(chart, grid=cfg.grid, tol=cfg.tol)
    results = {"classification": rep.to_dict()}
    if field is not None:
        samples = ball_samples(field.center, 0.8, 5, seed=cfg.seed)
        results["field_residual"] = check_geodesic_field(field, samples)
        checks = [nondegeneracy_eigencheck(field, p) for p in samples]
        results["eigencheck_degenerate"] = [bool(c.degenerate) for c in checks]
    payload = report_payload("classify", cfg.to_dict(), results, __version__)
    write_report(out_base + ".json", payload)
    print(f"aggregate: {rep.aggregate}")
    return 0


def cmd_scan_lambda(cfg: RunConfig, out_base: str) -> int:
    scan = scan_lambda_max(alpha0=cfg.alpha0, delta=cfg.delta, grid=cfg.grid)
    payload = report_payload("scan-lambda", cfg.to_dict(), {"scan": scan.to_dict()}, __version__)
    write_report(out_base + ".json", payload)
    params = SpiralParams(alpha0=cfg.alpha0, lam=scan.lambda_max, delta=cfg.delta)
    chart = spiral_chart(params)
    rows = [
        (r, t, definiteness_margin(r, t, params)) for r, t in grid_params(chart, cfg.grid)
    ]
    write_csv(out_base + ".csv", ["r", "t", "h_value"], rows)
    print(f"lambda_max: {scan.lambda_max!r}")
    return 0


def cmd_gauss(cfg: RunConfig, out_base: str) -> int:
    chart, _ = _resolve_family(cfg)
    rows = []
    rank_counts = {1: {}, -1: {}}
    for a, b in grid_params(chart, cfg.grid):
        row = [a, b]
        for sign in (1, -1):
            image = sphere_coords(gauss_map(chart.map(a, b), sign))
            jac = gauss_map_jacobian(chart, (a, b), sign)
            rank = svd_rank(jac, atol=cfg.tol)
            rank_counts[sign][rank] = rank_counts[sign].get(rank, 0) + 1
            row.extend([image[0], image[1], image[2], rank])
        rows.append(row)
    header = [
        "a",
        "b",
        "fwd_x",
        "fwd_y",
        "fwd_z",
        "fwd_rank",
        "bwd_x",
        "bwd_y",
        "bwd_z",
        "bwd_rank",
    ]
    write_csv(out_base + ".csv", header, rows)
    results = {
        "forward_rank_counts": {str(k): v for k, v in sorted(rank_counts[1].items())},
        "backward_rank_counts": {str(k): v for k, v in sorted(rank_counts[-1].items())},
    }
    payload = report_payload("gauss", cfg.to_dict(), results, __version__)
    write_report(out_base + ".json", payload)
    print(f"rows: {len(rows)}")
    return 0


def cmd_critical(cfg: RunConfig, out_base: str) -> int:
    chart, _ = _resolve_family(cfg)
    base = _base_point(cfg)
    minima = critical_point_scan(chart, base=base, grid=cfg.grid)
    rings = ring_growth_evidence(chart, base=base, grid=cfg.grid)
    results = {
        "minima": [m.to_dict() for m in minima],
        "count": len(minima),
        "ring_min_values": rings,
    }
    payload = report_payload("critical", cfg.to_dict(), results, __version__)
    write_report(out_base + ".json", payload)
    print(f"minima: {len(minima)}")
    return 0


# ---------------------------------------------------------------------------
# parser and entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypfol",
        description="Classify geodesic families of hyperbolic 3-space and "
        "reproduce the spiral counterexample scans.",
    )
    parser.add_argument("--version", action="version", version=f"hypfol {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, family: bool):
        if family:
            p.add_argument("--family", choices=FAMILIES, required=True)
        p.add_argument("--alpha0", type=float, default=math.pi / 4.0, help="tilt angle, radians")
        p.add_argument("--delta", type=float, default=0.1, help="angular overhang of the annulus rectangle")
        p.add_argument("--lambda", dest="lam", type=float, default=None, help="spiral pitch")
        p.add_argument("--grid", type=str, default="20x20", help="sample grid, NxM")
        p.add_argument("--tol", type=float, default=VERDICT_TOL)
        p.add_argument("--base-point", dest="base_point", type=float, nargs=4, default=None, metavar=("X0", "X1", "X2", "X3"))
        p.add_argument("--out", type=str, default=None, help="output path base; writes <out>.json and, where applicable, <out>.csv")
        p.add_argument("--seed", type=int, default=0)

    add_common(sub.add_parser("classify", help="classify a family chart on a grid"), family=True)
    scan = sub.add_parser("scan-lambda", help="largest spiral pitch with positive margin")
    add_common(scan, family=False)
    scan.set_defaults(grid="200x200")
    add_common(sub.add_parser("gauss", help="endpoint images and Jacobian ranks"), family=True)
    add_common(sub.add_parser("critical", help="local minima of the squared distance"), family=True)
    return parser


_COMMANDS = {
    "classify": cmd_classify,
    "scan-lambda": cmd_scan_lambda,
    "gauss": cmd_gauss,
    "critical": cmd_critical,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _build_config(args)
        out_base = args.out if args.out is not None else f"hypfol_{cfg.command.replace('-', '_')}"
        return _COMMANDS[cfg.command](cfg, out_base)
    except (ConfigError, GeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
