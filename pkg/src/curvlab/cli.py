"""Command-line interface for curvature reports and identity checks.

Subcommands: catalog | curvature | gauss-bonnet | tube | egregium.
Exit codes: 0 success, 1 a requested check exceeded its threshold,
2 usage or domain errors.  `--format json`/`--format csv` emit
machine-readable reports whose floating-point fields round-trip exactly.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .catalog import catalog_entries, catalog_get, load_immersion
from .curvature import (
    NormalDirection,
    egregium_report,
    generalized_curvature_moments,
    generalized_curvature_quadrature,
)
from .errors import CurvlabError, DomainError
from .immersion import frame_data_at, sample_domain
from .integrate import default_grid, gauss_bonnet_check, normal_sphere_rule
from .tube import (
    TubeConfig,
    tube_boundary_immersion,
    tube_identity_check,
    tube_spectrum_check,
    tube_total_curvature,
)

__all__ = ["main", "RunReport"]


@dataclass
class RunReport:
    """Structured result of one CLI invocation."""

    command: str
    surface: Optional[str]
    options: dict
    results: dict
    wall_time_s: float

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "surface": self.surface,
            "options": self.options,
            "results": self.results,
            "wall_time_s": self.wall_time_s,
        }

    @staticmethod
    def from_dict(data: dict) -> "RunReport":
        return RunReport(
            command=data["command"],
            surface=data["surface"],
            options=data["options"],
            results=data["results"],
            wall_time_s=data["wall_time_s"],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "RunReport":
        return RunReport.from_dict(json.loads(text))

    def flat_items(self) -> list[tuple[str, object]]:
        rows: list[tuple[str, object]] = [("command", self.command), ("surface", self.surface)]
        rows += [(f"options.{k}", v) for k, v in self.options.items()]
        rows += [(f"results.{k}", v) for k, v in self.results.items()]
        rows.append(("wall_time_s", self.wall_time_s))
        return rows

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["key", "value"])
        for key, value in self.flat_items():
            writer.writerow([key, _csv_value(value)])
        return buf.getvalue()


def _csv_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return "%.17g" % value
    if isinstance(value, (list, tuple)):
        return ";".join(_csv_value(v) for v in value)
    return str(value)


def _emit(report: RunReport, fmt: str) -> None:
    if fmt == "json":
        print(report.to_json())
    elif fmt == "csv":
        print(report.to_csv(), end="")
    else:
        width = max(len(k) for k, _ in report.flat_items())
        for key, value in report.flat_items():
            if isinstance(value, float):
                value = "%.12g" % value
            print(f"{key:<{width}}  {value}")


def _clean(value):
    """Coerce numpy scalars/containers into JSON-serializable builtins."""
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_clean(v) for v in value]
    return value


def _resolve_surface(args) -> tuple:
    if getattr(args, "surface", None) and getattr(args, "surface_file", None):
        raise DomainError("give either --surface or --surface-file, not both")
    if getattr(args, "surface", None):
        return catalog_get(args.surface), args.surface
    if getattr(args, "surface_file", None):
        imm = load_immersion(args.surface_file)
        return imm, f"file:{args.surface_file}"
    raise DomainError("a surface is required: --surface NAME or --surface-file PATH")


def _parse_point(text: str, m: int) -> np.ndarray:
    try:
        values = [float(piece) for piece in text.split(",") if piece.strip()]
    except ValueError:
        raise DomainError(f"cannot parse point {text!r}: expected comma-separated numbers")
    if len(values) != m:
        raise DomainError(f"point {text!r} has {len(values)} coordinates, surface needs {m}")
    return np.array(values)


def _random_directions(rng: np.random.Generator, count: int, n: int) -> list[NormalDirection]:
    out = []
    for _ in range(count):
        if n == 1:
            out.append(NormalDirection(np.array([rng.choice([-1.0, 1.0])])))
        else:
            out.append(NormalDirection.unit(rng.standard_normal(n)))
    return out


def _threshold_exit(args, metrics: list) -> int:
    threshold = getattr(args, "fail_threshold", None)
    if threshold is None:
        return 0
    finite = [m for m in metrics if m is not None]
    return 1 if finite and max(finite) > threshold else 0


# -- subcommands -----------------------------------------------------------


def cmd_catalog(args) -> int:
    entries = catalog_entries()
    if args.format == "json":
        print(json.dumps(entries, indent=2))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "m", "k", "n", "chi"])
        for e in entries:
            writer.writerow([e["name"], e["m"], e["k"], e["n"], _csv_value(e["chi"])])
        print(buf.getvalue(), end="")
    else:
        for e in entries:
            chi = "?" if e["chi"] is None else e["chi"]
            print(f"{e['name']} m={e['m']} k={e['k']} chi={chi} n={e['n']}")
    return 0


def cmd_curvature(args) -> int:
    start = time.perf_counter()
    imm, label = _resolve_surface(args)
    u = _parse_point(args.point, imm.m)
    results: dict = {}
    if imm.m % 2 == 0:
        rep = egregium_report(imm, u)
        results = {
            "k_moments": rep.k_moments,
            "k_quadrature": rep.k_quadrature,
            "route_residual": rep.route_residual,
            "pfaffian_density": rep.pfaffian_density,
            "egregium_lhs": rep.egregium_lhs,
            "egregium_residual": rep.egregium_residual,
        }
    else:
        fd = frame_data_at(imm, u)
        k_m = generalized_curvature_moments(fd)
        k_q = generalized_curvature_quadrature(fd, normal_sphere_rule(fd.n))
        results = {
            "k_moments": k_m,
            "k_quadrature": k_q,
            "route_residual": abs(k_m - k_q),
            "pfaffian_density": None,
            "egregium_lhs": None,
            "egregium_residual": None,
        }
    report = RunReport(
        command="curvature",
        surface=label,
        options={"point": [float(x) for x in u]},
        results={k: _clean(v) for k, v in results.items()},
        wall_time_s=time.perf_counter() - start,
    )
    _emit(report, args.format)
    return 0


def cmd_gauss_bonnet(args) -> int:
    start = time.perf_counter()
    imm, label = _resolve_surface(args)
    grid = default_grid(imm, args.resolution)
    rep = gauss_bonnet_check(imm, grid, route=args.route)
    results = {
        "integral": rep.integral,
        "expected": rep.expected,
        "residual": rep.residual,
        "estimated_chi": rep.estimated_chi,
        "chi_distance": rep.chi_distance,
    }
    report = RunReport(
        command="gauss-bonnet",
        surface=label,
        options={
            "route": args.route,
            "resolution": args.resolution,
            "grid_shape": list(rep.grid_shape),
        },
        results={k: _clean(v) for k, v in results.items()},
        wall_time_s=time.perf_counter() - start,
    )
    _emit(report, args.format)
    return _threshold_exit(args, [rep.residual if rep.residual is not None else rep.chi_distance])


def cmd_tube(args) -> int:
    start = time.perf_counter()
    imm, label = _resolve_surface(args)
    cfg = TubeConfig(imm, args.eps)
    do_any = args.total or args.identity or args.spectrum
    do_identity = args.identity or not do_any
    rng = np.random.default_rng(args.seed)
    results: dict = {"eps": args.eps}
    metrics = []
    if do_identity or args.spectrum:
        boundary = tube_boundary_immersion(cfg)
        points = sample_domain(imm, args.samples, rng)
        directions = _random_directions(rng, args.samples, imm.n)
        if do_identity:
            worst = max(
                tube_identity_check(cfg, u, nu, boundary=boundary).relative
                for u, nu in zip(points, directions)
            )
            results["max_identity_residual"] = worst
            results["identity_samples"] = args.samples
            metrics.append(worst)
        if args.spectrum:
            worst = max(
                tube_spectrum_check(cfg, u, nu, boundary=boundary).residual
                for u, nu in zip(points, directions)
            )
            results["max_spectrum_residual"] = worst
            results["spectrum_samples"] = args.samples
            metrics.append(worst)
    if args.total:
        total = tube_total_curvature(cfg, resolution=args.resolution)
        results["total_integral"] = total.integral
        results["total_expected"] = total.expected
        results["total_residual"] = total.residual
        results["per_sheet"] = list(total.per_sheet)
        metrics.append(total.residual)
    report = RunReport(
        command="tube",
        surface=label,
        options={
            "eps": args.eps,
            "seed": args.seed,
            "samples": args.samples,
            "resolution": args.resolution,
        },
        results={k: _clean(v) for k, v in results.items()},
        wall_time_s=time.perf_counter() - start,
    )
    _emit(report, args.format)
    return _threshold_exit(args, metrics)


def cmd_egregium(args) -> int:
    start = time.perf_counter()
    imm, label = _resolve_surface(args)
    rng = np.random.default_rng(args.seed)
    points = sample_domain(imm, args.samples, rng)
    worst_egregium = 0.0
    worst_route = 0.0
    for u in points:
        rep = egregium_report(imm, u)
        worst_egregium = max(worst_egregium, rep.egregium_residual)
        worst_route = max(worst_route, rep.route_residual)
    results = {
        "samples": args.samples,
        "max_egregium_residual": worst_egregium,
        "max_route_residual": worst_route,
    }
    report = RunReport(
        command="egregium",
        surface=label,
        options={"seed": args.seed, "samples": args.samples},
        results={k: _clean(v) for k, v in results.items()},
        wall_time_s=time.perf_counter() - start,
    )
    _emit(report, args.format)
    return _threshold_exit(args, [worst_egregium])


# -- parser ----------------------------------------------------------------


def _add_surface_args(sp) -> None:
    sp.add_argument("--surface", help="catalog surface name, e.g. sphere2_r4 or torus_rev_r3(R=2,r=0.5)")
    sp.add_argument("--surface-file", help="path to a JSON surface file")


def _add_common(sp) -> None:
    sp.add_argument("--format", choices=("human", "json", "csv"), default="human")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvlab",
        description="Curvature laboratory for submanifolds of R^k in any codimension.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("catalog", help="list built-in surfaces")
    _add_common(sp)
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("curvature", help="pointwise curvature report")
    _add_surface_args(sp)
    _add_common(sp)
    sp.add_argument("--point", required=True, help="comma-separated chart coordinates")
    sp.set_defaults(func=cmd_curvature)

    sp = sub.add_parser("gauss-bonnet", help="total curvature against the Euler characteristic")
    _add_surface_args(sp)
    _add_common(sp)
    sp.add_argument("--resolution", type=int, help="nodes per axis (default: per-dimension policy)")
    sp.add_argument("--route", choices=("moments", "quadrature"), default="moments")
    sp.add_argument("--fail-threshold", type=float, help="exit 1 if the residual exceeds this")
    sp.set_defaults(func=cmd_gauss_bonnet)

    sp = sub.add_parser("tube", help="tube-boundary identity, spectrum, and total checks")
    _add_surface_args(sp)
    _add_common(sp)
    sp.add_argument("--eps", type=float, required=True, help="tube radius")
    sp.add_argument("--total", action="store_true", help="integrate the boundary curvature")
    sp.add_argument("--identity", action="store_true", help="check the rescaling identity")
    sp.add_argument("--spectrum", action="store_true", help="check the shape-operator spectrum")
    sp.add_argument("--samples", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--resolution", type=int)
    sp.add_argument("--fail-threshold", type=float)
    sp.set_defaults(func=cmd_tube)

    sp = sub.add_parser("egregium", help="extrinsic-vs-intrinsic curvature residual at random points")
    _add_surface_args(sp)
    _add_common(sp)
    sp.add_argument("--samples", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--fail-threshold", type=float)
    sp.set_defaults(func=cmd_egregium)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CurvlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
