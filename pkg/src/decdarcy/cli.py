"""Command-line driver: mesh generation, single solves, convergence runs.

Verbs
-----
mesh      write a mesh file plus a quality-report sidecar
solve     solve one problem; emit speeds/pressures CSV + SVG and errors.txt
converge  solve a quadrisection ladder; emit convergence.csv

Exit codes: 0 success, 1 validation error, 2 solver failure.
"""

import argparse
import math
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .analytic import AnnulusProblem, HemisphereProblem
from .darcy import error_report, problem_from_analytic, solve
from .errors import (
    DecDarcyError,
    InvalidSpec,
    MaxIterations,
    SingularSystem,
    SolverDivergence,
)
from .geometry import compute_metrics, quality_report
from .meshgen import AnnulusSpec, HemisphereSpec, annulus_mesh, hemisphere_mesh, quadrisect
from .output import (
    scatter_svg,
    write_convergence_csv,
    write_errors_txt,
    write_quality_json,
    write_table_csv,
)
from .simplicial import read_mesh, write_mesh
from .whitney import velocity_from_flux

MAX_LEVELS = 6


@dataclass(frozen=True)
class RunConfig:
    """One experiment configuration, shared by solve and converge."""

    domain: str               # "annulus" | "hemisphere"
    method: str               # "dec" | "whitney"
    mesh_path: str = None     # file source; otherwise generated from spec
    r0: float = 1.0
    r1: float = 2.0
    n_rings: int = 4
    n_sectors: int = 24
    theta0: float = math.pi / 6.0
    n_lat: int = 4
    n_lon: int = 30
    levels: int = 0
    outdir: str = "."
    s0: float = 1.0
    c0: float = 0.0

    def __post_init__(self):
        if self.levels < 0 or self.levels > MAX_LEVELS:
            raise InvalidSpec(f"levels must be in [0, {MAX_LEVELS}], got {self.levels}")

    def base_mesh(self):
        if self.mesh_path is not None:
            return read_mesh(self.mesh_path)
        if self.domain == "annulus":
            return annulus_mesh(
                AnnulusSpec(self.r0, self.r1, self.n_rings, self.n_sectors)
            )
        return hemisphere_mesh(HemisphereSpec(self.theta0, self.n_lat, self.n_lon))

    def analytic_problem(self):
        if self.domain == "annulus":
            return AnnulusProblem(self.r0, self.r1, self.s0, self.c0)
        return HemisphereProblem(self.theta0, self.s0, self.c0)

    @property
    def projection(self):
        return "unit_sphere" if self.domain == "hemisphere" else "none"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidSpec(message)


def _add_geometry_flags(p):
    p.add_argument("--r0", type=float, default=1.0, help="inner radius (annulus)")
    p.add_argument("--r1", type=float, default=2.0, help="outer radius (annulus)")
    p.add_argument("--rings", type=int, default=4, help="radial bands (annulus)")
    p.add_argument("--sectors", type=int, default=24, help="sectors (annulus)")
    p.add_argument(
        "--theta0", type=float, default=math.pi / 6.0,
        help="hole colatitude in radians (hemisphere)",
    )
    p.add_argument("--lat", type=int, default=4, help="latitude bands (hemisphere)")
    p.add_argument("--lon", type=int, default=30, help="longitude steps (hemisphere)")


def build_parser():
    parser = _Parser(prog="decdarcy", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_mesh = sub.add_parser("mesh", help="generate a mesh file")
    mesh_sub = p_mesh.add_subparsers(dest="domain", required=True)
    for name in ("annulus", "hemisphere"):
        p = mesh_sub.add_parser(name)
        _add_geometry_flags(p)
        p.add_argument("--refine", type=int, default=0, help="quadrisection levels")
        p.add_argument("--out", required=True, help="output mesh file")

    for name in ("solve", "converge"):
        p = sub.add_parser(name)
        p.add_argument("--domain", choices=("annulus", "hemisphere"), required=True)
        p.add_argument("--method", choices=("dec", "whitney"), required=True)
        p.add_argument("--mesh", help="mesh file (otherwise generated)")
        _add_geometry_flags(p)
        p.add_argument("--s0", type=float, default=1.0, help="inflow speed")
        p.add_argument("--c0", type=float, default=0.0, help="pressure gauge value")
        p.add_argument("--outdir", required=True)
        if name == "solve":
            p.add_argument(
                "--refine", type=int, default=0, help="quadrisection levels"
            )
            p.add_argument(
                "--emit-velocities", action="store_true",
                help="also write velocities.csv (x,y,z,vx,vy,vz per triangle)",
            )
        else:
            p.add_argument(
                "--levels", type=int, required=True,
                help="quadrisection levels (>= 2); rows cover level 0..levels",
            )
    return parser


def _config_from_args(args, levels=0):
    return RunConfig(
        domain=args.domain,
        method=args.method,
        mesh_path=args.mesh,
        r0=args.r0,
        r1=args.r1,
        n_rings=args.rings,
        n_sectors=args.sectors,
        theta0=args.theta0,
        n_lat=args.lat,
        n_lon=args.lon,
        levels=levels,
        outdir=args.outdir,
        s0=args.s0,
        c0=args.c0,
    )


def cmd_mesh(args):
    if args.domain == "annulus":
        sc = annulus_mesh(AnnulusSpec(args.r0, args.r1, args.rings, args.sectors))
        projection = "none"
    else:
        sc = hemisphere_mesh(HemisphereSpec(args.theta0, args.lat, args.lon))
        projection = "unit_sphere"
    if args.refine < 0 or args.refine > MAX_LEVELS:
        raise InvalidSpec(f"refine must be in [0, {MAX_LEVELS}]")
    for _ in range(args.refine):
        sc = quadrisect(sc, project=projection)
    write_mesh(sc, args.out)
    metrics = compute_metrics(sc)
    write_quality_json(args.out + ".quality.json", quality_report(sc, metrics), sc)
    print(f"wrote {args.out} ({sc.n_triangles} triangles)")
    return 0


def _solve_once(config, sc):
    """Solve one mesh of a config; returns (solution, report, quality, warns)."""
    metrics = compute_metrics(sc)
    prob = config.analytic_problem()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        problem = problem_from_analytic(sc, metrics, prob, config.method)
        solution = solve(problem)
    report = error_report(solution, prob, metrics)
    quality = quality_report(sc, metrics)
    warns = [str(w.message) for w in caught]
    return solution, report, quality, warns, metrics


def cmd_solve(args):
    config = _config_from_args(args, levels=args.refine)
    outdir = Path(config.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    sc = config.base_mesh()
    for _ in range(config.levels):
        sc = quadrisect(sc, project=config.projection)
    solution, report, quality, warns, metrics = _solve_once(config, sc)

    write_table_csv(
        outdir / "speeds.csv", "r,speed_computed,speed_exact", report.speed_table
    )
    write_table_csv(
        outdir / "pressures.csv", "r,p_computed,p_exact", report.pressure_table
    )
    write_errors_txt(outdir / "errors.txt", report, quality, solution.stats, warns)
    scatter_svg(
        outdir / "speeds.svg", report.speed_table,
        f"{config.domain} {config.method} speeds", "r", "speed",
    )
    scatter_svg(
        outdir / "pressures.svg", report.pressure_table,
        f"{config.domain} {config.method} pressures", "r", "pressure",
    )
    if args.emit_velocities:
        v = velocity_from_flux(solution.sigma, metrics)
        rows = np.column_stack([metrics.barycenter, v])
        write_table_csv(outdir / "velocities.csv", "x,y,z,vx,vy,vz", rows)
    for w in warns:
        print(f"warning: {w}", file=sys.stderr)
    print(
        f"solved {config.domain}/{config.method}: "
        f"speed_l2_rel={report.speed_l2_rel:.3e} "
        f"pressure_l2_rel={report.pressure_l2_rel:.3e}"
    )
    return 0


def run_convergence(config):
    """Solve the quadrisection ladder of a config; one row per level."""
    rows = []
    sc = config.base_mesh()
    for level in range(config.levels + 1):
        if level > 0:
            sc = quadrisect(sc, project=config.projection)
        solution, report, quality, warns, metrics = _solve_once(config, sc)
        rows.append(
            {
                "level": level,
                "triangles": sc.n_triangles,
                "h_max": float(metrics.edge_length.max()),
                "speed_l2_rel": report.speed_l2_rel,
                "speed_max": report.speed_max,
                "pressure_l2_rel": report.pressure_l2_rel,
                "pressure_max": report.pressure_max,
                "solve_seconds": solution.stats["solve_seconds"],
                "warnings": warns,
                "delaunay": quality.delaunay,
            }
        )
    return rows


def cmd_converge(args):
    if args.levels < 2:
        raise InvalidSpec(f"converge needs levels >= 2, got {args.levels}")
    config = _config_from_args(args, levels=args.levels)
    outdir = Path(config.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = run_convergence(config)
    write_convergence_csv(outdir / "convergence.csv", rows)
    for row in rows:
        for w in row["warnings"]:
            print(f"warning (level {row['level']}): {w}", file=sys.stderr)
        print(
            f"level {row['level']}: {row['triangles']} triangles, "
            f"speed_l2_rel={row['speed_l2_rel']:.3e}, "
            f"pressure_l2_rel={row['pressure_l2_rel']:.3e}"
        )
    return 0


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "mesh":
            return cmd_mesh(args)
        if args.command == "solve":
            return cmd_solve(args)
        return cmd_converge(args)
    except (SingularSystem, SolverDivergence, MaxIterations) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 2
    except DecDarcyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
