import json

import numpy as np
import pytest

from decdarcy import read_mesh
from decdarcy.cli import main
from decdarcy.errors import SingularSystem


def _read_csv(path):
    lines = path.read_text().strip().split("\n")
    header = lines[0].split(",")
    rows = [[float(v) for v in line.split(",")] for line in lines[1:]]
    return header, np.asarray(rows)


def test_mesh_annulus_counts(tmp_path):
    out = tmp_path / "annulus.mesh"
    code = main(
        ["mesh", "annulus", "--r0", "1", "--r1", "2", "--rings", "4",
         "--sectors", "24", "--out", str(out)]
    )
    assert code == 0
    sc = read_mesh(out)
    assert sc.n_triangles == 192
    sidecar = json.loads((tmp_path / "annulus.mesh.quality.json").read_text())
    assert sidecar["delaunay"] is True
    assert sidecar["well_centered"] is True
    assert sidecar["triangles"] == 192


def test_mesh_hemisphere_unit_vertices(tmp_path):
    out = tmp_path / "hemi.mesh"
    code = main(
        ["mesh", "hemisphere", "--theta0", "0.5235987755982988", "--lat", "4",
         "--lon", "30", "--out", str(out)]
    )
    assert code == 0
    sc = read_mesh(out)
    assert sc.n_triangles == 240
    norms = np.linalg.norm(sc.vertices, axis=1)
    assert np.max(np.abs(norms - 1.0)) < 1e-15


def test_mesh_repeated_invocation_byte_identical(tmp_path):
    a, b = tmp_path / "a.mesh", tmp_path / "b.mesh"
    for out in (a, b):
        assert main(["mesh", "annulus", "--rings", "2", "--sectors", "8",
                     "--out", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_solve_outputs(tmp_path):
    outdir = tmp_path / "run"
    code = main(
        ["solve", "--domain", "annulus", "--method", "whitney",
         "--rings", "2", "--sectors", "8", "--outdir", str(outdir),
         "--emit-velocities"]
    )
    assert code == 0
    for name in ("speeds.csv", "pressures.csv", "errors.txt",
                 "speeds.svg", "pressures.svg", "velocities.csv"):
        assert (outdir / name).exists()
    header, rows = _read_csv(outdir / "speeds.csv")
    assert header == ["r", "speed_computed", "speed_exact"]
    assert rows.shape == (32, 3)  # 2 * 2 * 8 triangles
    header_p, rows_p = _read_csv(outdir / "pressures.csv")
    assert header_p == ["r", "p_computed", "p_exact"]
    assert rows_p.shape == (32, 3)
    header_v, rows_v = _read_csv(outdir / "velocities.csv")
    assert header_v == ["x", "y", "z", "vx", "vy", "vz"]
    assert rows_v.shape == (32, 6)
    svg = (outdir / "speeds.svg").read_text()
    assert svg.count("<circle") == 32  # same point set as the CSV
    assert "http" not in svg.replace("http://www.w3.org/2000/svg", "")


def test_solve_zero_inflow_all_zero_columns(tmp_path):
    outdir = tmp_path / "zero"
    code = main(
        ["solve", "--domain", "annulus", "--method", "dec",
         "--rings", "2", "--sectors", "8", "--s0", "0", "--outdir", str(outdir)]
    )
    assert code == 0
    _, rows = _read_csv(outdir / "speeds.csv")
    assert np.all(rows[:, 1] == 0.0)
    assert np.all(rows[:, 2] == 0.0)


def test_solve_error_norms_match_library_report(tmp_path):
    from decdarcy import (
        AnnulusProblem, AnnulusSpec, annulus_mesh, compute_metrics,
        error_report, problem_from_analytic, quality_report,
        solve as lib_solve,
    )

    outdir = tmp_path / "match"
    assert main(
        ["solve", "--domain", "annulus", "--method", "whitney",
         "--rings", "2", "--sectors", "8", "--outdir", str(outdir)]
    ) == 0
    sc = annulus_mesh(AnnulusSpec(n_rings=2, n_sectors=8))
    metrics = compute_metrics(sc)
    prob = AnnulusProblem()
    report = error_report(
        lib_solve(problem_from_analytic(sc, metrics, prob, "whitney")), prob, metrics
    )
    text = (outdir / "errors.txt").read_text().splitlines()
    values = {}
    for line in text:
        if " = " in line:
            key, _, val = line.partition(" = ")
            values[key] = val
    assert values["speed_l2_rel"] == repr(report.speed_l2_rel)
    assert values["pressure_l2_rel"] == repr(report.pressure_l2_rel)
    assert values["speed_max"] == repr(report.speed_max)
    assert values["pressure_max"] == repr(report.pressure_max)
    assert values["mesh_delaunay"] == str(quality_report(sc, metrics).delaunay)


def test_converge_outputs_and_scaling(tmp_path):
    outdir = tmp_path / "conv"
    code = main(
        ["converge", "--domain", "annulus", "--method", "whitney",
         "--levels", "2", "--rings", "2", "--sectors", "8",
         "--outdir", str(outdir)]
    )
    assert code == 0
    lines = (outdir / "convergence.csv").read_text().strip().split("\n")
    assert lines[0] == (
        "level,triangles,h_max,speed_l2_rel,speed_max,"
        "pressure_l2_rel,pressure_max,solve_seconds"
    )
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == 3
    base = 2 * 2 * 8
    for level, row in enumerate(rows):
        assert int(row[0]) == level
        assert int(row[1]) == base * 4**level
    h = [float(row[2]) for row in rows]
    assert h[1] == pytest.approx(h[0] / 2.0, rel=1e-12)
    assert h[2] == pytest.approx(h[0] / 4.0, rel=1e-12)
    speed_err = [float(row[3]) for row in rows]
    assert speed_err[0] > speed_err[1] > speed_err[2]


def test_converge_deterministic_modulo_timing(tmp_path):
    dirs = [tmp_path / "c1", tmp_path / "c2"]
    for d in dirs:
        assert main(
            ["converge", "--domain", "annulus", "--method", "whitney",
             "--levels", "2", "--rings", "2", "--sectors", "8",
             "--outdir", str(d)]
        ) == 0

    def strip_timing(path):
        lines = path.read_text().strip().split("\n")
        return [",".join(line.split(",")[:-1]) for line in lines]

    assert strip_timing(dirs[0] / "convergence.csv") == strip_timing(
        dirs[1] / "convergence.csv"
    )


def test_validation_errors_exit_code_one(tmp_path):
    assert main(["mesh", "annulus", "--rings", "0", "--sectors", "8",
                 "--out", str(tmp_path / "x.mesh")]) == 1
    assert main(["converge", "--domain", "annulus", "--method", "whitney",
                 "--levels", "1", "--outdir", str(tmp_path)]) == 1
    assert main(["solve", "--domain", "annulus", "--method", "nope",
                 "--outdir", str(tmp_path)]) == 1
    assert main(["solve", "--domain", "annulus", "--method", "dec",
                 "--mesh", str(tmp_path / "missing.mesh"),
                 "--outdir", str(tmp_path)]) == 1


def test_solver_failure_exit_code_two(tmp_path, monkeypatch):
    import decdarcy.darcy as darcy_mod

    def boom(*args, **kwargs):
        raise SingularSystem("synthetic failure")

    monkeypatch.setattr(darcy_mod.linalg, "solve_symmetric_indefinite", boom)
    code = main(
        ["solve", "--domain", "annulus", "--method", "dec",
         "--rings", "2", "--sectors", "8", "--outdir", str(tmp_path / "f")]
    )
    assert code == 2


def test_converge_respects_level_guard(tmp_path):
    assert main(
        ["converge", "--domain", "annulus", "--method", "whitney",
         "--levels", "9", "--rings", "2", "--sectors", "8",
         "--outdir", str(tmp_path)]
    ) == 1
