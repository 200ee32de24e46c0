"""Deterministic CSV and SVG artifact writers.

Floats are written with ``repr``, so identical runs produce byte-identical
files.  The SVG scatter plots are self-contained (inline styling, no
external assets) and render exactly the point set of the matching CSV.
"""

import json

import numpy as np


def _fmt(x):
    return repr(float(x))


def write_table_csv(path, header, rows):
    lines = [header]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def write_convergence_csv(path, rows):
    header = (
        "level,triangles,h_max,speed_l2_rel,speed_max,"
        "pressure_l2_rel,pressure_max,solve_seconds"
    )
    lines = [header]
    for row in rows:
        lines.append(
            ",".join(
                [
                    str(int(row["level"])),
                    str(int(row["triangles"])),
                    _fmt(row["h_max"]),
                    _fmt(row["speed_l2_rel"]),
                    _fmt(row["speed_max"]),
                    _fmt(row["pressure_l2_rel"]),
                    _fmt(row["pressure_max"]),
                    f"{row['solve_seconds']:.3f}",
                ]
            )
        )
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def write_errors_txt(path, report, quality, stats, warnings_seen=()):
    lines = [
        f"speed_l2_rel = {_fmt(report.speed_l2_rel)}",
        f"speed_max = {_fmt(report.speed_max)}",
        f"pressure_l2_rel = {_fmt(report.pressure_l2_rel)}",
        f"pressure_max = {_fmt(report.pressure_max)}",
        f"pressure_gauge_shift = {_fmt(report.gauge_shift)}",
        "",
        f"mesh_delaunay = {quality.delaunay}",
        f"mesh_well_centered = {quality.well_centered}",
        f"mesh_min_angle_rad = {_fmt(quality.min_angle)}",
        f"mesh_nonpositive_dual_edges = {quality.n_nonpositive_dual_edges}",
        f"mesh_nonacute_triangles = {quality.n_nonacute_triangles}",
        "",
        f"solver_method = {stats.get('method')}",
        f"solver_flavor = {stats.get('flavor')}",
        f"solver_unknowns = {stats.get('n_unknowns')}",
    ]
    for w in warnings_seen:
        lines.append(f"warning: {w}")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def write_quality_json(path, quality, sc):
    payload = {
        "delaunay": quality.delaunay,
        "well_centered": quality.well_centered,
        "min_angle_rad": quality.min_angle,
        "nonpositive_dual_edges": quality.n_nonpositive_dual_edges,
        "nonacute_triangles": quality.n_nonacute_triangles,
        "vertices": sc.n_vertices,
        "edges": sc.n_edges,
        "triangles": sc.n_triangles,
        "boundary_loops": len(sc.boundary_loops),
    }
    with open(path, "w", encoding="ascii") as fh:
        fh.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


_SVG_W, _SVG_H = 640, 480
_ML, _MR, _MT, _MB = 70, 20, 40, 55


def _ticks(lo, hi, n=5):
    if hi == lo:
        hi = lo + 1.0
    return np.linspace(lo, hi, n)


def scatter_svg(path, table, title, xlabel, ylabel):
    """Scatter plot of (x, computed) points over the (x, exact) curve.

    ``table`` has rows (x, computed, exact); the curve is the exact column
    sorted by abscissa.
    """
    table = np.asarray(table, dtype=np.float64)
    x, computed, exact = table[:, 0], table[:, 1], table[:, 2]
    xlo, xhi = float(x.min()), float(x.max())
    ys = np.concatenate([computed, exact])
    ylo, yhi = float(ys.min()), float(ys.max())
    if xhi == xlo:
        xhi = xlo + 1.0
    if yhi == ylo:
        yhi = ylo + 1.0
    ypad = 0.05 * (yhi - ylo)
    ylo, yhi = ylo - ypad, yhi + ypad

    def sx(v):
        return _ML + (v - xlo) / (xhi - xlo) * (_SVG_W - _ML - _MR)

    def sy(v):
        return _SVG_H - _MB - (v - ylo) / (yhi - ylo) * (_SVG_H - _MT - _MB)

    order = np.argsort(x, kind="stable")
    curve = " ".join(f"{sx(x[i]):.2f},{sy(exact[i]):.2f}" for i in order)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" '
        f'height="{_SVG_H}" viewBox="0 0 {_SVG_W} {_SVG_H}">',
        f'<rect width="{_SVG_W}" height="{_SVG_H}" fill="white"/>',
        f'<text x="{_SVG_W / 2:.0f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{title}</text>',
    ]
    axis = (
        f'<line x1="{_ML}" y1="{_SVG_H - _MB}" x2="{_SVG_W - _MR}" '
        f'y2="{_SVG_H - _MB}" stroke="black"/>'
        f'<line x1="{_ML}" y1="{_MT}" x2="{_ML}" y2="{_SVG_H - _MB}" stroke="black"/>'
    )
    parts.append(axis)
    for t in _ticks(xlo, xhi):
        px = sx(t)
        parts.append(
            f'<line x1="{px:.2f}" y1="{_SVG_H - _MB}" x2="{px:.2f}" '
            f'y2="{_SVG_H - _MB + 5}" stroke="black"/>'
            f'<text x="{px:.2f}" y="{_SVG_H - _MB + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{t:.4g}</text>'
        )
    for t in _ticks(ylo, yhi):
        py = sy(t)
        parts.append(
            f'<line x1="{_ML - 5}" y1="{py:.2f}" x2="{_ML}" y2="{py:.2f}" '
            f'stroke="black"/>'
            f'<text x="{_ML - 8}" y="{py + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{t:.4g}</text>'
        )
    parts.append(
        f'<text x="{(_ML + _SVG_W - _MR) / 2:.0f}" y="{_SVG_H - 12}" '
        f'text-anchor="middle" font-family="sans-serif" font-size="13">{xlabel}</text>'
    )
    parts.append(
        f'<text x="18" y="{(_MT + _SVG_H - _MB) / 2:.0f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 18 {(_MT + _SVG_H - _MB) / 2:.0f})">{ylabel}</text>'
    )
    parts.append(
        f'<polyline points="{curve}" fill="none" stroke="#1f4e9c" stroke-width="1.5"/>'
    )
    for i in range(table.shape[0]):
        parts.append(
            f'<circle cx="{sx(x[i]):.2f}" cy="{sy(computed[i]):.2f}" r="2.2" '
            f'fill="#d95f02" fill-opacity="0.75"/>'
        )
    parts.append("</svg>")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(parts) + "\n")
