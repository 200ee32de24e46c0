"""Per-simplex metric data: lengths, areas, circumcentric duals, quality.

Circumcenters of embedded surface triangles are computed intrinsically in
each triangle's own plane, so the dual is the standard piecewise-flat
circumcentric dual.  Dual edge lengths are signed, not clamped: a negative
total records a locally non-Delaunay configuration and is surfaced as a
warning where it matters (the diagonal Hodge star), keeping the operators
total.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateTriangle, OriginPoint

# relative area tolerance below which a triangle counts as degenerate
DEGENERACY_TOL = 1e-14


@dataclass(frozen=True)
class DualMetrics:
    """Metric data of a simplicial surface.

    Attributes
    ----------
    edge_length : ndarray, shape (E,)
    tri_area : ndarray, shape (F,)
    circumcenter : ndarray, shape (F, 3)
        In-plane circumcenter of each triangle.
    barycenter : ndarray, shape (F, 3)
    tri_normal : ndarray, shape (F, 3)
        Unit normals consistent with triangle orientation.
    lambda_gradients : ndarray, shape (F, 3, 3)
        Constant in-plane gradients of the three barycentric coordinate
        functions of each triangle.
    dual_edge_length : ndarray, shape (E,)
        Signed circumcentric dual length: sum over incident triangles of
        the circumcenter-to-edge-midpoint distance, positive when the
        circumcenter lies on the triangle's side of the edge line.
    is_delaunay : ndarray of bool, shape (E,)
        ``dual_edge_length > 0``.  On boundary edges this tests whether
        the single incident triangle's circumcenter is on the interior
        side, which is what the diagonal Hodge star needs.
    is_well_centered : ndarray of bool, shape (F,)
        True where all three angles are strictly acute.
    """

    edge_length: np.ndarray
    tri_area: np.ndarray
    circumcenter: np.ndarray
    barycenter: np.ndarray
    tri_normal: np.ndarray
    lambda_gradients: np.ndarray
    dual_edge_length: np.ndarray
    is_delaunay: np.ndarray
    is_well_centered: np.ndarray


@dataclass(frozen=True)
class QualityReport:
    """Mesh-level quality summary."""

    delaunay: bool
    well_centered: bool
    min_angle: float
    n_nonpositive_dual_edges: int
    n_nonacute_triangles: int


def circumcenter(p0, p1, p2):
    """Circumcenter of one triangle, computed in the triangle's plane.

    Raises
    ------
    DegenerateTriangle
        If the area is below ``1e-14`` times the squared longest edge.
    """
    corners = np.asarray([p0, p1, p2], dtype=np.float64).reshape(1, 3, -1)
    if corners.shape[2] == 2:
        corners = np.concatenate([corners, np.zeros((1, 3, 1))], axis=2)
    return _circumcenters(corners)[0]


def _circumcenters(corners):
    """Vectorized circumcenters for a (F, 3, 3) corner array."""
    a = corners[:, 1] - corners[:, 0]
    b = corners[:, 2] - corners[:, 0]
    n = np.cross(a, b)
    n2 = np.einsum("ij,ij->i", n, n)
    la = np.einsum("ij,ij->i", a, a)
    lb = np.einsum("ij,ij->i", b, b)
    lc = np.einsum("ij,ij->i", a - b, a - b)
    max_edge2 = np.maximum(np.maximum(la, lb), lc)
    area = 0.5 * np.sqrt(n2)
    bad = area < DEGENERACY_TOL * max_edge2
    if bad.any():
        raise DegenerateTriangle(f"triangle {int(np.nonzero(bad)[0][0])} is degenerate")
    return corners[:, 0] + (
        la[:, None] * np.cross(b, n) + lb[:, None] * np.cross(n, a)
    ) / (2.0 * n2[:, None])


def signed_dual_lengths(sc, circumcenters):
    """Signed circumcentric dual edge lengths.

    For every edge, each incident triangle contributes the distance from
    the edge midpoint to the triangle's circumcenter, signed positive when
    the circumcenter lies on the same side of the edge line as the
    triangle, negative otherwise.  Boundary edges receive a single
    contribution.
    """
    corners = sc.vertices[sc.triangles]
    dual = np.zeros(sc.n_edges)
    for k in range(3):
        pi = corners[:, k]
        pj = corners[:, (k + 1) % 3]
        po = corners[:, (k + 2) % 3]
        mid = 0.5 * (pi + pj)
        tangent = pj - pi
        tangent = tangent / np.linalg.norm(tangent, axis=1, keepdims=True)
        inward = po - mid
        inward = inward - np.einsum("ij,ij->i", inward, tangent)[:, None] * tangent
        inward = inward / np.linalg.norm(inward, axis=1, keepdims=True)
        contrib = np.einsum("ij,ij->i", circumcenters - mid, inward)
        np.add.at(dual, sc.tri_edges[:, k], contrib)
    return dual


def barycentric_gradients(sc, areas=None, normals=None):
    """Constant gradients of the barycentric coordinates, shape (F, 3, 3).

    ``grad[f, i]`` is the in-plane gradient of the coordinate attached to
    local vertex i of triangle f; it is perpendicular to the opposite edge
    and has magnitude one over the corresponding height.
    """
    corners = sc.vertices[sc.triangles]
    if areas is None or normals is None:
        a = corners[:, 1] - corners[:, 0]
        b = corners[:, 2] - corners[:, 0]
        n = np.cross(a, b)
        norm = np.linalg.norm(n, axis=1)
        areas = 0.5 * norm
        normals = n / norm[:, None]
    grads = np.empty_like(corners)
    for i in range(3):
        opposite = corners[:, (i + 2) % 3] - corners[:, (i + 1) % 3]
        grads[:, i] = np.cross(normals, opposite) / (2.0 * areas)[:, None]
    return grads


def compute_metrics(sc):
    """Compute all :class:`DualMetrics` fields for a surface."""
    verts = sc.vertices
    corners = verts[sc.triangles]
    edge_vec = verts[sc.edges[:, 1]] - verts[sc.edges[:, 0]]
    edge_length = np.linalg.norm(edge_vec, axis=1)

    a = corners[:, 1] - corners[:, 0]
    b = corners[:, 2] - corners[:, 0]
    n = np.cross(a, b)
    norm = np.linalg.norm(n, axis=1)
    tri_area = 0.5 * norm
    max_edge2 = np.max(
        np.stack(
            [
                np.einsum("ij,ij->i", a, a),
                np.einsum("ij,ij->i", b, b),
                np.einsum("ij,ij->i", a - b, a - b),
            ]
        ),
        axis=0,
    )
    bad = tri_area < DEGENERACY_TOL * max_edge2
    if bad.any():
        raise DegenerateTriangle(f"triangle {int(np.nonzero(bad)[0][0])} is degenerate")
    tri_normal = n / norm[:, None]

    circ = _circumcenters(corners)
    bary = corners.mean(axis=1)
    grads = barycentric_gradients(sc, areas=tri_area, normals=tri_normal)
    dual = signed_dual_lengths(sc, circ)

    # acute test: angle at vertex i is acute iff the two adjacent edge
    # vectors have positive dot product
    acute = np.ones(sc.n_triangles, dtype=bool)
    for i in range(3):
        u = corners[:, (i + 1) % 3] - corners[:, i]
        v = corners[:, (i + 2) % 3] - corners[:, i]
        acute &= np.einsum("ij,ij->i", u, v) > 0.0

    for arr in (edge_length, tri_area, circ, bary, tri_normal, grads, dual, acute):
        arr.flags.writeable = False
    delaunay_flags = dual > 0.0
    delaunay_flags.flags.writeable = False
    return DualMetrics(
        edge_length=edge_length,
        tri_area=tri_area,
        circumcenter=circ,
        barycenter=bary,
        tri_normal=tri_normal,
        lambda_gradients=grads,
        dual_edge_length=dual,
        is_delaunay=delaunay_flags,
        is_well_centered=acute,
    )


def triangle_angles(sc):
    """All interior angles in radians, shape (F, 3)."""
    corners = sc.vertices[sc.triangles]
    angles = np.empty((sc.n_triangles, 3))
    for i in range(3):
        u = corners[:, (i + 1) % 3] - corners[:, i]
        v = corners[:, (i + 2) % 3] - corners[:, i]
        cosang = np.einsum("ij,ij->i", u, v) / (
            np.linalg.norm(u, axis=1) * np.linalg.norm(v, axis=1)
        )
        angles[:, i] = np.arccos(np.clip(cosang, -1.0, 1.0))
    return angles


def quality_report(sc, metrics):
    """Summarize Delaunay and well-centeredness status of a mesh.

    ``delaunay`` is True when every signed dual edge length is positive,
    the condition under which the diagonal Hodge star is positive; on a
    well-centered mesh this holds automatically.
    """
    angles = triangle_angles(sc)
    return QualityReport(
        delaunay=bool(np.all(metrics.dual_edge_length > 0.0)),
        well_centered=bool(np.all(metrics.is_well_centered)),
        min_angle=float(angles.min()),
        n_nonpositive_dual_edges=int(np.sum(metrics.dual_edge_length <= 0.0)),
        n_nonacute_triangles=int(np.sum(~metrics.is_well_centered)),
    )


def project_to_unit_sphere(points):
    """Radially project points onto the unit sphere.

    Accepts a single point (shape (3,)) or an array of points (N, 3).

    Raises
    ------
    OriginPoint
        If any point is exactly at the origin.
    """
    pts = np.asarray(points, dtype=np.float64)
    single = pts.ndim == 1
    arr = pts.reshape(1, -1) if single else pts
    norms = np.linalg.norm(arr, axis=1)
    if np.any(norms == 0.0):
        raise OriginPoint("cannot project the origin to the unit sphere")
    out = arr / norms[:, None]
    return out[0] if single else out
