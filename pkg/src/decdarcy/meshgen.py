"""Structured meshes for the two experiment domains, plus refinement.

Both generators stagger alternate vertex rows by half a sector.  An
aligned row grid would split each quad along a diagonal whose four corners
are concyclic (planar ring trapezoids are cyclic; fixed-latitude quads on
the sphere are coplanar), which makes the circumcentric dual length of
every diagonal vanish identically and the diagonal Hodge star singular.
Staggering produces near-isosceles triangle strips that are strictly acute
for reasonable aspect ratios, and planar quadrisection preserves angles,
so the whole refinement ladder stays well-centered.

Annulus ring radii follow a geometric progression so that every band has
the same height-to-width ratio; hemisphere latitude spacing is uniform in
colatitude.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpec
from .geometry import project_to_unit_sphere
from .simplicial import build_complex


@dataclass(frozen=True)
class AnnulusSpec:
    """Planar annulus centered at the origin in the z = 0 plane."""

    r0: float = 1.0
    r1: float = 2.0
    n_rings: int = 4
    n_sectors: int = 24

    def __post_init__(self):
        if not (0.0 < self.r0 < self.r1):
            raise InvalidSpec(f"need 0 < r0 < r1, got r0={self.r0}, r1={self.r1}")
        if self.n_rings < 1 or self.n_sectors < 3:
            raise InvalidSpec(
                f"need n_rings >= 1 and n_sectors >= 3, got "
                f"{self.n_rings}, {self.n_sectors}"
            )


@dataclass(frozen=True)
class HemisphereSpec:
    """Unit hemisphere with a polar cap removed.

    ``theta0`` is the colatitude of the hole rim, measured from the
    z-axis; the outer boundary is the equator.
    """

    theta0: float = math.pi / 6.0
    n_lat: int = 4
    n_lon: int = 30

    def __post_init__(self):
        if not (0.0 < self.theta0 < math.pi / 2.0):
            raise InvalidSpec(f"need 0 < theta0 < pi/2, got {self.theta0}")
        if self.n_lat < 1 or self.n_lon < 3:
            raise InvalidSpec(
                f"need n_lat >= 1 and n_lon >= 3, got {self.n_lat}, {self.n_lon}"
            )


def _staggered_rows(radii_like, n_sectors):
    """Azimuth array per row, alternate rows offset by half a sector."""
    step = 2.0 * math.pi / n_sectors
    phis = []
    for k in range(len(radii_like)):
        offset = 0.5 * step if k % 2 else 0.0
        phis.append(np.arange(n_sectors) * step + offset)
    return phis


def _band_triangles(n_rows, n_sectors):
    """Triangle index triples for staggered rows of equal length."""
    tris = []
    for k in range(n_rows - 1):
        lower = k * n_sectors
        upper = (k + 1) * n_sectors
        for j in range(n_sectors):
            jn = (j + 1) % n_sectors
            if k % 2 == 0:  # upper row is the staggered one
                tris.append((lower + j, lower + jn, upper + j))
                tris.append((lower + jn, upper + jn, upper + j))
            else:  # lower row is the staggered one
                tris.append((lower + j, lower + jn, upper + jn))
                tris.append((lower + j, upper + jn, upper + j))
    return np.asarray(tris, dtype=np.int64)


def _fix_orientation(verts, tris, reference):
    """Flip triangles whose normal opposes the reference direction.

    ``reference`` is either a constant vector (planar meshes) or the
    per-triangle centroid (radially outward for sphere patches).
    """
    corners = verts[tris]
    normals = np.cross(corners[:, 1] - corners[:, 0], corners[:, 2] - corners[:, 0])
    if reference == "outward":
        ref = corners.mean(axis=1)
    else:
        ref = np.broadcast_to(np.asarray(reference, dtype=np.float64), normals.shape)
    flip = np.einsum("ij,ij->i", normals, ref) < 0.0
    fixed = tris.copy()
    fixed[flip] = fixed[flip][:, [0, 2, 1]]
    return fixed


def annulus_mesh(spec):
    """Triangulate the annulus; 2 * n_rings * n_sectors triangles, all
    positively oriented (counterclockwise seen from +z)."""
    n_rows = spec.n_rings + 1
    ratio = spec.r1 / spec.r0
    radii = [
        spec.r0 if k == 0 else spec.r1 if k == spec.n_rings else
        spec.r0 * ratio ** (k / spec.n_rings)
        for k in range(n_rows)
    ]
    phis = _staggered_rows(radii, spec.n_sectors)
    verts = np.concatenate(
        [
            np.column_stack(
                [r * np.cos(phi), r * np.sin(phi), np.zeros(spec.n_sectors)]
            )
            for r, phi in zip(radii, phis)
        ]
    )
    tris = _band_triangles(n_rows, spec.n_sectors)
    tris = _fix_orientation(verts, tris, (0.0, 0.0, 1.0))
    return build_complex(verts, tris)


def hemisphere_mesh(spec):
    """Triangulate the punctured hemisphere; every vertex lies on the unit
    sphere and triangles are oriented with outward normals."""
    n_rows = spec.n_lat + 1
    thetas = [
        spec.theta0 if i == 0 else math.pi / 2.0 if i == spec.n_lat else
        spec.theta0 + (math.pi / 2.0 - spec.theta0) * (i / spec.n_lat)
        for i in range(n_rows)
    ]
    phis = _staggered_rows(thetas, spec.n_lon)
    verts = np.concatenate(
        [
            np.column_stack(
                [
                    math.sin(theta) * np.cos(phi),
                    math.sin(theta) * np.sin(phi),
                    np.full(spec.n_lon, math.cos(theta)),
                ]
            )
            for theta, phi in zip(thetas, phis)
        ]
    )
    tris = _band_triangles(n_rows, spec.n_lon)
    tris = _fix_orientation(verts, tris, "outward")
    return build_complex(verts, tris)


def quadrisect(sc, project="none"):
    """Subdivide every triangle into four by connecting edge midpoints.

    Midpoints are deduplicated through the edge list, so the new vertex for
    edge e always has id ``n_vertices + e`` and refinement is fully
    deterministic.  With ``project="unit_sphere"`` the new vertices are
    pushed back onto the unit sphere; existing vertices are never moved.
    """
    if project not in ("none", "unit_sphere"):
        raise ValueError(f"unknown projection {project!r}")
    mids = 0.5 * (sc.vertices[sc.edges[:, 0]] + sc.vertices[sc.edges[:, 1]])
    if project == "unit_sphere":
        mids = project_to_unit_sphere(mids)
    verts = np.concatenate([sc.vertices, mids])

    v0, v1, v2 = sc.triangles[:, 0], sc.triangles[:, 1], sc.triangles[:, 2]
    m01 = sc.n_vertices + sc.tri_edges[:, 0]
    m12 = sc.n_vertices + sc.tri_edges[:, 1]
    m20 = sc.n_vertices + sc.tri_edges[:, 2]
    children = np.stack(
        [
            np.column_stack([v0, m01, m20]),
            np.column_stack([m01, v1, m12]),
            np.column_stack([m20, m12, v2]),
            np.column_stack([m01, m12, m20]),
        ],
        axis=1,
    ).reshape(-1, 3)
    return build_complex(verts, children)
