"""Pointwise reconstruction of flux cochains and velocity vectors.

A 1-cochain stores, per canonical edge, the integral of the flux 1-form
along that edge (units of area per time through the edge's dual curve).
The edge-basis interpolant turns it back into a pointwise form; velocities
are obtained by sampling the interpolant at barycenters and rotating the
result a quarter turn in the triangle plane.  The rotation sign is fixed
so that a positive inflow on the annulus yields outward radial velocity
(and is pinned by a dedicated test rather than left to convention).
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidBarycentric
from .geometry import barycentric_gradients

_SLOT_PAIRS = ((0, 1), (1, 2), (2, 0))


@dataclass(frozen=True)
class Cochain1:
    """Per-edge real values tied to a surface's canonical edge orientation."""

    surface: object
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != (self.surface.n_edges,):
            raise ValueError(
                f"cochain has {values.shape} values, surface has "
                f"{self.surface.n_edges} edges"
            )
        object.__setattr__(self, "values", values)


def whitney_interpolate(cochain, tri_id, bary):
    """Evaluate the edge-basis interpolant of a 1-cochain at one point.

    Parameters
    ----------
    cochain : Cochain1
    tri_id : int
        Triangle containing the sample point.
    bary : array_like, shape (3,)
        Barycentric coordinates of the point: nonnegative, summing to 1.

    Returns
    -------
    ndarray, shape (3,)
        The vector proxy of the interpolated 1-form, lying in the
        triangle's plane.
    """
    bary = np.asarray(bary, dtype=np.float64)
    if bary.shape != (3,) or np.any(bary < -1e-12) or abs(bary.sum() - 1.0) > 1e-9:
        raise InvalidBarycentric(f"bad barycentric coordinates {bary}")
    sc = cochain.surface
    sub = _single_triangle_view(sc, tri_id)
    grads = barycentric_gradients(sub)[0]
    w = np.zeros(3)
    for slot, (u, v) in enumerate(_SLOT_PAIRS):
        i, v_ = (u, v) if sc.tri_edge_signs[tri_id, slot] > 0 else (v, u)
        c = cochain.values[sc.tri_edges[tri_id, slot]]
        w += c * (bary[i] * grads[v_] - bary[v_] * grads[i])
    return w


def _single_triangle_view(sc, tri_id):
    """Cheap stand-in exposing one triangle to the gradient helper."""

    class _View:
        vertices = sc.vertices
        triangles = sc.triangles[tri_id : tri_id + 1]

    return _View


def interpolate_at_barycenters(cochain, metrics):
    """Vectorized interpolant of a 1-cochain at every triangle barycenter."""
    sc = cochain.surface
    grads = metrics.lambda_gradients
    w = np.zeros((sc.n_triangles, 3))
    for slot, (u, v) in enumerate(_SLOT_PAIRS):
        sign = sc.tri_edge_signs[:, slot].astype(np.float64)
        c = cochain.values[sc.tri_edges[:, slot]] * sign
        # at the barycenter all three coordinates equal 1/3
        w += (c / 3.0)[:, None] * (grads[:, v] - grads[:, u])
    return w


def velocity_from_flux(cochain, metrics):
    """Velocity vectors at triangle barycenters, shape (F, 3).

    The interpolated flux proxy is rotated a quarter turn about each
    triangle's oriented unit normal; the magnitude is preserved exactly
    and flipping a triangle's orientation flips its velocity.
    """
    w = interpolate_at_barycenters(cochain, metrics)
    return np.cross(w, metrics.tri_normal)
