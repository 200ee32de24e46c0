"""Closed-form reference flows for the two experiment domains.

Positive inflow speed means flow away from the inner boundary: in at the
hole, out at the outer rim (annulus) or equator (hemisphere).  The flux
1-form of both flows is a constant multiple of the azimuth differential
and therefore closed, so its integral along an edge depends only on the
endpoint azimuths; the same routine supplies Neumann boundary data and
the exact cochain used for error measurement.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import EdgeThroughAxis, InvalidSpec, OutOfDomain
from .geometry import project_to_unit_sphere

_DOMAIN_TOL = 1e-12


def _wrap_angle(d):
    """Wrap angle differences into (-pi, pi]."""
    return np.arctan2(np.sin(d), np.cos(d))


def _maybe_scalar(values, was_scalar):
    return float(values) if was_scalar else values


@dataclass(frozen=True)
class AnnulusProblem:
    """Radial flow through a planar annulus.

    ``s0`` is the inflow speed on the inner circle (zero is allowed for
    null-flow smoke runs) and ``c0`` the pressure gauge value there.
    """

    r0: float = 1.0
    r1: float = 2.0
    s0: float = 1.0
    c0: float = 0.0

    def __post_init__(self):
        if not (0.0 < self.r0 < self.r1):
            raise InvalidSpec(f"need 0 < r0 < r1, got r0={self.r0}, r1={self.r1}")

    @property
    def flux_constant(self):
        """Coefficient of the azimuth differential in the flux form."""
        return self.s0 * self.r0

    def _check(self, r, strict):
        if strict:
            tol = _DOMAIN_TOL * self.r1
            if np.any(r < self.r0 - tol) or np.any(r > self.r1 + tol):
                raise OutOfDomain(f"radius outside [{self.r0}, {self.r1}]")

    def speed(self, r, strict=True):
        """Flow speed at radius r:  s0 * r0 / r."""
        arr = np.asarray(r, dtype=np.float64)
        self._check(arr, strict)
        return _maybe_scalar(self.s0 * self.r0 / arr, np.isscalar(r))

    def pressure(self, r, strict=True):
        """Pressure at radius r:  -s0 * r0 * ln(r) + C, gauged so the
        value at r0 is c0."""
        arr = np.asarray(r, dtype=np.float64)
        self._check(arr, strict)
        c = self.c0 + self.s0 * self.r0 * math.log(self.r0)
        return _maybe_scalar(-self.s0 * self.r0 * np.log(arr) + c, np.isscalar(r))

    def coordinate(self, points):
        """Radius of each point (the argument of speed/pressure)."""
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        return np.hypot(pts[:, 0], pts[:, 1])

    def plot_coordinate(self, points):
        """Distance from the axis, used as the abscissa in profiles."""
        return self.coordinate(points)

    def project(self, points):
        """The annulus is flat: points are returned unchanged."""
        return np.atleast_2d(np.asarray(points, dtype=np.float64))


@dataclass(frozen=True)
class HemisphereProblem:
    """Flow on the unit hemisphere from a hole at colatitude theta0 down
    to the equator."""

    theta0: float = math.pi / 6.0
    s0: float = 1.0
    c0: float = 0.0

    def __post_init__(self):
        if not (0.0 < self.theta0 < math.pi / 2.0):
            raise InvalidSpec(f"need 0 < theta0 < pi/2, got {self.theta0}")

    @property
    def flux_constant(self):
        return self.s0 * math.sin(self.theta0)

    def _check(self, theta, strict):
        if strict:
            if np.any(theta < self.theta0 - _DOMAIN_TOL) or np.any(
                theta > math.pi / 2.0 + _DOMAIN_TOL
            ):
                raise OutOfDomain(f"colatitude outside [{self.theta0}, pi/2]")

    def speed(self, theta, strict=True):
        """Flow speed at colatitude theta:  s0 * sin(theta0) / sin(theta)."""
        arr = np.asarray(theta, dtype=np.float64)
        self._check(arr, strict)
        return _maybe_scalar(
            self.s0 * math.sin(self.theta0) / np.sin(arr), np.isscalar(theta)
        )

    def pressure(self, theta, strict=True):
        """Pressure at colatitude theta:
        s0 * sin(theta0) * ln((1 + cos(theta)) / sin(theta)) + C,
        gauged so the value at theta0 is c0."""
        arr = np.asarray(theta, dtype=np.float64)
        self._check(arr, strict)
        k = self.s0 * math.sin(self.theta0)
        c = self.c0 - k * math.log(
            (1.0 + math.cos(self.theta0)) / math.sin(self.theta0)
        )
        return _maybe_scalar(
            k * np.log((1.0 + np.cos(arr)) / np.sin(arr)) + c, np.isscalar(theta)
        )

    def coordinate(self, points):
        """Colatitude of each point (the argument of speed/pressure)."""
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        return np.arctan2(np.hypot(pts[:, 0], pts[:, 1]), pts[:, 2])

    def plot_coordinate(self, points):
        """Distance from the z-axis of the sphere-projected point."""
        pts = self.project(points)
        return np.hypot(pts[:, 0], pts[:, 1])

    def project(self, points):
        """Radially project sample points onto the unit sphere."""
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        return project_to_unit_sphere(pts)


def exact_edge_flux(prob, a, b):
    """Exact flux through one edge, signed along the direction a -> b.

    The flux form is K d(phi) with K = ``prob.flux_constant``, so the edge
    integral is K times the azimuth increment from a to b, wrapped into
    (-pi, pi].

    Raises
    ------
    EdgeThroughAxis
        If both endpoints sit on the z-axis, where the azimuth is
        undefined.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if math.hypot(a[0], a[1]) == 0.0 and math.hypot(b[0], b[1]) == 0.0:
        raise EdgeThroughAxis("both endpoints lie on the z-axis")
    dphi = _wrap_angle(math.atan2(b[1], b[0]) - math.atan2(a[1], a[0]))
    return prob.flux_constant * float(dphi)


def boundary_flux_values(prob, sc):
    """Exact flux for every boundary edge, keyed by edge id.

    Values are signed along the canonical (low to high vertex) edge
    direction, ready to be used as Neumann data.  Every boundary edge is
    required to subtend an azimuth strictly below pi.
    """
    values = {}
    for eid in sc.boundary_edge_ids:
        va, vb = sc.edges[eid]
        flux = exact_edge_flux(prob, sc.vertices[va], sc.vertices[vb])
        if prob.flux_constant != 0.0:
            span = abs(flux / prob.flux_constant)
            if span >= math.pi * (1.0 - 1e-9):
                raise ValueError(
                    f"boundary edge {int(eid)} subtends an azimuth of {span:.6f} rad; "
                    "refine the boundary so each edge stays below pi"
                )
        values[int(eid)] = flux
    return values


def exact_flux_cochain(prob, sc):
    """Exact flux values for every edge of the mesh (array of length E)."""
    verts = sc.vertices
    pa = verts[sc.edges[:, 0]]
    pb = verts[sc.edges[:, 1]]
    dphi = _wrap_angle(
        np.arctan2(pb[:, 1], pb[:, 0]) - np.arctan2(pa[:, 1], pa[:, 0])
    )
    return prob.flux_constant * dphi
