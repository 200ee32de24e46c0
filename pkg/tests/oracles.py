"""Independent oracles for pinning expected values in tests.

Nothing here reuses the package's geometric kernels: barycentric
coordinates come from a least-squares affine solve, triangle integrals
from a 6-point degree-4 quadrature rule, and line integrals from 10-point
Gauss-Legendre.
"""

import numpy as np

# 6-point degree-4 triangle rule: (barycentric point, weight), weights sum to 1
_A1, _W1 = 0.445948490915965, 0.223381589678011
_A2, _W2 = 0.091576213509771, 0.109951743655322
TRI_QUAD_DEG4 = [
    ((1.0 - 2.0 * _A1, _A1, _A1), _W1),
    ((_A1, 1.0 - 2.0 * _A1, _A1), _W1),
    ((_A1, _A1, 1.0 - 2.0 * _A1), _W1),
    ((1.0 - 2.0 * _A2, _A2, _A2), _W2),
    ((_A2, 1.0 - 2.0 * _A2, _A2), _W2),
    ((_A2, _A2, 1.0 - 2.0 * _A2), _W2),
]


def _as3d(p):
    p = np.asarray(p, dtype=np.float64)
    if p.shape[0] == 2:
        p = np.concatenate([p, [0.0]])
    return p


def triangle_area(p0, p1, p2):
    p0, p1, p2 = _as3d(p0), _as3d(p1), _as3d(p2)
    return 0.5 * np.linalg.norm(np.cross(p1 - p0, p2 - p0))


def tri_quadrature(p0, p1, p2, fn):
    """Integrate ``fn(point3d, barycentric)`` over the triangle (degree 4)."""
    corners = np.stack([_as3d(p0), _as3d(p1), _as3d(p2)])
    area = triangle_area(*corners)
    total = 0.0
    for lam, w in TRI_QUAD_DEG4:
        point = np.asarray(lam) @ corners
        total += w * fn(point, np.asarray(lam))
    return area * total


def affine_barycentric(p0, p1, p2):
    """Return (to_bary, grads): barycentric evaluation and constant
    gradients obtained from the pseudo-inverse of the affine map."""
    corners = np.stack([_as3d(p0), _as3d(p1), _as3d(p2)])
    basis = np.stack([corners[1] - corners[0], corners[2] - corners[0]])  # (2, 3)
    pinv = np.linalg.pinv(basis.T)  # (2, 3): rows are grad s, grad t

    def to_bary(point):
        st = pinv @ (np.asarray(point, dtype=np.float64) - corners[0])
        return np.array([1.0 - st[0] - st[1], st[0], st[1]])

    grads = np.vstack([-pinv[0] - pinv[1], pinv])  # (3, 3)
    return to_bary, grads


def whitney_edge_form(p0, p1, p2, pair):
    """Pointwise evaluator of the edge basis form for local pair (i, j)."""
    to_bary, grads = affine_barycentric(p0, p1, p2)
    i, j = pair

    def evaluate(point):
        lam = to_bary(point)
        return lam[i] * grads[j] - lam[j] * grads[i]

    return evaluate


def line_integral(a, b, field, n=10):
    """Integrate ``field(point) . tangent`` along the segment a -> b."""
    a, b = _as3d(a), _as3d(b)
    nodes, weights = np.polynomial.legendre.leggauss(n)
    total = 0.0
    for t, w in zip(nodes, weights):
        point = 0.5 * (a + b) + 0.5 * t * (b - a)
        total += w * float(np.dot(field(point), 0.5 * (b - a)))
    return total


LOCAL_CANONICAL_PAIRS = ((0, 1), (0, 2), (1, 2))


def whitney_local_mass_oracle(p0, p1, p2):
    """Degree-4 quadrature of the pairwise inner products of the edge basis
    forms (local canonical order eta_01, eta_02, eta_12), using gradients
    from the pseudo-inverse affine solve."""
    _, grads = affine_barycentric(p0, p1, p2)
    area = triangle_area(p0, p1, p2)
    out = np.zeros((3, 3))
    for lam, w in TRI_QUAD_DEG4:
        vals = [
            lam[i] * grads[j] - lam[j] * grads[i] for i, j in LOCAL_CANONICAL_PAIRS
        ]
        for a in range(3):
            for b in range(3):
                out[a, b] += w * float(np.dot(vals[a], vals[b]))
    return area * out


def random_triangle(rng, dim=3, min_area=0.05):
    """A random non-sliver triangle with O(1) coordinates."""
    while True:
        corners = rng.uniform(-1.0, 1.0, size=(3, dim))
        if triangle_area(*(_as3d(c) for c in corners)) >= min_area:
            return [_as3d(c) for c in corners]


def random_rotation(rng):
    """Uniform-ish proper rotation matrix."""
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q *= np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
