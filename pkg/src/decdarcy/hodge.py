"""The two interchangeable discrete Hodge stars on 1-cochains.

The diagonal star divides each signed circumcentric dual length by the
primal edge length.  The mass-matrix star pairs the lowest-order edge
basis forms eta_(i,j) = lambda_i d lambda_j - lambda_j d lambda_i built
from barycentric coordinates; their inner products are integrated in
closed form using the constant per-triangle gradients and the exact
moments  int lambda_a lambda_b dA = area/12 (a != b), area/6 (a == b).
Swapping one star for the other is the entire difference between the two
flow discretizations.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from . import linalg
from .errors import NonDelaunayWarning
from .geometry import barycentric_gradients


@dataclass(frozen=True)
class HodgeStar1:
    """Sparse symmetric E x E operator on 1-cochains.

    ``flavor`` is "dec" (diagonal, primal-dual) or "whitney" (edge-element
    mass matrix, symmetric positive definite).
    """

    matrix: sp.csr_matrix
    flavor: str


def dec_hodge_star_1(sc, metrics):
    """Diagonal Hodge star: entry e = dual_edge_length(e) / edge_length(e).

    Emits :class:`NonDelaunayWarning` listing any edges whose entry is
    nonpositive; the operator is still returned so that comparisons on
    poor meshes remain possible.
    """
    entries = metrics.dual_edge_length / metrics.edge_length
    bad = np.nonzero(entries <= 0.0)[0]
    if bad.size:
        warnings.warn(
            NonDelaunayWarning(
                f"{bad.size} of {sc.n_edges} Hodge star entries are nonpositive",
                edge_ids=bad,
            ),
            stacklevel=2,
        )
    return HodgeStar1(matrix=sp.diags(entries, format="csr"), flavor="dec")


# local directed edge slots (tail, head) within one triangle
_SLOT_PAIRS = np.array([[0, 1], [1, 2], [2, 0]])


def whitney_mass_matrix_1(sc, metrics):
    """Mass matrix of the lowest-order edge basis, assembled per triangle.

    Entry (a, b) sums, over the triangles containing both edges, the exact
    integral of the inner product of the two basis 1-forms taken with their
    canonical (low to high vertex) orientations.  The result is symmetric
    positive definite with at most five nonzeros per interior row.
    """
    f = sc.n_triangles
    grads = metrics.lambda_gradients
    gram = np.einsum("fik,fjk->fij", grads, grads)

    tails = np.where(sc.tri_edge_signs > 0, _SLOT_PAIRS[:, 0], _SLOT_PAIRS[:, 1])
    heads = np.where(sc.tri_edge_signs > 0, _SLOT_PAIRS[:, 1], _SLOT_PAIRS[:, 0])

    fidx = np.arange(f)[:, None, None]
    i_a = tails[:, :, None]
    j_a = heads[:, :, None]
    i_b = tails[:, None, :]
    j_b = heads[:, None, :]

    local = (
        gram[fidx, j_a, j_b] * (1.0 + (i_a == i_b))
        - gram[fidx, j_a, i_b] * (1.0 + (i_a == j_b))
        - gram[fidx, i_a, j_b] * (1.0 + (j_a == i_b))
        + gram[fidx, i_a, i_b] * (1.0 + (j_a == j_b))
    ) * (metrics.tri_area / 12.0)[:, None, None]

    rows = np.broadcast_to(sc.tri_edges[:, :, None], (f, 3, 3)).ravel()
    cols = np.broadcast_to(sc.tri_edges[:, None, :], (f, 3, 3)).ravel()
    mat = linalg.from_triplets(rows, cols, local.ravel(), (sc.n_edges, sc.n_edges))
    mat = ((mat + mat.T) * 0.5).tocsr()  # kill roundoff asymmetry from assembly order
    return HodgeStar1(matrix=mat, flavor="whitney")


def whitney_local_mass(p0, p1, p2):
    """3x3 mass matrix of one triangle in the local basis eta_01, eta_02,
    eta_12 (edges oriented by ascending local vertex index)."""
    corners = np.asarray([p0, p1, p2], dtype=np.float64)
    if corners.shape[1] == 2:
        corners = np.column_stack([corners, np.zeros(3)])
    a = corners[1] - corners[0]
    b = corners[2] - corners[0]
    n = np.cross(a, b)
    area = 0.5 * np.linalg.norm(n)
    normal = n / (2.0 * area)
    grads = np.stack(
        [
            np.cross(normal, corners[(i + 2) % 3] - corners[(i + 1) % 3]) / (2.0 * area)
            for i in range(3)
        ]
    )
    gram = grads @ grads.T
    pairs = ((0, 1), (0, 2), (1, 2))
    local = np.empty((3, 3))
    for alpha, (i, j) in enumerate(pairs):
        for beta, (k, l) in enumerate(pairs):
            local[alpha, beta] = (area / 12.0) * (
                gram[j, l] * (1.0 + (i == k))
                - gram[j, k] * (1.0 + (i == l))
                - gram[i, l] * (1.0 + (j == k))
                + gram[i, k] * (1.0 + (j == l))
            )
    return local
