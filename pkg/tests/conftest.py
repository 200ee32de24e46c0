import numpy as np
import pytest

from decdarcy import (
    AnnulusSpec,
    HemisphereSpec,
    annulus_mesh,
    build_complex,
    compute_metrics,
    hemisphere_mesh,
)

SQRT3 = np.sqrt(3.0)


@pytest.fixture
def right_triangle_sc():
    return build_complex([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)], [(0, 1, 2)])


@pytest.fixture
def glued_equilateral_sc():
    verts = [
        (0.0, 0.0, 0.0),
        (1.0, 0.0, 0.0),
        (0.5, SQRT3 / 2.0, 0.0),
        (0.5, -SQRT3 / 2.0, 0.0),
    ]
    return build_complex(verts, [(0, 1, 2), (0, 3, 1)])


@pytest.fixture(scope="session")
def annulus_default():
    sc = annulus_mesh(AnnulusSpec())
    return sc, compute_metrics(sc)


@pytest.fixture(scope="session")
def annulus_small():
    sc = annulus_mesh(AnnulusSpec(n_rings=2, n_sectors=8))
    return sc, compute_metrics(sc)


@pytest.fixture(scope="session")
def hemisphere_default():
    sc = hemisphere_mesh(HemisphereSpec())
    return sc, compute_metrics(sc)


def jittered_annulus(seed=7, scale=0.05):
    """Annulus with interior vertices nudged off the symmetric positions;
    breaks the rotational symmetry that otherwise makes the solved flux
    coincide with the exact cochain."""
    rng = np.random.default_rng(seed)
    sc = annulus_mesh(AnnulusSpec())
    verts = sc.vertices.copy()
    boundary_vertices = np.unique(sc.edges[sc.boundary_edge_ids])
    interior = np.setdiff1d(np.arange(sc.n_vertices), boundary_vertices)
    verts[interior, :2] += 0.25 * scale * rng.standard_normal((interior.size, 2))
    return build_complex(verts, sc.triangles)
