"""Oriented triangle surface complexes and their sparse boundary operators.

Edges are stored canonically: each vertex pair with the lower index first,
and the edge list sorted lexicographically, so edge ids are deterministic
across runs.  Boundary matrices carry integer entries (+1/-1), which keeps
the operator identities (d1 d0 = 0, d1 = transpose of the triangle-to-edge
boundary matrix) exact.

Mesh file format (plain text):

    V E F          optional header with integer counts (E ignored on read)
    v x y z        one line per vertex
    t i j k        one line per triangle, 0-based vertex indices

Coordinates are written with ``repr`` of Python floats, so reading a file
and writing it back is byte-identical.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DegenerateTriangle, NonManifold, NonOrientable

# slot k of a triangle (v0, v1, v2) is the directed edge (v_k, v_{k+1 mod 3})
_EDGE_SLOTS = ((0, 1), (1, 2), (2, 0))


@dataclass(frozen=True)
class SimplicialSurface:
    """An oriented triangulated surface with canonical edge enumeration.

    Attributes
    ----------
    vertices : ndarray, shape (V, 3)
        Vertex coordinates.
    triangles : ndarray, shape (F, 3)
        Vertex index triples, consistently oriented.
    edges : ndarray, shape (E, 2)
        Canonical edges: each row sorted ascending, rows in lexicographic
        order.
    edge_index : dict
        Maps the canonical vertex pair ``(a, b)`` with ``a < b`` to its
        edge id.
    tri_edges : ndarray, shape (F, 3)
        Edge ids of the directed edges (v0,v1), (v1,v2), (v2,v0).
    tri_edge_signs : ndarray, shape (F, 3)
        +1 where the triangle traverses the edge in canonical (low to
        high) direction, -1 otherwise.
    boundary_edge_ids : ndarray
        Edges incident to exactly one triangle.
    boundary_loops : tuple of ndarray
        Boundary edge ids partitioned into closed loops, ordered by the
        lowest vertex id contained in each loop.

    A built surface is immutable (arrays are read-only) and can be shared
    freely across threads.
    """

    vertices: np.ndarray
    triangles: np.ndarray
    edges: np.ndarray
    edge_index: dict
    tri_edges: np.ndarray
    tri_edge_signs: np.ndarray
    boundary_edge_ids: np.ndarray
    boundary_loops: tuple

    @property
    def n_vertices(self):
        return self.vertices.shape[0]

    @property
    def n_edges(self):
        return self.edges.shape[0]

    @property
    def n_triangles(self):
        return self.triangles.shape[0]

    @property
    def euler_characteristic(self):
        return self.n_vertices - self.n_edges + self.n_triangles

    @property
    def interior_edge_ids(self):
        mask = np.ones(self.n_edges, dtype=bool)
        mask[self.boundary_edge_ids] = False
        return np.nonzero(mask)[0]

    def loop_vertex_ids(self, loop):
        """Vertex ids touched by one boundary loop (array of edge ids)."""
        return np.unique(self.edges[np.asarray(loop)])


def build_complex(vertices, triangles):
    """Build an oriented simplicial surface from vertex and triangle lists.

    Parameters
    ----------
    vertices : array_like, shape (V, 2) or (V, 3)
        Coordinates; 2D input is padded with z = 0.
    triangles : array_like, shape (F, 3)
        Ordered vertex index triples with consistent orientation.

    Raises
    ------
    DegenerateTriangle
        A triangle repeats a vertex index.
    NonManifold
        An edge belongs to more than two triangles.
    NonOrientable
        Two triangles traverse a shared edge in the same direction.
    """
    verts = np.asarray(vertices, dtype=np.float64)
    if verts.ndim != 2 or verts.shape[1] not in (2, 3):
        raise ValueError("vertices must be an (V, 2) or (V, 3) array")
    if verts.shape[1] == 2:
        verts = np.column_stack([verts, np.zeros(verts.shape[0])])
    tris = np.asarray(triangles, dtype=np.int64)
    if tris.ndim != 2 or tris.shape[1] != 3 or tris.shape[0] == 0:
        raise ValueError("triangles must be a nonempty (F, 3) array")
    if tris.min() < 0 or tris.max() >= verts.shape[0]:
        raise ValueError("triangle index out of range")
    repeated = (
        (tris[:, 0] == tris[:, 1])
        | (tris[:, 1] == tris[:, 2])
        | (tris[:, 2] == tris[:, 0])
    )
    if repeated.any():
        bad = int(np.nonzero(repeated)[0][0])
        raise DegenerateTriangle(f"triangle {bad} repeats a vertex")

    directed = np.stack([tris[:, list(s)] for s in _EDGE_SLOTS], axis=1)  # (F,3,2)
    canon = np.sort(directed, axis=2)
    signs = np.where(directed[:, :, 0] < directed[:, :, 1], 1, -1).astype(np.int64)
    edges, inverse = np.unique(canon.reshape(-1, 2), axis=0, return_inverse=True)
    tri_edges = inverse.reshape(-1).reshape(tris.shape[0], 3)

    n_edges = edges.shape[0]
    counts = np.bincount(tri_edges.ravel(), minlength=n_edges)
    if counts.max() > 2:
        bad = int(np.argmax(counts))
        raise NonManifold(
            f"edge {tuple(edges[bad])} belongs to {counts[bad]} triangles"
        )
    signed = np.bincount(
        tri_edges.ravel(), weights=signs.ravel().astype(np.float64), minlength=n_edges
    )
    interior = counts == 2
    bad_orient = interior & (signed != 0)
    if bad_orient.any():
        bad = int(np.nonzero(bad_orient)[0][0])
        raise NonOrientable(
            f"edge {tuple(edges[bad])} is traversed twice in the same direction"
        )

    boundary_edge_ids = np.nonzero(counts == 1)[0]
    loops = _boundary_loops(edges, boundary_edge_ids)
    edge_index = {(int(a), int(b)): i for i, (a, b) in enumerate(edges)}

    for arr in (verts, tris, edges, tri_edges, signs, boundary_edge_ids):
        arr.flags.writeable = False
    return SimplicialSurface(
        vertices=verts,
        triangles=tris,
        edges=edges,
        edge_index=edge_index,
        tri_edges=tri_edges,
        tri_edge_signs=signs,
        boundary_edge_ids=boundary_edge_ids,
        boundary_loops=loops,
    )


def _boundary_loops(edges, boundary_edge_ids):
    """Partition boundary edges into closed loops.

    Loops are discovered starting from the globally smallest unvisited
    boundary vertex and walked toward the smaller-id neighbour first, so
    the result is deterministic.
    """
    adjacency = {}
    for eid in boundary_edge_ids:
        a, b = (int(v) for v in edges[eid])
        adjacency.setdefault(a, []).append((b, int(eid)))
        adjacency.setdefault(b, []).append((a, int(eid)))
    for v, nbrs in adjacency.items():
        if len(nbrs) != 2:
            raise NonManifold(
                f"boundary vertex {v} is touched by {len(nbrs)} boundary edges"
            )
        nbrs.sort()

    loops = []
    seen = set()
    for start in sorted(adjacency):
        if start in seen:
            continue
        loop = []
        prev, current = None, start
        while True:
            nbrs = [item for item in adjacency[current] if item[1] != prev]
            nxt, eid = nbrs[0]
            loop.append(eid)
            seen.add(current)
            prev, current = eid, nxt
            if current == start:
                break
        arr = np.asarray(loop, dtype=np.int64)
        arr.flags.writeable = False
        loops.append(arr)
    return tuple(loops)


def boundary_2(sc):
    """Boundary matrix from triangles to edges, shape (E, F), entries +-1.

    Entry (e, t) is +1 when triangle t traverses edge e in its canonical
    direction, -1 otherwise; every column has exactly three nonzeros.
    """
    f = sc.n_triangles
    rows = sc.tri_edges.ravel()
    cols = np.repeat(np.arange(f), 3)
    vals = sc.tri_edge_signs.ravel()
    return linalg.from_triplets(rows, cols, vals, (sc.n_edges, f), dtype=np.int64)


def boundary_1(sc):
    """Boundary matrix from edges to vertices, shape (V, E), entries +-1.

    Column e for the canonical edge (a, b) with a < b has -1 at row a and
    +1 at row b.
    """
    e = sc.n_edges
    rows = sc.edges.ravel()
    cols = np.repeat(np.arange(e), 2)
    vals = np.tile(np.array([-1, 1], dtype=np.int64), e)
    return linalg.from_triplets(rows, cols, vals, (sc.n_vertices, e), dtype=np.int64)


def coboundary_0(sc):
    """Exterior derivative on 0-cochains: transpose of :func:`boundary_1`."""
    return linalg.transpose(boundary_1(sc))


def coboundary_1(sc):
    """Exterior derivative on 1-cochains: transpose of :func:`boundary_2`."""
    return linalg.transpose(boundary_2(sc))


def incidence_signs(sc):
    """Per-edge column sums of the coboundary d1: 0 on interior edges, +-1
    on boundary edges.  These signs turn the per-triangle conservation rows
    into the discrete divergence theorem."""
    return np.bincount(
        sc.tri_edges.ravel(),
        weights=sc.tri_edge_signs.ravel().astype(np.float64),
        minlength=sc.n_edges,
    ).astype(np.int64)


def write_mesh(sc, path):
    """Write the mesh file format documented in the module docstring."""
    lines = [f"{sc.n_vertices} {sc.n_edges} {sc.n_triangles}"]
    for x, y, z in sc.vertices:
        lines.append(f"v {float(x)!r} {float(y)!r} {float(z)!r}")
    for i, j, k in sc.triangles:
        lines.append(f"t {i} {j} {k}")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def read_mesh(path):
    """Read a mesh file and build the complex.  The optional count header is
    ignored apart from being skipped."""
    verts = []
    tris = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            tokens = raw.split()
            if not tokens:
                continue
            if tokens[0] == "v":
                if len(tokens) != 4:
                    raise ValueError(f"{path}:{lineno}: malformed vertex line")
                verts.append([float(t) for t in tokens[1:]])
            elif tokens[0] == "t":
                if len(tokens) != 4:
                    raise ValueError(f"{path}:{lineno}: malformed triangle line")
                tris.append([int(t) for t in tokens[1:]])
            elif lineno == 1 and len(tokens) == 3:
                continue  # count header
            else:
                raise ValueError(f"{path}:{lineno}: unrecognized line {raw!r}")
    return build_complex(verts, tris)
