"""Exception and warning types shared across the package."""


class DecDarcyError(Exception):
    """Base class for all errors raised by this package."""


class NonManifold(DecDarcyError):
    """An edge is shared by more than two triangles (or a boundary vertex
    is touched by more than two boundary edges)."""


class NonOrientable(DecDarcyError):
    """Two triangles traverse a shared edge in the same direction."""


class DegenerateTriangle(DecDarcyError):
    """A triangle has repeated vertices or numerically vanishing area."""


class OriginPoint(DecDarcyError):
    """A point at the origin cannot be projected to the unit sphere."""


class InvalidSpec(DecDarcyError):
    """A mesh-generation or run specification violates its constraints."""


class InvalidBarycentric(DecDarcyError):
    """Barycentric coordinates are negative or do not sum to one."""


class OutOfDomain(DecDarcyError):
    """A coordinate lies outside the domain of a closed-form solution."""


class EdgeThroughAxis(DecDarcyError):
    """Both edge endpoints lie on the z-axis, so the azimuth span of the
    edge is undefined."""


class IncompatibleBC(DecDarcyError):
    """Prescribed boundary fluxes do not sum to zero, so the pure-Neumann
    problem has no solution."""


class DimensionMismatch(DecDarcyError):
    """Operands of a linear-algebra operation have incompatible shapes."""


class SingularSystem(DecDarcyError):
    """The assembled linear system could not be factorized."""


class SolverDivergence(DecDarcyError):
    """A solve finished without reaching the requested residual tolerance."""


class MaxIterations(DecDarcyError):
    """The iterative solver hit its iteration cap."""


class NonDelaunayWarning(UserWarning):
    """Some circumcentric dual edge lengths are nonpositive.

    The diagonal Hodge star built from them has nonpositive entries, which
    makes the mixed system indefinite in a way that is still solvable but
    no longer backed by the usual positivity argument.  The warning carries
    the offending edge ids in ``edge_ids``.
    """

    def __init__(self, message, edge_ids=()):
        super().__init__(message)
        self.edge_ids = tuple(int(e) for e in edge_ids)
