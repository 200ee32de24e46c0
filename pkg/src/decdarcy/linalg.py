"""Thin sparse linear-algebra layer used by the flow solver.

Matrices are scipy CSR/CSC throughout.  These wrappers pin down shape
checking, triplet assembly (duplicates summed, explicit zeros purged) and
the saddle-point solve strategy: sparse LU first, MINRES as the fallback
for systems the factorization cannot handle.
"""

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import (
    DimensionMismatch,
    MaxIterations,
    SingularSystem,
    SolverDivergence,
)


def from_triplets(rows, cols, values, shape, dtype=None):
    """Assemble a CSR matrix from (row, col, value) triplets.

    Duplicate entries are summed and explicit zeros removed, so the result
    has at most one stored entry per (row, col) pair.
    """
    values = np.asarray(values, dtype=dtype)
    mat = sp.coo_matrix((values, (rows, cols)), shape=shape).tocsr()
    mat.sum_duplicates()
    mat.eliminate_zeros()
    return mat


def spmv(a, x):
    """Sparse matrix times dense vector."""
    x = np.asarray(x)
    if a.shape[1] != x.shape[0]:
        raise DimensionMismatch(
            f"matrix is {a.shape[0]}x{a.shape[1]}, vector has length {x.shape[0]}"
        )
    return a @ x


def transpose(a):
    """Transpose, returned in CSR layout with values untouched."""
    return a.T.tocsr()


def block_assemble(blocks):
    """Stack a 2D grid of sparse blocks (``None`` for a zero block) into one
    CSR matrix by index offset."""
    try:
        return sp.bmat(blocks, format="csr")
    except ValueError as exc:
        raise DimensionMismatch(str(exc)) from exc


def solve_symmetric_indefinite(a, b, tol=1e-10, method="auto", maxiter=None):
    """Solve a symmetric (possibly indefinite) sparse system.

    Parameters
    ----------
    a : sparse matrix
        Square symmetric matrix.  Symmetry is the caller's responsibility.
    b : array
        Right-hand side.
    tol : float
        Required relative residual ``|Ax - b| / |b|``.
    method : {"auto", "direct", "minres"}
        "direct" uses sparse LU only, "minres" the Krylov path only,
        "auto" tries LU and falls back to MINRES.
    maxiter : int, optional
        Iteration cap for MINRES (default ``10 * n``).

    Returns
    -------
    x : ndarray
    residual : float
        Achieved relative residual.
    stats : dict
        Solver path and size/fill or iteration counts.

    Raises
    ------
    SingularSystem
        If the factorization reports exact singularity (direct path) or
        MINRES receives an unusable system.
    MaxIterations
        If MINRES hits its iteration cap.
    SolverDivergence
        If the requested tolerance was not reached.
    """
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"matrix is {a.shape[0]}x{a.shape[1]}, not square")
    if method not in ("auto", "direct", "minres"):
        raise ValueError(f"unknown method {method!r}")
    b = np.asarray(b, dtype=np.float64).ravel()
    n = a.shape[0]
    if b.shape[0] != n:
        raise DimensionMismatch(
            f"matrix is {n}x{n}, right-hand side has length {b.shape[0]}"
        )
    bnorm = np.linalg.norm(b)
    if bnorm == 0.0:
        return np.zeros(n), 0.0, {"method": "trivial", "n": n}

    x0 = None
    if method in ("auto", "direct"):
        try:
            lu = spla.splu(a.tocsc())
            x = lu.solve(b)
            residual = float(np.linalg.norm(a @ x - b) / bnorm)
            if residual <= tol:
                stats = {
                    "method": "splu",
                    "n": n,
                    "factor_nnz": int(lu.L.nnz + lu.U.nnz),
                }
                return x, residual, stats
            if method == "direct":
                raise SolverDivergence(
                    f"direct solve residual {residual:.3e} exceeds tolerance {tol:.1e}"
                )
            x0 = x  # warm-start the fallback
        except RuntimeError as exc:
            if method == "direct":
                raise SingularSystem(str(exc)) from exc

    iterations = 0

    def _count(_xk):
        nonlocal iterations
        iterations += 1

    if maxiter is None:
        maxiter = max(1000, 10 * n)
    # minres stops on a recurrence-based estimate that can overshoot the
    # true residual; aim an order of magnitude below the requested tol
    rtol = max(0.1 * tol, 1e-14)
    x, info = spla.minres(a, b, x0=x0, rtol=rtol, maxiter=maxiter, callback=_count)
    residual = float(np.linalg.norm(a @ x - b) / bnorm)
    stats = {"method": "minres", "n": n, "iterations": iterations}
    if info < 0:
        raise SingularSystem(f"minres rejected the system (info={info})")
    if residual <= tol:
        return x, residual, stats
    if info > 0:
        raise MaxIterations(
            f"minres stopped at {iterations} iterations with residual {residual:.3e}"
        )
    raise SolverDivergence(
        f"minres converged to residual {residual:.3e}, above tolerance {tol:.1e}"
    )
