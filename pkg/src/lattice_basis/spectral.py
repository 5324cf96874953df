"""
Perron root of a nonnegative matrix.

The matrix is split into strongly connected components; the spectral
radius is the largest radius over the diagonal blocks.  A component made
of a single vertex contributes its diagonal entry exactly.  For a larger
component ``C`` the shifted block ``C + I`` is primitive, so power
iteration from the all-ones vector converges geometrically, and the
Collatz-Wielandt ratios ``min((Bv)_i / v_i) <= rho(B) <= max((Bv)_i / v_i)``
give a rigorous bracket used as the stopping test.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse.csgraph import connected_components

from .errors import NegativeEntryError, NoConvergenceError, NotSquareError

DEFAULT_TOL = 1e-10
MAX_ITER = 10**6


def _block_radius(C, tol, max_iter):
    B = C + np.eye(C.shape[0])
    v = np.ones(C.shape[0])
    lo, hi = 0.0, np.inf
    for it in range(1, max_iter + 1):
        w = B @ v
        ratios = w / v
        lo, hi = ratios.min(), ratios.max()
        mu = 0.5 * (lo + hi)
        v = w / w.max()
        # scaled by mu >= 1 so large radii are not held to an absolute tol
        if hi - lo <= tol * mu:
            break
    residual = float(np.abs(B @ v - mu * v).max())
    return mu - 1.0, it, residual, hi - lo <= tol * mu


def spectral_radius(A, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER):
    """Return ``(rho, iterations, residual)`` for a square nonnegative matrix.

    ``tol`` bounds the width of the Collatz-Wielandt bracket relative to
    the shifted radius ``1 + rho``.  Raises ``NoConvergenceError``
    if some component fails to converge within ``max_iter`` steps.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotSquareError(f"matrix must be square, got shape {A.shape}")
    if A.size and (A < 0).any():
        i, j = map(int, np.argwhere(A < 0)[0])
        raise NegativeEntryError(f"negative entry at ({i}, {j})", witness=(i, j))
    if not np.isfinite(A).all():
        raise NegativeEntryError("matrix has non-finite entries")
    n = A.shape[0]
    if n == 0:
        return 0.0, 0, 0.0

    ncomp, comp = connected_components(A != 0, directed=True, connection="strong")
    rho, iterations, residual = 0.0, 0, 0.0
    for c in range(ncomp):
        members = np.flatnonzero(comp == c)
        if len(members) == 1:
            i = members[0]
            r = float(A[i, i])
            if r > rho:
                rho = r
            continue
        r, it, res, ok = _block_radius(A[np.ix_(members, members)], tol, max_iter)
        iterations += it
        residual = max(residual, res)
        if not ok:
            raise NoConvergenceError(
                f"power iteration did not converge in {max_iter} steps (residual {res:.3e})",
                witness={"rho": r, "residual": res, "iterations": it},
            )
        rho = max(rho, r)
    return max(rho, 0.0), iterations, residual
