"""Independent checks for the maps in :mod:`fuzzycover.transforms`.

Nothing here imports the transforms module.  Each oracle reaches the same
answer along a different route (inner products, a face-by-face line search,
an explicit lower-triangular system), so agreement is evidence and not a
tautology.
"""
from __future__ import annotations

import itertools

import numpy as np

from .exceptions import BudgetExceeded
from .geometry import DEFAULT_TOL, Region, as_points, check_permutation, member


def project_point_to_plane(p):
    """Euclidean projection onto the hyperplane ``<x, u> = 1``."""
    p = as_points(p)
    u = np.ones(p.shape[-1])
    offset = (p @ u - 1.0) / (u @ u)
    return p - np.asarray(offset)[..., None] * u


def line_face_intersection(b, tol=DEFAULT_TOL):
    """Meet the line ``b + t u`` with the faces ``{x_i = 1}`` of the cube.

    Each face gives one candidate parameter ``t = 1 - b_i``; the answer is the
    first candidate whose point stays inside the cube.
    """
    b = as_points(b, name="b")
    b2 = np.atleast_2d(b)
    k, n = b2.shape
    out = np.full_like(b2, np.nan)
    found = np.zeros(k, dtype=bool)
    for i in range(n):
        cand = b2 + (1.0 - b2[:, i])[:, None]
        inside = np.all((cand >= -tol) & (cand <= 1.0 + tol), axis=1)
        take = inside & ~found
        out[take] = cand[take]
        found |= take
    if not found.all():
        row = int(np.flatnonzero(~found)[0])
        raise RuntimeError(f"normal line through {b2[row]} misses the faces of the cube")
    return out.reshape(b.shape)


def sis_matrix(n: int) -> np.ndarray:
    """Coefficients of the system relating sorted a to sorted c in the sector map.

    Row 0 and row 1 are identity rows; row ``k >= 2`` reads
    ``k * a_k - a_1 - ... - a_{k-1} = c_k``.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    m = np.zeros((n, n))
    m[0, 0] = 1.0
    m[1, 1] = 1.0
    for k in range(2, n):
        m[k, 1:k] = -1.0
        m[k, k] = float(k)
    return m


def sis_determinant(n: int) -> float:
    """Determinant of :func:`sis_matrix` by LU factorization."""
    return float(np.linalg.det(sis_matrix(n)))


def forward_substitution(m, rhs):
    """Solve ``m x = rhs`` for lower-triangular ``m``; ``rhs`` may be stacked ``(k, n)``."""
    m = np.asarray(m, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    n = m.shape[0]
    diag = np.diag(m)
    if np.any(diag == 0.0):
        raise np.linalg.LinAlgError("singular triangular system")
    x = np.zeros_like(rhs)
    for k in range(n):
        x[..., k] = (rhs[..., k] - x[..., :k] @ m[k, :k]) / diag[k]
    return x


def solve_triangular_system(c, sigma):
    """Invert the sector map on ``F_sigma`` by solving its linear system.

    ``sigma`` is one permutation, or one per row when ``c`` is a stack.
    """
    c = as_points(c, name="c")
    c2 = np.atleast_2d(c)
    n = c2.shape[-1]
    sigma = np.asarray(sigma)
    if sigma.ndim == 1:
        sigma = np.broadcast_to(check_permutation(sigma, n), c2.shape)
    elif sigma.shape != c2.shape:
        raise ValueError(f"sigma of shape {sigma.shape} does not match c of shape {c2.shape}")
    rows = np.arange(c2.shape[0])[:, None]
    sorted_c = c2[rows, sigma]
    sorted_a = forward_substitution(sis_matrix(n), sorted_c)
    a = np.empty_like(c2)
    a[rows, sigma] = sorted_a
    return a.reshape(c.shape)


def grid_probe(region, resolution: int, n: int, *, tol=DEFAULT_TOL, budget: int = 10**6,
               perm=None, delta=None) -> np.ndarray:
    """Lattice points ``{0, 1/r, ..., 1}^n`` of ``region``, in lexicographic order."""
    if resolution < 1:
        raise ValueError(f"resolution must be positive, got {resolution}")
    count = (resolution + 1) ** n
    if count > budget:
        raise BudgetExceeded(f"grid of {count} points exceeds budget {budget}")
    ticks = np.arange(resolution + 1) / resolution
    pts = np.array(list(itertools.product(ticks, repeat=n)))
    keep = member(pts, Region(region), tol, perm=perm, delta=delta)
    return pts[keep]
