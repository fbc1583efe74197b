"""Points, permutations and membership predicates for the regions of the n-cube.

Points are plain numpy arrays whose last axis holds the ``n`` coordinates, so
every predicate here also accepts a stack of points of shape ``(k, n)`` and
then answers row by row.

Regions (0-based coordinates throughout):

====== ===============================================================
H      the cube ``[0, 1]^n``
PI     the hyperplane ``sum(x) = 1``
F      the union of the top faces ``H ∩ {x_i = 1}``
K      the standard simplex ``H ∩ PI``
G      points of F with ``sum(a) <= n * a_i + 1`` for every i
P      the orthogonal projection of H onto PI
PBAR   the homothetic copy of P about g with factor ``1 / (n - 1)``
F_GE   ``F ∩ [delta, 1]^n`` (needs ``delta``)
F_SIGMA, G_SIGMA
       points of F (resp. G) whose coordinates are non-increasing in the
       order given by a permutation (needs ``perm``)
====== ===============================================================
"""
from __future__ import annotations

import enum
from collections.abc import Sequence

import numpy as np

DEFAULT_TOL = 1e-9
_EPS = float(np.finfo(float).eps)


class Region(str, enum.Enum):
    H = "H"
    PI = "PI"
    F = "F"
    K = "K"
    G = "G"
    P = "P"
    PBAR = "PBAR"
    F_GE = "F_GE"
    F_SIGMA = "F_SIGMA"
    G_SIGMA = "G_SIGMA"


def as_points(p, *, name="p") -> np.ndarray:
    """Return ``p`` as a float array of one point ``(n,)`` or a stack ``(k, n)``.

    Rejects ``n < 2`` and non-finite coordinates.
    """
    arr = np.asarray(p, dtype=float)
    if arr.ndim not in (1, 2):
        raise ValueError(f"{name} must be a point (n,) or a stack of points (k, n), got shape {arr.shape}")
    if arr.shape[-1] < 2:
        raise ValueError(f"{name} needs dimension n >= 2, got n={arr.shape[-1]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite coordinates")
    return arr


def check_tol(tol) -> float:
    tol = float(tol)
    if not tol >= 0.0:
        raise ValueError(f"tolerance must be non-negative, got {tol}")
    return tol


def unit(n: int) -> np.ndarray:
    """The all-ones vector u."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return np.ones(n)


def center(n: int) -> np.ndarray:
    """The barycenter g = u / n of the simplex K."""
    return unit(n) / n


# -- permutations -------------------------------------------------------------

def check_permutation(s, n: int | None = None) -> np.ndarray:
    s = np.asarray(s)
    if s.ndim != 1 or (s.size and not np.issubdtype(s.dtype, np.integer)):
        raise ValueError(f"permutation must be a 1-d sequence of integers, got {s!r}")
    s = s.astype(np.intp)
    if n is not None and s.size != n:
        raise ValueError(f"permutation of length {s.size} does not match dimension {n}")
    if sorted(s.tolist()) != list(range(s.size)):
        raise ValueError(f"{s.tolist()} is not a permutation of 0..{s.size - 1}")
    return s


def inverse_permutation(s) -> tuple[int, ...]:
    s = check_permutation(s)
    inv = np.empty_like(s)
    inv[s] = np.arange(s.size)
    return tuple(int(i) for i in inv)


def apply_permutation(p, s) -> np.ndarray:
    """Coordinate ``i`` of the result is coordinate ``s[i]`` of ``p``."""
    p = as_points(p)
    s = check_permutation(s, p.shape[-1])
    return p[..., s]


def descending_sector(p) -> tuple[int, ...]:
    """Permutation sorting ``p`` into non-increasing order.

    Ties keep ascending original index, so the answer is deterministic.
    """
    p = as_points(p)
    if p.ndim != 1:
        raise ValueError("descending_sector takes a single point")
    return tuple(int(i) for i in np.argsort(-p, kind="stable"))


def descending_sectors(p) -> np.ndarray:
    """Row-wise :func:`descending_sector` for a stack of points, shape ``(k, n)``."""
    p = np.atleast_2d(as_points(p))
    return np.argsort(-p, axis=-1, kind="stable")


def tie_consistent_sectors(p, tol: float = 0.0) -> list[tuple[int, ...]]:
    """Every permutation that sorts ``p`` non-increasingly, ties within ``tol``.

    Coordinates are grouped into blocks of (chained) ties in the stable
    descending order, and every ordering inside every block is produced.
    """
    import itertools

    p = as_points(p)
    base = descending_sector(p)
    blocks = [[base[0]]]
    for prev, idx in zip(base, base[1:]):
        if abs(p[prev] - p[idx]) <= tol:
            blocks[-1].append(idx)
        else:
            blocks.append([idx])
    out = []
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        out.append(tuple(i for block in choice for i in block))
    return sorted(out)


# -- membership ---------------------------------------------------------------

def _in_cube(p, tol):
    return np.all((p >= -tol) & (p <= 1.0 + tol), axis=-1)


def _sum_slack(tol, n):
    # A positive tolerance also covers the rounding of an n-term sum, so a
    # decimal boundary case such as a row sum of 0.999999999 at tol 1e-9 is
    # accepted.  tol = 0 stays exact.
    return tol + n * _EPS if tol > 0 else 0.0


def _on_plane(p, tol):
    return np.abs(p.sum(axis=-1) - 1.0) <= _sum_slack(tol, p.shape[-1])


def _in_faces(p, tol):
    return _in_cube(p, tol) & (p.max(axis=-1) >= 1.0 - tol)


def _good(p, tol):
    n = p.shape[-1]
    return p.sum(axis=-1) <= n * p.min(axis=-1) + 1.0 + _sum_slack(tol, n)


def _sorted_by(p, perm, tol):
    q = p[..., perm]
    return np.all(np.diff(q, axis=-1) <= tol, axis=-1) & (q[..., 0] >= 1.0 - tol)


def _in_hexagon(p, tol):
    # b in P iff b is on PI and b + (1 - max b) u lies in H; the upper bound
    # is automatic, the lower one reads max(b) - min(b) <= 1.
    return _on_plane(p, tol) & (p.max(axis=-1) - p.min(axis=-1) <= 1.0 + tol)


def member(p, region: Region | str, tol: float = DEFAULT_TOL, *,
           perm: Sequence[int] | None = None, delta: float | None = None):
    """Whether ``p`` lies in ``region`` up to ``tol`` in every defining constraint.

    Returns a bool for a single point and a bool array for a stack of points.
    ``perm`` is required for the sector regions, ``delta`` for ``F_GE``.
    """
    p = as_points(p)
    tol = check_tol(tol)
    region = Region(region)
    n = p.shape[-1]

    if region in (Region.F_SIGMA, Region.G_SIGMA):
        if perm is None:
            raise ValueError(f"region {region.value} needs a permutation")
        perm = check_permutation(perm, n)

    if region is Region.H:
        out = _in_cube(p, tol)
    elif region is Region.PI:
        out = _on_plane(p, tol)
    elif region is Region.F:
        out = _in_faces(p, tol)
    elif region is Region.K:
        out = _in_cube(p, tol) & _on_plane(p, tol)
    elif region is Region.G:
        out = _in_faces(p, tol) & _good(p, tol)
    elif region is Region.P:
        out = _in_hexagon(p, tol)
    elif region is Region.PBAR:
        # c_{n-1}(p) must lie in P
        q = (n - 1) * p - (n - 2) / n
        out = _in_hexagon(q, tol)
    elif region is Region.F_GE:
        if delta is None:
            raise ValueError("region F_GE needs delta")
        out = _in_faces(p, tol) & np.all(p >= delta - tol, axis=-1)
    elif region is Region.F_SIGMA:
        out = _in_faces(p, tol) & _sorted_by(p, perm, tol)
    else:
        out = _in_faces(p, tol) & _good(p, tol) & _sorted_by(p, perm, tol)

    if p.ndim == 1:
        return bool(out)
    return np.asarray(out, dtype=bool)
