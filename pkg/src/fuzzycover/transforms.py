"""The pointwise maps between the regions of the n-cube, and their registry.

Every map takes one point ``(n,)`` or a stack ``(k, n)`` and returns the same
shape.  Inputs are checked against the map's domain at ``tol``; outputs that
overshoot a codomain bound by at most ``tol`` are snapped onto the bound, and
anything larger raises :class:`~fuzzycover.exceptions.DomainError`.

Where a map is a composite (``phi1``, ``psi``, ``psi1`` and their inverses)
the composition is what gets computed.  The equivalent closed forms are kept
next to them as ``*_closed`` functions and serve as cross-checks.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exceptions import DomainError
from .geometry import (
    DEFAULT_TOL,
    Region,
    as_points,
    check_permutation,
    check_tol,
    descending_sectors,
    member,
)


def _require(p, region, tol, name, **kw):
    ok = np.atleast_1d(member(p, region, tol, **kw))
    if not ok.all():
        row = int(np.flatnonzero(~ok)[0])
        bad = np.atleast_2d(p)[row]
        raise DomainError(
            f"{name}: point {np.array2string(bad, precision=12)} is not in {Region(region).value}"
            f" (tol={tol:g})",
            row=row if p.ndim == 2 else None,
        )


def _snap(x, lo, hi, tol, name):
    over = np.maximum(x - hi, lo - x)
    if np.any(over > tol):
        row = int(np.flatnonzero(np.atleast_2d(over).max(axis=-1) > tol)[0])
        raise DomainError(
            f"{name}: result leaves its codomain bounds [{lo:g}, {hi:g}] by more than tol={tol:g}",
            row=row if x.ndim == 2 else None,
        )
    return np.clip(x, lo, hi)


def _col(v):
    return np.asarray(v)[..., None]


# -- Phi: K <-> G -------------------------------------------------------------

def phi(b, tol=DEFAULT_TOL):
    """Orthogonal projection of the simplex K onto the faces F; image is G."""
    b = as_points(b, name="b")
    tol = check_tol(tol)
    _require(b, Region.K, tol, "phi")
    a = b + _col(1.0 - b.max(axis=-1))
    return _snap(a, 0.0, 1.0, tol, "phi")


def phi_inv(a, tol=DEFAULT_TOL):
    a = as_points(a, name="a")
    tol = check_tol(tol)
    _require(a, Region.G, tol, "phi_inv")
    n = a.shape[-1]
    b = a + _col((1.0 - a.sum(axis=-1)) / n)
    return _snap(b, 0.0, 1.0, tol, "phi_inv")


# -- varphi1: F <-> K (central projection through the origin) -----------------

def varphi1(c, tol=DEFAULT_TOL):
    c = as_points(c, name="c")
    tol = check_tol(tol)
    _require(c, Region.F, tol, "varphi1")
    b = c / _col(c.sum(axis=-1))
    return _snap(b, 0.0, 1.0, tol, "varphi1")


def varphi1_inv(b, tol=DEFAULT_TOL):
    b = as_points(b, name="b")
    tol = check_tol(tol)
    _require(b, Region.K, tol, "varphi1_inv")
    c = b / _col(b.max(axis=-1))
    return _snap(c, 0.0, 1.0, tol, "varphi1_inv")


# -- Phi1 = Phi o varphi1: F <-> G ------------------------------------------

def phi1(c, tol=DEFAULT_TOL):
    return phi(varphi1(c, tol), tol)


def phi1_inv(a, tol=DEFAULT_TOL):
    return varphi1_inv(phi_inv(a, tol), tol)


def phi1_closed(c):
    c = as_points(c, name="c")
    return (c - 1.0) / _col(c.sum(axis=-1)) + 1.0


def phi1_inv_closed(a):
    a = as_points(a, name="a")
    n = a.shape[-1]
    return (n * a - n) / _col(n + 1.0 - a.sum(axis=-1)) + 1.0


# -- Phi2: G <-> F, glued from the sector maps --------------------------------

def _phi2_sorted(s):
    # s is sorted non-increasingly along the last axis
    out = s.copy()
    n = s.shape[-1]
    if n > 2:
        prefix = np.cumsum(s[..., 1:], axis=-1)
        j = np.arange(2, n)
        out[..., 2:] = j * s[..., 2:] - prefix[..., : n - 2]
    return out


def _phi2_inv_sorted(c):
    out = c.copy()
    n = c.shape[-1]
    if n > 2:
        i = np.arange(1, n)
        weights = np.cumsum(c[..., 1:] / (i * (i + 1)), axis=-1)
        j = np.arange(2, n)
        out[..., 2:] = weights[..., : n - 2] + c[..., 2:] / j
    return out


def _apply_sorted(x, perms, fn):
    perms = np.broadcast_to(perms, np.atleast_2d(x).shape)
    x2 = np.atleast_2d(x)
    s = np.take_along_axis(x2, perms, axis=-1)
    y = np.empty_like(x2)
    np.put_along_axis(y, perms, fn(s), axis=-1)
    return y.reshape(x.shape)


def phi2_sector(a, sigma, tol=DEFAULT_TOL):
    """The sector map on ``G_sigma``: sort by ``sigma``, correct, un-sort."""
    a = as_points(a, name="a")
    tol = check_tol(tol)
    sigma = check_permutation(sigma, a.shape[-1])
    _require(a, Region.G_SIGMA, tol, "phi2_sector", perm=sigma)
    c = _apply_sorted(a, sigma, _phi2_sorted)
    return _snap(c, 0.0, 1.0, tol, "phi2_sector")


def phi2_inv_sector(c, sigma, tol=DEFAULT_TOL):
    c = as_points(c, name="c")
    tol = check_tol(tol)
    sigma = check_permutation(sigma, c.shape[-1])
    _require(c, Region.F_SIGMA, tol, "phi2_inv_sector", perm=sigma)
    a = _apply_sorted(c, sigma, _phi2_inv_sorted)
    return _snap(a, 0.0, 1.0, tol, "phi2_inv_sector")


def phi2(a, tol=DEFAULT_TOL):
    """Bijection G -> F, using the stable descending sector of each point."""
    a = as_points(a, name="a")
    tol = check_tol(tol)
    _require(a, Region.G, tol, "phi2")
    c = _apply_sorted(a, descending_sectors(a), _phi2_sorted)
    return _snap(c, 0.0, 1.0, tol, "phi2")


def phi2_inv(c, tol=DEFAULT_TOL):
    c = as_points(c, name="c")
    tol = check_tol(tol)
    _require(c, Region.F, tol, "phi2_inv")
    a = _apply_sorted(c, descending_sectors(c), _phi2_inv_sorted)
    return _snap(a, 0.0, 1.0, tol, "phi2_inv")


# -- Psi0: orthogonal projection of H onto PI ---------------------------------

def psi0(a, tol=DEFAULT_TOL):
    a = as_points(a, name="a")
    tol = check_tol(tol)
    _require(a, Region.H, tol, "psi0")
    n = a.shape[-1]
    b = a + _col((1.0 - a.sum(axis=-1)) / n)
    return _snap(b, -(n - 2) / n, 1.0, tol, "psi0")


def psi0_f_inv(b, tol=DEFAULT_TOL):
    """Inverse of psi0 restricted to F: lifts a point of P back onto F."""
    b = as_points(b, name="b")
    tol = check_tol(tol)
    _require(b, Region.P, tol, "psi0_f_inv")
    a = b + _col(1.0 - b.max(axis=-1))
    return _snap(a, 0.0, 1.0, tol, "psi0_f_inv")


# -- homotheties --------------------------------------------------------------

def homothety(center_kind, eps, p):
    """``eps * p + (1 - eps) * center`` with center g (``"g"``) or u (``"u"``).

    ``eps`` is a positive scalar, or an array with one factor per point.
    """
    p = as_points(p)
    eps_arr = np.asarray(eps, dtype=float)
    if not np.all(np.isfinite(eps_arr)) or np.any(eps_arr <= 0):
        raise ValueError(f"homothety factor must be positive, got {eps}")
    n = p.shape[-1]
    if center_kind == "g":
        ctr = 1.0 / n
    elif center_kind == "u":
        ctr = 1.0
    else:
        raise ValueError(f"center_kind must be 'g' or 'u', got {center_kind!r}")
    e = eps_arr[..., None] if eps_arr.ndim else eps_arr
    return e * p + (1.0 - e) * ctr


# -- Psi = c_{1/(n-1)} o Psi0: F <-> PBAR -------------------------------------

def psi(a, tol=DEFAULT_TOL):
    a = as_points(a, name="a")
    tol = check_tol(tol)
    _require(a, Region.F, tol, "psi")
    n = a.shape[-1]
    b = homothety("g", 1.0 / (n - 1), psi0(a, tol))
    return _snap(b, 0.0, 1.0, tol, "psi")


def psi_inv(b, tol=DEFAULT_TOL):
    b = as_points(b, name="b")
    tol = check_tol(tol)
    _require(b, Region.PBAR, tol, "psi_inv")
    n = b.shape[-1]
    q = _snap(homothety("g", n - 1.0, b), -(n - 2) / n, 1.0, tol, "psi_inv")
    return psi0_f_inv(q, tol)


def psi_closed(a):
    a = as_points(a, name="a")
    n = a.shape[-1]
    return a / (n - 1) - _col(a.sum(axis=-1)) / (n * (n - 1)) + 1.0 / n


def psi_inv_closed(b):
    b = as_points(b, name="b")
    n = b.shape[-1]
    return (n - 1) * (b - _col(b.max(axis=-1))) + 1.0


# -- radial stretch psi: P <-> K -------------------------------------------------

def _off_center(b, tol):
    n = b.shape[-1]
    return np.abs(b - 1.0 / n).max(axis=-1) > tol


def _nonsingular(b, tol, name):
    far = np.atleast_1d(_off_center(b, tol))
    if not far.all():
        row = int(np.flatnonzero(~far)[0])
        raise DomainError(f"{name}: undefined at the center g (tol={tol:g})",
                          row=row if b.ndim == 2 else None)


def alpha_of(b, tol=DEFAULT_TOL):
    """Largest scale ``t`` with ``t * (b - g) + g`` still in P."""
    b = as_points(b, name="b")
    tol = check_tol(tol)
    _require(b, Region.P, tol, "alpha_of")
    _nonsingular(b, tol, "alpha_of")
    return 1.0 / (b.max(axis=-1) - b.min(axis=-1))


def beta_of(b, tol=DEFAULT_TOL):
    """Largest scale ``t`` with ``t * (b - g) + g`` still in K."""
    b = as_points(b, name="b")
    tol = check_tol(tol)
    _require(b, Region.P, tol, "beta_of")
    _nonsingular(b, tol, "beta_of")
    n = b.shape[-1]
    return 1.0 / (1.0 - n * b.min(axis=-1))


def _radial(b, tol, forward):
    n = b.shape[-1]
    g = 1.0 / n
    far = _off_center(b, tol)
    hi = b.max(axis=-1)
    lo = b.min(axis=-1)
    spread = np.where(far, hi - lo, 1.0)
    depth = np.where(far, 1.0 - n * lo, 1.0)
    ratio = spread / depth if forward else depth / spread
    out = _col(ratio) * (b - g) + g
    return np.where(_col(far), out, g)


def psi_small(b, tol=DEFAULT_TOL):
    """Radial map P -> K about g; fixes g, sends the boundary of P onto that of K."""
    b = as_points(b, name="b")
    tol = check_tol(tol)
    _require(b, Region.P, tol, "psi_small")
    return _snap(_radial(b, tol, True), 0.0, 1.0, tol, "psi_small")


def psi_small_inv(b2, tol=DEFAULT_TOL):
    b2 = as_points(b2, name="b2")
    tol = check_tol(tol)
    _require(b2, Region.K, tol, "psi_small_inv")
    n = b2.shape[-1]
    return _snap(_radial(b2, tol, False), -(n - 2) / n, 1.0, tol, "psi_small_inv")


# -- Psi1 = psi o Psi0: F <-> K -----------------------------------------------

def psi1(a, tol=DEFAULT_TOL):
    a = as_points(a, name="a")
    tol = check_tol(tol)
    _require(a, Region.F, tol, "psi1")
    return psi_small(psi0(a, tol), tol)


def psi1_inv(b, tol=DEFAULT_TOL):
    return psi0_f_inv(psi_small_inv(b, tol), tol)


def psi1_printed(a, tol=DEFAULT_TOL):
    """Printed reference closed form of psi1 (diagnostics only).

    The reference case split is written at ``a = g``; the singular point on F
    is ``a = u``, which is what this function special-cases.
    """
    a = as_points(a, name="a")
    n = a.shape[-1]
    lo = a.min(axis=-1)
    s = a.sum(axis=-1)
    singular = (1.0 - lo) <= tol
    num = np.where(singular, 0.0, 1.0 - lo)
    den = np.where(singular, 1.0, s - n * lo)
    out = _col(num / den) * (a - _col(s) / n) + 1.0 / n
    return np.where(_col(singular), 1.0 / n, out)


def psi1_inv_printed(b, tol=DEFAULT_TOL):
    """Printed reference closed form of the inverse of psi1 (diagnostics only).

    Kept verbatim, including the ``max(b)`` denominator in the u-term and the
    value g at the center, so that its disagreement with the composition can
    be measured.
    """
    b = as_points(b, name="b")
    n = b.shape[-1]
    hi = b.max(axis=-1)
    lo = b.min(axis=-1)
    far = _off_center(b, tol)
    spread = np.where(far, hi - lo, 1.0)
    k = (1.0 - n * lo) / spread
    shift = 1.0 - (1.0 - n * lo) / hi * (hi - 1.0 / n)
    out = _col(k) * (b - 1.0 / n) + _col(shift)
    return np.where(_col(far), out, 1.0 / n)


# -- registry -----------------------------------------------------------------

class MapId(str, enum.Enum):
    PHI = "PHI"
    PHI_INV = "PHI_INV"
    VARPHI1 = "VARPHI1"
    VARPHI1_INV = "VARPHI1_INV"
    PHI1 = "PHI1"
    PHI1_INV = "PHI1_INV"
    PHI2 = "PHI2"
    PHI2_INV = "PHI2_INV"
    PSI0 = "PSI0"
    PSI0_F_INV = "PSI0_F_INV"
    C_EPS = "C_EPS"
    CPRIME_EPS = "CPRIME_EPS"
    PSI = "PSI"
    PSI_INV = "PSI_INV"
    PSI_SMALL = "PSI_SMALL"
    PSI_SMALL_INV = "PSI_SMALL_INV"
    PSI1 = "PSI1"
    PSI1_INV = "PSI1_INV"


@dataclass(frozen=True)
class MapInfo:
    map_id: MapId
    domain: Region
    codomain: Region
    inverse: MapId
    func: Callable
    needs_eps: bool = False


def _c_eps(p, eps, tol=DEFAULT_TOL):
    return homothety("g", eps, p)


def _cprime_eps(p, eps, tol=DEFAULT_TOL):
    return homothety("u", eps, p)


REGISTRY: dict[MapId, MapInfo] = {
    info.map_id: info
    for info in [
        MapInfo(MapId.PHI, Region.K, Region.G, MapId.PHI_INV, phi),
        MapInfo(MapId.PHI_INV, Region.G, Region.K, MapId.PHI, phi_inv),
        MapInfo(MapId.VARPHI1, Region.F, Region.K, MapId.VARPHI1_INV, varphi1),
        MapInfo(MapId.VARPHI1_INV, Region.K, Region.F, MapId.VARPHI1, varphi1_inv),
        MapInfo(MapId.PHI1, Region.F, Region.G, MapId.PHI1_INV, phi1),
        MapInfo(MapId.PHI1_INV, Region.G, Region.F, MapId.PHI1, phi1_inv),
        MapInfo(MapId.PHI2, Region.G, Region.F, MapId.PHI2_INV, phi2),
        MapInfo(MapId.PHI2_INV, Region.F, Region.G, MapId.PHI2, phi2_inv),
        MapInfo(MapId.PSI0, Region.H, Region.P, MapId.PSI0_F_INV, psi0),
        MapInfo(MapId.PSI0_F_INV, Region.P, Region.F, MapId.PSI0, psi0_f_inv),
        # c_eps maps PI to PI; c'_eps maps F onto F_{>=1-eps} for eps in (0, 1]
        MapInfo(MapId.C_EPS, Region.PI, Region.PI, MapId.C_EPS, _c_eps, needs_eps=True),
        MapInfo(MapId.CPRIME_EPS, Region.F, Region.F_GE, MapId.CPRIME_EPS, _cprime_eps,
                needs_eps=True),
        MapInfo(MapId.PSI, Region.F, Region.PBAR, MapId.PSI_INV, psi),
        MapInfo(MapId.PSI_INV, Region.PBAR, Region.F, MapId.PSI, psi_inv),
        MapInfo(MapId.PSI_SMALL, Region.P, Region.K, MapId.PSI_SMALL_INV, psi_small),
        MapInfo(MapId.PSI_SMALL_INV, Region.K, Region.P, MapId.PSI_SMALL, psi_small_inv),
        MapInfo(MapId.PSI1, Region.F, Region.K, MapId.PSI1_INV, psi1),
        MapInfo(MapId.PSI1_INV, Region.K, Region.F, MapId.PSI1, psi1_inv),
    ]
}


def apply_map(map_id, p, *, eps=None, tol=DEFAULT_TOL):
    """Apply a registered map by id; the homotheties need ``eps``."""
    info = REGISTRY[MapId(map_id)]
    if info.needs_eps:
        if eps is None:
            raise ValueError(f"{info.map_id.value} needs eps")
        return info.func(p, eps, tol)
    return info.func(p, tol)


def inverse_of(map_id, eps=None):
    """``(inverse map id, inverse eps)`` for a registered map."""
    info = REGISTRY[MapId(map_id)]
    if info.needs_eps:
        if eps is None:
            raise ValueError(f"{info.map_id.value} needs eps")
        return info.inverse, 1.0 / float(eps)
    return info.inverse, None


# -- seeded domain sampling ---------------------------------------------------

def _sample_faces(n, size, rng):
    c = rng.random((size, n))
    c[np.arange(size), rng.integers(0, n, size)] = 1.0
    return c


def sample_region(region, n, size, rng, *, delta=None, max_batches=10_000):
    """Draw ``size`` points of ``region`` using the generator ``rng``.

    K: normalized exponentials.  F: one coordinate forced to 1, the others
    uniform.  G: rejection from F.  P and PBAR: images of F samples under
    psi0 and psi.  F_GE: images of F samples under the u-centered homothety
    with factor ``1 - delta``.  H: uniform.
    """
    region = Region(region)
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if region is Region.H:
        return rng.random((size, n))
    if region is Region.K:
        e = rng.exponential(size=(size, n))
        return e / e.sum(axis=1, keepdims=True)
    if region is Region.F:
        return _sample_faces(n, size, rng)
    if region is Region.G:
        kept, have = [], 0
        batch = max(1024, 4 * size)
        for _ in range(max_batches):
            c = _sample_faces(n, batch, rng)
            good = c[c.sum(axis=1) <= n * c.min(axis=1) + 1.0]
            kept.append(good)
            have += len(good)
            if have >= size:
                return np.concatenate(kept)[:size]
        raise RuntimeError(f"rejection sampling of G for n={n} did not finish")
    if region is Region.P:
        return psi0(_sample_faces(n, size, rng))
    if region is Region.PBAR:
        return psi(_sample_faces(n, size, rng))
    if region is Region.F_GE:
        if delta is None or not 0.0 <= delta < 1.0:
            raise ValueError(f"F_GE sampling needs delta in [0, 1), got {delta}")
        return homothety("u", 1.0 - delta, _sample_faces(n, size, rng))
    raise ValueError(f"no sampler for region {region.value}")
