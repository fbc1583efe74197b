"""Fuzzy coverings and partitions with finitely many sets, and the maps between them.

A family is a finite universe together with an ``|X| x n`` membership matrix,
row ``x`` holding ``(A_0(x), ..., A_{n-1}(x))``.  Coverings are families whose
rows lie in F, partitions are families whose rows lie in K, so every object
map here is a row-wise application of a map from :mod:`fuzzycover.transforms`.

Morphisms ``(f, rho)`` are plain function tables; all functors act as the
identity on them.  Two morphism predicates exist:

* covering: ``A_i(x) <= A'_{rho(i)}(f(x))``
* partition: ``B_i(x) - max_j B_j(x) <= B'_{rho(i)}(f(x)) - max_k B'_k(f(x))``

Index sets are always ``{0, ..., n-1}``.  Only finite index sets are
supported, so local finiteness of partitions holds trivially.
"""
from __future__ import annotations

import itertools
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from . import transforms as T
from .exceptions import BudgetExceeded, DomainError, KindError
from .geometry import DEFAULT_TOL, Region, check_tol, member
from .transforms import MapId

KINDS = ("covering", "partition", "good_covering", "raw")


@dataclass(frozen=True, eq=False)
class FuzzyFamily:
    """A universe of element ids, an ``|X| x n`` membership matrix and a claimed kind.

    The claimed kind is only a tag; :func:`validate_family` says what the
    matrix actually satisfies.
    """

    universe: tuple[str, ...]
    membership: np.ndarray
    kind: str = "raw"

    def __post_init__(self):
        universe = tuple(str(x) for x in self.universe)
        if not universe:
            raise ValueError("universe must be non-empty")
        if len(set(universe)) != len(universe):
            dupes = sorted({x for x in universe if universe.count(x) > 1})
            raise ValueError(f"duplicate universe identifiers: {dupes}")
        m = np.array(self.membership, dtype=float)
        if m.ndim != 2 or m.shape[0] != len(universe):
            raise ValueError(
                f"membership must have shape ({len(universe)}, n), got {m.shape}")
        if m.shape[1] < 2:
            raise ValueError(f"families need n >= 2 sets, got n={m.shape[1]}")
        if not np.all(np.isfinite(m)):
            raise ValueError("membership has non-finite entries")
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        m.setflags(write=False)
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "membership", m)

    @property
    def n(self) -> int:
        return self.membership.shape[1]

    def __len__(self):
        return len(self.universe)

    def row(self, element: str) -> np.ndarray:
        return self.membership[self.universe.index(element)]

    def with_membership(self, membership, kind=None) -> "FuzzyFamily":
        return FuzzyFamily(self.universe, membership, self.kind if kind is None else kind)

    def allclose(self, other: "FuzzyFamily", tol=DEFAULT_TOL) -> bool:
        return (self.universe == other.universe
                and self.membership.shape == other.membership.shape
                and bool(np.all(np.abs(self.membership - other.membership) <= tol)))

    def __repr__(self):
        return f"FuzzyFamily(kind={self.kind!r}, |X|={len(self)}, n={self.n})"


@dataclass(frozen=True)
class Morphism:
    """A pair of function tables ``f: X -> Y`` and ``rho: [n] -> [m]``."""

    f: tuple[tuple[str, str], ...]
    rho: tuple[int, ...]

    def __init__(self, f: Mapping[str, str] | Sequence[tuple[str, str]], rho: Sequence[int]):
        pairs = dict(f.items() if isinstance(f, Mapping) else f)
        object.__setattr__(self, "f", tuple(sorted((str(k), str(v)) for k, v in pairs.items())))
        object.__setattr__(self, "rho", tuple(int(j) for j in rho))

    @property
    def table(self) -> dict[str, str]:
        return dict(self.f)

    def check_total(self, src: FuzzyFamily, dst: FuzzyFamily):
        table = self.table
        missing = [x for x in src.universe if x not in table]
        if missing or len(table) != len(src):
            raise ValueError(f"f is not a total function on the source universe (missing {missing})")
        stray = sorted(set(table.values()) - set(dst.universe))
        if stray:
            raise ValueError(f"f maps into elements outside the target universe: {stray}")
        if len(self.rho) != src.n:
            raise ValueError(f"rho has {len(self.rho)} entries, source has n={src.n}")
        if any(not 0 <= j < dst.n for j in self.rho):
            raise ValueError(f"rho maps outside the target index set 0..{dst.n - 1}")


# -- validation ----------------------------------------------------------------

@dataclass
class ValidationReport:
    covering: bool
    partition: bool
    good_covering: bool
    pbar_valued: bool
    first_violation: dict | None = field(default=None)

    def satisfies(self, kind: str) -> bool:
        if kind == "raw":
            return True
        return bool(getattr(self, kind))

    def to_dict(self) -> dict:
        return {
            "covering": self.covering,
            "partition": self.partition,
            "good_covering": self.good_covering,
            "pbar_valued": self.pbar_valued,
            "first_violation": self.first_violation,
        }


_KIND_REGION = {"covering": Region.F, "partition": Region.K, "good_covering": Region.G}

_REASONS = {
    "covering": "no set attains membership 1",
    "partition": "memberships do not sum to 1",
    "good_covering": "sum exceeds n * min + 1, or no membership equals 1",
}


def validate_family(fam: FuzzyFamily, tol=DEFAULT_TOL) -> ValidationReport:
    """Which kinds the family satisfies, and where its claimed kind first fails."""
    tol = check_tol(tol)
    m = fam.membership
    out_of_range = np.any((m < -tol) | (m > 1.0 + tol), axis=1)
    if out_of_range.any():
        r = int(np.flatnonzero(out_of_range)[0])
        raise DomainError(
            f"element {fam.universe[r]!r} has memberships outside [0, 1]: {m[r].tolist()}",
            element=fam.universe[r], row=r)
    rows = {kind: member(m, region, tol) for kind, region in _KIND_REGION.items()}
    pbar = rows["partition"] & member(m, Region.PBAR, tol)

    violation = None
    if fam.kind != "raw" and not rows[fam.kind].all():
        r = int(np.flatnonzero(~rows[fam.kind])[0])
        violation = {
            "kind": fam.kind,
            "element": fam.universe[r],
            "row": r,
            "values": m[r].tolist(),
            "reason": _REASONS[fam.kind],
        }
    return ValidationReport(
        covering=bool(rows["covering"].all()),
        partition=bool(rows["partition"].all()),
        good_covering=bool(rows["good_covering"].all()),
        pbar_valued=bool(pbar.all()),
        first_violation=violation,
    )


def require_kind(fam: FuzzyFamily, kind: str, tol=DEFAULT_TOL, *, what="family"):
    report = validate_family(fam, tol)
    if report.satisfies(kind):
        return report
    bad = member(fam.membership, _KIND_REGION[kind], tol)
    r = int(np.flatnonzero(~bad)[0])
    raise KindError(
        f"{what} is not a {kind.replace('_', ' ')}: element {fam.universe[r]!r} "
        f"has row {fam.membership[r].tolist()}")


# -- morphisms -----------------------------------------------------------------

def identity(fam: FuzzyFamily) -> Morphism:
    return Morphism({x: x for x in fam.universe}, range(fam.n))


def compose(first: Morphism, second: Morphism) -> Morphism:
    """``second`` after ``first``: ``(g o f, theta o rho)``."""
    f, g = first.table, second.table
    missing = sorted(set(f.values()) - set(g))
    if missing:
        raise ValueError(f"cannot compose: second morphism is undefined on {missing}")
    if any(not 0 <= j < len(second.rho) for j in first.rho):
        raise ValueError("cannot compose: index tables do not match")
    return Morphism({x: g[y] for x, y in f.items()}, [second.rho[j] for j in first.rho])


def _shifted(m):
    return m - m.max(axis=1, keepdims=True)


def _holds(lhs, rhs_rows, rho, slack):
    return bool(np.all(lhs <= rhs_rows[:, rho] + slack))


def _target_rows(src, dst, m):
    table = m.table
    idx = [dst.universe.index(table[x]) for x in src.universe]
    return idx


def check_covering_morphism(src, dst, m: Morphism, tol=DEFAULT_TOL, *, strict=False) -> bool:
    """``A_i(x) <= A'_{rho(i)}(f(x))`` for all x and i, up to ``tol`` unless ``strict``."""
    m.check_total(src, dst)
    slack = 0.0 if strict else check_tol(tol)
    rows = dst.membership[_target_rows(src, dst, m)]
    return _holds(src.membership, rows, list(m.rho), slack)


def check_partition_morphism(src, dst, m: Morphism, tol=DEFAULT_TOL, *, strict=False) -> bool:
    """The max-shifted inequality defining morphisms of partitions."""
    m.check_total(src, dst)
    slack = 0.0 if strict else check_tol(tol)
    rows = _shifted(dst.membership)[_target_rows(src, dst, m)]
    return _holds(_shifted(src.membership), rows, list(m.rho), slack)


def check_covering_morphism_shifted(src, dst, m: Morphism, tol=DEFAULT_TOL, *, strict=False) -> bool:
    """Covering morphism test written in the max-shifted form.

    For coverings every row maximum is 1, so this agrees with
    :func:`check_covering_morphism`; both are kept so that the claim can be checked.
    """
    return check_partition_morphism(src, dst, m, tol, strict=strict)


_PREDICATE_INPUTS = {
    "covering": lambda fam: fam.membership,
    "partition": lambda fam: _shifted(fam.membership),
}


def enumerate_hom_set(src: FuzzyFamily, dst: FuzzyFamily, category: str, *,
                      tol=DEFAULT_TOL, budget: int = 10**6, strict=False) -> list[Morphism]:
    """Every morphism ``src -> dst`` in the given category, by exhaustive search.

    All ``|Y|^|X| * m^n`` pairs of tables are tried, ``f`` varying slowest;
    the result is in lexicographic order of (f table, rho table) with the
    universes in their stored order, so two Hom-sets compare as lists.
    """
    if category not in _PREDICATE_INPUTS:
        raise ValueError(f"category must be 'covering' or 'partition', got {category!r}")
    need = "covering" if category == "covering" else "partition"
    require_kind(src, need, tol, what="source")
    require_kind(dst, need, tol, what="target")
    total = len(dst) ** len(src) * dst.n ** src.n
    if total > budget:
        raise BudgetExceeded(f"Hom-set search needs {total} candidates, budget is {budget}")
    slack = 0.0 if strict else check_tol(tol)
    lhs = _PREDICATE_INPUTS[category](src)
    rhs = _PREDICATE_INPUTS[category](dst)
    rhos = [list(r) for r in itertools.product(range(dst.n), repeat=src.n)]
    found = []
    for f_idx in itertools.product(range(len(dst)), repeat=len(src)):
        rows = rhs[list(f_idx)]
        f = {x: dst.universe[j] for x, j in zip(src.universe, f_idx)}
        for rho in rhos:
            if _holds(lhs, rows, rho, slack):
                found.append(Morphism(f, rho))
    return found


def hom_set_key(src: FuzzyFamily, dst: FuzzyFamily, m: Morphism):
    """Sort key matching the canonical order of :func:`enumerate_hom_set`."""
    table = m.table
    return tuple(dst.universe.index(table[x]) for x in src.universe), m.rho


# -- pointwise lifts -------------------------------------------------------------

_CODOMAIN_KIND = {
    Region.F: "covering",
    Region.F_GE: "covering",
    Region.G: "good_covering",
    Region.K: "partition",
    Region.PBAR: "partition",
    Region.PI: "partition",
    Region.P: "partition",
}


def lift_pointwise(map_id, fam: FuzzyFamily, *, eps=None, tol=DEFAULT_TOL) -> FuzzyFamily:
    """Apply a registered pointwise map to every row of ``fam``.

    Rows outside the map's domain, and images that are not fuzzy memberships
    (coordinates outside ``[0, 1]``), raise :class:`DomainError` naming the
    element.
    """
    info = T.REGISTRY[MapId(map_id)]
    tol = check_tol(tol)
    try:
        out = T.apply_map(info.map_id, fam.membership, eps=eps, tol=tol)
    except DomainError as exc:
        el = fam.universe[exc.row] if exc.row is not None else None
        raise DomainError(f"element {el!r}: {exc}", element=el, row=exc.row) from exc
    bad = ~member(out, Region.H, tol)
    if bad.any():
        r = int(np.flatnonzero(bad)[0])
        raise DomainError(
            f"element {fam.universe[r]!r}: {info.map_id.value} sends row "
            f"{fam.membership[r].tolist()} outside [0, 1]^n",
            element=fam.universe[r], row=r)
    return fam.with_membership(np.clip(out, 0.0, 1.0), kind=_CODOMAIN_KIND[info.codomain])


def _lift_chain(steps, fam, tol, eps=None):
    for step in steps:
        fam = lift_pointwise(step, fam, eps=eps, tol=tol)
    return fam


# -- functors --------------------------------------------------------------------

def functor_F(fam: FuzzyFamily, tol=DEFAULT_TOL) -> FuzzyFamily:
    """Partition -> good covering, ``A_i = B_i + 1 - max B``."""
    require_kind(fam, "partition", tol)
    return lift_pointwise(MapId.PHI, fam, tol=tol)


def functor_G(fam: FuzzyFamily, tol=DEFAULT_TOL) -> FuzzyFamily:
    """Good covering -> partition, ``B_i = A_i - sum(A) / n + 1 / n``."""
    require_kind(fam, "good_covering", tol)
    return lift_pointwise(MapId.PHI_INV, fam, tol=tol)


def _check_eps(eps):
    eps = float(eps)
    if not 0.0 < eps <= 1.0:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    return eps


def functor_C_eps(eps, fam: FuzzyFamily, tol=DEFAULT_TOL) -> FuzzyFamily:
    """Covering -> covering with all memberships >= 1 - eps, ``B = eps A + 1 - eps``."""
    eps = _check_eps(eps)
    require_kind(fam, "covering", tol)
    return lift_pointwise(MapId.CPRIME_EPS, fam, eps=eps, tol=tol)


def functor_D_eps(eps, fam: FuzzyFamily, tol=DEFAULT_TOL) -> FuzzyFamily:
    """Inverse of :func:`functor_C_eps` on coverings with memberships >= 1 - eps."""
    eps = _check_eps(eps)
    require_kind(fam, "covering", tol)
    low = fam.membership < 1.0 - eps - tol
    if low.any():
        r = int(np.flatnonzero(low.any(axis=1))[0])
        raise KindError(
            f"element {fam.universe[r]!r} has a membership below 1 - eps = {1.0 - eps:g}")
    return lift_pointwise(MapId.CPRIME_EPS, fam, eps=1.0 / eps, tol=tol)


def functor_Fn(fam: FuzzyFamily, tol=DEFAULT_TOL) -> FuzzyFamily:
    """Covering with n sets -> partition valued in PBAR."""
    require_kind(fam, "covering", tol)
    return lift_pointwise(MapId.PSI, fam, tol=tol)


def functor_Gn(fam: FuzzyFamily, tol=DEFAULT_TOL) -> FuzzyFamily:
    """PBAR-valued partition -> covering, ``A_i = (n - 1)(B_i - max B) + 1``."""
    report = require_kind(fam, "partition", tol)
    if not report.pbar_valued:
        bad = ~member(fam.membership, Region.PBAR, tol)
        r = int(np.flatnonzero(bad)[0])
        raise KindError(f"element {fam.universe[r]!r} has a row outside PBAR: "
                        f"{fam.membership[r].tolist()}")
    return lift_pointwise(MapId.PSI_INV, fam, tol=tol)


# -- named object maps --------------------------------------------------------

@dataclass(frozen=True)
class Conversion:
    name: str
    inverse: str
    description: str
    needs_eps: bool = False


CONVERSIONS: dict[str, Conversion] = {
    c.name: c
    for c in [
        Conversion("F", "G", "partition -> good covering (functor)"),
        Conversion("G", "F", "good covering -> partition (functor)"),
        Conversion("C_EPS", "D_EPS", "covering -> covering >= 1-eps (functor)", needs_eps=True),
        Conversion("D_EPS", "C_EPS", "covering >= 1-eps -> covering (functor)", needs_eps=True),
        Conversion("FN", "GN", "covering -> PBAR-valued partition (functor)"),
        Conversion("GN", "FN", "PBAR-valued partition -> covering (functor)"),
        Conversion("F1", "G1", "covering -> partition, normalize by the sum"),
        Conversion("G1", "F1", "partition -> covering, normalize by the max"),
        Conversion("FBAR", "GBAR", "covering -> good covering"),
        Conversion("GBAR", "FBAR", "good covering -> covering"),
        Conversion("FBAR2", "GBAR2", "good covering -> covering, sector map"),
        Conversion("GBAR2", "FBAR2", "covering -> good covering, sector map"),
        Conversion("F2", "G2", "covering -> partition via the sector map"),
        Conversion("G2", "F2", "partition -> covering via the sector map"),
        Conversion("F3", "G3", "covering -> partition via the radial map"),
        Conversion("G3", "F3", "partition -> covering via the radial map"),
    ]
}

_CHAINS = {
    "F1": (MapId.VARPHI1,),
    "G1": (MapId.VARPHI1_INV,),
    "FBAR": (MapId.PHI1,),
    "GBAR": (MapId.PHI1_INV,),
    "FBAR2": (MapId.PHI2,),
    "GBAR2": (MapId.PHI2_INV,),
    "F2": (MapId.PHI2_INV, MapId.PHI_INV),
    "G2": (MapId.PHI, MapId.PHI2),
    "F3": (MapId.PSI1,),
    "G3": (MapId.PSI1_INV,),
}


def convert(name: str, fam: FuzzyFamily, *, eps=None, tol=DEFAULT_TOL) -> FuzzyFamily:
    """Apply a named functor, object bijection, or registered map id to ``fam``."""
    key = name.upper()
    if key == "F":
        return functor_F(fam, tol)
    if key == "G":
        return functor_G(fam, tol)
    if key == "FN":
        return functor_Fn(fam, tol)
    if key == "GN":
        return functor_Gn(fam, tol)
    if key in ("C_EPS", "D_EPS"):
        if eps is None:
            raise ValueError(f"{key} needs eps")
        return (functor_C_eps if key == "C_EPS" else functor_D_eps)(eps, fam, tol)
    if key in _CHAINS:
        return _lift_chain(_CHAINS[key], fam, tol)
    if key in MapId.__members__:
        return lift_pointwise(MapId[key], fam, eps=eps, tol=tol)
    raise ValueError(f"unknown map or functor {name!r}")


def inverse_name(name: str, eps=None):
    """``(inverse name, inverse eps)`` of a conversion accepted by :func:`convert`."""
    key = name.upper()
    if key in CONVERSIONS:
        return CONVERSIONS[key].inverse, eps
    if key in MapId.__members__:
        inv, inv_eps = T.inverse_of(MapId[key], eps)
        return inv.value, inv_eps
    raise ValueError(f"unknown map or functor {name!r}")


# -- products -------------------------------------------------------------------

def product_covering(f1: FuzzyFamily, f2: FuzzyFamily, tol=DEFAULT_TOL) -> FuzzyFamily:
    """Direct product: element ``(x, y)``, set ``(i, j)`` gets ``min(A_i(x), A'_j(y))``.

    Element ids are ``"x|y"``; set ``(i, j)`` sits at column ``i * m + j``.
    """
    require_kind(f1, "covering", tol, what="first factor")
    require_kind(f2, "covering", tol, what="second factor")
    a, b = f1.membership, f2.membership
    prod = np.minimum(a[:, None, :, None], b[None, :, None, :])
    universe = [f"{x}|{y}" for x in f1.universe for y in f2.universe]
    return FuzzyFamily(universe, prod.reshape(len(universe), f1.n * f2.n), "covering")
