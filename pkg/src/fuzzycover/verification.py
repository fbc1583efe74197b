"""Release-gate suites: round trips, oracle agreement, golden values, Hom-sets.

Each suite is a function ``(seed, tol) -> SuiteResult``.  ``run_all`` runs
them in order; ``fuzzycover selftest`` and the acceptance tests both go
through here.  Every suite draws from its own generator seeded by
``(seed, suite number, n)``, so results do not depend on which suites run.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import oracle
from . import transforms as T
from .category import (
    FuzzyFamily,
    enumerate_hom_set,
    functor_C_eps,
    functor_D_eps,
    functor_F,
    functor_Fn,
    functor_G,
    functor_Gn,
    product_covering,
    validate_family,
)
from .exceptions import FuzzyCoverError
from .figures import PBAR_VERTICES_N3, P_VERTICES_N3, hexagon_vertices_n3, same_vertex_set
from .geometry import (
    DEFAULT_TOL,
    Region,
    descending_sectors,
    member,
    tie_consistent_sectors,
)

ROUND_TRIP_DIMS = (2, 3, 4, 5, 7)
ROUND_TRIP_SAMPLES = 10_000
ROUND_TRIP_BOUND = 1e-9
ORACLE_DIMS = (2, 3, 4, 5, 6)
ORACLE_BOUND = 1e-12
EPS_GRID = (1.0, 0.75, 0.5, 0.25, 0.1)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name} ({self.seconds:.2f}s)"


def _rng(seed, suite, n=0):
    return np.random.default_rng([seed, suite, n])


def _sup(x, y) -> float:
    return float(np.max(np.abs(np.asarray(x) - np.asarray(y)))) if np.size(x) else 0.0


# -- 1. round trips -----------------------------------------------------------------

# (name, forward, inverse, domain, codomain) for the maps without a factor
PAIRS = (
    ("phi", T.phi, T.phi_inv, Region.K, Region.G),
    ("varphi1", T.varphi1, T.varphi1_inv, Region.F, Region.K),
    ("phi1", T.phi1, T.phi1_inv, Region.F, Region.G),
    ("phi2", T.phi2, T.phi2_inv, Region.G, Region.F),
    ("psi0|F", T.psi0, T.psi0_f_inv, Region.F, Region.P),
    ("psi", T.psi, T.psi_inv, Region.F, Region.PBAR),
    ("psi_small", T.psi_small, T.psi_small_inv, Region.P, Region.K),
    ("psi1", T.psi1, T.psi1_inv, Region.F, Region.K),
)


def _check_pair(fwd, inv, x, y, domain, codomain, tol):
    fx = fwd(x)
    iy = inv(y)
    return {
        "inv_fwd": _sup(inv(fx), x),
        "fwd_inv": _sup(fwd(iy), y),
        "codomain_ok": bool(np.all(member(fx, codomain, tol))),
        "domain_ok": bool(np.all(member(iy, domain, tol))),
    }


def round_trip_suite(seed=42, tol=DEFAULT_TOL, dims=ROUND_TRIP_DIMS, samples=ROUND_TRIP_SAMPLES):
    rows, ok = [], True
    for n in dims:
        rng = _rng(seed, 1, n)
        for name, fwd, inv, dom, cod in PAIRS:
            x = T.sample_region(dom, n, samples, rng)
            y = T.sample_region(cod, n, samples, rng)
            try:
                r = _check_pair(lambda p: fwd(p, tol), lambda p: inv(p, tol), x, y, dom, cod, tol)
            except FuzzyCoverError as exc:
                r = {"error": str(exc)}
            rows.append({"pair": name, "n": n, **r})
        # homotheties, split across a grid of factors
        per = samples // len(EPS_GRID)
        for eps in EPS_GRID:
            x = T.sample_region(Region.K, n, per, rng)
            fx = T.homothety("g", eps, x)
            y = T.sample_region(Region.K, n, per, rng)
            iy = T.homothety("g", 1.0 / eps, y)
            rows.append({
                "pair": f"c_eps({eps:g})", "n": n,
                "inv_fwd": _sup(T.homothety("g", 1.0 / eps, fx), x),
                "fwd_inv": _sup(T.homothety("g", eps, iy), y),
                "codomain_ok": bool(np.all(member(fx, Region.K, tol))),
                "domain_ok": bool(np.all(member(iy, Region.PI, tol))),
            })
            x = T.sample_region(Region.F, n, per, rng)
            fx = T.homothety("u", eps, x)
            y = T.sample_region(Region.F_GE, n, per, rng, delta=1.0 - eps)
            iy = T.homothety("u", 1.0 / eps, y)
            rows.append({
                "pair": f"c'_eps({eps:g})", "n": n,
                "inv_fwd": _sup(T.homothety("u", 1.0 / eps, fx), x),
                "fwd_inv": _sup(T.homothety("u", eps, iy), y),
                "codomain_ok": bool(np.all(member(fx, Region.F_GE, tol, delta=1.0 - eps))),
                "domain_ok": bool(np.all(member(iy, Region.F, tol))),
            })
    for r in rows:
        good = ("error" not in r and r["inv_fwd"] <= ROUND_TRIP_BOUND
                and r["fwd_inv"] <= ROUND_TRIP_BOUND and r["codomain_ok"] and r["domain_ok"])
        r["ok"] = good
        ok &= good
    worst = max((r.get("inv_fwd", math.inf) for r in rows), default=0.0)
    worst = max(worst, max((r.get("fwd_inv", math.inf) for r in rows), default=0.0))
    return {"passed": ok, "max_error": worst, "failures": [r for r in rows if not r["ok"]],
            "cases": len(rows)}


# -- 2. oracles ------------------------------------------------------------------------

def oracle_suite(seed=42, tol=DEFAULT_TOL, dims=ORACLE_DIMS, samples=10_000):
    errs = {"phi": 0.0, "psi0": 0.0, "phi2_inv": 0.0}
    for n in dims:
        rng = _rng(seed, 2, n)
        b = T.sample_region(Region.K, n, samples, rng)
        errs["phi"] = max(errs["phi"], _sup(T.phi(b, tol), oracle.line_face_intersection(b, tol)))
        h = T.sample_region(Region.H, n, samples, rng)
        errs["psi0"] = max(errs["psi0"], _sup(T.psi0(h, tol), oracle.project_point_to_plane(h)))
        c = T.sample_region(Region.F, n, samples, rng)
        errs["phi2_inv"] = max(errs["phi2_inv"], _sup(
            T.phi2_inv(c, tol), oracle.solve_triangular_system(c, descending_sectors(c))))
    dets = {}
    for n in range(2, 9):
        d = oracle.sis_determinant(n)
        dets[n] = (d, abs(d - math.factorial(n - 1)) / math.factorial(n - 1))
    ok = all(v <= ORACLE_BOUND for v in errs.values()) and all(r <= 1e-10 for _, r in dets.values())
    return {"passed": ok, "max_error": errs,
            "determinant_rel_error": {n: r for n, (_, r) in dets.items()}}


# -- 3. product counterexample -------------------------------------------------------

def counterexample_suite(seed=42, tol=DEFAULT_TOL):
    a = FuzzyFamily(["x"], [[0.5, 1.0, 1.0]], "good_covering")
    b = FuzzyFamily(["y"], [[0.5, 1.0, 1.0]], "good_covering")
    factors_good = validate_family(a, tol).good_covering and validate_family(b, tol).good_covering
    prod = product_covering(a, b, tol)
    row = prod.membership[0]
    total = float(row.sum())
    bound = float(prod.n * row.min() + 1.0)
    report = validate_family(prod, tol)
    ok = factors_good and total == 6.5 and bound == 5.5 and report.covering and not report.good_covering
    return {"passed": ok, "row_sum": total, "bound": bound, "report": report.to_dict()}


# -- 4. golden values for n = 3 -------------------------------------------------------

def phi1_n3(c):
    c = np.asarray(c, float)
    s = c.sum(axis=-1, keepdims=True)
    return (c + s - 1.0) / s


def phi1_inv_n3(a):
    a = np.asarray(a, float)
    s = a.sum(axis=-1, keepdims=True)
    return (3.0 * a - s + 1.0) / (4.0 - s)


def _mid_low(x):
    order = np.argsort(-x, axis=-1, kind="stable")
    return order[:, 1], order[:, 2]


def phi2_n3(a):
    """Sector formula for n = 3: the smallest coordinate becomes 2 * low - mid."""
    a = np.array(a, float)
    mid, low = _mid_low(a)
    r = np.arange(len(a))
    out = a.copy()
    out[r, low] = 2.0 * a[r, low] - a[r, mid]
    return out


def phi2_inv_n3(c):
    c = np.array(c, float)
    mid, low = _mid_low(c)
    r = np.arange(len(c))
    out = c.copy()
    out[r, low] = 0.5 * c[r, mid] + 0.5 * c[r, low]
    return out


def golden_suite(seed=42, tol=DEFAULT_TOL, samples=1000):
    checks = {}
    checks["psi(1,0,0)"] = _sup(T.psi([1.0, 0.0, 0.0], tol), [2 / 3, 1 / 6, 1 / 6])
    checks["psi(1,1,0)"] = _sup(T.psi([1.0, 1.0, 0.0], tol), [1 / 2, 1 / 2, 0.0])
    checks["psi0(1,1,0)"] = _sup(T.psi0([1.0, 1.0, 0.0], tol), [2 / 3, 2 / 3, -1 / 3])
    p_verts, pbar_verts = hexagon_vertices_n3()
    hex_ok = same_vertex_set(p_verts, P_VERTICES_N3) and same_vertex_set(pbar_verts, PBAR_VERTICES_N3)
    rng = _rng(seed, 4, 3)
    c = T.sample_region(Region.F, 3, samples, rng)
    a = T.sample_region(Region.G, 3, samples, rng)
    closed = {
        "phi1": _sup(T.phi1(c, tol), phi1_n3(c)),
        "phi1_inv": _sup(T.phi1_inv(a, tol), phi1_inv_n3(a)),
        "phi2": _sup(T.phi2(a, tol), phi2_n3(a)),
        "phi2_inv": _sup(T.phi2_inv(c, tol), phi2_inv_n3(c)),
    }
    ok = all(v <= 1e-12 for v in checks.values()) and hex_ok and all(v <= 1e-12 for v in closed.values())
    return {"passed": ok, "vectors": checks, "hexagons_match": hex_ok, "closed_forms_n3": closed}


# -- 5. commutative square ---------------------------------------------------------

def diagram_suite(seed=42, tol=DEFAULT_TOL, dims=(3, 4, 5), samples=10_000):
    worst = {}
    for n in dims:
        a = T.sample_region(Region.F, n, samples, _rng(seed, 5, n))
        e = 1.0 / (n - 1)
        left = T.homothety("g", e, T.psi0(a, tol))
        right = T.psi0(T.homothety("u", e, a), tol)
        worst[n] = _sup(left, right)
    return {"passed": all(v <= 1e-12 for v in worst.values()), "max_error": worst}


# -- 6. sectors and ties ------------------------------------------------------------

# G is thin for larger n, so it gets finer lattices than F
TIE_GRIDS = {Region.G: ((3, 12), (4, 8), (5, 6)), Region.F: ((3, 8), (4, 6), (5, 4))}


def _tie_pattern(x, tol):
    n = len(x)
    return {(i, j) for i in range(n) for j in range(i + 1, n) if abs(x[i] - x[j]) <= tol}


def _tied_points(region, tol):
    pts = []
    for n, res in TIE_GRIDS[region]:
        for p in oracle.grid_probe(region, res, n, tol=tol):
            if len(set(p.tolist())) < n:
                pts.append(p)
    return pts


def tie_suite(seed=42, tol=DEFAULT_TOL, bound=1e-12):
    g_pts = _tied_points(Region.G, tol)
    spread = 0.0
    pattern_fail = []
    for a in g_pts:
        images = [T.phi2_sector(a, s, tol) for s in tie_consistent_sectors(a)]
        spread = max(spread, max(_sup(im, images[0]) for im in images))
        c = T.phi2(a, tol)
        if _tie_pattern(a, bound) != _tie_pattern(c, bound):
            pattern_fail.append(("forward", a.tolist()))
    f_pts = _tied_points(Region.F, tol)
    inv_spread = 0.0
    for c in f_pts:
        images = [T.phi2_inv_sector(c, s, tol) for s in tie_consistent_sectors(c)]
        inv_spread = max(inv_spread, max(_sup(im, images[0]) for im in images))
        a = T.phi2_inv(c, tol)
        if _tie_pattern(a, bound) != _tie_pattern(c, bound):
            pattern_fail.append(("inverse", c.tolist()))
    ok = (len(g_pts) >= 500 and len(f_pts) >= 500 and spread <= bound and inv_spread <= bound
          and not pattern_fail)
    return {"passed": ok, "tied_G_points": len(g_pts), "tied_F_points": len(f_pts),
            "sector_spread": spread, "inverse_sector_spread": inv_spread,
            "pattern_failures": pattern_fail[:10]}


# -- 7. Hom-set equality -----------------------------------------------------------

QUARTERS = (0.0, 0.25, 0.5, 0.75, 1.0)


def grid_rows(n, kind):
    rows = [r for r in itertools.product(QUARTERS, repeat=n)]
    if kind == "partition":
        return [r for r in rows if sum(r) == 1.0]
    return [r for r in rows if max(r) == 1.0]


def _random_family(rng, kind, size, n, tag):
    pool = grid_rows(n, kind)
    picks = rng.integers(0, len(pool), size)
    return FuzzyFamily([f"{tag}{i}" for i in range(size)], [pool[k] for k in picks], kind)


def hom_equality_suite(seed=42, tol=DEFAULT_TOL, instances=100):
    rng = _rng(seed, 7)
    stats = {"F": [0, 0], "C_eps": [0, 0], "F[n]": [0, 0]}
    mismatches = []

    def shape():
        return int(rng.integers(1, 3)), int(rng.integers(1, 3)), int(rng.integers(2, 4)), int(rng.integers(2, 4))

    for k in range(instances):
        nx, ny, n, m = shape()
        src = _random_family(rng, "partition", nx, n, "x")
        dst = _random_family(rng, "partition", ny, m, "y")
        lhs = enumerate_hom_set(src, dst, "partition", tol=tol)
        rhs = enumerate_hom_set(functor_F(src, tol), functor_F(dst, tol), "covering", tol=tol)
        stats["F"][0] += len(lhs)
        stats["F"][1] += len(lhs) == len(dst) ** len(src) * m ** n
        if lhs != rhs:
            mismatches.append(("F", k))

        nx, ny, n, m = shape()
        src = _random_family(rng, "covering", nx, n, "x")
        dst = _random_family(rng, "covering", ny, m, "y")
        lhs = enumerate_hom_set(src, dst, "covering", tol=tol)
        rhs = enumerate_hom_set(functor_C_eps(0.5, src, tol), functor_C_eps(0.5, dst, tol),
                                "covering", tol=tol)
        stats["C_eps"][0] += len(lhs)
        stats["C_eps"][1] += len(lhs) == len(dst) ** len(src) * m ** n
        if lhs != rhs:
            mismatches.append(("C_eps", k))

        # both objects of Covering[n] carry the same number of sets
        nx, ny, n, _ = shape()
        src = _random_family(rng, "covering", nx, n, "x")
        dst = _random_family(rng, "covering", ny, n, "y")
        lhs = enumerate_hom_set(src, dst, "covering", tol=tol)
        rhs = enumerate_hom_set(functor_Fn(src, tol), functor_Fn(dst, tol), "partition", tol=tol)
        stats["F[n]"][0] += len(lhs)
        stats["F[n]"][1] += len(lhs) == len(dst) ** len(src) * n ** n
        if lhs != rhs:
            mismatches.append(("F[n]", k))
    return {"passed": not mismatches, "instances": instances, "mismatches": mismatches,
            "morphisms_found": {k: v[0] for k, v in stats.items()},
            "instances_with_full_hom": {k: v[1] for k, v in stats.items()}}


# -- 8. functor round trips on families -------------------------------------------------

def functor_round_trip_suite(seed=42, tol=DEFAULT_TOL, families=1000, dims=(2, 3, 5)):
    worst = {"G.F": 0.0, "D.C": 0.0, "Gn.Fn": 0.0}
    for n in dims:
        rng = _rng(seed, 8, n)
        for k in range(families):
            size = int(rng.integers(1, 9))
            ids = [f"e{i}" for i in range(size)]
            p = FuzzyFamily(ids, T.sample_region(Region.K, n, size, rng), "partition")
            worst["G.F"] = max(worst["G.F"], _sup(functor_G(functor_F(p, tol), tol).membership, p.membership))
            c = FuzzyFamily(ids, T.sample_region(Region.F, n, size, rng), "covering")
            eps = float(rng.uniform(0.05, 1.0))
            back = functor_D_eps(eps, functor_C_eps(eps, c, tol), tol)
            worst["D.C"] = max(worst["D.C"], _sup(back.membership, c.membership))
            back = functor_Gn(functor_Fn(c, tol), tol)
            worst["Gn.Fn"] = max(worst["Gn.Fn"], _sup(back.membership, c.membership))
    return {"passed": all(v <= ROUND_TRIP_BOUND for v in worst.values()), "max_error": worst}


# -- 9. n = 2 ----------------------------------------------------------------------------

def n2_suite(seed=42, tol=DEFAULT_TOL, samples=1000):
    rng = _rng(seed, 9, 2)
    p = T.sample_region(Region.P, 2, samples, rng)
    c = T.sample_region(Region.F, 2, samples, rng)
    b = T.sample_region(Region.K, 2, samples, rng)
    mx = b.max(axis=1, keepdims=True)
    phi_closed = b + 1.0 - mx
    a = T.sample_region(Region.G, 2, samples, rng)
    phi_inv_closed = 0.5 * np.stack([a[:, 0] - a[:, 1] + 1.0, a[:, 1] - a[:, 0] + 1.0], axis=1)
    errs = {
        "psi_small_is_identity": _sup(T.psi_small(p, tol), p),
        "phi2_is_identity": _sup(T.phi2(c, tol), c),
        "phi_closed_form": _sup(T.phi(b, tol), phi_closed),
        "phi_inv_closed_form": _sup(T.phi_inv(a, tol), phi_inv_closed),
    }
    return {"passed": all(v <= 1e-12 for v in errs.values()), "max_error": errs}


# -- 10. printed closed form of the inverse of psi1 ---------------------------------------

def psi1_diagnostic_suite(seed=42, tol=DEFAULT_TOL, samples=1000, dims=ROUND_TRIP_DIMS):
    dev_inv, dev_fwd, rt = {}, {}, {}
    for n in dims:
        rng = _rng(seed, 10, n)
        b = T.sample_region(Region.K, n, samples, rng)
        a = T.sample_region(Region.F, n, samples, rng)
        inv = T.psi1_inv(b, tol)
        rt[n] = _sup(T.psi1(inv, tol), b)
        dev_inv[n] = _sup(T.psi1_inv_printed(b, tol), inv)
        dev_fwd[n] = _sup(T.psi1_printed(a, tol), T.psi1(a, tol))
    return {"passed": all(v <= ROUND_TRIP_BOUND for v in rt.values()),
            "round_trip_error": rt,
            "printed_inverse_max_deviation": dev_inv,
            "printed_forward_max_deviation": dev_fwd}


SUITES = (
    ("round trips", round_trip_suite),
    ("oracle agreement", oracle_suite),
    ("product counterexample", counterexample_suite),
    ("golden vectors n=3", golden_suite),
    ("commutative square", diagram_suite),
    ("sectors and ties", tie_suite),
    ("Hom-set equality", hom_equality_suite),
    ("functor round trips", functor_round_trip_suite),
    ("n=2 specializations", n2_suite),
    ("psi1 inverse closed form", psi1_diagnostic_suite),
)


def run_suite(name, fn, seed=42, tol=DEFAULT_TOL) -> SuiteResult:
    start = time.perf_counter()
    try:
        details = fn(seed=seed, tol=tol)
        passed = bool(details.pop("passed"))
    except FuzzyCoverError as exc:
        details, passed = {"error": f"{type(exc).__name__}: {exc}"}, False
    return SuiteResult(name, passed, details, time.perf_counter() - start)


def run_all(seed=42, tol=DEFAULT_TOL) -> list[SuiteResult]:
    return [run_suite(name, fn, seed, tol) for name, fn in SUITES]
