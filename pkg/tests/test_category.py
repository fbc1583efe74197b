import itertools

import numpy as np
import pytest

from fuzzycover import (
    FuzzyFamily,
    Morphism,
    compose,
    convert,
    enumerate_hom_set,
    functor_C_eps,
    functor_D_eps,
    functor_F,
    functor_Fn,
    functor_G,
    functor_Gn,
    identity,
    lift_pointwise,
    product_covering,
    validate_family,
)
from fuzzycover.category import (
    check_covering_morphism,
    check_covering_morphism_shifted,
    check_partition_morphism,
    hom_set_key,
    inverse_name,
)
from fuzzycover.exceptions import BudgetExceeded, DomainError, KindError
from fuzzycover.transforms import MapId

third, sixth = 1 / 3, 1 / 6


def fam(rows, kind="raw", prefix="x"):
    return FuzzyFamily([f"{prefix}{i}" for i in range(len(rows))], rows, kind)


# -- families and validation ------------------------------------------------------

def test_family_rejects_bad_input():
    with pytest.raises(ValueError):
        FuzzyFamily([], np.zeros((0, 2)))
    with pytest.raises(ValueError):
        FuzzyFamily(["a", "a"], [[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        FuzzyFamily(["a"], [[1, 0, 0], [0, 1, 0]])
    with pytest.raises(ValueError):
        FuzzyFamily(["a"], [[1.0]])
    with pytest.raises(ValueError):
        FuzzyFamily(["a"], [[1, 0]], kind="cover")


def test_family_is_read_only():
    f = fam([[1.0, 0.0]])
    with pytest.raises(ValueError):
        f.membership[0, 0] = 0.5


def test_validate_crisp_rows():
    r = validate_family(fam([[1, 0, 0], [0, 0, 1]]))
    assert r.covering and r.partition and r.good_covering


def test_validate_boundary_good_covering():
    r = validate_family(fam([[0.5, 1, 1]], "good_covering"))
    assert r.covering and r.good_covering and r.first_violation is None


def test_validate_neither():
    r = validate_family(fam([[0.4, 0.4, 0.4]], "partition"))
    assert not r.covering and not r.partition
    assert r.first_violation["element"] == "x0"
    assert r.first_violation["kind"] == "partition"


def test_validate_out_of_range_raises():
    with pytest.raises(DomainError) as info:
        validate_family(fam([[1, 0], [1.5, 0]]))
    assert info.value.element == "x1"


def test_validate_tolerance_boundary():
    assert validate_family(fam([[0.5, 0.499999999]], "partition"), 1e-9).partition
    assert not validate_family(fam([[0.5, 0.499999999]], "partition"), 1e-12).partition


# -- morphisms ---------------------------------------------------------------------

def test_covering_morphism_examples():
    src, dst = fam([[1, 0.3]]), fam([[1, 0.5]], prefix="y")
    m = Morphism({"x0": "y0"}, [0, 1])
    assert check_covering_morphism(src, dst, m)
    assert not check_covering_morphism(src, fam([[1, 0.2]], prefix="y"), m)
    c = fam([[1, 0.3, 0.7], [0.2, 1, 1]])
    assert check_covering_morphism(c, c, identity(c))


def test_partition_morphism_examples():
    p = fam([[0.5, 0.3, 0.2]])
    assert check_partition_morphism(p, p, identity(p))
    m = Morphism({"x0": "y0"}, [0, 1])
    assert not check_partition_morphism(fam([[0.5, 0.5]]), fam([[1, 0]], prefix="y"), m)


def test_partition_check_equals_covering_check_on_F_images():
    rng = np.random.default_rng(5)
    for _ in range(300):
        n, m = rng.integers(2, 4, 2)
        src = fam(rng.dirichlet(np.ones(n), 2))
        dst = fam(rng.dirichlet(np.ones(m), 2), prefix="y")
        mor = Morphism({"x0": f"y{rng.integers(2)}", "x1": f"y{rng.integers(2)}"}, rng.integers(0, m, n))
        assert check_partition_morphism(src, dst, mor) == check_covering_morphism(
            functor_F(src), functor_F(dst), mor)


def test_shifted_covering_check_agrees():
    rng = np.random.default_rng(6)
    grid = [0, 0.25, 0.5, 0.75, 1]
    for _ in range(300):
        rows = rng.choice(grid, (2, 3))
        rows[np.arange(2), rng.integers(0, 3, 2)] = 1
        other = rng.choice(grid, (1, 3))
        other[0, rng.integers(3)] = 1
        src, dst = fam(rows), fam(other, prefix="y")
        mor = Morphism({"x0": "y0", "x1": "y0"}, rng.integers(0, 3, 3))
        assert check_covering_morphism(src, dst, mor) == check_covering_morphism_shifted(src, dst, mor)


def test_morphism_totality():
    src, dst = fam([[1, 0]]), fam([[1, 0]], prefix="y")
    with pytest.raises(ValueError):
        check_covering_morphism(src, dst, Morphism({}, [0, 1]))
    with pytest.raises(ValueError):
        check_covering_morphism(src, dst, Morphism({"x0": "zz"}, [0, 1]))
    with pytest.raises(ValueError):
        check_covering_morphism(src, dst, Morphism({"x0": "y0"}, [0, 2]))


def test_composition_laws():
    m1 = Morphism({"a": "b"}, [1, 0, 1])
    m2 = Morphism({"b": "c"}, [2, 0])
    m3 = Morphism({"c": "d"}, [0, 0, 1])
    ida = Morphism({"a": "a"}, [0, 1, 2])
    assert compose(ida, m1) == m1
    assert compose(m1, Morphism({"b": "b"}, [0, 1])) == m1
    assert compose(compose(m1, m2), m3) == compose(m1, compose(m2, m3))
    assert compose(m1, m2) == Morphism({"a": "c"}, [0, 2, 0])


def test_valid_covering_morphisms_compose():
    rng = np.random.default_rng(8)
    grid = [0, 0.5, 1]
    checked = 0
    for _ in range(400):
        a, b, c = (fam(np.maximum(rng.choice(grid, (2, 2)), np.eye(2)[rng.integers(0, 2, 2)]), prefix=p)
                   for p in "abc")
        homs_ab = enumerate_hom_set(a, b, "covering")
        homs_bc = enumerate_hom_set(b, c, "covering")
        for m1, m2 in itertools.islice(itertools.product(homs_ab, homs_bc), 5):
            assert check_covering_morphism(a, c, compose(m1, m2))
            checked += 1
    assert checked > 100


# -- Hom-sets ---------------------------------------------------------------------

def test_hom_crisp_single_element():
    a = fam([[1, 0]], "covering")
    homs = enumerate_hom_set(a, a, "covering")
    # rho(0) must be 0; rho(1) is free because 0 <= anything
    assert homs == [Morphism({"x0": "x0"}, [0, 0]), Morphism({"x0": "x0"}, [0, 1])]
    assert identity(a) in homs


def test_hom_constant_rho():
    homs = enumerate_hom_set(fam([[1, 1]]), fam([[1, 0.5]], prefix="y"), "covering")
    assert homs == [Morphism({"x0": "y0"}, [0, 0])]


def test_hom_canonical_order():
    src = fam([[1, 0.5], [0.5, 1]])
    dst = fam([[1, 1], [1, 0.5]], prefix="y")
    homs = enumerate_hom_set(src, dst, "covering")
    keys = [hom_set_key(src, dst, m) for m in homs]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)


def test_hom_budget_and_kind():
    big = fam(np.eye(6))
    with pytest.raises(BudgetExceeded):
        enumerate_hom_set(big, big, "covering", budget=1000)
    with pytest.raises(KindError):
        enumerate_hom_set(fam([[0.5, 0.5]]), fam([[0.5, 0.5]]), "covering")
    with pytest.raises(ValueError):
        enumerate_hom_set(big, big, "sets")


def test_hom_equality_partition_vs_F():
    rng = np.random.default_rng(11)
    for _ in range(30):
        src = fam(rng.dirichlet(np.ones(2), 2))
        dst = fam(np.eye(3)[rng.integers(0, 3, 2)] * 0.5 + 0.5 / 3, prefix="y")
        assert enumerate_hom_set(src, dst, "partition") == enumerate_hom_set(
            functor_F(src), functor_F(dst), "covering")


# -- non-functoriality of the object bijections F1 and F2 ----------------------------

@pytest.mark.parametrize("name, a, b, rho", [
    # found by a seeded random search over the quarter grid, then frozen
    ("F1", [0.5, 0.75, 1.0], [1.0, 0.25, 0.75], (0, 2, 0)),
    ("F2", [0.0, 1.0, 1.0], [0.25, 0.5, 1.0], (0, 2, 2)),
])
def test_object_bijection_is_not_a_functor(name, a, b, rho):
    src, dst = fam([a], "covering"), fam([b], "covering", prefix="y")
    m = Morphism({"x0": "y0"}, rho)
    assert check_covering_morphism(src, dst, m, strict=True)
    assert not check_partition_morphism(convert(name, src), convert(name, dst), m)


# -- functors ---------------------------------------------------------------------

def test_functor_F_examples():
    assert np.allclose(functor_F(fam([[third] * 3] * 2)).membership, 1.0)
    assert np.allclose(functor_F(fam([[0.5, 0.3, 0.2]])).membership, [[1.0, 0.8, 0.7]])
    assert np.allclose(functor_F(fam([[1, 0, 0]])).membership, [[1, 0, 0]])
    assert functor_F(fam([[0.5, 0.5]])).kind == "good_covering"


def test_functor_G_rejects_bad_covering():
    with pytest.raises(KindError, match="x0"):
        functor_G(fam([[1, 1, 0]]))


def test_functor_C_D():
    assert np.allclose(functor_C_eps(0.5, fam([[1, 0]])).membership, [[1, 0.5]])
    assert np.allclose(functor_C_eps(0.3, fam([[1, 1, 1]])).membership, 1.0)
    c = fam([[1, 0.2, 0.9], [0, 1, 0.4]])
    assert functor_D_eps(0.25, functor_C_eps(0.25, c)).allclose(c)
    with pytest.raises(KindError):
        functor_D_eps(0.5, fam([[1, 0.2]]))
    with pytest.raises(ValueError):
        functor_C_eps(1.5, c)


def test_functor_Fn_Gn_examples():
    assert np.allclose(functor_Fn(fam([[1, 0, 0]])).membership, [[2 * third, sixth, sixth]])
    assert np.allclose(functor_Fn(fam([[1, 1, 1]])).membership, [[third] * 3])
    assert np.allclose(functor_Gn(fam([[0.5, 0.5, 0]])).membership, [[1, 1, 0]])
    with pytest.raises(KindError):
        functor_Gn(fam([[1, 0, 0]]))


@pytest.mark.parametrize("functor, cat_in, cat_out, kind", [
    (functor_F, "partition", "covering", "partition"),
    (functor_Fn, "covering", "partition", "covering"),
    (lambda f: functor_C_eps(0.5, f), "covering", "covering", "covering"),
])
def test_functors_send_morphisms_to_morphisms(functor, cat_in, cat_out, kind):
    rng = np.random.default_rng(2)
    found = 0
    for _ in range(200):
        if kind == "partition":
            a, b = fam(rng.dirichlet(np.ones(3), 2)), fam(rng.dirichlet(np.ones(3), 1), prefix="y")
        else:
            ra, rb = rng.random((2, 3)), rng.random((1, 3))
            ra[[0, 1], rng.integers(0, 3, 2)] = 1
            rb[0, rng.integers(3)] = 1
            a, b = fam(ra), fam(rb, prefix="y")
        for rho in itertools.product(range(3), repeat=3):
            m = Morphism({"x0": "y0", "x1": "y0"}, rho)
            check_in = check_partition_morphism if cat_in == "partition" else check_covering_morphism
            check_out = check_partition_morphism if cat_out == "partition" else check_covering_morphism
            if check_in(a, b, m):
                found += 1
                assert check_out(functor(a), functor(b), m)
    assert found > 20


# -- lifts and named conversions ------------------------------------------------------

def test_lift_examples():
    assert np.allclose(lift_pointwise(MapId.VARPHI1, fam([[1, 1]])).membership, [[0.5, 0.5]])
    assert np.allclose(lift_pointwise(MapId.PSI1, fam([[1, 1, 0]])).membership, [[0.5, 0.5, 0]])


def test_lift_names_the_element():
    with pytest.raises(DomainError) as info:
        lift_pointwise(MapId.PHI, fam([[1, 0], [0.7, 0.7]]))
    assert info.value.element == "x1"


def test_lift_rejects_images_outside_cube():
    with pytest.raises(DomainError, match="outside"):
        lift_pointwise(MapId.PSI0, fam([[1, 1, 0]]))


@pytest.mark.parametrize("name", ["F", "G", "FN", "GN", "F1", "G1", "FBAR", "GBAR", "FBAR2", "GBAR2",
                                  "F2", "G2", "F3", "G3"])
def test_conversions_round_trip(name):
    rng = np.random.default_rng(4)
    samples = {
        "partition": fam(rng.dirichlet(np.ones(4), 6)),
        "covering": fam(np.maximum(rng.random((6, 4)), np.eye(4)[rng.integers(0, 4, 6)])),
    }
    samples["good_covering"] = functor_F(samples["partition"])
    samples["pbar"] = functor_Fn(samples["covering"])
    source = {"F": "partition", "G": "good_covering", "FN": "covering", "GN": "pbar", "F1": "covering",
              "G1": "partition", "FBAR": "covering", "GBAR": "good_covering", "FBAR2": "good_covering",
              "GBAR2": "covering", "F2": "covering", "G2": "partition", "F3": "covering",
              "G3": "partition"}[name]
    x = samples[source]
    inv, _ = inverse_name(name)
    assert convert(inv, convert(name, x)).allclose(x)


def test_F2_and_G2_land_in_the_right_kinds():
    c = fam([[1, 0.6, 0.2]])
    p = convert("F2", c)
    assert validate_family(p).partition
    assert validate_family(convert("G2", p)).covering


def test_convert_unknown():
    with pytest.raises(ValueError):
        convert("nope", fam([[1, 0]]))
    with pytest.raises(ValueError):
        convert("C_EPS", fam([[1, 0]]))


# -- products ---------------------------------------------------------------------

def test_product_counterexample():
    a = fam([[0.5, 1, 1]], "covering")
    p = product_covering(a, fam([[0.5, 1, 1]], "covering", prefix="y"))
    row = p.membership[0]
    assert row.tolist() == [0.5, 0.5, 0.5, 0.5, 1, 1, 0.5, 1, 1]
    assert row.sum() == 6.5 and 9 * row.min() + 1 == 5.5
    assert not validate_family(p).good_covering
    assert p.universe == ("x0|y0",)


def test_product_with_crisp_and_trivial():
    crisp = fam([[1, 0], [0, 1]], "covering")
    p = product_covering(crisp, fam([[0, 1]], "covering", prefix="y"))
    assert set(np.unique(p.membership)) <= {0.0, 1.0}
    assert validate_family(p).covering
    other = fam([[0.2, 1, 0.7]], "covering", prefix="y")
    one = FuzzyFamily(["z"], [[1.0, 1.0]], "covering")
    q = product_covering(other, one)
    assert np.array_equal(q.membership[0], np.repeat(other.membership[0], 2))
