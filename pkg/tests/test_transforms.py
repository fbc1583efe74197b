import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzycover import transforms as T
from fuzzycover.exceptions import DomainError
from fuzzycover.geometry import Region, member

third, sixth = 1 / 3, 1 / 6


def close(x, y, atol=1e-12):
    return np.allclose(x, y, rtol=0, atol=atol)


# -- fixed examples -----------------------------------------------------------

@pytest.mark.parametrize("b, a", [
    ([1, 0, 0], [1, 0, 0]),
    ([third] * 3, [1, 1, 1]),
    ([0.5, 0.3, 0.2], [1.0, 0.8, 0.7]),
])
def test_phi_examples(b, a):
    assert close(T.phi(b), a)
    assert close(T.phi_inv(a), b)


@pytest.mark.parametrize("c, b", [([1, 0, 0], [1, 0, 0]), ([1, 1, 1], [third] * 3), ([1, 0.5, 0.5], [0.5, 0.25, 0.25])])
def test_varphi1_examples(c, b):
    assert close(T.varphi1(c), b)
    assert close(T.varphi1_inv(b), c)


@pytest.mark.parametrize("c, a", [([1, 1, 1], [1, 1, 1]), ([1, 1, 0], [1, 1, 0.5]), ([1, 0, 0], [1, 0, 0])])
def test_phi1_examples(c, a):
    assert close(T.phi1(c), a)
    assert close(T.phi1_inv(a), c)
    assert close(T.phi1_closed(c), a)


def test_phi1_image_of_110_is_on_boundary_of_G():
    a = T.phi1([1.0, 1.0, 0.0])
    assert a.sum() == pytest.approx(3 * a.min() + 1)


@pytest.mark.parametrize("a, c", [([1, 1, 1], [1, 1, 1]), ([1, 0.8, 0.6], [1, 0.8, 0.4]), ([1, 0, 0], [1, 0, 0])])
def test_phi2_examples(a, c):
    assert close(T.phi2(a), c)
    assert close(T.phi2_inv(c), a)


def test_phi2_sector_choice_irrelevant_on_ties():
    a = [1.0, 0.5, 0.5]
    assert close(T.phi2_sector(a, (0, 1, 2)), a)
    assert close(T.phi2_sector(a, (0, 2, 1)), a)


def test_phi2_sector_rejects_wrong_sector():
    with pytest.raises(DomainError):
        T.phi2_sector([1.0, 0.8, 0.6], (2, 1, 0))


@pytest.mark.parametrize("a, b", [([1, 1, 1], [third] * 3), ([1, 1, 0], [2 * third, 2 * third, -third]), ([1, 0, 0], [1, 0, 0])])
def test_psi0_examples(a, b):
    assert close(T.psi0(a), b)
    assert close(T.psi0_f_inv(b), a)


def test_psi0_is_idempotent_on_plane():
    p = np.array([0.2, 0.5, 0.3])
    assert close(T.psi0(p), p)


def test_homothety_examples():
    g = np.full(3, third)
    assert close(T.homothety("g", 0.37, g), g)
    assert close(T.homothety("g", 0.5, [1, 0, 0]), [2 * third, sixth, sixth])
    assert close(T.homothety("u", 0.5, [1, 0, 0]), [1, 0.5, 0.5])
    with pytest.raises(ValueError):
        T.homothety("g", 0.0, g)
    with pytest.raises(ValueError):
        T.homothety("x", 0.5, g)


@pytest.mark.parametrize("a, b", [([1, 0, 0], [2 * third, sixth, sixth]), ([1, 1, 0], [0.5, 0.5, 0]), ([1, 1, 1], [third] * 3)])
def test_psi_examples(a, b):
    assert close(T.psi(a), b)
    assert close(T.psi_closed(a), b)
    assert close(T.psi_inv(b), a)
    assert close(T.psi_inv_closed(b), a)


@pytest.mark.parametrize("b, alpha, beta", [
    ([2 * third, 2 * third, -third], 1.0, 0.5),
    ([1, 0, 0], 1.0, 1.0),
    ([0.5, 0.5, 0], 2.0, 1.0),
])
def test_alpha_beta(b, alpha, beta):
    assert T.alpha_of(b) == pytest.approx(alpha, abs=1e-12)
    assert T.beta_of(b) == pytest.approx(beta, abs=1e-12)


def test_alpha_undefined_at_center():
    with pytest.raises(DomainError):
        T.alpha_of([third] * 3)


@pytest.mark.parametrize("b, out", [([third] * 3, [third] * 3), ([2 * third, 2 * third, -third], [0.5, 0.5, 0]), ([1, 0, 0], [1, 0, 0])])
def test_psi_small_examples(b, out):
    assert close(T.psi_small(b), out)
    assert close(T.psi_small_inv(out), b)


@pytest.mark.parametrize("a, b", [([1, 1, 1], [third] * 3), ([1, 0, 0], [1, 0, 0]), ([1, 1, 0], [0.5, 0.5, 0])])
def test_psi1_examples(a, b):
    assert close(T.psi1(a), b)
    assert close(T.psi1_inv(b), a)


def test_printed_forward_form_agrees():
    rng = np.random.default_rng(0)
    a = T.sample_region(Region.F, 4, 500, rng)
    assert close(T.psi1_printed(a), T.psi1(a))


def test_printed_inverse_form_disagrees():
    # the printed reference inverse is not the inverse of psi1 in general
    b = np.array([0.5, 0.3, 0.2])
    assert np.abs(T.psi1_inv_printed(b) - T.psi1_inv(b)).max() > 1e-3
    assert close(T.psi1(T.psi1_inv(b)), b)


def test_domain_errors_name_the_row():
    with pytest.raises(DomainError) as info:
        T.phi(np.array([[0.5, 0.5], [0.7, 0.7]]))
    assert info.value.row == 1


# -- registry -----------------------------------------------------------------

def test_registry_inverse_pairs_are_symmetric():
    for mid, info in T.REGISTRY.items():
        inv = T.REGISTRY[info.inverse]
        assert inv.inverse is mid
        if not info.needs_eps:
            assert (inv.domain, inv.codomain) == (info.codomain, info.domain) or mid in (T.MapId.PSI0, T.MapId.PSI0_F_INV)


def test_apply_map_and_inverse_of():
    rng = np.random.default_rng(1)
    for mid, info in T.REGISTRY.items():
        if info.needs_eps or mid is T.MapId.PSI0:
            continue
        x = T.sample_region(info.domain, 4, 200, rng)
        inv, _ = T.inverse_of(mid)
        assert close(T.apply_map(inv, T.apply_map(mid, x)), x, 1e-9), mid
    inv, e = T.inverse_of(T.MapId.C_EPS, 0.25)
    assert inv is T.MapId.C_EPS and e == 4.0
    with pytest.raises(ValueError):
        T.apply_map(T.MapId.C_EPS, [0.5, 0.5])


def test_sampler_is_seeded_and_in_region():
    for region in (Region.H, Region.K, Region.F, Region.G, Region.P, Region.PBAR):
        a = T.sample_region(region, 5, 300, np.random.default_rng(9))
        b = T.sample_region(region, 5, 300, np.random.default_rng(9))
        assert np.array_equal(a, b)
        assert member(a, region).all()
    a = T.sample_region(Region.F_GE, 3, 100, np.random.default_rng(0), delta=0.3)
    assert member(a, Region.F_GE, delta=0.3).all()


# -- properties ------------------------------------------------------------------

dims = st.integers(2, 7)


@st.composite
def simplex_points(draw):
    n = draw(dims)
    w = draw(st.lists(st.floats(0, 1), min_size=n, max_size=n).filter(lambda v: sum(v) > 1e-3))
    return np.array(w) / sum(w)


@st.composite
def face_points(draw):
    n = draw(dims)
    c = np.array(draw(st.lists(st.sampled_from([0.0, 0.25, 0.5, 1.0]) | st.floats(0, 1),
                               min_size=n, max_size=n)))
    c[draw(st.integers(0, n - 1))] = 1.0
    return c


@settings(max_examples=300, deadline=None)
@given(simplex_points())
def test_phi_round_trip(b):
    a = T.phi(b)
    assert member(a, Region.G)
    assert close(T.phi_inv(a), b, 1e-9)


@settings(max_examples=300, deadline=None)
@given(face_points())
def test_face_maps_round_trip(c):
    for fwd, inv, cod in ((T.varphi1, T.varphi1_inv, Region.K), (T.phi1, T.phi1_inv, Region.G),
                          (T.psi, T.psi_inv, Region.PBAR), (T.psi1, T.psi1_inv, Region.K),
                          (T.psi0, T.psi0_f_inv, Region.P), (T.phi2_inv, T.phi2, Region.G)):
        y = fwd(c)
        assert member(y, cod), fwd.__name__
        assert close(inv(y), c, 1e-9), fwd.__name__


@settings(max_examples=300, deadline=None)
@given(face_points())
def test_phi2_preserves_order_and_ties(c):
    a = T.phi2_inv(c)
    for i in range(len(c)):
        for j in range(len(c)):
            if c[i] > c[j] + 1e-12:
                assert a[i] > a[j]
            assert (abs(c[i] - c[j]) <= 1e-12) == (abs(a[i] - a[j]) <= 1e-12)


@settings(max_examples=200, deadline=None)
@given(face_points())
def test_closed_forms_match_compositions(c):
    assert close(T.phi1_closed(c), T.phi1(c))
    assert close(T.psi_closed(c), T.psi(c))
    a = T.phi1(c)
    assert close(T.phi1_inv_closed(a), T.phi1_inv(a), 1e-10)
