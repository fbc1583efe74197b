import math

import numpy as np
import pytest

from fuzzycover import oracle
from fuzzycover.exceptions import BudgetExceeded
from fuzzycover.geometry import Region


def test_projection_examples():
    assert np.allclose(oracle.project_point_to_plane([1.0, 1.0, 1.0]), [1 / 3] * 3)
    assert np.allclose(oracle.project_point_to_plane([1.0, 1.0, 0.0]), [2 / 3, 2 / 3, -1 / 3])
    p = np.array([0.2, 0.5, 0.3])
    assert np.allclose(oracle.project_point_to_plane(p), p)


def test_line_face_examples():
    assert np.allclose(oracle.line_face_intersection([1.0, 0.0, 0.0]), [1.0, 0.0, 0.0])
    assert np.allclose(oracle.line_face_intersection([1 / 3] * 3), [1.0] * 3)
    assert np.allclose(oracle.line_face_intersection([0.5, 0.3, 0.2]), [1.0, 0.8, 0.7])


def test_triangular_examples():
    assert np.allclose(oracle.solve_triangular_system([1.0, 1.0, 1.0], (0, 1, 2)), [1.0] * 3)
    assert np.allclose(oracle.solve_triangular_system([1.0, 0.8, 0.4], (0, 1, 2)), [1.0, 0.8, 0.6])
    assert np.allclose(oracle.solve_triangular_system([1.0, 0.0, 0.0], (0, 1, 2)), [1.0, 0.0, 0.0])


@pytest.mark.parametrize("n", range(2, 9))
def test_sis_determinant(n):
    m = oracle.sis_matrix(n)
    assert np.allclose(np.triu(m, 1), 0.0)
    assert oracle.sis_determinant(n) == pytest.approx(math.factorial(n - 1), rel=1e-10)


def test_forward_substitution_against_numpy():
    rng = np.random.default_rng(3)
    m = np.tril(rng.uniform(0.5, 2.0, (5, 5)))
    rhs = rng.uniform(size=(7, 5))
    assert np.allclose(oracle.forward_substitution(m, rhs), np.linalg.solve(m, rhs.T).T)


def test_grid_probe_examples():
    k = {tuple(p) for p in oracle.grid_probe(Region.K, 2, 2)}
    assert k == {(0.0, 1.0), (0.5, 0.5), (1.0, 0.0)}
    f = {tuple(p) for p in oracle.grid_probe(Region.F, 1, 2)}
    assert f == {(1.0, 0.0), (1.0, 1.0), (0.0, 1.0)}
    g = {tuple(p) for p in oracle.grid_probe(Region.G, 2, 3)}
    assert (1.0, 0.5, 0.5) in g and (1.0, 1.0, 0.0) not in g


def test_grid_probe_budget():
    with pytest.raises(BudgetExceeded):
        oracle.grid_probe(Region.H, 10, 7, budget=1000)
