import numpy as np
import pytest

import abqlab


def test_bounds():
    assert abqlab.possible_k(10) == {15, 20}
    assert abqlab.kb_bounds(6) == {12}
    assert abqlab.predicted_k(12) == 30
    r = abqlab.resolve(10)
    assert r["status"] == "unique"
    assert r["tuples"] == [[5, 5, 5, 0]]
    assert "(1,10)" in abqlab.bounds_table(6, 12)


def test_decomposition():
    assert abqlab.family_multiplicities(8) == [3, 2, 2, 2]
    assert abqlab.component_dimensions(8) == [12, 8, 8, 8]
    assert "W_0^+" in abqlab.decompose_table(8)


def test_theta_quasi_periodic_in_d_direction():
    omega = abqlab.sample_period_matrix(6, 3)
    assert omega.shape == (2, 2)
    z = np.array([0.1 + 0.05j, -0.2 + 0.1j])
    a = abqlab.theta(6, omega, z)
    b = abqlab.theta(6, omega, z + np.array([1.0, 0.0]))
    assert np.max(np.abs(a - b)) < 1e-10 * np.max(np.abs(a))


def test_verify_n10():
    report = abqlab.verify(10, seed=2)
    assert report["status"] == "PASS"
    assert report["result"]["k"] == 15
    assert report["result"]["isotypic"] == [5, 5, 5, 0]
    assert abqlab.verify_json(10, seed=2) == abqlab.verify_json(10, seed=2)


def test_verify_fixed_product_surface_fails_expectations():
    omega = np.diag([1j, 1.5j])
    report = abqlab.verify(8, omega=omega)
    assert report["status"] == "FAIL"


def test_errors():
    with pytest.raises(abqlab.IndeterminateRankError):
        abqlab.verify(8, tolerance=1e-30)
    with pytest.raises(ValueError):
        abqlab.verify(8, precision="quad")
