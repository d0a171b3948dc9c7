import numpy as np
import pytest

from metricgauge.errors import NotOrthogonal, SingularCayley
from metricgauge.extensor import Extensor, compose, determinant, extend
from metricgauge.multivector import Multivector, clifford
from metricgauge.orthometric import (
    OrthoMetric,
    cayley,
    det_sign_check,
    eta_basis_vector,
    eta_composite,
    eta_factor,
    eta_from_signature,
    eta_general,
    is_lorentz,
    random_lorentz,
    sandwich_eta,
)
from metricgauge.sampling import random_multivector, random_orthogonal, trial_rng

B = Multivector.basis_vector


def boost(a):
    return Extensor([[np.cosh(a), np.sinh(a)], [np.sinh(a), np.cosh(a)]])


def test_basis_vector_reflection():
    e = eta_basis_vector(1, 2)
    assert np.array_equal(e(B(2, 1)).coeffs, B(2, 1).coeffs)
    assert np.array_equal(e(B(2, 2)).coeffs, -B(2, 2).coeffs)
    assert determinant(eta_basis_vector(2, 4)) == -1.0
    for n in (2, 3, 4, 5):
        for j in range(1, n + 1):
            ej = eta_basis_vector(j, n)
            assert ej.signature == (1, n - 1)
            assert determinant(ej) == pytest.approx((-1.0) ** (n - 1))
    with pytest.raises(IndexError):
        eta_basis_vector(0, 3)
    with pytest.raises(IndexError):
        eta_basis_vector(4, 3)


def test_basis_reflections_commute():
    for n in (2, 3, 4):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                a, b = eta_basis_vector(j, n), eta_basis_vector(k, n)
                assert np.array_equal(compose(a, b).matrix, compose(b, a).matrix)


def test_basis_reflection_extension_is_sandwich():
    rng = trial_rng(8)
    for n in (2, 3, 4):
        for j in range(1, n + 1):
            x = random_multivector(n, rng)
            bj = B(n, j)
            assert extend(eta_basis_vector(j, n), x).allclose(clifford(clifford(bj, x), bj), atol=1e-12)


def test_composite_examples():
    assert np.array_equal(eta_composite(1, 4).matrix, np.diag([1.0, -1, -1, -1]))
    assert determinant(eta_composite(1, 4)) == -1.0
    assert np.array_equal(eta_from_signature(2, 1).matrix, np.diag([1.0, 1, -1]))
    with pytest.raises(ValueError):
        eta_composite(5, 4)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_composite_properties(n):
    rng = trial_rng(3, n)
    for p in range(0, n + 1):
        eta = eta_composite(p, n)
        m = eta.matrix
        assert np.array_equal(m, m.T)
        assert np.array_equal(m @ m, np.eye(n))
        assert np.array_equal(eta.eig.eigenvalues, [1.0] * p + [-1.0] * (n - p))
        assert abs(det_sign_check(eta)) <= 1e-9
        theta = Extensor(np.eye(n))
        for _ in range(3):
            v = Multivector.from_vector(rng.standard_normal(n))
            assert sandwich_eta(theta, p, v).allclose(eta(v), atol=1e-12)


def test_general_examples():
    assert np.array_equal(eta_general(Extensor.identity(3), 2).matrix, eta_composite(2, 3).matrix)
    c = np.cos(np.pi / 4)
    rot = Extensor([[c, -c], [c, c]])
    # rot diag(1,-1) rot^T
    assert np.allclose(eta_general(rot, 1).matrix, [[0, 1], [1, 0]], atol=1e-15)
    with pytest.raises(NotOrthogonal):
        eta_general(Extensor([[1, 1], [0, 1]]), 1)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_general_sandwich_form(n):
    rng = trial_rng(17, n)
    for _ in range(5):
        theta = random_orthogonal(n, rng)
        for p in range(1, n + 1):
            eta = eta_general(theta, p)
            assert eta.signature == (p, n - p)
            assert np.allclose(eta.eig.eigenvectors, theta.matrix)
            for k in range(1, n + 1):
                bk = B(n, k)
                assert sandwich_eta(theta, p, bk).allclose(eta(bk), atol=1e-10)


def test_factor_commute_and_square():
    rng = trial_rng(2)
    theta = random_orthogonal(3, rng)
    v = Multivector.from_vector(rng.standard_normal(3))
    u1 = extend(theta, B(3, 1))
    assert eta_factor(theta, 1, eta_factor(theta, 1, v)).allclose(v, atol=1e-12)
    assert np.isclose(float(clifford(u1, u1)), 1.0)


def test_ortho_metric_rejects_non_orthogonal():
    with pytest.raises(NotOrthogonal):
        OrthoMetric(np.diag([2.0, -1.0]))
    eta = OrthoMetric.from_json({"n": 3, "signature": [1, 2]})
    assert np.array_equal(eta.matrix, np.diag([1.0, -1, -1]))


def test_lorentz_examples():
    eta = eta_composite(1, 2)
    assert is_lorentz(Extensor.identity(2), eta)
    r = is_lorentz(boost(0.3), eta)
    assert r.is_lorentz and r.agree
    r = is_lorentz(Extensor.diagonal([2, 1]), eta)
    assert not r.is_lorentz and r.agree
    assert np.array_equal(cayley(eta, np.zeros((2, 2))).matrix, np.eye(2))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_random_lorentz_passes(n):
    rng = trial_rng(30, n)
    for p in range(1, n + 1):
        eta = eta_composite(p, n)
        for _ in range(5):
            lam = random_lorentz(eta, rng)
            r = is_lorentz(lam, eta)
            assert r.is_lorentz and r.agree


def test_non_lorentz_agree():
    rng = trial_rng(31)
    eta = eta_composite(2, 4)
    for _ in range(10):
        r = is_lorentz(Extensor(rng.standard_normal((4, 4))), eta)
        assert not r.is_lorentz and r.agree


def test_cayley_singular():
    eta = eta_composite(2, 2)
    with pytest.raises(SingularCayley):
        cayley(eta, np.eye(2))


def test_random_lorentz_deterministic():
    eta = eta_composite(1, 3)
    assert np.array_equal(random_lorentz(eta, 5).matrix, random_lorentz(eta, 5).matrix)
