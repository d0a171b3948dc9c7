import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metricgauge.errors import Degenerate, DimensionMismatch, NotSymmetric
from metricgauge.extensor import Extensor, adjoint, extend
from metricgauge.metric import (
    MetricExtensor,
    direct_clifford,
    direct_product,
    g_clifford,
    g_contract_left,
    g_contract_right,
    g_scalar,
    metric_adjoint,
    metric_from_matrix,
)
from metricgauge.multivector import PRODUCTS, Multivector, euclidean_product, wedge
from metricgauge.sampling import random_metric, random_multivector, random_vector, trial_rng

B = Multivector.basis_vector
G23 = MetricExtensor(np.diag([2.0, -3.0]))


def test_construction_examples():
    g = metric_from_matrix(np.eye(3))
    assert g.signature == (3, 0)
    assert np.array_equal(g.eig.eigenvalues, np.ones(3))
    assert metric_from_matrix(np.diag([1, -1, -1, -1])).signature == (1, 3)
    g = metric_from_matrix([[2, 1], [1, 2]])
    assert g.signature == (2, 0)
    assert np.allclose(g.eig.eigenvalues, [3, 1])


def test_construction_errors():
    with pytest.raises(NotSymmetric):
        MetricExtensor([[1, 2], [0, 1]])
    with pytest.raises(Degenerate):
        MetricExtensor([[1, 1], [1, 1]])
    with pytest.raises(ValueError):
        MetricExtensor.from_json({"n": 2, "matrix": [[1, 0], [0, -1]], "signature": [2, 0]})
    g = MetricExtensor.from_json({"n": 2, "matrix": [[1, 0], [0, -1]], "signature": [1, 1]})
    assert g.signature == (1, 1)


def test_scalar_examples():
    assert g_scalar(G23, B(2, 1), B(2, 1)) == 2.0
    b12 = Multivector.blade(2, 0b11)
    assert g_scalar(G23, b12, b12) == -6.0


def test_contraction_examples():
    b12 = Multivector.blade(2, 0b11)
    assert g_contract_left(G23, B(2, 1), b12).allclose(2 * B(2, 2))
    assert g_contract_right(G23, b12, B(2, 2)).allclose(-3 * B(2, 1))


def test_clifford_examples():
    assert g_clifford(G23, B(2, 1), B(2, 1), route="direct").allclose(Multivector.scalar(2, 2))
    g = MetricExtensor([[2, 1], [1, 2]])
    want = Multivector([1.0, 0, 0, 1.0])
    for route in ("direct", "golden"):
        assert g_clifford(g, B(2, 1), B(2, 2), route=route).allclose(want, atol=1e-12)
    with pytest.raises(ValueError):
        g_clifford(g, B(2, 1), B(2, 2), route="other")


def test_identity_metric_reduces_to_euclidean():
    rng = trial_rng(1)
    for n in (2, 3, 4):
        g = MetricExtensor(np.eye(n))
        x, y = random_multivector(n, rng), random_multivector(n, rng)
        for op in PRODUCTS:
            assert direct_product(op, g, x, y).allclose(euclidean_product(op, x, y), atol=1e-12)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        g_scalar(G23, B(3, 1), B(3, 1))
    with pytest.raises(DimensionMismatch):
        direct_clifford(G23, B(2, 1), B(3, 1))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_generator_relations(n):
    rng = trial_rng(4, n)
    g = random_metric(n, rng)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            bi, bj = B(n, i), B(n, j)
            anti = direct_clifford(g, bi, bj) + direct_clifford(g, bj, bi)
            assert anti.allclose(Multivector.scalar(n, 2 * g.matrix[i - 1, j - 1]), atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2**32 - 1))
def test_direct_clifford_associative(n, seed):
    rng = trial_rng(seed)
    g = random_metric(n, rng)
    x, y, z = (random_multivector(n, rng) for _ in range(3))
    lhs = direct_clifford(g, direct_clifford(g, x, y), z)
    rhs = direct_clifford(g, x, direct_clifford(g, y, z))
    assert lhs.allclose(rhs, atol=1e-9 * max(1.0, np.max(np.abs(lhs.coeffs))))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2**32 - 1))
def test_vector_clifford_splits(n, seed):
    rng = trial_rng(seed)
    g = random_metric(n, rng)
    v, x = random_vector(n, rng), random_multivector(n, rng)
    assert direct_clifford(g, v, x).allclose(g_contract_left(g, v, x) + wedge(v, x), atol=1e-10)
    assert direct_clifford(g, x, v).allclose(g_contract_right(g, x, v) + wedge(x, v), atol=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2**32 - 1))
def test_contraction_duality(n, seed):
    # (x ^ y) ._g z == y ._g (x~ _|g z)
    rng = trial_rng(seed)
    g = random_metric(n, rng)
    x, y, z = (random_multivector(n, rng) for _ in range(3))
    lhs = g_scalar(g, wedge(x, y), z)
    rhs = g_scalar(g, y, g_contract_left(g, x.reverse(), z))
    assert lhs == pytest.approx(rhs, abs=1e-9 * max(1.0, abs(lhs)))


def test_metric_adjoint_examples():
    t = Extensor([[1, 2], [3, 4]])
    assert np.allclose(metric_adjoint(MetricExtensor(np.eye(2)), t).matrix, adjoint(t).matrix)
    s = Extensor([[2, 0, 0], [0, 3, 1], [0, 1, 3]])
    g = MetricExtensor(np.diag([5.0, -2.0, -2.0]))
    assert np.allclose(metric_adjoint(g, s).matrix, s.matrix, atol=1e-14)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_metric_adjoint_defining_property(n):
    rng = trial_rng(21, n)
    for _ in range(10):
        g = random_metric(n, rng)
        t = Extensor(rng.standard_normal((n, n)))
        ta = metric_adjoint(g, t)
        x, y = random_vector(n, rng), random_vector(n, rng)
        lhs = g_scalar(g, extend(t, x), y)
        rhs = g_scalar(g, x, extend(ta, y))
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


def test_inverse_metric():
    g = MetricExtensor([[2, 1, 0], [1, -1, 0], [0, 0, 4]])
    assert np.allclose(g.inverse_metric.matrix @ g.matrix, np.eye(3), atol=1e-14)
    assert g.inverse_metric.signature == g.signature


def test_scalar_direct_product_is_grade_zero():
    out = direct_product("scalar", G23, B(2, 1), B(2, 1))
    assert out.is_scalar() and float(out) == 2.0
