import numpy as np
import pytest

from metricgauge.errors import NotLorentz, NotOrthogonal, SignatureMismatch, ZeroRho
from metricgauge.extensor import Extensor
from metricgauge.gauge import factor_gauge, gauge_det_check, synth_metric, twist_gauge
from metricgauge.metric import MetricExtensor
from metricgauge.orthometric import eta_composite, eta_general, random_lorentz
from metricgauge.sampling import random_metric, random_orthogonal, trial_rng


def boost(a):
    return Extensor([[np.cosh(a), np.sinh(a)], [np.sinh(a), np.cosh(a)]])


def test_metric_equal_to_eta():
    for n in (2, 3, 4):
        for p in range(0, n + 1):
            eta = eta_composite(p, n)
            f = factor_gauge(MetricExtensor(eta.matrix), eta)
            assert np.array_equal(f.h.matrix, np.eye(n))


def test_worked_diagonal_case():
    g = MetricExtensor(np.diag([2.0, -3.0]))
    f = factor_gauge(g, eta_composite(1, 2))
    assert np.max(np.abs(f.h.matrix - np.diag([np.sqrt(2), np.sqrt(3)]))) <= 1e-12
    assert f.residual <= 1e-15


def test_positive_definite_square_root():
    g = MetricExtensor([[2, 1], [1, 2]])
    f = factor_gauge(g, eta_composite(2, 2))
    h = f.h.matrix
    assert np.allclose(h.T @ h, g.matrix, atol=1e-14)
    # symmetric square root from the eigendecomposition
    w, v = np.linalg.eigh(g.matrix)
    root = v @ np.diag(np.sqrt(w)) @ v.T
    assert np.allclose(h.T @ h, root @ root, atol=1e-14)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_reconstruction_random(n):
    rng = trial_rng(40, n)
    for _ in range(10):
        g = random_metric(n, rng)
        eta = eta_composite(g.signature[0], n)
        f = factor_gauge(g, eta)
        assert f.residual <= 1e-9 * np.max(np.abs(g.matrix))
        assert gauge_det_check(f) <= 1e-10
        th = f.theta.matrix
        assert np.allclose(th.T @ th, np.eye(n), atol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_reconstruction_general_eta(n):
    rng = trial_rng(41, n)
    for _ in range(5):
        g = random_metric(n, rng)
        eta = eta_general(random_orthogonal(n, rng), g.signature[0])
        f = factor_gauge(g, eta)
        assert f.residual <= 1e-9 * np.max(np.abs(g.matrix))


def test_sigma_choices_all_reconstruct():
    g = MetricExtensor([[1, 2, 0], [2, -1, 0], [0, 0, 3]])
    eta = eta_composite(g.signature[0], 3)
    for s in ([1, 1, 1], [-1, 1, -1], [-1, -1, -1]):
        f = factor_gauge(g, eta, sigma=s)
        assert f.residual <= 1e-12
    with pytest.raises(ValueError):
        factor_gauge(g, eta, sigma=[1, 0.5, 1])


def test_signature_mismatch():
    with pytest.raises(SignatureMismatch):
        factor_gauge(MetricExtensor(np.diag([1.0, 1.0])), eta_composite(1, 2))
    with pytest.raises(SignatureMismatch):
        factor_gauge(MetricExtensor(np.eye(3)), eta_composite(2, 2))


def test_twist_examples():
    g = MetricExtensor(np.diag([2.0, -3.0]))
    eta = eta_composite(1, 2)
    f = factor_gauge(g, eta)
    same = twist_gauge(f, Extensor.identity(2))
    assert np.array_equal(same.h.matrix, f.h.matrix)
    t = twist_gauge(f, boost(0.3))
    assert not np.allclose(t.h.matrix, f.h.matrix)
    assert t.residual <= 1e-9
    assert t.theta is None and t.d_sigma is None
    with pytest.raises(NotLorentz):
        twist_gauge(f, Extensor.diagonal([2, 1]))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_twist_random(n):
    rng = trial_rng(42, n)
    for _ in range(5):
        g = random_metric(n, rng)
        eta = eta_composite(g.signature[0], n)
        f = twist_gauge(factor_gauge(g, eta), random_lorentz(eta, rng))
        assert f.residual <= 1e-9 * np.max(np.abs(g.matrix))


def test_synth_examples():
    eta = eta_composite(1, 2)
    g = synth_metric([1, 1], Extensor.identity(2), eta)
    assert np.array_equal(g.matrix, eta.matrix)
    g = synth_metric([np.sqrt(2), np.sqrt(3)], Extensor.identity(2), eta)
    assert np.allclose(g.matrix, np.diag([2.0, -3.0]), atol=1e-15)
    with pytest.raises(ZeroRho):
        synth_metric([1, 0], Extensor.identity(2), eta)
    with pytest.raises(NotOrthogonal):
        synth_metric([1, 1], Extensor([[1, 1], [0, 1]]), eta)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_synth_spectrum(n):
    rng = trial_rng(43, n)
    for p in range(1, n + 1):
        eta = eta_composite(p, n)
        rho = rng.uniform(0.5, 2.0, n)
        phi = random_orthogonal(n, rng)
        g = synth_metric(rho, phi, eta)
        assert g.signature == (p, n - p)
        spectrum = np.sort(np.linalg.eigvalsh(g.matrix))
        want = np.sort(np.concatenate([rho[:p] ** 2, -(rho[p:] ** 2)]))
        assert np.allclose(spectrum, want, atol=1e-12)
        # eigenvector phi^T(u_k) carries rho_k^2 with the sign of eta's k-th eigenvalue
        for k in range(n):
            w = phi.matrix.T[:, k]
            assert np.allclose(g.matrix @ w, (1 if k < p else -1) * rho[k] ** 2 * w, atol=1e-12)


def test_factorization_json():
    f = factor_gauge(MetricExtensor(np.diag([2.0, -3.0])), eta_composite(1, 2))
    obj = f.to_json()
    for key in ("d_sigma", "d_sqrt", "theta", "h", "eta", "g", "residual"):
        assert key in obj
    assert obj["signature"] == [1, 1]
