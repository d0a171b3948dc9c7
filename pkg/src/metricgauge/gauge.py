"""Gauge extensors: factor ``g = h^dagger o eta o h`` and build metrics from gauges."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotLorentz, NotOrthogonal, SignatureMismatch, ZeroRho
from .extensor import Extensor, adjoint, compose, determinant
from .metric import MetricExtensor
from .orthometric import ORTHO_TOL, OrthoMetric, is_lorentz


@dataclass(frozen=True)
class GaugeFactorization:
    """A gauge ``h`` for ``g`` relative to ``eta``.

    ``d_sigma``, ``d_sqrt`` and ``theta`` are the factors of
    ``h = d_sigma o d_sqrt o theta``; they are ``None`` after a Lorentz twist,
    when only the composite is meaningful.
    """

    g: MetricExtensor
    eta: OrthoMetric
    h: Extensor
    d_sigma: Extensor | None = None
    d_sqrt: Extensor | None = None
    theta: Extensor | None = None

    @property
    def residual(self) -> float:
        """Max-norm of ``h^dagger eta h - g``."""
        return reconstruction_residual(self.h, self.eta, self.g)

    def to_json(self) -> dict:
        out = {"n": self.g.n}
        for name in ("d_sigma", "d_sqrt", "theta", "h", "eta", "g"):
            t = getattr(self, name)
            out[name] = None if t is None else t.matrix.tolist()
        out["signature"] = list(self.g.signature)
        out["residual"] = self.residual
        return out


def reconstruction_residual(h: Extensor, eta: Extensor, g: Extensor) -> float:
    return float(np.max(np.abs(h.matrix.T @ eta.matrix @ h.matrix - g.matrix)))


def factor_gauge(g: MetricExtensor, eta: OrthoMetric, sigma=None) -> GaugeFactorization:
    """Build ``h = d_sigma o d_sqrt o theta`` from the spectra of ``g`` and ``eta``.

    Both spectra are ordered positives first, so the k-th eigenvalues share a
    sign.  ``theta`` sends the k-th eigenvector ``v_k`` of ``g`` to the k-th
    eigenvector ``u_k`` of ``eta``; ``d_sigma`` and ``d_sqrt`` are diagonal in
    the ``u`` basis with entries ``sigma_k`` (default +1) and ``sqrt|lambda_k|``.
    """
    if g.n != eta.n:
        raise SignatureMismatch(f"metric is {g.n}-dimensional, eta is {eta.n}-dimensional")
    if g.signature != eta.signature:
        raise SignatureMismatch(f"metric signature {g.signature} differs from eta signature {eta.signature}")
    n = g.n
    sigma = np.ones(n) if sigma is None else np.asarray(sigma, dtype=float)
    if sigma.shape != (n,) or np.any(np.abs(sigma) != 1.0):
        raise ValueError(f"sigma must hold {n} entries equal to +1 or -1")

    lam, v = g.eig.eigenvalues, g.eig.eigenvectors
    u = eta.eig.eigenvectors
    d_sigma = Extensor(u @ np.diag(sigma) @ u.T)
    d_sqrt = Extensor(u @ np.diag(np.sqrt(np.abs(lam))) @ u.T)
    theta = Extensor(u @ v.T)
    h = compose(d_sigma, compose(d_sqrt, theta))
    return GaugeFactorization(g, eta, h, d_sigma, d_sqrt, theta)


def twist_gauge(f: GaugeFactorization, lam: Extensor) -> GaugeFactorization:
    """Replace ``h`` by ``lam o h`` for an eta-orthogonal ``lam``."""
    report = is_lorentz(lam, f.eta)
    if not report.is_lorentz:
        raise NotLorentz(f"extensor is not eta-orthogonal (residual {report.residual_sandwich:.3g})")
    return GaugeFactorization(f.g, f.eta, compose(lam, f.h))


def synth_metric(rho, phi: Extensor, eta: OrthoMetric) -> MetricExtensor:
    """``g = h^dagger o eta o h`` with ``h = d_rho o phi``.

    The spectrum is ``+rho_k**2`` on the first ``p`` eigenvectors
    ``phi^dagger(u_k)`` and ``-rho_k**2`` on the rest.
    """
    rho = np.asarray(rho, dtype=float)
    if rho.shape != (eta.n,):
        raise ValueError(f"rho must hold {eta.n} entries")
    if np.any(np.abs(rho) <= 1e-12):
        raise ZeroRho("every rho_k must be non-zero")
    pm = phi.matrix
    resid = float(np.max(np.abs(pm.T @ pm - np.eye(eta.n))))
    if resid > ORTHO_TOL:
        raise NotOrthogonal(f"phi is not orthogonal (max |P^T P - 1| = {resid:.3g})")
    u = eta.eig.eigenvectors
    h = compose(Extensor(u @ np.diag(rho) @ u.T), phi)
    m = adjoint(h).matrix @ eta.matrix @ h.matrix
    return MetricExtensor(0.5 * (m + m.T))


def gauge_det_check(f: GaugeFactorization) -> float:
    """Relative gap between ``|det h|`` and ``sqrt|det g|``."""
    target = np.sqrt(abs(np.prod(f.g.eig.eigenvalues)))
    return abs(abs(determinant(f.h)) - target) / target
