"""Metric products evaluated by transport through a gauge extensor.

For a gauge ``h`` with ``g = h^dagger o eta o h`` every g-product satisfies

    h(X *g Y) = h(X) *eta h(Y)

where ``h`` acts through its outermorphism.  :class:`DeformedAlgebra` keeps
the outermorphism tables of ``h``, ``h^-1``, ``h*`` and ``h^dagger`` so that
a g-product costs two table applications, one eta-product and one inverse
application.  The eta-products themselves reduce to sign-weighted Euclidean
kernels in an eigenbasis of eta.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DimensionMismatch
from .extensor import Extensor, adjoint, adjoint_inverse, extend, inverse
from .gauge import GaugeFactorization, factor_gauge, reconstruction_residual
from .metric import MetricExtensor, direct_clifford, direct_product
from .multivector import PRODUCTS, Multivector, contract_left, contract_right, diagonal_metric_product
from .orthometric import OrthoMetric, eta_composite
from .sampling import random_multivector, random_vector, trial_rng

DEFAULT_TOL = 1e-9


class DeformedAlgebra:
    """The g-algebra realised as the eta-algebra pulled back along ``h``."""

    def __init__(self, h: Extensor, eta: OrthoMetric, g: MetricExtensor | None = None):
        if g is None:
            m = h.matrix.T @ eta.matrix @ h.matrix
            g = MetricExtensor(0.5 * (m + m.T))
        elif reconstruction_residual(h, eta, g) > DEFAULT_TOL * max(1.0, float(np.max(np.abs(g.matrix)))):
            raise ValueError("h is not a gauge for g relative to eta")
        self.h = h
        self.eta = eta
        self.g = g

    @classmethod
    def for_metric(cls, g: MetricExtensor, eta: OrthoMetric | None = None) -> DeformedAlgebra:
        if eta is None:
            eta = eta_composite(g.signature[0], g.n)
        return cls.from_factorization(factor_gauge(g, eta))

    @classmethod
    def from_factorization(cls, f: GaugeFactorization) -> DeformedAlgebra:
        return cls(f.h, f.eta, f.g)

    @property
    def n(self) -> int:
        return self.h.n

    @cached_property
    def hext(self) -> np.ndarray:
        return self.h.ext_matrix

    @cached_property
    def hinv_ext(self) -> np.ndarray:
        return inverse(self.h).ext_matrix

    @cached_property
    def hstar_ext(self) -> np.ndarray:
        return adjoint_inverse(self.h).ext_matrix

    @cached_property
    def hstar_inv_ext(self) -> np.ndarray:
        return adjoint(self.h).ext_matrix

    @cached_property
    def _eta_frame(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        u = self.eta.eig.eigenvectors
        return self.eta.eig.eigenvalues, Extensor(u).ext_matrix, Extensor(u.T).ext_matrix

    def _check(self, x: Multivector, y: Multivector) -> None:
        for z in (x, y):
            if z.n != self.n:
                raise DimensionMismatch(f"algebra is {self.n}-dimensional, multivector is {z.n}-dimensional")

    def eta_product(self, op: str, x: Multivector, y: Multivector) -> Multivector:
        """eta-product through the orthogonal kernel, rotating into eta's eigenbasis if needed."""
        self._check(x, y)
        if self.eta.is_diagonal:
            return diagonal_metric_product(op, np.diag(self.eta.matrix), x, y)
        lam, to_std, from_std = self._eta_frame
        out = diagonal_metric_product(op, lam, Multivector(from_std @ x.coeffs), Multivector(from_std @ y.coeffs))
        return Multivector(to_std @ out.coeffs)

    def product(self, op: str, x: Multivector, y: Multivector) -> Multivector:
        self._check(x, y)
        hx = Multivector(self.hext @ x.coeffs)
        hy = Multivector(self.hext @ y.coeffs)
        return Multivector(self.hinv_ext @ self.eta_product(op, hx, hy).coeffs)

    def inverse_product(self, op: str, x: Multivector, y: Multivector) -> Multivector:
        """g^-1-products via ``h*(X *g^-1 Y) = h*(X) *eta h*(Y)``."""
        self._check(x, y)
        hx = Multivector(self.hstar_ext @ x.coeffs)
        hy = Multivector(self.hstar_ext @ y.coeffs)
        return Multivector(self.hstar_inv_ext @ self.eta_product(op, hx, hy).coeffs)


def golden_product(da: DeformedAlgebra, op: str, x: Multivector, y: Multivector) -> Multivector:
    return da.product(op, x, y)


def golden_inverse(da: DeformedAlgebra, op: str, x: Multivector, y: Multivector) -> Multivector:
    return da.inverse_product(op, x, y)


def relative_residual(a, b) -> float:
    """``max|a - b| / max(max|a|, max|b|, 1)``."""
    a = a.coeffs if isinstance(a, Multivector) else np.asarray(a, dtype=float)
    b = b.coeffs if isinstance(b, Multivector) else np.asarray(b, dtype=float)
    scale = max(float(np.max(np.abs(a))), float(np.max(np.abs(b))), 1.0)
    return float(np.max(np.abs(a - b))) / scale


# identity name -> what is compared
IDENTITIES = {
    "gauge_reconstruction": "h^dagger eta h against g",
    "wedge_transport": "X ^ Y against h^-1[h(X) ^ h(Y)]",
    "scalar_transport": "X .g Y against h(X) .eta h(Y)",
    "left_contraction_transport": "X _|g Y against h^-1[h(X) _|eta h(Y)]",
    "right_contraction_transport": "X |_g Y against h^-1[h(X) |_eta h(Y)]",
    "clifford_transport": "X *g Y (defining relations) against h^-1[h(X) *eta h(Y)]",
    "adjoint_left_contraction": "h^dagger(X) _| Y against h^-1[X _| h(Y)]",
    "adjoint_right_contraction": "X |_ h^dagger(Y) against h^-1[h(X) |_ Y]",
    "scalar_left_clifford": "a *g X against h^-1[a *eta h(X)]",
    "scalar_right_clifford": "X *g a against h^-1[h(X) *eta a]",
    "vector_left_clifford": "v *g X against h^-1[h(v) *eta h(X)]",
    "vector_right_clifford": "X *g v against h^-1[h(X) *eta h(v)]",
    "vector_chain": "v1 *g ... *g vk against h^-1[h(v1) *eta ... *eta h(vk)]",
    "vector_chain_times_multivector": "(v1 *g ... *g vk) *g X against h^-1[h(v1) *eta ... *eta h(X)]",
    "basis_expansion": "X *g Y rebuilt from X expanded over g-monomials of a random basis",
    "inverse_metric_transport": "every g^-1-product against h*^-1[h*(X) *eta h*(Y)]",
}


@dataclass
class GoldenReport:
    n: int
    signature: tuple[int, int]
    trials: int
    seed: int
    tol: float
    residuals: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r <= self.tol for r in self.residuals.values())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "signature": list(self.signature),
            "trials": self.trials,
            "seed": self.seed,
            "tol": self.tol,
            "residuals": {k: self.residuals[k] for k in IDENTITIES},
            "pass": self.passed,
        }


def _chain(da: DeformedAlgebra, vectors: list[Multivector], tail: Multivector) -> tuple[Multivector, Multivector]:
    """(direct g-chain v1...vk tail, eta-chain h(v1)...h(vk) h(tail)), both right-associated."""
    direct, eta_side = tail, Multivector(da.hext @ tail.coeffs)
    for v in reversed(vectors):
        direct = direct_clifford(da.g, v, direct)
        eta_side = da.eta_product("clifford", Multivector(da.hext @ v.coeffs), eta_side)
    return direct, eta_side


def _expansion_residual(da: DeformedAlgebra, x: Multivector, y: Multivector, rng: np.random.Generator) -> float:
    n = da.n
    while True:
        basis = rng.standard_normal((n, n))
        if np.linalg.cond(basis) < 1e3:
            break
    es = [Multivector.from_vector(basis[:, j]) for j in range(n)]
    hes = [Multivector(da.hext @ e.coeffs) for e in es]
    hy = Multivector(da.hext @ y.coeffs)
    size = 1 << n
    monomials = np.zeros((size, size))
    monomials[0, 0] = 1.0
    transported = np.zeros((size, size))
    transported[:, 0] = hy.coeffs
    for mask in range(1, size):
        low = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << low)
        monomials[:, mask] = direct_clifford(da.g, es[low], Multivector(monomials[:, rest])).coeffs
        transported[:, mask] = da.eta_product("clifford", hes[low], Multivector(transported[:, rest])).coeffs
    coeffs = np.linalg.solve(monomials, x.coeffs)
    rebuilt = da.hinv_ext @ (transported @ coeffs)
    return relative_residual(direct_clifford(da.g, x, y), rebuilt)


def _trial(da: DeformedAlgebra, seed: int, trial: int) -> dict[str, float]:
    rng = trial_rng(seed, trial)
    n = da.n
    g = da.g
    h = da.h
    x, y = random_multivector(n, rng), random_multivector(n, rng)
    v = random_vector(n, rng)
    alpha = Multivector.scalar(n, float(rng.uniform(-2.0, 2.0)))
    k = int(rng.integers(2, n + 1))
    vs = [random_vector(n, rng) for _ in range(k)]
    r: dict[str, float] = {}

    r["gauge_reconstruction"] = reconstruction_residual(h, da.eta, g) / max(1.0, float(np.max(np.abs(g.matrix))))
    for op, name in [
        ("wedge", "wedge_transport"),
        ("scalar", "scalar_transport"),
        ("lcontract", "left_contraction_transport"),
        ("rcontract", "right_contraction_transport"),
        ("clifford", "clifford_transport"),
    ]:
        r[name] = relative_residual(direct_product(op, g, x, y), da.product(op, x, y))

    hx, hy = extend(h, x), extend(h, y)
    hdag = adjoint(h)
    r["adjoint_left_contraction"] = relative_residual(
        contract_left(extend(hdag, x), y), da.hinv_ext @ contract_left(x, hy).coeffs
    )
    r["adjoint_right_contraction"] = relative_residual(
        contract_right(x, extend(hdag, y)), da.hinv_ext @ contract_right(hx, y).coeffs
    )
    r["scalar_left_clifford"] = relative_residual(direct_clifford(g, alpha, x), da.product("clifford", alpha, x))
    r["scalar_right_clifford"] = relative_residual(direct_clifford(g, x, alpha), da.product("clifford", x, alpha))
    r["vector_left_clifford"] = relative_residual(direct_clifford(g, v, x), da.product("clifford", v, x))
    r["vector_right_clifford"] = relative_residual(direct_clifford(g, x, v), da.product("clifford", x, v))

    one = Multivector.scalar(n, 1.0)
    direct, eta_side = _chain(da, vs, one)
    r["vector_chain"] = relative_residual(direct, da.hinv_ext @ eta_side.coeffs)
    direct_x = direct_clifford(g, direct, x)
    _, eta_side_x = _chain(da, vs, x)
    r["vector_chain_times_multivector"] = relative_residual(direct_x, da.hinv_ext @ eta_side_x.coeffs)

    r["basis_expansion"] = _expansion_residual(da, x, y, rng)

    ginv = g.inverse_metric
    r["inverse_metric_transport"] = max(
        relative_residual(direct_product(op, ginv, x, y), da.inverse_product(op, x, y)) for op in PRODUCTS
    )
    return r


def verify_golden(
    g: MetricExtensor,
    trials: int,
    seed: int,
    tol: float = DEFAULT_TOL,
    eta: OrthoMetric | None = None,
    h: Extensor | None = None,
    workers: int = 1,
) -> GoldenReport:
    """Check every transport identity on ``trials`` random draws.

    Trial ``i`` draws from its own stream (see :func:`metricgauge.sampling.trial_rng`),
    so the report does not depend on ``workers``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if h is None:
        da = DeformedAlgebra.for_metric(g, eta)
    else:
        da = DeformedAlgebra(h, eta if eta is not None else eta_composite(g.signature[0], g.n), g)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda i: _trial(da, seed, i), range(trials)))
    else:
        results = [_trial(da, seed, i) for i in range(trials)]
    report = GoldenReport(g.n, g.signature, trials, seed, tol)
    for name in IDENTITIES:
        report.residuals[name] = max(res[name] for res in results)
    return report


__all__ = [
    "DeformedAlgebra",
    "GoldenReport",
    "IDENTITIES",
    "golden_inverse",
    "golden_product",
    "relative_residual",
    "verify_golden",
]
