"""Metric extensors and the products of the metric algebra they define.

A metric ``G`` on V is encoded against the Euclidean background by the
symmetric operator ``g`` with ``v .G w = g(v) . w``.  The g-products are

* ``X .g Y  = g(X) . Y``
* ``X _|g Y = g(X) _| Y`` and ``X |_g Y = X |_ g(Y)``
* the g-Clifford product, fixed by ``v *g X = v _|g X + v ^ X``.

The production Clifford route transports through a gauge (see
:mod:`metricgauge.golden`); :func:`direct_clifford` evaluates the defining
relations recursively and is kept as a reference.
"""
from __future__ import annotations

from functools import cached_property

import numpy as np

from .errors import Degenerate, DimensionMismatch, NotSymmetric
from .extensor import (
    SINGULAR_TOL,
    SYMMETRY_TOL,
    EigenDecomposition,
    Extensor,
    adjoint,
    compose,
    extend,
    inverse,
    sym_eigen,
)
from .multivector import (
    Multivector,
    contract_left,
    contract_right,
    euclidean_scalar,
    vector_lcontract,
    vector_wedge,
    wedge,
)


class MetricExtensor(Extensor):
    """Symmetric, non-degenerate extensor with its spectrum and signature."""

    def __init__(self, matrix):
        super().__init__(matrix)
        m = self.matrix
        asym = float(np.max(np.abs(m - m.T)))
        if asym > SYMMETRY_TOL:
            raise NotSymmetric(f"metric is not symmetric (max |g - g^T| = {asym:.3g})")
        if abs(self.scaled_det) <= SINGULAR_TOL:
            raise Degenerate(f"metric is degenerate (row-scaled |det| = {abs(self.scaled_det):.3g})")

    @cached_property
    def eig(self) -> EigenDecomposition:
        return sym_eigen(self)

    @property
    def signature(self) -> tuple[int, int]:
        p = int(np.sum(self.eig.eigenvalues > 0))
        return p, self.n - p

    @cached_property
    def inverse_metric(self) -> MetricExtensor:
        m = inverse(self).matrix
        return MetricExtensor(0.5 * (m + m.T))

    @cached_property
    def deformation(self):
        """Default gauge transport, against the standard-basis metric of equal signature."""
        from .golden import DeformedAlgebra

        return DeformedAlgebra.for_metric(self)

    @classmethod
    def from_json(cls, obj: dict) -> MetricExtensor:
        g = cls(obj["matrix"])
        if g.n != obj["n"]:
            raise ValueError(f"'n' is {obj['n']} but 'matrix' is {g.n}x{g.n}")
        if "signature" in obj and tuple(obj["signature"]) != g.signature:
            raise ValueError(f"declared signature {list(obj['signature'])} but eigenvalues give {list(g.signature)}")
        return g

    def to_json(self) -> dict:
        return {"n": self.n, "matrix": self.matrix.tolist(), "signature": list(self.signature)}


def metric_from_matrix(m) -> MetricExtensor:
    return MetricExtensor(m)


def _check(g: Extensor, *mvs: Multivector) -> None:
    for x in mvs:
        if x.n != g.n:
            raise DimensionMismatch(f"metric is {g.n}-dimensional, multivector is {x.n}-dimensional")


def g_scalar(g: Extensor, x: Multivector, y: Multivector) -> float:
    _check(g, x, y)
    return euclidean_scalar(extend(g, x), y)


def g_contract_left(g: Extensor, x: Multivector, y: Multivector) -> Multivector:
    _check(g, x, y)
    return contract_left(extend(g, x), y)


def g_contract_right(g: Extensor, x: Multivector, y: Multivector) -> Multivector:
    _check(g, x, y)
    return contract_right(x, extend(g, y))


def direct_clifford(g: Extensor, x: Multivector, y: Multivector) -> Multivector:
    """g-Clifford product from its defining relations alone.

    Writing a blade as ``b_i ^ R`` with ``i`` its lowest index,
    ``(b_i ^ R) Y = b_i (R Y) - (b_i _|g R) Y`` and
    ``b_i Z = g(b_i) _| Z + b_i ^ Z``; the second term has lower grade, so
    the recursion bottoms out at the scalar blade.
    """
    _check(g, x, y)
    n = g.n
    gm = g.matrix
    unit = np.eye(n)
    memo: dict[int, np.ndarray] = {0: y.coeffs}

    def left(mask: int) -> np.ndarray:
        if mask in memo:
            return memo[mask]
        low = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << low)
        z = left(rest)
        out = vector_lcontract(gm[:, low], z) + vector_wedge(unit[low], z)
        blade = np.zeros(1 << n)
        blade[rest] = 1.0
        lowered = vector_lcontract(gm[:, low], blade)
        for m in np.flatnonzero(lowered):
            out = out - lowered[m] * left(int(m))
        memo[mask] = out
        return out

    acc = np.zeros(1 << n)
    for a in np.flatnonzero(x.coeffs):
        acc += x.coeffs[a] * left(int(a))
    return Multivector(acc)


def g_clifford(g: MetricExtensor, x: Multivector, y: Multivector, route: str = "golden") -> Multivector:
    _check(g, x, y)
    if route == "golden":
        return g.deformation.product("clifford", x, y)
    if route == "direct":
        return direct_clifford(g, x, y)
    raise ValueError(f"unknown route {route!r}; expected 'golden' or 'direct'")


def direct_product(op: str, g: Extensor, x: Multivector, y: Multivector) -> Multivector:
    """Every g-product straight from its definition; ``scalar`` returns grade 0."""
    if op == "wedge":
        _check(g, x, y)
        return wedge(x, y)
    if op == "scalar":
        return Multivector.scalar(g.n, g_scalar(g, x, y))
    if op == "lcontract":
        return g_contract_left(g, x, y)
    if op == "rcontract":
        return g_contract_right(g, x, y)
    if op == "clifford":
        return direct_clifford(g, x, y)
    raise ValueError(f"unknown product {op!r}")


def metric_adjoint(g: MetricExtensor, t: Extensor) -> Extensor:
    """The g-adjoint ``g^-1 o t^dagger o g``."""
    if t.n != g.n:
        raise DimensionMismatch(f"metric is {g.n}-dimensional, extensor is {t.n}-dimensional")
    return compose(inverse(g), compose(adjoint(t), g))
