"""(1,1)-extensors: linear operators on V and their outermorphism extensions."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotSymmetric, SingularExtensor
from .multivector import Multivector, check_dim, vector_wedge

SINGULAR_TOL = 1e-12
SYMMETRY_TOL = 1e-10
MAX_SWEEPS = 100


class Extensor:
    """A linear operator ``t`` on V, stored as its matrix in the orthonormal basis.

    Column ``j`` of :attr:`matrix` is ``t(b_(j+1))``.  Instances are immutable;
    the outermorphism table is built on first use and then only read.
    """

    def __init__(self, matrix):
        m = np.array(matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"extensor matrix must be square, got shape {m.shape}")
        check_dim(m.shape[0])
        m.flags.writeable = False
        self._m = m

    @classmethod
    def identity(cls, n: int) -> Extensor:
        return cls(np.eye(check_dim(n)))

    @classmethod
    def diagonal(cls, entries) -> Extensor:
        return cls(np.diag(np.asarray(entries, dtype=float)))

    @classmethod
    def from_json(cls, obj: dict) -> Extensor:
        t = cls(obj["matrix"])
        if t.n != obj["n"]:
            raise ValueError(f"'n' is {obj['n']} but 'matrix' is {t.n}x{t.n}")
        return t

    def to_json(self) -> dict:
        return {"n": self.n, "matrix": self._m.tolist()}

    @property
    def n(self) -> int:
        return self._m.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    def __call__(self, v):
        return apply(self, v)

    def __matmul__(self, other: Extensor) -> Extensor:
        return compose(self, other)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self._m.tolist()})"

    @cached_property
    def ext_matrix(self) -> np.ndarray:
        """The extended operator as a ``2**n x 2**n`` matrix over blade masks."""
        n = self.n
        size = 1 << n
        table = np.zeros((size, size))
        table[0, 0] = 1.0
        for mask in range(1, size):
            low = (mask & -mask).bit_length() - 1
            rest = mask ^ (1 << low)
            table[:, mask] = vector_wedge(self._m[:, low], table[:, rest])
        table.flags.writeable = False
        return table

    @cached_property
    def scaled_det(self) -> float:
        """Determinant of the matrix with its rows normalised to unit length."""
        norms = np.linalg.norm(self._m, axis=1)
        if np.any(norms == 0.0):
            return 0.0
        return determinant(Extensor(self._m / norms[:, None]))


def _as_vector(t: Extensor, v) -> np.ndarray:
    if isinstance(v, Multivector):
        if v.n != t.n:
            raise DimensionMismatch(f"extensor is {t.n}-dimensional, vector is {v.n}-dimensional")
        return v.vector_part()
    v = np.asarray(v, dtype=float)
    if v.shape != (t.n,):
        raise DimensionMismatch(f"expected a vector of length {t.n}, got shape {v.shape}")
    return v


def apply(t: Extensor, v):
    """``t(v)``; returns the same kind (array or Multivector) it was given."""
    out = t.matrix @ _as_vector(t, v)
    return Multivector.from_vector(out) if isinstance(v, Multivector) else out


def adjoint(t: Extensor) -> Extensor:
    return Extensor(t.matrix.T)


def compose(t: Extensor, s: Extensor) -> Extensor:
    """``t o s``, i.e. apply ``s`` first."""
    if t.n != s.n:
        raise DimensionMismatch(f"cannot compose {t.n}- and {s.n}-dimensional extensors")
    return Extensor(t.matrix @ s.matrix)


def extend(t: Extensor, x: Multivector) -> Multivector:
    if x.n != t.n:
        raise DimensionMismatch(f"extensor is {t.n}-dimensional, multivector is {x.n}-dimensional")
    return Multivector(t.ext_matrix @ x.coeffs)


def determinant(t: Extensor) -> float:
    """Coefficient of the pseudoscalar in ``extend(t, I)``."""
    acc = np.zeros(1 << t.n)
    acc[0] = 1.0
    for j in reversed(range(t.n)):
        acc = vector_wedge(t.matrix[:, j], acc)
    return float(acc[-1])


def _require_invertible(t: Extensor) -> None:
    if abs(t.scaled_det) <= SINGULAR_TOL:
        raise SingularExtensor(f"extensor is singular (row-scaled |det| = {abs(t.scaled_det):.3g})")


def inverse(t: Extensor) -> Extensor:
    _require_invertible(t)
    return Extensor(np.linalg.inv(t.matrix))


def adjoint_inverse(t: Extensor) -> Extensor:
    """``t* = (t^-1)^dagger``."""
    _require_invertible(t)
    return Extensor(np.linalg.inv(t.matrix).T)


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues and orthonormal eigenvector columns of a symmetric extensor."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def vector(self, k: int) -> np.ndarray:
        return self.eigenvectors[:, k]


def _jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi rotations; returns (diagonal, accumulated rotation)."""
    a = a.copy()
    n = a.shape[0]
    v = np.eye(n)
    scale = max(np.max(np.abs(a)), np.finfo(float).tiny)
    for _ in range(MAX_SWEEPS):
        off = np.sqrt(np.sum(np.triu(a, 1) ** 2))
        if off <= 1e-16 * scale:
            return np.diag(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    raise NoConvergence(f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")


def sym_eigen(t: Extensor, tie_tol: float = 1e-12) -> EigenDecomposition:
    """Eigendecomposition of a symmetric extensor with a deterministic ordering.

    Positive eigenvalues come first in descending order, then the negative
    ones in descending order.  Eigenvalues equal to within ``tie_tol``
    (relative) are ordered by the index of each eigenvector's dominant
    component, and every eigenvector is signed so that component is positive.
    """
    m = t.matrix
    if np.max(np.abs(m - m.T)) > SYMMETRY_TOL:
        raise NotSymmetric(f"extensor is not symmetric (max |t - t^T| = {np.max(np.abs(m - m.T)):.3g})")
    lam, vec = _jacobi(0.5 * (m + m.T))
    dominant = np.argmax(np.abs(vec) > np.max(np.abs(vec), axis=0) - 1e-12, axis=0)
    vec = vec * np.where(vec[dominant, np.arange(len(lam))] < 0, -1.0, 1.0)

    order = sorted(range(len(lam)), key=lambda k: (lam[k] <= 0, -lam[k]))
    scale = max(np.max(np.abs(lam)), np.finfo(float).tiny)
    # regroup ties by dominant index
    grouped, start = [], 0
    for i in range(1, len(order) + 1):
        if i == len(order) or abs(lam[order[i]] - lam[order[start]]) > tie_tol * scale:
            grouped.extend(sorted(order[start:i], key=lambda k: dominant[k]))
            start = i
    lam, vec = lam[grouped], vec[:, grouped]
    lam.flags.writeable = False
    vec.flags.writeable = False
    return EigenDecomposition(lam, vec)
