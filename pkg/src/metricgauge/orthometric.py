"""Orthogonal metric extensors (eta = eta^dagger = eta^-1) and Lorentz extensors."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import NotOrthogonal, SingularCayley
from .extensor import EigenDecomposition, Extensor, determinant, extend, inverse
from .metric import MetricExtensor, g_scalar, metric_adjoint
from .multivector import Multivector, check_dim, clifford

ORTHO_TOL = 1e-10
LORENTZ_TOL = 1e-9


class OrthoMetric(MetricExtensor):
    """A metric extensor that is also Euclidean-orthogonal; eigenvalues are +-1.

    ``frame`` optionally pins the orthonormal eigenbasis (columns, +1
    eigenvectors first) when the constructor knows it; otherwise it comes
    from the eigensolver.
    """

    def __init__(self, matrix, frame=None):
        super().__init__(matrix)
        m = self.matrix
        resid = float(np.max(np.abs(m @ m - np.eye(self.n))))
        if resid > ORTHO_TOL:
            raise NotOrthogonal(f"eta o eta differs from the identity by {resid:.3g}")
        self._frame = None if frame is None else np.array(frame, dtype=float)

    @cached_property
    def eig(self) -> EigenDecomposition:
        if self._frame is None:
            return super().eig
        u = self._frame
        lam = np.round(np.einsum("ik,ij,jk->k", u, self.matrix, u))
        lam.flags.writeable = False
        u.flags.writeable = False
        return EigenDecomposition(lam, u)

    @property
    def is_diagonal(self) -> bool:
        m = self.matrix
        return bool(np.all(m == np.diag(np.diag(m))))

    @classmethod
    def from_json(cls, obj: dict) -> OrthoMetric:
        if "matrix" not in obj and "signature" in obj:
            p, q = obj["signature"]
            return eta_composite(int(p), int(p) + int(q))
        eta = cls(obj["matrix"])
        if eta.n != obj["n"]:
            raise ValueError(f"'n' is {obj['n']} but 'matrix' is {eta.n}x{eta.n}")
        if "signature" in obj and tuple(obj["signature"]) != eta.signature:
            raise ValueError(f"declared signature {list(obj['signature'])} but eigenvalues give {list(eta.signature)}")
        return eta


def eta_basis_vector(j: int, n: int) -> OrthoMetric:
    """The reflection-type extensor ``v -> b_j v b_j`` (1-based ``j``)."""
    n = check_dim(n)
    if not 1 <= j <= n:
        raise IndexError(f"basis index {j} out of range 1..{n}")
    bj = Multivector.basis_vector(n, j)
    cols = [clifford(clifford(bj, Multivector.basis_vector(n, k)), bj).vector_part() for k in range(1, n + 1)]
    frame = np.eye(n)[:, [j - 1] + [k for k in range(n) if k != j - 1]]
    return OrthoMetric(np.column_stack(cols), frame=frame)


def eta_composite(p: int, n: int) -> OrthoMetric:
    """``(-1)**(p+1)`` times the composition of the first ``p`` basis reflections.

    Fixes ``b_1..b_p`` and negates the rest, i.e. ``diag(+1 x p, -1 x (n-p))``.
    """
    n = check_dim(n)
    if not 0 <= p <= n:
        raise ValueError(f"p must lie in 0..{n}, got {p}")
    m = np.eye(n)
    for j in range(1, p + 1):
        m = m @ eta_basis_vector(j, n).matrix
    return OrthoMetric((-1.0) ** (p + 1) * m, frame=np.eye(n))


def eta_from_signature(p: int, q: int) -> OrthoMetric:
    return eta_composite(p, p + q)


def _require_orthogonal(theta: Extensor) -> None:
    m = theta.matrix
    resid = float(np.max(np.abs(m.T @ m - np.eye(theta.n))))
    if resid > ORTHO_TOL:
        raise NotOrthogonal(f"operator is not orthogonal (max |T^T T - 1| = {resid:.3g})")


def eta_general(theta: Extensor, p: int) -> OrthoMetric:
    """``theta o eta_b o theta^dagger``, with eigenvectors ``theta(b_k)``."""
    _require_orthogonal(theta)
    eta_b = eta_composite(p, theta.n)
    m = theta.matrix @ eta_b.matrix @ theta.matrix.T
    return OrthoMetric(0.5 * (m + m.T), frame=theta.matrix)


def sandwich_eta(theta: Extensor, p: int, v: Multivector) -> Multivector:
    """Evaluate ``(-1)**(p+1) theta(b_1...b_p) v theta(b_p...b_1)`` with Clifford products."""
    n = theta.n
    front = Multivector.scalar(n, 1.0)
    back = Multivector.scalar(n, 1.0)
    for j in range(1, p + 1):
        uj = extend(theta, Multivector.basis_vector(n, j))
        front = clifford(front, uj)
        back = clifford(uj, back)
    return (-1.0) ** (p + 1) * clifford(clifford(front, v), back)


def eta_factor(theta: Extensor, j: int, v: Multivector) -> Multivector:
    """``theta(b_j) v theta(b_j)``, the conjugated single-vector factor."""
    uj = extend(theta, Multivector.basis_vector(theta.n, j))
    return clifford(clifford(uj, v), uj)


@dataclass(frozen=True)
class LorentzReport:
    """Residuals of the three equivalent eta-orthogonality tests."""

    is_lorentz: bool
    residual_sandwich: float  # max |L^T eta L - eta|
    residual_pairs: float  # max |L(v).eta L(w) - v.eta w| over sampled pairs
    residual_adjoint: float  # max |L^dagger(eta) - L^-1|
    agree: bool

    def __bool__(self) -> bool:
        return self.is_lorentz


def is_lorentz(lam: Extensor, eta: OrthoMetric, tol: float = LORENTZ_TOL, pairs: int = 8, seed: int = 0) -> LorentzReport:
    n = eta.n
    if lam.n != n:
        raise ValueError(f"extensor is {lam.n}-dimensional, eta is {n}-dimensional")
    r_sand = float(np.max(np.abs(lam.matrix.T @ eta.matrix @ lam.matrix - eta.matrix)))

    rng = np.random.default_rng(seed)
    vecs = [np.eye(n)[i] for i in range(n)] + [rng.standard_normal(n) for _ in range(pairs)]
    r_pairs = 0.0
    for v in vecs:
        for w in vecs:
            lv = Multivector.from_vector(lam.matrix @ v)
            lw = Multivector.from_vector(lam.matrix @ w)
            lhs = g_scalar(eta, lv, lw)
            rhs = g_scalar(eta, Multivector.from_vector(v), Multivector.from_vector(w))
            r_pairs = max(r_pairs, abs(lhs - rhs) / max(1.0, np.dot(v, v) ** 0.5 * np.dot(w, w) ** 0.5))

    try:
        r_adj = float(np.max(np.abs(metric_adjoint(eta, lam).matrix - inverse(lam).matrix)))
    except ValueError:
        r_adj = float("inf")

    verdicts = [r <= tol for r in (r_sand, r_pairs, r_adj)]
    return LorentzReport(verdicts[0], r_sand, r_pairs, r_adj, len(set(verdicts)) == 1)


def random_lorentz(eta: OrthoMetric, seed=None, scale: float = 0.5, max_tries: int = 50) -> Extensor:
    """Cayley transform ``(1 - A)^-1 (1 + A)`` of a random ``A`` with ``eta A`` antisymmetric.

    ``seed`` may be an int or a ``numpy.random.Generator``.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    n = eta.n
    for _ in range(max_tries):
        k = rng.standard_normal((n, n)) * scale
        a = eta.matrix @ (k - k.T) / 2.0
        try:
            return cayley(eta, a)
        except SingularCayley:
            continue
    raise SingularCayley(f"no well-conditioned Cayley transform in {max_tries} draws")


def cayley(eta: OrthoMetric, a) -> Extensor:
    a = np.asarray(a, dtype=float)
    eye = np.eye(eta.n)
    if np.linalg.cond(eye - a) > 1e6:
        raise SingularCayley("1 - A is (nearly) singular")
    return Extensor(np.linalg.solve(eye - a, eye + a))


def det_sign_check(eta: OrthoMetric) -> float:
    """``det(eta) - (-1)**(n-p)``."""
    p, q = eta.signature
    return determinant(eta) - (-1.0) ** q
