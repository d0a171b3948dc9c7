"""Reciprocal frames, deformed frames, gauge bases and tetrad components.

Index conventions for every component table: rows are the tetrad (Greek)
index alpha, columns the coordinate (Latin) index i, both 0-based.  So
``eps_lower_up[a, i]`` is ``eps_a^i`` and ``eps_upper_down[a, i]`` is
``eps^a_i``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateBasis, MissingTables
from .extensor import SINGULAR_TOL, Extensor, adjoint, adjoint_inverse, extend, inverse
from .metric import MetricExtensor, g_scalar
from .multivector import Multivector
from .orthometric import OrthoMetric
from .sampling import random_multivector

FRAME_TOL = 1e-10


@dataclass(frozen=True)
class Frame:
    """Basis vectors ``e_k`` (columns of ``vectors``) and their Euclidean reciprocals ``e^k``."""

    vectors: np.ndarray
    reciprocal: np.ndarray

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def duality_residual(self) -> float:
        return float(np.max(np.abs(self.vectors.T @ self.reciprocal - np.eye(self.n))))

    @classmethod
    def standard(cls, n: int) -> Frame:
        return cls(np.eye(n), np.eye(n))

    @classmethod
    def from_json(cls, obj: dict) -> Frame:
        """``{"n": n, "vectors": [[...e_1...], ...]}``, one row per basis vector."""
        vecs = np.asarray(obj["vectors"], dtype=float)
        if vecs.shape != (obj["n"], obj["n"]):
            raise ValueError(f"'vectors' must be {obj['n']}x{obj['n']}, got shape {vecs.shape}")
        return reciprocal(vecs.T)

    def to_json(self) -> dict:
        return {"n": self.n, "vectors": self.vectors.T.tolist(), "reciprocal": self.reciprocal.T.tolist()}


def reciprocal(vectors) -> Frame:
    """Frame whose reciprocal columns are the inverse-transpose of ``vectors``."""
    e = np.array(vectors, dtype=float)
    if e.ndim != 2 or e.shape[0] != e.shape[1]:
        raise ValueError(f"basis matrix must be square, got shape {e.shape}")
    norms = np.linalg.norm(e, axis=0)
    if np.any(norms == 0.0) or abs(np.linalg.det(e / norms)) <= SINGULAR_TOL:
        raise DegenerateBasis("basis vectors are linearly dependent")
    return Frame(e, np.linalg.inv(e).T)


def deform_frame(lam: Extensor, f: Frame) -> Frame:
    """``{lam(e_k)}`` with reciprocal ``{lam*(e^k)}``."""
    out = Frame(lam.matrix @ f.vectors, adjoint_inverse(lam).matrix @ f.reciprocal)
    if out.duality_residual > FRAME_TOL * max(1.0, np.linalg.cond(lam.matrix)):
        raise DegenerateBasis(f"deformed frame lost duality (residual {out.duality_residual:.3g})")
    return out


def _metric_of(h: Extensor, eta: Extensor) -> MetricExtensor:
    m = h.matrix.T @ eta.matrix @ h.matrix
    return MetricExtensor(0.5 * (m + m.T))


@dataclass(frozen=True)
class GaugeBases:
    frame: Frame  # h(e_k) and h*(e^k)
    g_lower: np.ndarray  # g_jk = g(e_j) . e_k
    g_upper: np.ndarray  # g^jk = g^-1(e^j) . e^k
    residual_lower: float
    residual_upper: float
    residual_transport: float  # products carried by h and h* on random multivectors


def gauge_bases(h: Extensor, f: Frame, eta: OrthoMetric, g: MetricExtensor | None = None, trials: int = 4, seed: int = 0) -> GaugeBases:
    g = _metric_of(h, eta) if g is None else g
    deformed = deform_frame(h, f)
    g_lower = f.vectors.T @ g.matrix @ f.vectors
    g_upper = f.reciprocal.T @ g.inverse_metric.matrix @ f.reciprocal
    eta_lower = deformed.vectors.T @ eta.matrix @ deformed.vectors
    eta_upper = deformed.reciprocal.T @ eta.matrix @ deformed.reciprocal
    res_lo = float(np.max(np.abs(eta_lower - g_lower)))
    res_up = float(np.max(np.abs(eta_upper - g_upper)))

    rng = np.random.default_rng(seed)
    hstar = adjoint_inverse(h)
    res_tr = 0.0
    for _ in range(trials):
        x, y = random_multivector(g.n, rng), random_multivector(g.n, rng)
        for metric, op in ((g, h), (g.inverse_metric, hstar)):
            lhs = g_scalar(metric, x, y)
            rhs = g_scalar(eta, extend(op, x), extend(op, y))
            res_tr = max(res_tr, abs(lhs - rhs) / max(1.0, abs(lhs)))
    return GaugeBases(deformed, g_lower, g_upper, res_lo, res_up, res_tr)


@dataclass(frozen=True)
class TetradFrame:
    """Tetrad bases ``eps_a = h^-1(e_a)`` and ``eps^a = h^dagger(e^a)``."""

    frame: Frame
    h: Extensor
    eta: OrthoMetric
    source: Frame  # the e_a / e^a the tetrad was built from
    eta_lower: np.ndarray  # eta_ab = eta(e_a) . e_b
    eta_upper: np.ndarray  # eta^ab = eta^-1(e^a) . e^b
    residual_lower: float  # max |eps_a .g eps_b - eta_ab|
    residual_upper: float  # max |eps^a .g^-1 eps^b - eta^ab|

    @property
    def g(self) -> MetricExtensor:
        return _metric_of(self.h, self.eta)


def tetrad_bases(h: Extensor, eta: OrthoMetric, source: Frame | None = None) -> TetradFrame:
    """Tetrad frame of ``h``; ``source`` defaults to eta's orthonormal eigenbasis."""
    if source is None:
        u = eta.eig.eigenvectors
        source = Frame(u, u)
    eps = Frame(inverse(h).matrix @ source.vectors, adjoint(h).matrix @ source.reciprocal)
    g = _metric_of(h, eta)
    eta_lower = source.vectors.T @ eta.matrix @ source.vectors
    eta_upper = source.reciprocal.T @ inverse(eta).matrix @ source.reciprocal
    res_lo = float(np.max(np.abs(eps.vectors.T @ g.matrix @ eps.vectors - eta_lower)))
    res_up = float(np.max(np.abs(eps.reciprocal.T @ g.inverse_metric.matrix @ eps.reciprocal - eta_upper)))
    return TetradFrame(eps, h, eta, source, eta_lower, eta_upper, res_lo, res_up)


@dataclass(frozen=True)
class TetradComponents:
    """The four component species of a tetrad against a coordinate frame, plus metric tables."""

    eps_lower_up: np.ndarray  # eps_a^i = eps_a . d^i
    eps_lower_down: np.ndarray  # eps_ai = eps_a . g(d_i)
    eps_upper_up: np.ndarray  # eps^ai = eps^a . g^-1(d^i)
    eps_upper_down: np.ndarray  # eps^a_i = eps^a . d_i
    g_lower: np.ndarray  # g_ij
    g_upper: np.ndarray  # g^ij
    g_tetrad_lower: np.ndarray  # g_ab = g(eps_a) . eps_b
    g_tetrad_upper: np.ndarray  # g^ab
    eta_lower: np.ndarray
    eta_upper: np.ndarray
    coord: Frame

    def residuals(self) -> dict[str, float]:
        """Max-norm residual of every component relation."""
        n = self.g_lower.shape[0]
        eye = np.eye(n)
        L, Ld, Uu, U = self.eps_lower_up, self.eps_lower_down, self.eps_upper_up, self.eps_upper_down
        gl, gu = self.g_lower, self.g_upper
        el, eu = self.eta_lower, self.eta_upper

        def mx(a):
            return float(np.max(np.abs(a)))

        return {
            "index_lowering": mx(Ld - L @ gl.T),
            "index_raising": mx(L - Ld @ gu.T),
            "inverse_coordinate": mx(L.T @ U - eye),
            "inverse_tetrad": mx(L @ U.T - eye),
            "tetrad_metric_lower": max(mx(self.g_tetrad_lower - el), mx(L @ Ld.T - el)),
            "tetrad_metric_upper": max(mx(self.g_tetrad_upper - eu), mx(Uu @ U.T - eu)),
            "eta_lowering": mx(Ld - el @ U),
            "eta_raising": mx(U - eu @ Ld),
        }


def tetrad_components(tf: TetradFrame, coord: Frame, g: MetricExtensor | None = None) -> TetradComponents:
    g = tf.g if g is None else g
    gm, gi = g.matrix, g.inverse_metric.matrix
    d_lo, d_up = coord.vectors, coord.reciprocal
    e_lo, e_up = tf.frame.vectors, tf.frame.reciprocal
    return TetradComponents(
        eps_lower_up=e_lo.T @ d_up,
        eps_lower_down=e_lo.T @ gm @ d_lo,
        eps_upper_up=e_up.T @ gi @ d_up,
        eps_upper_down=e_up.T @ d_lo,
        g_lower=d_lo.T @ gm @ d_lo,
        g_upper=d_up.T @ gi @ d_up,
        g_tetrad_lower=e_lo.T @ gm @ e_lo,
        g_tetrad_upper=e_up.T @ gi @ e_up,
        eta_lower=tf.eta_lower,
        eta_upper=tf.eta_upper,
        coord=coord,
    )


@dataclass(frozen=True)
class VectorComponents:
    contra: np.ndarray  # v^a = eps^a_i v^i
    co: np.ndarray  # v_a = eps_a^i v_i
    contra_alt: np.ndarray  # v^a = eps^ai v_i
    co_alt: np.ndarray  # v_a = eps_ai v^i
    coord_contra: np.ndarray  # v^i = v . d^i
    coord_co: np.ndarray  # v_i = v . g(d_i)

    @property
    def residual(self) -> float:
        return float(max(np.max(np.abs(self.contra - self.contra_alt)), np.max(np.abs(self.co - self.co_alt))))


def _require(tc) -> TetradComponents:
    if tc is None:
        raise MissingTables("tetrad component tables have not been computed")
    return tc


def transform_vector(tc: TetradComponents, v, g: MetricExtensor) -> VectorComponents:
    """Tetrad components of ``v`` by both index routes."""
    tc = _require(tc)
    v = v.vector_part() if isinstance(v, Multivector) else np.asarray(v, dtype=float)
    vi = tc.coord.reciprocal.T @ v
    v_i = tc.coord.vectors.T @ g.matrix @ v
    return VectorComponents(
        contra=tc.eps_upper_down @ vi,
        co=tc.eps_lower_up @ v_i,
        contra_alt=tc.eps_upper_up @ v_i,
        co_alt=tc.eps_lower_down @ vi,
        coord_contra=vi,
        coord_co=v_i,
    )


def transform_tensor2(tc: TetradComponents, table, variance: str, inverse_direction: bool = False) -> np.ndarray:
    """Move a rank-2 tensor between coordinate and tetrad components.

    ``variance="covariant"`` maps ``T_ij`` to ``T_ab``; ``"contravariant"``
    maps ``T^ij`` to ``T^ab``.  ``inverse_direction`` maps tetrad components
    back to coordinate ones.
    """
    tc = _require(tc)
    t = np.asarray(table, dtype=float)
    if variance == "covariant":
        fwd, back = tc.eps_lower_up, tc.eps_upper_down
    elif variance == "contravariant":
        fwd, back = tc.eps_upper_down, tc.eps_lower_up
    else:
        raise ValueError(f"variance must be 'covariant' or 'contravariant', got {variance!r}")
    m = back if inverse_direction else fwd
    return m.T @ t @ m if inverse_direction else m @ t @ m.T
