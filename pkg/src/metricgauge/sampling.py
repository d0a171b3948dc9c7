"""Seeded random inputs.

All randomness comes from numpy's PCG64 bit generator.  A run seed ``s``
and a trial index ``i`` select the stream ``PCG64(SeedSequence([s, i]))``,
which is fixed across platforms and independent of evaluation order.
"""
from __future__ import annotations

import numpy as np

from .extensor import Extensor
from .metric import MetricExtensor
from .multivector import Multivector


def trial_rng(seed: int, trial: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), int(trial)])))


def random_multivector(n: int, rng: np.random.Generator) -> Multivector:
    return Multivector(rng.uniform(-1.0, 1.0, 1 << n))


def random_vector(n: int, rng: np.random.Generator) -> Multivector:
    return Multivector.from_vector(rng.standard_normal(n))


def random_orthogonal(n: int, rng: np.random.Generator) -> Extensor:
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return Extensor(q * np.sign(np.diag(r)))


def random_invertible(n: int, rng: np.random.Generator, max_cond: float = 50.0) -> Extensor:
    while True:
        m = rng.standard_normal((n, n))
        if np.linalg.cond(m) < max_cond:
            return Extensor(m)


def random_metric(
    n: int,
    rng: np.random.Generator,
    p: int | None = None,
    low: float = 0.2,
    high: float = 5.0,
) -> MetricExtensor:
    """Symmetric metric with ``p`` positive eigenvalues (random if None).

    Eigenvalue magnitudes are log-uniform in ``[low, high]`` and the
    eigenbasis is a random rotation.
    """
    if p is None:
        p = int(rng.integers(0, n + 1))
    mags = np.exp(rng.uniform(np.log(low), np.log(high), n))
    signs = np.array([1.0] * p + [-1.0] * (n - p))
    q = random_orthogonal(n, rng).matrix
    m = q @ np.diag(signs * mags) @ q.T
    return MetricExtensor(0.5 * (m + m.T))
