"""Dense multivectors over an orthonormal Euclidean basis.

A multivector in dimension ``n`` is a length ``2**n`` coefficient array.
The entry at bitmask ``m`` multiplies the blade ``b_i1 ^ ... ^ b_ik`` whose
indices are the set bits of ``m`` in increasing order (bit 0 is ``b1``).
Every sign in the library is a transposition count against that ordering.

Besides the Euclidean products this module hosts the "orthogonal kernel":
products for a metric that is diagonal in the working basis, obtained from
the Euclidean ones by weighting each blade with the product of the diagonal
entries over its indices.
"""
from __future__ import annotations

from functools import lru_cache
from numbers import Real

import numpy as np

from .errors import DimensionMismatch

MIN_DIM = 2
MAX_DIM = 12

PRODUCTS = ("wedge", "scalar", "lcontract", "rcontract", "clifford")


def check_dim(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or not MIN_DIM <= n <= MAX_DIM:
        raise ValueError(f"dimension must be an integer in [{MIN_DIM}, {MAX_DIM}], got {n!r}")
    return int(n)


@lru_cache(maxsize=None)
def popcounts(n: int) -> np.ndarray:
    """Grade of every blade index."""
    out = np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.int64)
    out.flags.writeable = False
    return out


@lru_cache(maxsize=None)
def sign_table(n: int) -> np.ndarray:
    """``S[a, b]`` with ``b_a b_b = S[a, b] b_(a xor b)`` in the Euclidean algebra."""
    idx = np.arange(1 << n, dtype=np.int64)
    pc = popcounts(n)
    swaps = np.zeros((1 << n, 1 << n), dtype=np.int16)
    for j in range(n):
        # every b_j of the right factor must pass the left factor's higher indices
        swaps += ((idx >> j) & 1).astype(np.int16)[None, :] * pc[idx >> (j + 1)].astype(np.int16)[:, None]
    table = np.where(swaps % 2 == 0, 1, -1).astype(np.int8)
    table.flags.writeable = False
    return table


@lru_cache(maxsize=None)
def _bit_moves(n: int, i: int) -> tuple[np.ndarray, np.ndarray]:
    """Masks lacking bit ``i`` and the sign of moving ``b_(i+1)`` to the front of them."""
    idx = np.arange(1 << n, dtype=np.int64)
    bit = 1 << i
    masks = idx[(idx & bit) == 0]
    signs = np.where(popcounts(n)[masks & (bit - 1)] % 2 == 0, 1.0, -1.0)
    masks.flags.writeable = False
    signs.flags.writeable = False
    return masks, signs


def blade_weights(diag) -> np.ndarray:
    """``w[m]`` = product of ``diag[i]`` over the set bits ``i`` of ``m``."""
    diag = np.asarray(diag, dtype=float)
    w = np.ones(1 << diag.size)
    for i, d in enumerate(diag):
        bit = 1 << i
        w[bit:2 * bit] = w[:bit] * d
    return w


def vector_wedge(v: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Raw-array ``v ^ Y`` for a vector given by its ``n`` components."""
    n = len(v)
    out = np.zeros_like(y)
    for i in range(n):
        if v[i] == 0.0:
            continue
        masks, signs = _bit_moves(n, i)
        out[masks | (1 << i)] += v[i] * signs * y[masks]
    return out


def vector_lcontract(v: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Raw-array Euclidean ``v _| Y``."""
    n = len(v)
    out = np.zeros_like(y)
    for i in range(n):
        if v[i] == 0.0:
            continue
        masks, signs = _bit_moves(n, i)
        out[masks] += v[i] * signs * y[masks | (1 << i)]
    return out


def _kernel(op: str, x: np.ndarray, y: np.ndarray, w: np.ndarray | None) -> np.ndarray:
    n = x.size.bit_length() - 1
    if op == "scalar":
        out = np.zeros_like(x)
        out[0] = np.dot(x * y, w) if w is not None else np.dot(x, y)
        return out
    if op not in PRODUCTS:
        raise ValueError(f"unknown product {op!r}; expected one of {PRODUCTS}")
    out = np.zeros_like(x)
    b = np.flatnonzero(y)
    if b.size == 0:
        return out
    yb = y[b]
    signs = sign_table(n)
    for a in np.flatnonzero(x):
        if op == "wedge":
            keep = (a & b) == 0
            coef = 1.0
        elif op == "lcontract":
            keep = (a & b) == a
            coef = 1.0 if w is None else w[a]
        elif op == "rcontract":
            keep = (a & b) == b
            coef = 1.0 if w is None else w[b[keep]]
        else:
            keep = slice(None)
            coef = 1.0 if w is None else w[a & b]
        bk = b[keep]
        out[a ^ bk] += x[a] * coef * signs[a, bk] * yb[keep]
    return out


class Multivector:
    """Immutable dense multivector.

    ``*`` between multivectors is the Euclidean Clifford product, ``^`` the
    exterior product; ``*`` with a real number scales.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=float)
        if c.ndim != 1:
            raise ValueError("coefficients must be a 1-d array")
        n = c.size.bit_length() - 1
        if c.size == 0 or (1 << n) != c.size:
            raise ValueError(f"coefficient count must be a power of two, got {c.size}")
        check_dim(n)
        c.flags.writeable = False
        self._c = c

    # construction

    @classmethod
    def zero(cls, n: int) -> Multivector:
        return cls(np.zeros(1 << check_dim(n)))

    @classmethod
    def scalar(cls, n: int, value: float) -> Multivector:
        c = np.zeros(1 << check_dim(n))
        c[0] = value
        return cls(c)

    @classmethod
    def basis_vector(cls, n: int, j: int) -> Multivector:
        """``b_j`` with the 1-based index used throughout the docs."""
        n = check_dim(n)
        if not 1 <= j <= n:
            raise IndexError(f"basis index {j} out of range 1..{n}")
        c = np.zeros(1 << n)
        c[1 << (j - 1)] = 1.0
        return cls(c)

    @classmethod
    def blade(cls, n: int, mask: int) -> Multivector:
        n = check_dim(n)
        if not 0 <= mask < (1 << n):
            raise IndexError(f"blade mask {mask} out of range for n={n}")
        c = np.zeros(1 << n)
        c[mask] = 1.0
        return cls(c)

    @classmethod
    def pseudoscalar(cls, n: int) -> Multivector:
        return cls.blade(n, (1 << n) - 1)

    @classmethod
    def from_vector(cls, v) -> Multivector:
        v = np.asarray(v, dtype=float)
        n = check_dim(v.size)
        c = np.zeros(1 << n)
        c[1 << np.arange(n)] = v
        return cls(c)

    @classmethod
    def from_json(cls, obj: dict) -> Multivector:
        mv = cls(obj["coeffs"])
        if mv.n != obj["n"]:
            raise ValueError(f"'n' is {obj['n']} but 'coeffs' has {len(obj['coeffs'])} entries")
        return mv

    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": self._c.tolist()}

    # access

    @property
    def n(self) -> int:
        return self._c.size.bit_length() - 1

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    def vector_part(self) -> np.ndarray:
        return self._c[1 << np.arange(self.n)].copy()

    def grade(self, k: int) -> Multivector:
        if not 0 <= k <= self.n:
            raise ValueError(f"grade {k} out of range 0..{self.n}")
        return Multivector(np.where(popcounts(self.n) == k, self._c, 0.0))

    def grade_parts(self) -> list[Multivector]:
        return [self.grade(k) for k in range(self.n + 1)]

    def reverse(self) -> Multivector:
        k = popcounts(self.n)
        return Multivector(np.where((k * (k - 1) // 2) % 2 == 0, self._c, -self._c))

    def is_scalar(self) -> bool:
        return not np.any(self._c[1:])

    def __float__(self) -> float:
        if not self.is_scalar():
            raise ValueError("multivector has non-scalar parts")
        return float(self._c[0])

    def allclose(self, other: Multivector, atol: float = 1e-12) -> bool:
        _same_dim(self, other)
        return bool(np.max(np.abs(self._c - other._c)) <= atol)

    # arithmetic

    def __add__(self, other):
        if isinstance(other, Real):
            return self + Multivector.scalar(self.n, float(other))
        if not isinstance(other, Multivector):
            return NotImplemented
        _same_dim(self, other)
        return Multivector(self._c + other._c)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Real):
            return self - Multivector.scalar(self.n, float(other))
        if not isinstance(other, Multivector):
            return NotImplemented
        _same_dim(self, other)
        return Multivector(self._c - other._c)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Multivector(-self._c)

    def __mul__(self, other):
        if isinstance(other, Real):
            return Multivector(self._c * float(other))
        if isinstance(other, Multivector):
            return clifford(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Real):
            return Multivector(self._c * float(other))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Real):
            return Multivector(self._c / float(other))
        return NotImplemented

    def __xor__(self, other):
        if isinstance(other, Multivector):
            return wedge(self, other)
        return NotImplemented

    def __repr__(self) -> str:
        terms = []
        for m in np.flatnonzero(self._c):
            idx = [i + 1 for i in range(self.n) if m >> i & 1]
            if not idx:
                name = ""
            elif self.n < 10:
                name = "b" + "".join(map(str, idx))
            else:
                name = "b[" + ",".join(map(str, idx)) + "]"
            c = self._c[m]
            terms.append(f"{c:g}" if not name else (name if c == 1 else f"{c:g}*{name}"))
        return f"Multivector(n={self.n}: {' + '.join(terms) or '0'})"


def _same_dim(x: Multivector, y: Multivector) -> int:
    if x.n != y.n:
        raise DimensionMismatch(f"dimension mismatch: {x.n} vs {y.n}")
    return x.n


def wedge(x: Multivector, y: Multivector) -> Multivector:
    _same_dim(x, y)
    return Multivector(_kernel("wedge", x.coeffs, y.coeffs, None))


def euclidean_scalar(x: Multivector, y: Multivector) -> float:
    _same_dim(x, y)
    return float(np.dot(x.coeffs, y.coeffs))


def contract_left(x: Multivector, y: Multivector) -> Multivector:
    _same_dim(x, y)
    return Multivector(_kernel("lcontract", x.coeffs, y.coeffs, None))


def contract_right(x: Multivector, y: Multivector) -> Multivector:
    _same_dim(x, y)
    return Multivector(_kernel("rcontract", x.coeffs, y.coeffs, None))


def clifford(x: Multivector, y: Multivector) -> Multivector:
    _same_dim(x, y)
    return Multivector(_kernel("clifford", x.coeffs, y.coeffs, None))


def grade(x: Multivector, k: int) -> Multivector:
    return x.grade(k)


def reverse(x: Multivector) -> Multivector:
    return x.reverse()


def euclidean_product(op: str, x: Multivector, y: Multivector) -> Multivector:
    """Any Euclidean product by name; ``scalar`` comes back as a grade-0 multivector."""
    _same_dim(x, y)
    return Multivector(_kernel(op, x.coeffs, y.coeffs, None))


def diagonal_metric_product(op: str, diag, x: Multivector, y: Multivector) -> Multivector:
    """Product for the metric ``diag(diag)`` written in the working orthonormal basis.

    With an orthogonal basis the metric only rescales repeated indices, so
    each Euclidean term picks up the product of ``diag`` over the indices
    shared (Clifford), contracted away (contractions) or paired (scalar).
    """
    n = _same_dim(x, y)
    diag = np.asarray(diag, dtype=float)
    if diag.shape != (n,):
        raise DimensionMismatch(f"diagonal has shape {diag.shape}, expected ({n},)")
    return Multivector(_kernel(op, x.coeffs, y.coeffs, blade_weights(diag)))
