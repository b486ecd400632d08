"""
2x2 Hermitian matrices over R, C, H, O, their light-cone coordinates and
the Jordan product.

A 2x2 matrix over the algebra is an array of shape (2, 2, dim).  Products
of such matrices are taken row-into-column with one algebra product per
term, so no re-association happens inside a single matrix product.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import algebra as alg

HERMITIAN_TOL = 1e-12


@dataclass(frozen=True)
class Hermitian2:
    """The matrix (alpha, x; conj(x), beta) with alpha, beta real."""

    alpha: float
    beta: float
    x: np.ndarray

    def __post_init__(self):
        x = np.array(self.x, dtype=float)
        alg.level_of(x)
        x.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))

    @property
    def level(self) -> int:
        return alg.level_of(self.x)

    def array(self) -> np.ndarray:
        dim = len(self.x)
        out = np.zeros((2, 2, dim))
        out[0, 0, 0] = self.alpha
        out[1, 1, 0] = self.beta
        out[0, 1] = self.x
        out[1, 0] = alg.conj(self.x)
        return out

    @classmethod
    def from_array(cls, h: np.ndarray, tol: float = HERMITIAN_TOL) -> Hermitian2:
        """Build from a (2, 2, dim) array, checking hermiticity to ``tol``."""
        h = np.asarray(h, dtype=float)
        err = hermiticity_error(h)
        if err > tol:
            raise ValueError(f"matrix is not Hermitian (error {err:.3g})")
        x = 0.5 * (h[0, 1] + alg.conj(h[1, 0]))
        return cls(h[0, 0, 0], h[1, 1, 0], x)

    def __add__(self, other: Hermitian2) -> Hermitian2:
        return Hermitian2(self.alpha + other.alpha, self.beta + other.beta, self.x + other.x)

    def __sub__(self, other: Hermitian2) -> Hermitian2:
        return Hermitian2(self.alpha - other.alpha, self.beta - other.beta, self.x - other.x)

    def scale(self, s: float) -> Hermitian2:
        return Hermitian2(s * self.alpha, s * self.beta, s * self.x)

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "x": self.x.tolist()}

    @classmethod
    def from_json(cls, obj) -> Hermitian2:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(obj["alpha"], obj["beta"], obj["x"])


def hermiticity_error(h: np.ndarray) -> float:
    h = np.asarray(h, dtype=float)
    diag_imag = max(np.abs(h[0, 0, 1:]).max(initial=0.0), np.abs(h[1, 1, 1:]).max(initial=0.0))
    return float(max(diag_imag, np.abs(h[0, 1] - alg.conj(h[1, 0])).max()))


@dataclass(frozen=True)
class Matrix2K:
    """A general 2x2 matrix (a, b; c, d) over one algebra."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        entries = [np.array(getattr(self, f), dtype=float) for f in "abcd"]
        levels = {alg.level_of(e) for e in entries}
        if len(levels) != 1:
            raise ValueError("matrix entries must share one algebra")
        for f, e in zip("abcd", entries):
            e.setflags(write=False)
            object.__setattr__(self, f, e)

    @property
    def level(self) -> int:
        return alg.level_of(self.a)

    def array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    @classmethod
    def from_array(cls, m: np.ndarray) -> Matrix2K:
        m = np.asarray(m, dtype=float)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def identity(cls, level: int = 3) -> Matrix2K:
        one, zero = alg.scalar(1.0, level), alg.scalar(0.0, level)
        return cls(one, zero, zero, one)

    def dagger(self) -> Matrix2K:
        return Matrix2K(alg.conj(self.a), alg.conj(self.c), alg.conj(self.b), alg.conj(self.d))

    def trace(self) -> np.ndarray:
        return self.a + self.d

    def to_json(self) -> dict:
        return {f: getattr(self, f).tolist() for f in "abcd"}

    @classmethod
    def from_json(cls, obj) -> Matrix2K:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(*(obj[f] for f in "abcd"))


def matmul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Product of (..., 2, 2, dim) arrays, (PQ)_ij = sum_k P_ik Q_kj."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return alg.mul(p[..., :, :, None, :], q[..., None, :, :, :]).sum(axis=-3)


def dagger(m: np.ndarray) -> np.ndarray:
    return alg.conj(np.swapaxes(np.asarray(m, dtype=float), -3, -2))


def _as_array(m) -> np.ndarray:
    if isinstance(m, (Matrix2K, Hermitian2)):
        return m.array()
    return np.asarray(m, dtype=float)


# -- light-cone coordinates -------------------------------------------------------

def vec_to_herm(v) -> Hermitian2:
    """(x0, ..., x_{n+1}) -> (x0 + x_{n+1}, x; conj x, x0 - x_{n+1}), x = sum x_{k+1} e_k."""
    v = np.asarray(v, dtype=float)
    n = len(v) - 2
    if n not in alg.LEVELS:
        raise ValueError(f"light-cone vectors have 3, 4, 6 or 10 components, got {len(v)}")
    return Hermitian2(v[0] + v[-1], v[0] - v[-1], v[1:-1])


def herm_to_vec(h: Hermitian2) -> np.ndarray:
    return np.concatenate([[0.5 * (h.alpha + h.beta)], h.x, [0.5 * (h.alpha - h.beta)]])


def vector_size(level: int) -> int:
    return alg.DIMS[level] + 2


def eta(size: int) -> np.ndarray:
    """diag(1, -1, ..., -1)."""
    out = -np.eye(size)
    out[0, 0] = 1.0
    return out


def lorentz_form(v, w) -> float:
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    if v.shape != w.shape:
        raise ValueError("vectors must have matching length")
    return float(v[0] * w[0] - v[1:] @ w[1:])


def quadratic_form(v) -> float:
    return lorentz_form(v, v)


def vec_to_json(v) -> dict:
    v = np.asarray(v, dtype=float)
    return {"level": alg.LEVELS[len(v) - 2], "coords": v.tolist()}


def vec_from_json(obj) -> np.ndarray:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if isinstance(obj, list):
        return np.asarray(obj, dtype=float)
    v = np.asarray(obj["coords"], dtype=float)
    if "level" in obj and len(v) != vector_size(obj["level"]):
        raise ValueError("coordinate count does not match level")
    return v


# -- determinants and products ------------------------------------------------------

def det_herm(h) -> float:
    """alpha beta - |x|^2 (accepts a Hermitian2 or a Hermitian (2, 2, dim) array)."""
    if isinstance(h, Hermitian2):
        return h.alpha * h.beta - float(alg.norm2(h.x))
    h = np.asarray(h, dtype=float)
    return float(h[0, 0, 0] * h[1, 1, 0] - alg.norm2(h[0, 1]))


def jordan_product(x: Hermitian2, y: Hermitian2) -> Hermitian2:
    """X o Y = (XY + YX) / 2."""
    xa, ya = x.array(), y.array()
    return Hermitian2.from_array(0.5 * (matmul(xa, ya) + matmul(ya, xa)), tol=1e-10)


def det_mmdagger(m) -> float:
    """|a|^2|d|^2 + |b|^2|c|^2 - (a c*)(d b*) - (b d*)(c a*)."""
    m = m if isinstance(m, Matrix2K) else Matrix2K.from_array(m)
    a, b, c, d = m.a, m.b, m.c, m.d
    cj, mul, n2 = alg.conj, alg.mul, alg.norm2
    cross = mul(mul(a, cj(c)), mul(d, cj(b))) + mul(mul(b, cj(d)), mul(c, cj(a)))
    if alg.norm(alg.imag(cross)) > 1e-9 * max(1.0, float(alg.norm(cross))):
        raise ArithmeticError("det(MM^dagger) came out non-real")
    return float(n2(a) * n2(d) + n2(b) * n2(c) - cross[0])


def hermitian_action(m, x: Hermitian2) -> np.ndarray:
    """M X M^dagger as a raw array, evaluated as (M X) M^dagger."""
    ma = _as_array(m)
    return matmul(matmul(ma, x.array()), dagger(ma))
