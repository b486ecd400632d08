"""
Normed division algebras R, C, H and O as coefficient arrays.

An element of the level-n algebra is a float array whose last axis has
length 2**n (coordinates over e_0, ..., e_{2**n - 1}, with e_0 = 1).
Every function here broadcasts over leading axes, so a stack of 10^4
octonions is just an array of shape (10000, 8).

Levels 0-2 use the standard complex/quaternion products (e1 e2 = e3 for H).
Level 3 uses the octonion table fixed by ``TRIPLES``; each oriented triple
(i, j, k) means e_i e_j = e_k (and cyclically).
"""
from __future__ import annotations

import itertools
import re
from functools import lru_cache

import numpy as np

DIMS = {0: 1, 1: 2, 2: 4, 3: 8}
LEVELS = {v: k for k, v in DIMS.items()}

# Oriented lines of the Fano plane.  These are the products read off the
# 10x10 commutator-map matrix of sl(2, O); they contain e3 e5 = e1 and
# e1 e4 = -e6.
TRIPLES: tuple[tuple[int, int, int], ...] = (
    (1, 2, 7),
    (1, 3, 5),
    (1, 6, 4),
    (2, 5, 4),
    (2, 6, 3),
    (3, 4, 7),
    (5, 6, 7),
)

_QUATERNION_TRIPLES = ((1, 2, 3),)


def _table_from_triples(dim: int, triples) -> np.ndarray:
    s = np.zeros((dim, dim, dim))
    for i in range(dim):
        s[0, i, i] = 1.0
        s[i, 0, i] = 1.0
    for i in range(1, dim):
        s[i, i, 0] = -1.0
    for i, j, k in triples:
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            s[a, b, c] = 1.0
            s[b, a, c] = -1.0
    return s


@lru_cache(maxsize=None)
def structure_constants(level: int) -> np.ndarray:
    """Tensor S with e_i e_j = sum_k S[i, j, k] e_k."""
    if level not in DIMS:
        raise ValueError(f"level must be 0..3, got {level}")
    triples = {0: (), 1: (), 2: _QUATERNION_TRIPLES, 3: TRIPLES}[level]
    s = _table_from_triples(DIMS[level], triples)
    s.setflags(write=False)
    return s


def level_of(x) -> int:
    n = np.shape(x)[-1]
    if n not in LEVELS:
        raise ValueError(f"no division algebra of dimension {n} (levels above 3 are not supported)")
    return LEVELS[n]


def basis(k: int, level: int = 3) -> np.ndarray:
    e = np.zeros(DIMS[level])
    e[k] = 1.0
    return e


def basis_product(i: int, j: int) -> tuple[int, int]:
    """Signed product of octonion basis elements: e_i e_j = sign * e_k.

    >>> basis_product(3, 5)
    (1, 1)
    >>> basis_product(1, 4)
    (-1, 6)
    """
    if not (0 <= i <= 7 and 0 <= j <= 7):
        raise IndexError(f"basis indices must be in 0..7, got ({i}, {j})")
    row = structure_constants(3)[i, j]
    k = int(np.flatnonzero(row)[0])
    return int(row[k]), k


def multiplication_table() -> tuple[np.ndarray, np.ndarray]:
    """Octonion basis products as (sign, index) 8x8 integer arrays."""
    s = structure_constants(3)
    index = np.argmax(np.abs(s), axis=2)
    sign = np.take_along_axis(s, index[..., None], axis=2)[..., 0].astype(int)
    return sign, index


# -- arithmetic ---------------------------------------------------------------

def mul(x, y) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    lx, ly = level_of(x), level_of(y)
    if lx != ly:
        raise ValueError(f"level mismatch: {lx} vs {ly}")
    return np.einsum("...i,...j,ijk->...k", x, y, structure_constants(lx))


def conj(x) -> np.ndarray:
    x = np.array(x, dtype=float)
    x[..., 1:] *= -1.0
    return x


def real(x) -> np.ndarray:
    return np.asarray(x, dtype=float)[..., 0]


def imag(x) -> np.ndarray:
    x = np.array(x, dtype=float)
    x[..., 0] = 0.0
    return x


def norm2(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return np.einsum("...i,...i->...", x, x)


def norm(x) -> np.ndarray:
    return np.sqrt(norm2(x))


def inv(x) -> np.ndarray:
    n2 = norm2(x)
    if np.any(n2 == 0.0):
        raise ZeroDivisionError("zero has no inverse")
    return conj(x) / np.asarray(n2)[..., None]


def scalar(value: float, level: int = 3) -> np.ndarray:
    e = np.zeros(DIMS[level])
    e[0] = value
    return e


def commutator(x, y) -> np.ndarray:
    """[x, y] = xy - yx."""
    return mul(x, y) - mul(y, x)


def associator(a, b, c) -> np.ndarray:
    """[a, b, c] = (ab)c - a(bc)."""
    return mul(mul(a, b), c) - mul(a, mul(b, c))


def dot(x, y) -> np.ndarray:
    """Euclidean inner product, equal to Re(x conj(y))."""
    return np.einsum("...i,...i->...", np.asarray(x, float), np.asarray(y, float))


def left_matrix(a) -> np.ndarray:
    """Matrix of x -> a x."""
    a = np.asarray(a, dtype=float)
    return np.einsum("...i,ijk->...kj", a, structure_constants(level_of(a)))


def right_matrix(a) -> np.ndarray:
    """Matrix of x -> x a."""
    a = np.asarray(a, dtype=float)
    return np.einsum("...j,ijk->...ki", a, structure_constants(level_of(a)))


# -- table enumeration ----------------------------------------------------------

def _canonical(triples) -> tuple[tuple[int, int, int], ...]:
    out = []
    for t in triples:
        r = t.index(min(t))
        out.append(tuple(t[r:] + t[:r]))
    return tuple(sorted(out))


def _is_alternative(s: np.ndarray) -> bool:
    # associator tensor on basis triples must be alternating
    ss = np.einsum("ijm,mkn->ijkn", s, s) - np.einsum("jkm,imn->ijkn", s, s)
    return bool(
        np.all(ss + ss.transpose(1, 0, 2, 3) == 0) and np.all(ss + ss.transpose(0, 2, 1, 3) == 0)
    )


def enumerate_tables() -> list[tuple[tuple[int, int, int], ...]]:
    """Every octonion multiplication table on the labelled units e1..e7.

    Brute force over Fano planes and line orientations, keeping those whose
    associator is alternating.  There are 480.
    """
    base = [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)]
    planes = set()
    for p in itertools.permutations(range(1, 8)):
        planes.add(frozenset(frozenset(p[i - 1] for i in line) for line in base))
    found = []
    for plane in sorted(planes, key=lambda pl: sorted(sorted(l) for l in pl)):
        lines = [tuple(sorted(l)) for l in plane]
        for flips in itertools.product((False, True), repeat=7):
            triples = [(l[0], l[2], l[1]) if f else l for l, f in zip(lines, flips)]
            if _is_alternative(_table_from_triples(8, triples)):
                found.append(_canonical(triples))
    return sorted(found)


def table_json() -> dict:
    return {
        "triples": [list(t) for t in _canonical(TRIPLES)],
        "examples": {"e3*e5": format_basis(*basis_product(3, 5)), "e1*e4": format_basis(*basis_product(1, 4))},
    }


def format_basis(sign: int, k: int) -> str:
    return ("-" if sign < 0 else "") + f"e{k}"


# coefficients are plain decimals, so "2e3" reads as 2 * e3
_TERM = re.compile(r"([+-]?)(\d+\.?\d*|\.\d+)?\*?(e\d)?")


def parse(text: str, level: int = 3) -> np.ndarray:
    """Parse strings such as ``"e1"``, ``"-e6"``, ``"0.5+2e3-e7"``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty element")
    out = np.zeros(DIMS[level])
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse algebra element {text!r}")
        sign, coef, unit = m.groups()
        if not coef and not unit:
            raise ValueError(f"cannot parse algebra element {text!r}")
        value = float(coef) if coef else 1.0
        if sign == "-":
            value = -value
        k = int(unit[1:]) if unit else 0
        if k >= DIMS[level]:
            raise ValueError(f"unit e{k} does not exist at level {level}")
        out[k] += value
        pos = m.end()
    return out


class AlgebraElement:
    """Immutable element of R, C, H or O with operator syntax.

    Wraps a coefficient array; ``np.asarray(elem)`` gives the coefficients,
    so elements can be passed to every function in this module.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=float)
        if c.ndim != 1:
            raise ValueError("coefficients must be a flat array")
        level_of(c)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraElement is immutable")

    @classmethod
    def unit(cls, k: int, level: int = 3) -> AlgebraElement:
        return cls(basis(k, level))

    @classmethod
    def parse(cls, text: str, level: int = 3) -> AlgebraElement:
        return cls(parse(text, level))

    @property
    def level(self) -> int:
        return level_of(self.coeffs)

    @property
    def real(self) -> float:
        return float(self.coeffs[0])

    @property
    def imag(self) -> AlgebraElement:
        return AlgebraElement(imag(self.coeffs))

    def conjugate(self) -> AlgebraElement:
        return AlgebraElement(conj(self.coeffs))

    def norm(self) -> float:
        return float(norm(self.coeffs))

    def inverse(self) -> AlgebraElement:
        return AlgebraElement(inv(self.coeffs))

    def __array__(self, dtype=None, copy=None):
        return np.array(self.coeffs, dtype=dtype)

    def _coerce(self, other):
        if isinstance(other, AlgebraElement):
            return other.coeffs
        if np.isscalar(other):
            return scalar(float(other), self.level)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else AlgebraElement(self.coeffs + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else AlgebraElement(self.coeffs - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else AlgebraElement(o - self.coeffs)

    def __neg__(self):
        return AlgebraElement(-self.coeffs)

    def __mul__(self, other):
        if np.isscalar(other):
            return AlgebraElement(self.coeffs * other)
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else AlgebraElement(mul(self.coeffs, o))

    def __rmul__(self, other):
        if np.isscalar(other):
            return AlgebraElement(self.coeffs * other)
        return NotImplemented

    def __truediv__(self, other):
        if np.isscalar(other):
            return AlgebraElement(self.coeffs / other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.coeffs.shape == other.coeffs.shape and bool(np.all(self.coeffs == other.coeffs))

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def isclose(self, other, atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.coeffs, np.asarray(other), rtol=0.0, atol=atol))

    def __repr__(self):
        terms = [f"{c:+g}" + (f"e{k}" if k else "") for k, c in enumerate(self.coeffs) if c != 0]
        return "AlgebraElement(" + ("".join(terms).lstrip("+") or "0") + ")"
