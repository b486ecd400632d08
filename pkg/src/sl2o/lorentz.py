"""
The isomorphisms phi: sl(2, K) -> so(n+1, 1) for K = R, C, H, O.

An element of sl(2, K) is an ``Sl2Element``: a 2x2 matrix part, and for the
octonions additionally a commutator map C_d (d imaginary) and a derivation
g in Der(O).  phi sends it to the matrix of its action on light-cone
coordinates; for K = O this is the action X -> N X + X N^dagger plus C_d
and g acting on the entries of X.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import algebra as alg
from . import derivations as der
from .jordan import Hermitian2, Matrix2K, dagger, eta, herm_to_vec, matmul, vec_to_herm, vector_size
from .linalg import commutator

SO_TOL = 1e-12
IMAGE_TOL = 1e-8
IMAGE_DIMS = {0: 3, 1: 6, 2: 15, 3: 45}


def _zero_cd():
    return np.zeros(8)


def _zero_g():
    return np.zeros((8, 8))


@dataclass(frozen=True)
class Sl2Element:
    """An element of sl(2, K).

    ``m`` has real trace zero (fully traceless for R, C and O).  ``cd`` and
    ``g`` are only used at level 3.
    """

    m: Matrix2K
    cd: np.ndarray = field(default_factory=_zero_cd)
    g: np.ndarray = field(default_factory=_zero_g)

    def __post_init__(self):
        if not isinstance(self.m, Matrix2K):
            object.__setattr__(self, "m", Matrix2K.from_array(self.m))
        cd = np.array(self.cd, dtype=float)
        g = np.array(self.g, dtype=float)
        if cd.shape != (8,) or g.shape != (8, 8):
            raise ValueError("cd must have 8 and g 8x8 components")
        cd.setflags(write=False)
        g.setflags(write=False)
        object.__setattr__(self, "cd", cd)
        object.__setattr__(self, "g", g)
        tr = self.m.trace()
        if self.level == 2:
            if abs(tr[0]) > 1e-12:
                raise ValueError("sl(2, H) needs Re(Tr m) = 0")
        elif np.abs(tr).max() > 1e-12:
            raise ValueError("matrix part must be traceless")
        if self.level < 3:
            if np.any(cd != 0) or np.any(g != 0):
                raise ValueError("commutator and derivation parts only exist for octonions")
        else:
            if abs(cd[0]) > 1e-12:
                raise ValueError("commutator parameter must be imaginary")
            if not der.is_derivation(g):
                raise ValueError("g is not a derivation of O")

    @property
    def level(self) -> int:
        return self.m.level

    @classmethod
    def zero(cls, level: int = 3) -> Sl2Element:
        z = alg.scalar(0.0, level)
        return cls(Matrix2K(z, z, z, z))

    def __add__(self, other: Sl2Element) -> Sl2Element:
        return Sl2Element(Matrix2K.from_array(self.m.array() + other.m.array()), self.cd + other.cd, self.g + other.g)

    def __sub__(self, other: Sl2Element) -> Sl2Element:
        return self + other.scale(-1.0)

    def scale(self, s: float) -> Sl2Element:
        return Sl2Element(Matrix2K.from_array(s * self.m.array()), s * self.cd, s * self.g)

    def vector(self) -> np.ndarray:
        """Flat real coordinates (matrix entries, cd, g) for comparisons."""
        parts = [self.m.array().ravel()]
        if self.level == 3:
            parts += [self.cd, self.g.ravel()]
        return np.concatenate(parts)

    def to_json(self) -> dict:
        out = {"level": self.level, "m": self.m.to_json()}
        if self.level == 3:
            out["cd"] = self.cd.tolist()
            out["g"] = self.g.tolist()
        return out

    @classmethod
    def from_json(cls, obj: dict) -> Sl2Element:
        m = Matrix2K.from_json(obj["m"])
        return cls(m, obj.get("cd", _zero_cd()), obj.get("g", _zero_g()))


def commutator_map(d) -> np.ndarray:
    """Matrix of C_d = L_d - R_d on O."""
    return alg.left_matrix(d) - alg.right_matrix(d)


# -- phi -------------------------------------------------------------------------

def _phi_real(m: Matrix2K) -> np.ndarray:
    a, b, c = m.a[0], m.b[0], m.c[0]
    return np.array([
        [0.0, b + c, 2 * a],
        [b + c, 0.0, c - b],
        [2 * a, b - c, 0.0],
    ])


def _phi_complex(m: Matrix2K) -> np.ndarray:
    a0, a1 = m.a
    b0, b1 = m.b
    c0, c1 = m.c
    return np.array([
        [0.0, b0 + c0, b1 - c1, 2 * a0],
        [c0 + b0, 0.0, -2 * a1, c0 - b0],
        [b1 - c1, 2 * a1, 0.0, -b1 - c1],
        [2 * a0, b0 - c0, b1 + c1, 0.0],
    ])


def _phi_quaternion(m: Matrix2K) -> np.ndarray:
    al, be, ga, de = m.a, m.b, m.c, m.d
    out = np.zeros((6, 6))
    out[0, 1] = out[1, 0] = be[0] + ga[0]
    out[0, 5] = out[5, 0] = 2 * al[0]
    out[1, 5] = ga[0] - be[0]
    out[5, 1] = be[0] - ga[0]
    for i in (1, 2, 3):
        out[0, i + 1] = out[i + 1, 0] = be[i] - ga[i]
        out[1, i + 1] = de[i] - al[i]
        out[i + 1, 1] = al[i] - de[i]
        out[i + 1, 5] = -(be[i] + ga[i])
        out[5, i + 1] = be[i] + ga[i]
    s = al + de
    out[2, 3], out[2, 4] = -s[3], s[2]
    out[3, 2], out[3, 4] = s[3], -s[1]
    out[4, 2], out[4, 3] = -s[2], s[1]
    return out


def _phi_matrix_part_octonion(m: Matrix2K) -> np.ndarray:
    a, b, c = m.a, m.b, m.c
    out = np.zeros((10, 10))
    out[0, 9] = out[9, 0] = 2 * a[0]
    out[0, 1] = out[1, 0] = b[0] + c[0]
    out[1, 9] = c[0] - b[0]
    out[9, 1] = b[0] - c[0]
    for i in range(1, 8):
        out[0, i + 1] = out[i + 1, 0] = b[i] - c[i]
        out[1, i + 1] = -2 * a[i]
        out[i + 1, 1] = 2 * a[i]
        out[i + 1, 9] = -(c[i] + b[i])
        out[9, i + 1] = b[i] + c[i]
    return out


# 7x7 interior pattern of phi(C_d), entries (sign, index of d); times 2
_C_PATTERN = (
    ((0, 0), (-1, 7), (-1, 5), (1, 6), (1, 3), (-1, 4), (1, 2)),
    ((1, 7), (0, 0), (1, 6), (1, 5), (-1, 4), (-1, 3), (-1, 1)),
    ((1, 5), (-1, 6), (0, 0), (-1, 7), (-1, 1), (1, 2), (1, 4)),
    ((-1, 6), (-1, 5), (1, 7), (0, 0), (1, 2), (1, 1), (-1, 3)),
    ((-1, 3), (1, 4), (1, 1), (-1, 2), (0, 0), (-1, 7), (1, 6)),
    ((1, 4), (1, 3), (-1, 2), (-1, 1), (1, 7), (0, 0), (-1, 5)),
    ((-1, 2), (1, 1), (-1, 4), (1, 3), (-1, 6), (1, 5), (0, 0)),
)


def phi_commutator_part(d) -> np.ndarray:
    d = np.asarray(d, dtype=float)
    out = np.zeros((10, 10))
    for r, row in enumerate(_C_PATTERN):
        for c, (s, k) in enumerate(row):
            out[r + 2, c + 2] = 2 * s * d[k]
    return out


def phi_derivation_part(g) -> np.ndarray:
    out = np.zeros((10, 10))
    out[2:9, 2:9] = np.asarray(g, dtype=float)[1:, 1:]
    return out


def phi(n: Sl2Element) -> np.ndarray:
    """The so(n+1, 1) matrix of ``n``."""
    level = n.level
    if level == 0:
        return _phi_real(n.m)
    if level == 1:
        return _phi_complex(n.m)
    if level == 2:
        return _phi_quaternion(n.m)
    return _phi_matrix_part_octonion(n.m) + phi_commutator_part(n.cd) + phi_derivation_part(n.g)


def so_residual(w: np.ndarray) -> float:
    """max |eta w + (eta w)^T|; zero iff w is in so(n+1, 1)."""
    ew = eta(len(w)) @ w
    return float(np.abs(ew + ew.T).max())


# -- action on Hermitian matrices ---------------------------------------------------------

def tangent_action(n: Sl2Element, x: Hermitian2) -> Hermitian2:
    """X -> N X + X N^dagger, plus C_d and g acting on the entries of X."""
    ma = n.m.array()
    xa = x.array()
    out = matmul(ma, xa) + matmul(xa, dagger(ma))
    if n.level == 3:
        entry_map = commutator_map(n.cd) + n.g
        out = out + np.einsum("ij,abj->abi", entry_map, xa)
    return Hermitian2.from_array(out, tol=1e-10)


def action_matrix(n: Sl2Element) -> np.ndarray:
    """Matrix of ``tangent_action`` in light-cone coordinates, built column by column."""
    size = vector_size(n.level)
    return np.stack([herm_to_vec(tangent_action(n, vec_to_herm(e))) for e in np.eye(size)], axis=1)


# -- parameter bases -----------------------------------------------------------------

@lru_cache(maxsize=None)
def sl2_basis(level: int) -> tuple[Sl2Element, ...]:
    """A basis of sl(2, K) as a vector space (3, 6, 15, 45 elements)."""
    dim = alg.DIMS[level]
    e = np.eye(dim)
    z = np.zeros(dim)
    out = []
    for k in range(dim):
        if level == 2 and k > 0:
            # a and d independent in the imaginary directions
            out.append(Sl2Element(Matrix2K(e[k], z, z, z)))
            out.append(Sl2Element(Matrix2K(z, z, z, e[k])))
        else:
            out.append(Sl2Element(Matrix2K(e[k], z, z, -e[k])))
        out.append(Sl2Element(Matrix2K(z, e[k], z, z)))
        out.append(Sl2Element(Matrix2K(z, z, e[k], z)))
    if level == 3:
        zero = Matrix2K(z, z, z, z)
        e8 = np.eye(8)
        out += [Sl2Element(zero, cd=e8[k]) for k in range(1, 8)]
        out += [Sl2Element(zero, g=g) for g in der.g2_basis()]
    return tuple(out)


@lru_cache(maxsize=None)
def _so7_basis() -> np.ndarray:
    e = np.eye(8)
    cs = [commutator_map(e[k])[1:, 1:] for k in range(1, 8)]
    gs = [g[1:, 1:] for g in der.g2_basis()]
    return np.stack(cs + gs)


def split_so7(k: np.ndarray, tol: float = IMAGE_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Write an antisymmetric map on Im(O) as C_d + g with g in Der(O).

    ``k`` may be 7x7 (imaginary block) or 8x8 killing e_0.  Returns (d, g)
    with d an imaginary octonion and g an 8x8 derivation.
    """
    k = np.asarray(k, dtype=float)
    if k.shape == (8, 8):
        if np.abs(k[0]).max() > tol or np.abs(k[:, 0]).max() > tol:
            raise ValueError("map does not preserve the imaginary octonions")
        k = k[1:, 1:]
    basis = _so7_basis()
    coef, *_ = np.linalg.lstsq(basis.reshape(21, -1).T, k.ravel(), rcond=None)
    resid = np.abs(np.tensordot(coef, basis, axes=1) - k).max()
    if resid > tol:
        raise ValueError(f"map is not in so(7) (residual {resid:.3g})")
    d = np.zeros(8)
    d[1:] = coef[:7]
    g = np.tensordot(coef[7:], der.g2_basis(), axes=1)
    return d, g


def phi_inverse(s: np.ndarray, level: int | None = None, tol: float = IMAGE_TOL) -> Sl2Element:
    """Recover the sl(2, K) element whose image under phi is ``s``."""
    s = np.asarray(s, dtype=float)
    if level is None:
        level = alg.LEVELS.get(len(s) - 2)
        if level is None:
            raise ValueError(f"no algebra gives {len(s)}x{len(s)} matrices")
    if s.shape != (vector_size(level),) * 2:
        raise ValueError("matrix size does not match level")
    if level < 3:
        basis = sl2_basis(level)
        images = np.stack([phi(b).ravel() for b in basis], axis=1)
        coef, *_ = np.linalg.lstsq(images, s.ravel(), rcond=None)
        out = Sl2Element.zero(level)
        for c, b in zip(coef, basis):
            out = out + b.scale(c)
    else:
        # border rows/columns give the matrix part, the interior splits into C + g
        a = np.zeros(8)
        b = np.zeros(8)
        c = np.zeros(8)
        a[0] = 0.25 * (s[0, 9] + s[9, 0])
        b[0] = 0.25 * (s[0, 1] + s[1, 0] - s[1, 9] + s[9, 1])
        c[0] = 0.25 * (s[0, 1] + s[1, 0] + s[1, 9] - s[9, 1])
        for i in range(1, 8):
            a[i] = 0.25 * (s[i + 1, 1] - s[1, i + 1])
            b[i] = 0.25 * (s[0, i + 1] + s[i + 1, 0] - s[i + 1, 9] + s[9, i + 1])
            c[i] = 0.25 * (-s[0, i + 1] - s[i + 1, 0] - s[i + 1, 9] + s[9, i + 1])
        interior = 0.5 * (s[2:9, 2:9] - s[2:9, 2:9].T)
        d, g = split_so7(interior, tol=np.inf)
        g = _project_derivation(g)
        out = Sl2Element(Matrix2K(a, b, c, -a), d, g)
    resid = np.abs(phi(out) - s).max()
    if resid > tol:
        raise ValueError(f"matrix is not in the image of phi (residual {resid:.3g})")
    return out


def _project_derivation(g: np.ndarray) -> np.ndarray:
    basis = der.g2_basis()
    return np.tensordot(np.tensordot(basis, g, axes=([1, 2], [0, 1])), basis, axes=1)


def image_rank(level: int, tol: float = 1e-9) -> int:
    from .linalg import rank

    return rank([phi(b) for b in sl2_basis(level)], tol)


# -- brackets ---------------------------------------------------------------------

def matrix_bracket(x: Sl2Element, y: Sl2Element) -> Sl2Element:
    """Matrix commutator, the bracket of sl(2, K) for K = R, C, H."""
    if x.level != y.level or x.level == 3:
        raise ValueError("matrix bracket is for levels 0-2 with matching levels")
    xa, ya = x.m.array(), y.m.array()
    return Sl2Element(Matrix2K.from_array(matmul(xa, ya) - matmul(ya, xa)))


def _entrywise(t: np.ndarray, m: Matrix2K) -> Matrix2K:
    return Matrix2K(t @ m.a, t @ m.b, t @ m.c, t @ m.d)


def _bracket_mm(x: Matrix2K, y: Matrix2K) -> Sl2Element:
    # x = (w, y; z, -w), y = (a, b; c, -a)
    xa, ya = x.array(), y.array()
    k = matmul(xa, ya) - matmul(ya, xa)
    tr = k[0, 0] + k[1, 1]
    k[0, 0] -= 0.5 * tr
    k[1, 1] -= 0.5 * tr
    w, yy, z = x.a, x.b, x.c
    a, b, c = y.a, y.b, y.c
    g = (2.0 * der.d_ab(w, a) + der.d_ab(yy, c) + der.d_ab(z, b)) / 3.0
    return Sl2Element(Matrix2K.from_array(k), tr / 6.0, g)


def _zero_matrix() -> Matrix2K:
    z = np.zeros(8)
    return Matrix2K(z, z, z, z)


def sl2o_bracket(x: Sl2Element, y: Sl2Element) -> Sl2Element:
    """Lie bracket on sl(2, O) = M2'(O) + C(O') + Der(O), component by component.

    [C_d, C_d'] and [g, g'] are operator commutators (the former is split
    back into C + Der), [g, C_d] = C_{g(d)}, C_d and g act on the entries of
    a matrix, and [M, N] = (MN - NM - Tr(MN - NM) I / 2) + C_{Tr(MN - NM)/6}
    + (2 D_{w,a} + D_{y,c} + D_{z,b}) / 3 for M = (w, y; z, -w),
    N = (a, b; c, -a).
    """
    if x.level != 3 or y.level != 3:
        raise ValueError("sl2o_bracket needs two octonionic elements")
    zero = _zero_matrix()
    out = _bracket_mm(x.m, y.m)

    cx, cy = commutator_map(x.cd), commutator_map(y.cd)
    # [C, M] and [g, M] terms (and their antisymmetric partners)
    m_part = (
        _entrywise(cx + x.g, y.m).array()
        - _entrywise(cy + y.g, x.m).array()
    )
    out = out + Sl2Element(Matrix2K.from_array(m_part))

    # operator commutators inside so(7): [C, C], [g, g], [g, C], [C, g]
    d, g = split_so7(commutator(cx, cy))
    out = out + Sl2Element(zero, d, g)
    out = out + Sl2Element(zero, g=_project_derivation(commutator(x.g, y.g)))
    out = out + Sl2Element(zero, cd=x.g @ y.cd - y.g @ x.cd)
    return out


def bracket(x: Sl2Element, y: Sl2Element) -> Sl2Element:
    if x.level != y.level:
        raise ValueError("level mismatch")
    return sl2o_bracket(x, y) if x.level == 3 else matrix_bracket(x, y)


def random_element(level: int, rng: np.random.Generator, parts: str = "mcg") -> Sl2Element:
    """Random element with Gaussian coordinates; ``parts`` picks among m, c, g."""
    dim = alg.DIMS[level]
    z = np.zeros(dim)
    if "m" in parts:
        a, b, c = rng.normal(size=(3, dim))
        if level == 2:
            d = rng.normal(size=dim)
            d[0] = -a[0]
        else:
            if level == 1:
                a = a.copy()
            d = -a
        m = Matrix2K(a, b, c, d)
    else:
        m = Matrix2K(z, z, z, z)
    cd = np.zeros(8)
    g = np.zeros((8, 8))
    if level == 3:
        if "c" in parts:
            cd[1:] = rng.normal(size=7)
        if "g" in parts:
            g = np.tensordot(rng.normal(size=14), der.g2_basis(), axes=1)
    return Sl2Element(m, cd, g)


def check_homomorphism(level: int, samples: int = 100, rng: np.random.Generator | None = None,
                       parts: str = "mcg") -> dict:
    """Max of |phi([A, B]) - [phi A, phi B]| over random pairs."""
    rng = rng if rng is not None else np.random.default_rng(0)
    worst = 0.0
    for _ in range(samples):
        x = random_element(level, rng, parts)
        y = random_element(level, rng, parts)
        px, py = phi(x), phi(y)
        worst = max(worst, float(np.abs(phi(bracket(x, y)) - commutator(px, py)).max()))
    return {"level": level, "samples": samples, "max_residual": worst}
