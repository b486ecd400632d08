"""
The group SL(2, O) acting on h2(O) by the symmetrized Hermitian action

    phi_M(X) = ((M X) M^dagger + M (X M^dagger)) / 2.

Generators have all four entries in R + R q for one unit imaginary q, so
they commute and associate with each other; a ``GroupWord`` is a sequence
of generators applied first to last.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import algebra as alg
from .jordan import (
    Hermitian2, Matrix2K, dagger, det_herm, det_mmdagger, eta, herm_to_vec, matmul, vec_to_herm,
)
from .lorentz import Sl2Element, phi_inverse

PARALLEL_TOL = 1e-10
NORMALIZATION_TOL = 1e-12
FD_STEP = 1e-4


def _matrix_array(m) -> np.ndarray:
    if isinstance(m, (Matrix2K, GeneratorMatrix)):
        return m.array()
    return np.asarray(m, dtype=float)


def phi_m_apply(m, x: Hermitian2) -> Hermitian2:
    """The symmetrized action ((MX)M^dagger + M(XM^dagger)) / 2."""
    ma = _matrix_array(m)
    xa = x.array()
    md = dagger(ma)
    out = 0.5 * (matmul(matmul(ma, xa), md) + matmul(ma, matmul(xa, md)))
    return Hermitian2.from_array(out, tol=1e-9 * max(1.0, float(np.abs(out).max())))


def phi_m_explicit(m, x: Hermitian2) -> Hermitian2:
    """phi_M(X) from its entrywise expansion."""
    a, b, c, d = _matrix_array(m)[[0, 0, 1, 1], [0, 1, 0, 1]]
    al, be, xx = x.alpha, x.beta, x.x
    mul, cj, n2 = alg.mul, alg.conj, alg.norm2
    xb = cj(xx)
    top = al * n2(a) + 2.0 * mul(mul(a, xx), cj(b))[0] + be * n2(b)
    bottom = al * n2(c) + 2.0 * mul(mul(c, xx), cj(d))[0] + be * n2(d)
    off = (
        al * mul(a, cj(c)) + be * mul(b, cj(d))
        + 0.5 * (mul(a, mul(xx, cj(d))) + mul(mul(a, xx), cj(d)) + mul(b, mul(xb, cj(c))) + mul(mul(b, xb), cj(c)))
    )
    return Hermitian2(top, bottom, off)


# -- determinant identities ------------------------------------------------------------

def lemma4_identity(a, b, c, d) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of 2 Re(ab) Re(cd) = Re((a c*)(d* b) + (ad)(cb))."""
    mul, cj = alg.mul, alg.conj
    lhs = 2.0 * mul(a, b)[..., 0] * mul(c, d)[..., 0]
    rhs = (mul(mul(a, cj(c)), mul(cj(d), b)) + mul(mul(a, d), mul(c, b)))[..., 0]
    return lhs, rhs


def _entries(m):
    ma = _matrix_array(m)
    return ma[..., 0, 0, :], ma[..., 0, 1, :], ma[..., 1, 0, :], ma[..., 1, 1, :]


def det_cond_octonion(m, x) -> np.ndarray:
    """The full octonion value of the determinant-condition expression."""
    a, b, c, d = _entries(m)
    x = np.asarray(x, dtype=float)
    mul, cj = alg.mul, alg.conj
    ac, bc, cc, dc, xc = cj(a), cj(b), cj(c), cj(d), cj(x)
    p1 = mul(mul(a, x), dc) + mul(a, mul(x, dc)) + mul(mul(b, xc), cc) + mul(b, mul(xc, cc))
    p2 = mul(d, mul(xc, ac)) + mul(mul(d, xc), ac) + mul(c, mul(x, bc)) + mul(mul(c, x), bc)
    q1 = mul(a, mul(x, bc)) + mul(mul(b, xc), ac) + mul(mul(a, x), bc) + mul(b, mul(xc, ac))
    q2 = mul(c, mul(x, dc)) + mul(mul(d, xc), cc) + mul(mul(c, x), dc) + mul(d, mul(xc, cc))
    return mul(p1, p2) - mul(q1, q2)


def det_cond_lhs(m, x) -> np.ndarray:
    """Real value of the determinant-condition expression (equal to
    4 |x|^2 det(MM^dagger) for every x iff det(phi_M X) = det(MM^dagger) det X)."""
    return det_cond_octonion(m, x)[..., 0]


def detfactor_expansion(m, x) -> np.ndarray:
    """Expanded form of ``det_cond_lhs`` in norms, real parts and associators."""
    a, b, c, d = _entries(m)
    x = np.asarray(x, dtype=float)
    mul, cj, n2 = alg.mul, alg.conj, alg.norm2
    ac, bc, cc, dc, xc = cj(a), cj(b), cj(c), cj(d), cj(x)
    out = 2.0 * (n2(a) * n2(d) + n2(b) * n2(c)) * n2(x)
    out = out + 2.0 * mul(mul(a, mul(x, dc)), mul(d, mul(xc, ac)))[..., 0]
    out = out + 2.0 * mul(mul(b, mul(xc, cc)), mul(c, mul(x, bc)))[..., 0]
    out = out - 4.0 * (
        mul(mul(mul(a, cc), mul(d, xc)), mul(x, bc)) + mul(mul(mul(a, x), mul(xc, cc)), mul(d, bc))
    )[..., 0]
    adx = alg.associator(a, d, x)
    bcx = alg.associator(b, c, x)
    return out + (mul(adx, bcx) + mul(bcx, adx))[..., 0]


def _parallel(u, v, tol: float = PARALLEL_TOL) -> bool:
    u, v = alg.imag(u), alg.imag(v)
    return abs(float(alg.norm2(u) * alg.norm2(v) - alg.dot(u, v) ** 2)) <= tol * max(1.0, float(alg.norm2(u) * alg.norm2(v)))


@dataclass(frozen=True)
class DetClassification:
    kind: str  # "shared-direction", "zero-entry" or "not-preserving"
    preserving: bool
    max_residual: float
    det_mmdagger: float
    norm2_ad_bc: float | None


def is_det_preserving(m, trials: int = 20, rng: np.random.Generator | None = None,
                      tol: float = 1e-9) -> DetClassification:
    """Classify M structurally and confirm det(phi_M X) = det(MM^dagger) det X by sampling."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = rng if rng is not None else np.random.default_rng(0)
    mm = m if isinstance(m, Matrix2K) else Matrix2K.from_array(_matrix_array(m))
    a, b, c, d = mm.a, mm.b, mm.c, mm.d
    entries = (a, b, c, d)
    is_zero = [float(alg.norm(e)) == 0.0 for e in entries]
    if all(_parallel(u, v) for i, u in enumerate(entries) for v in entries[i + 1:]):
        kind = "shared-direction"
    elif ((is_zero[0] or is_zero[3]) and _parallel(b, c)) or ((is_zero[1] or is_zero[2]) and _parallel(a, d)):
        kind = "zero-entry"
    else:
        kind = "not-preserving"
    dmm = det_mmdagger(mm)
    worst = 0.0
    for _ in range(trials):
        x = vec_to_herm(rng.normal(size=10))
        lhs = det_herm(phi_m_apply(mm, x))
        rhs = dmm * det_herm(x)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    ad_bc = None
    if kind != "not-preserving":
        ad_bc = float(alg.norm2(alg.mul(a, d) - alg.mul(b, c)))
    return DetClassification(kind, worst < tol, worst, dmm, ad_bc)


# -- generators and words -------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorMatrix:
    """M with entries mu_i + nu_i q (i = a, b, c, d), q a unit imaginary octonion."""

    mu: np.ndarray
    nu: np.ndarray
    q: np.ndarray

    def __post_init__(self):
        mu = np.array(self.mu, dtype=float)
        nu = np.array(self.nu, dtype=float)
        q = np.array(self.q, dtype=float)
        if q.shape == (7,):
            q = np.concatenate([[0.0], q])
        if mu.shape != (4,) or nu.shape != (4,) or q.shape != (8,):
            raise ValueError("generator needs 4 mu, 4 nu and an octonion q")
        if abs(q[0]) > 1e-12 or abs(alg.norm(q) - 1.0) > 1e-12:
            raise ValueError("q must be a unit imaginary octonion")
        for name, v in (("mu", mu), ("nu", nu), ("q", q)):
            v.setflags(write=False)
            object.__setattr__(self, name, v)

    @classmethod
    def from_entries(cls, a, b, c, d, normalize: bool = False) -> GeneratorMatrix:
        """Validated constructor: all imaginary parts must be parallel."""
        entries = [np.asarray(e, dtype=float) for e in (a, b, c, d)]
        ims = [alg.imag(e) for e in entries]
        lead = max(ims, key=lambda v: float(alg.norm(v)))
        if alg.norm(lead) < 1e-14:
            q = alg.basis(1)
        else:
            q = lead / alg.norm(lead)
        nu = np.array([alg.dot(v, q) for v in ims])
        for v, n in zip(ims, nu):
            if alg.norm(v - n * q) > PARALLEL_TOL * max(1.0, float(alg.norm(v))):
                raise ValueError("entries do not share one imaginary direction")
        gen = cls([e[0] for e in entries], nu, q)
        return gen.normalized() if normalize else gen

    @classmethod
    def scalar(cls, u) -> GeneratorMatrix:
        """diag(u, u) for an octonion u."""
        z = np.zeros(8)
        return cls.from_entries(u, z, z, u)

    def entries(self) -> list[np.ndarray]:
        return [alg.scalar(m) + n * self.q for m, n in zip(self.mu, self.nu)]

    def matrix(self) -> Matrix2K:
        return Matrix2K(*self.entries())

    def array(self) -> np.ndarray:
        return self.matrix().array()

    def det(self) -> tuple[float, float]:
        """ad - bc as (real, q-coefficient); entries commute, so this is well defined."""
        ma, mb, mc, md = self.mu
        na, nb, nc, nd = self.nu
        return (ma * md - na * nd - mb * mc + nb * nc, ma * nd + na * md - mb * nc - nb * mc)

    def det_norm(self) -> float:
        return float(np.hypot(*self.det()))

    def is_normalized(self) -> bool:
        return abs(self.det_norm() - 1.0) <= NORMALIZATION_TOL

    def normalized(self) -> GeneratorMatrix:
        n = self.det_norm()
        if n == 0.0:
            raise ZeroDivisionError("singular generator")
        s = 1.0 / np.sqrt(n)
        return GeneratorMatrix(s * self.mu, s * self.nu, self.q)

    def adjugate(self) -> GeneratorMatrix:
        """adj(M) = (d, -b; -c, a)."""
        sign = np.array([1.0, -1.0, -1.0, 1.0])
        order = [3, 1, 2, 0]
        return GeneratorMatrix(sign * self.mu[order], sign * self.nu[order], self.q)

    def inverse_factors(self) -> tuple[GeneratorMatrix, GeneratorMatrix]:
        """(adj(M), (ad - bc)^{-1} id), to be applied in that order."""
        re, im = self.det()
        n2 = re * re + im * im
        if n2 == 0.0:
            raise ZeroDivisionError("generator is not invertible")
        s = np.array([1.0, 0.0, 0.0, 1.0])
        return self.adjugate(), GeneratorMatrix(s * re / n2, -s * im / n2, self.q)

    def to_json(self) -> dict:
        return {"mu": self.mu.tolist(), "nu": self.nu.tolist(), "q": self.q[1:].tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> GeneratorMatrix:
        return cls(obj["mu"], obj["nu"], obj["q"])


@dataclass(frozen=True)
class GroupWord:
    """A sequence of normalized generators; ``gens[0]`` acts first."""

    gens: tuple[GeneratorMatrix, ...] = ()

    def __post_init__(self):
        gens = tuple(self.gens)
        for g in gens:
            if not isinstance(g, GeneratorMatrix):
                raise TypeError("words are built from GeneratorMatrix objects")
            if not g.is_normalized():
                raise ValueError(f"generator has |ad - bc| = {g.det_norm():.6g}, expected 1")
        object.__setattr__(self, "gens", gens)

    def __len__(self) -> int:
        return len(self.gens)

    def then(self, other: GroupWord) -> GroupWord:
        """Apply ``self`` and then ``other``."""
        return GroupWord(self.gens + other.gens)

    def to_json(self) -> list:
        return [g.to_json() for g in self.gens]

    @classmethod
    def from_json(cls, obj) -> GroupWord:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(tuple(GeneratorMatrix.from_json(g) for g in obj))

    def reduce(self, tol: float = 1e-12) -> GroupWord:
        """Cancel adjacent pairs g, h with h = g^{-1} as matrices over R + R q."""
        out: list[GeneratorMatrix] = []
        for g in self.gens:
            if out and _cancels(out[-1], g, tol):
                out.pop()
            else:
                out.append(g)
        return GroupWord(tuple(out))


def _cancels(g: GeneratorMatrix, h: GeneratorMatrix, tol: float) -> bool:
    if np.abs(g.q - h.q).max() > tol:
        return False
    prod = matmul(h.array(), g.array())
    return bool(np.abs(prod - Matrix2K.identity().array()).max() <= tol)


def compose(w1: GroupWord, w2: GroupWord) -> GroupWord:
    """w1 o w2: apply w2, then w1."""
    return w2.then(w1)


def word_apply(w: GroupWord, x: Hermitian2) -> Hermitian2:
    for g in w.gens:
        x = phi_m_apply(g, x)
    return x


def word_inverse(w: GroupWord) -> GroupWord:
    gens: list[GeneratorMatrix] = []
    for g in reversed(w.gens):
        gens.extend(g.inverse_factors())
    return GroupWord(tuple(gens))


def word_to_so91(w: GroupWord) -> np.ndarray:
    """10x10 matrix of the word in light-cone coordinates."""
    return np.stack([herm_to_vec(word_apply(w, vec_to_herm(e))) for e in np.eye(10)], axis=1)


def lorentz_residual(lam: np.ndarray) -> float:
    e = eta(len(lam))
    return float(np.abs(lam.T @ e @ lam - e).max())


def random_generator(rng: np.random.Generator, scale: float = 0.5) -> GeneratorMatrix:
    """A normalized generator near the identity (keeps words well conditioned)."""
    q = np.zeros(8)
    q[1:] = rng.normal(size=7)
    q /= alg.norm(q)
    mu = np.array([1.0, 0.0, 0.0, 1.0]) + scale * rng.normal(size=4)
    nu = scale * rng.normal(size=4)
    g = GeneratorMatrix(mu, nu, q)
    while g.det_norm() < 0.1:
        g = GeneratorMatrix(g.mu + np.array([1.0, 0.0, 0.0, 1.0]), g.nu, q)
    return g.normalized()


def random_word(rng: np.random.Generator, length: int, scale: float = 0.5) -> GroupWord:
    return GroupWord(tuple(random_generator(rng, scale) for _ in range(length)))


# -- tangents ---------------------------------------------------------------------------

def tangent_of_curve(curve: Callable[[float], GroupWord], h: float = FD_STEP, tol: float = 1e-6) -> Sl2Element:
    """Tangent at t = 0 of a curve of words through the identity, as an sl(2, O) element.

    Central differences of the 10x10 matrices with one Richardson step, then
    pulled back through phi.
    """
    lam0 = word_to_so91(curve(0.0))
    if np.abs(lam0 - np.eye(10)).max() > 1e-9:
        raise ValueError("curve does not pass through the identity at t = 0")

    def central(step):
        return (word_to_so91(curve(step)) - word_to_so91(curve(-step))) / (2.0 * step)

    deriv = (4.0 * central(h / 2.0) - central(h)) / 3.0
    return phi_inverse(deriv, level=3, tol=tol)


def generator_tangent(adot, bdot, cdot, ddot) -> Sl2Element:
    """Tangent of a one-generator curve M(t) with M(0) = I:
    (1/2 (a' - d'), b'; c', 1/2 (d' - a')) + C_{(a' + d')/2}."""
    adot, bdot, cdot, ddot = (np.asarray(v, dtype=float) for v in (adot, bdot, cdot, ddot))
    half = 0.5 * (adot - ddot)
    s = 0.5 * (adot + ddot)
    if abs(s[0]) > 1e-9:
        raise ValueError("curve leaves the unit-determinant generators (Re(a' + d') != 0)")
    return Sl2Element(Matrix2K(half, bdot, cdot, -half), alg.imag(s))


def diagonal_curve(k: int) -> Callable[[float], GroupWord]:
    """t -> diag(1 + t e_k, 1 - t e_k), normalized."""
    e = alg.basis(k)
    one = alg.scalar(1.0)
    z = np.zeros(8)
    return lambda t: GroupWord((GeneratorMatrix.from_entries(one + t * e, z, z, one - t * e, normalize=True),))


def upper_curve(k: int) -> Callable[[float], GroupWord]:
    """t -> (1, t e_k; 0, 1)."""
    e = alg.basis(k)
    one = alg.scalar(1.0)
    z = np.zeros(8)
    return lambda t: GroupWord((GeneratorMatrix.from_entries(one, t * e, z, one, normalize=True),))


def lower_curve(k: int) -> Callable[[float], GroupWord]:
    """t -> (1, 0; t e_k, 1)."""
    e = alg.basis(k)
    one = alg.scalar(1.0)
    z = np.zeros(8)
    return lambda t: GroupWord((GeneratorMatrix.from_entries(one, z, t * e, one, normalize=True),))


def commutator_curve(k: int) -> Callable[[float], GroupWord]:
    """t -> diag(1 + t e_k, 1 + t e_k), normalized; tangent C_{e_k}."""
    e = alg.basis(k)
    one = alg.scalar(1.0)
    return lambda t: GroupWord((GeneratorMatrix.scalar(one + t * e).normalized(),))


def g2_curve(a, b) -> Callable[[float], GroupWord]:
    """The four-generator word reproducing G^t_{a,b}:
    phi_{u(t)^-1 id} o phi_{u(0) id} o phi_{u(t) id} o phi_{u(0)^-1 id}."""
    from .g2 import CurveParams, u_of_t

    p = CurveParams(a, b)
    u0 = u_of_t(p)

    def curve(t: float) -> GroupWord:
        ut = u_of_t(p.at(t))
        seq = (alg.inv(u0), ut, u0, alg.inv(ut))
        return GroupWord(tuple(GeneratorMatrix.scalar(u) for u in seq))

    return curve


def curve_families() -> dict[str, list[Callable[[float], GroupWord]]]:
    e = np.eye(8)
    return {
        "diag": [diagonal_curve(k) for k in range(8)] + [upper_curve(k) for k in range(8)]
        + [lower_curve(k) for k in range(8)],
        "comm": [commutator_curve(k) for k in range(1, 8)],
        "g2": [g2_curve(e[i], e[j]) for i in range(1, 8) for j in range(i + 1, 8)],
    }
