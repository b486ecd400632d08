"""
G2 as the automorphism group of O: conjugation automorphisms x -> u x u^{-1},
the unit curve u(t) and the nested curve G^t_{a,b}.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra as alg
from .derivations import d_ab

AUTOMORPHISM_TOL = 1e-9
SQRT3 = np.sqrt(3.0)


def conjugation_map(u) -> np.ndarray:
    """Matrix of x -> u x u^{-1}.

    u and x generate an associative subalgebra, so the placement of
    parentheses does not matter.
    """
    u = np.asarray(u, dtype=float)
    if alg.norm2(u) == 0.0:
        raise ZeroDivisionError("conjugation by zero")
    return _conj_apply(u, np.eye(8)).T


def _conj_apply(u, x):
    return alg.mul(alg.mul(u, x), alg.inv(u))


def automorphism_residual(t: np.ndarray) -> float:
    s = alg.structure_constants(3)
    t = np.asarray(t, dtype=float)
    lhs = np.einsum("ijm,km->ijk", s, t)
    rhs = np.einsum("mi,nj,mnk->ijk", t, t, s)
    return float(np.abs(lhs - rhs).max())


def is_automorphism(t: np.ndarray, tol: float = AUTOMORPHISM_TOL) -> bool:
    """True iff T(e_i e_j) = T(e_i) T(e_j) on all basis pairs."""
    return automorphism_residual(t) < tol


def cube_closed_form(u) -> np.ndarray:
    """u^3 = u0^3 - 3 u0 |v|^2 + (3 u0^2 - |v|^2) v, where v = Im(u)."""
    u = np.asarray(u, dtype=float)
    u0 = u[..., 0]
    v = alg.imag(u)
    vv = alg.norm2(v)
    out = (3.0 * u0**2 - vv)[..., None] * v
    out[..., 0] = u0**3 - 3.0 * u0 * vv
    return out


def u_cubed_is_real(u, tol: float = 1e-10) -> bool:
    u = np.asarray(u, dtype=float)
    cube = alg.mul(alg.mul(u, u), u)
    scale = max(float(alg.norm2(u)) ** 1.5, 1.0)
    return bool(alg.norm(alg.imag(cube)) <= tol * scale)


@dataclass(frozen=True)
class CurveParams:
    """Parameters of u(t) and G^t_{a,b}: imaginary, nonzero, anticommuting a, b."""

    a: np.ndarray
    b: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=float)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if abs(a[0]) > 1e-12 or abs(b[0]) > 1e-12:
            raise ValueError("a and b must be purely imaginary")
        if alg.norm(a) < 1e-12 or alg.norm(b) < 1e-12:
            raise ValueError("a and b must be nonzero")
        if alg.norm(alg.mul(a, b) + alg.mul(b, a)) > 1e-12:
            raise ValueError("a and b must anticommute")

    def at(self, t: float) -> CurveParams:
        return CurveParams(self.a, self.b, t)


def u_of_t(p: CurveParams) -> np.ndarray:
    """u(t) = 1/2 + (sqrt3/2) r/|r| with r = a + (4/3)|a|^2 t b."""
    a2 = float(alg.norm2(p.a))
    r = p.a + (4.0 / 3.0) * a2 * p.t * p.b
    return alg.scalar(0.5) + (SQRT3 / 2.0) * r / alg.norm(r)


def udot_closed_form(a, b) -> np.ndarray:
    """-2 Re(a conj b) / (sqrt3 |a|) + (2|a|/sqrt3) b."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    na = float(alg.norm(a))
    re_ab = float(alg.real(alg.mul(a, alg.conj(b))))
    return alg.scalar(-2.0 * re_ab / (SQRT3 * na)) + (2.0 * na / SQRT3) * b


def curve_apply(p: CurveParams, x) -> np.ndarray:
    """G^t_{a,b}(x) = ut^-1 (u0 (ut ((u0^-1 x u0)) ut^-1) u0^-1) ut."""
    ut = u_of_t(p)
    u0 = u_of_t(p.at(0.0))
    ut_i, u0_i = alg.inv(ut), alg.inv(u0)
    mul = alg.mul
    y = mul(mul(u0_i, x), u0)
    y = mul(mul(ut, y), ut_i)
    y = mul(mul(u0, y), u0_i)
    return mul(mul(ut_i, y), ut)


def curve_G(p: CurveParams) -> np.ndarray:
    return curve_apply(p, np.eye(8)).T


def tangent_at_identity(a, b, h: float = 1e-4) -> np.ndarray:
    """Central difference of t -> G^t_{a,b} at t = 0 with one Richardson step."""
    p = CurveParams(a, b)

    def central(step):
        return (curve_G(p.at(step)) - curve_G(p.at(-step))) / (2.0 * step)

    return (4.0 * central(h / 2.0) - central(h)) / 3.0


def tangent_report(a, b, h: float = 1e-4) -> dict:
    fd = tangent_at_identity(a, b, h)
    exact = d_ab(a, b)
    return {"finite_difference": fd, "d_ab": exact, "distance": float(np.linalg.norm(fd - exact))}


def sample_cone(rng: np.random.Generator, size: int) -> np.ndarray:
    """Octonions with 3 u0^2 = |Im u|^2, u0 uniform in [-1, 1] minus 0."""
    u0 = rng.uniform(-1.0, 1.0, size)
    u0[u0 == 0.0] = 0.5
    v = rng.normal(size=(size, 7))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    u = np.empty((size, 8))
    u[:, 0] = u0
    u[:, 1:] = v * (SQRT3 * np.abs(u0))[:, None]
    return u


def real_obstruction(x, tol: float = 1e-12) -> list[tuple[int, int, int]]:
    """For each imaginary direction present in x, a basis pair with [x, e_i, e_j] != 0.

    Returns the witnesses (direction, i, j).  Empty list iff x is real.
    """
    x = np.asarray(x, dtype=float)
    e = np.eye(8)
    out = []
    for k in np.flatnonzero(np.abs(x[1:]) > tol) + 1:
        for i in range(1, 8):
            for j in range(i + 1, 8):
                if alg.norm(alg.associator(x, e[i], e[j])) > tol and alg.norm(alg.associator(e[k], e[i], e[j])) > tol:
                    out.append((int(k), i, j))
                    break
            else:
                continue
            break
    return out
