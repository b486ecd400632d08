"""
The derivation algebra g2 = Der(O) as real 8x8 matrices.

A linear map on O is stored extensionally: column k is the image of e_k.
Two bases are provided, the maps D_{a,b} and the double-plane rotations
F^k_{ij}, together with the closed-form exponential of the latter.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import algebra as alg
from .linalg import commutator

# (k, i, j) for the F^k_{ij} basis of g2
F_BASIS: tuple[tuple[int, int, int], ...] = (
    (1, 2, 4), (1, 2, 5),
    (2, 5, 1), (2, 5, 3),
    (3, 2, 1), (3, 2, 7),
    (4, 2, 3), (4, 1, 3),
    (5, 1, 7), (5, 1, 2),
    (6, 3, 1), (6, 7, 1),
    (7, 3, 6), (7, 1, 6),
)

DERIVATION_TOL = 1e-10


def apply(m: np.ndarray, x) -> np.ndarray:
    return np.einsum("ij,...j->...i", m, np.asarray(x, dtype=float))


def d_ab(a, b) -> np.ndarray:
    """Matrix of D_{a,b}(x) = [[a,b],x] - 3[a,b,x]."""
    e = np.eye(8)
    ab = alg.commutator(a, b)
    cols = alg.commutator(ab, e) - 3.0 * alg.associator(np.broadcast_to(a, (8, 8)), np.broadcast_to(b, (8, 8)), e)
    return cols.T


def d_ab_half_sum(a, b) -> np.ndarray:
    """D_{a,b} from (1/2)([[a,x],b] + [a,[b,x]] + [[a,b],x])."""
    e = np.eye(8)
    a8 = np.broadcast_to(a, (8, 8))
    b8 = np.broadcast_to(b, (8, 8))
    cols = 0.5 * (
        alg.commutator(alg.commutator(a8, e), b8)
        + alg.commutator(a8, alg.commutator(b8, e))
        + alg.commutator(alg.commutator(a8, b8), e)
    )
    return cols.T


def d_ab_operator(a, b) -> np.ndarray:
    """D_{a,b} = [L_a, L_b] + [L_a, R_b] + [R_a, R_b]."""
    la, lb = alg.left_matrix(a), alg.left_matrix(b)
    ra, rb = alg.right_matrix(a), alg.right_matrix(b)
    return commutator(la, lb) + commutator(la, rb) + commutator(ra, rb)


def r_ij(i: int, j: int) -> np.ndarray:
    """Plane rotation generator R_ij(x) = Re(x e_j) e_i - Re(x e_i) e_j."""
    if i == j or not (1 <= i <= 7 and 1 <= j <= 7):
        raise ValueError(f"R_ij needs distinct imaginary indices, got ({i}, {j})")
    e = np.eye(8)
    # Re(x e_j) for x = e_m is -delta_{mj}
    return -np.outer(e[i], e[j]) + np.outer(e[j], e[i])


def _partner(i: int, k: int) -> tuple[int, int]:
    """(sign, a) with e_i (sign e_a) = e_k."""
    for a in range(1, 8):
        s, kk = alg.basis_product(i, a)
        if kk == k and a != i:
            return s, a
    raise ValueError(f"e{i} and e{k} do not span a quaternionic line")  # pragma: no cover


def f_kij(k: int, i: int, j: int) -> np.ndarray:
    """F^k_{ij} = R_{ia} + R_{jb} with e_i e_a = e_k = -e_j e_b.

    When the table gives e_i e_a = -e_k the sign is absorbed, R_{i,-a} = -R_{ia}.
    """
    idx = (k, i, j)
    if len(set(idx)) != 3 or not all(1 <= t <= 7 for t in idx):
        raise ValueError(f"F^k_ij needs three distinct imaginary indices, got {idx}")
    sa, a = _partner(i, k)
    sb, b = _partner(j, k)
    if a == j:
        raise ValueError(f"no valid (a, b) for F^{k}_{i}{j}: e{i} and e{j} lie on one line with e{k}")
    return sa * r_ij(i, a) - sb * r_ij(j, b)


@lru_cache(maxsize=None)
def f_basis() -> np.ndarray:
    out = np.stack([f_kij(*t) for t in F_BASIS])
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def g2_basis() -> np.ndarray:
    """Orthonormal (Frobenius) basis of g2, shape (14, 8, 8)."""
    e = np.eye(8)
    ds = np.stack([d_ab(e[i], e[j]).ravel() for i in range(1, 8) for j in range(i + 1, 8)])
    _, s, vt = np.linalg.svd(ds)
    out = vt[: int(np.sum(s > 1e-9))].reshape(-1, 8, 8)
    out.setflags(write=False)
    return out


def dependence_relations() -> dict[int, list[tuple[int, int]]]:
    """For each k, the three pairs (i, j) with e_i e_j = e_k."""
    out: dict[int, list[tuple[int, int]]] = {}
    for k in range(1, 8):
        out[k] = [(i, j) for i in range(1, 8) for j in range(1, 8) if alg.basis_product(i, j) == (1, k)]
    return out


def is_derivation(d: np.ndarray, tol: float = DERIVATION_TOL) -> bool:
    """True iff D(e_i e_j) = D(e_i) e_j + e_i D(e_j) for all 64 basis pairs."""
    return leibniz_residual(d) < tol


def leibniz_residual(d: np.ndarray) -> float:
    s = alg.structure_constants(3)
    d = np.asarray(d, dtype=float)
    lhs = np.einsum("ijm,km->ijk", s, d)
    rhs = np.einsum("mi,mjk->ijk", d, s) + np.einsum("mj,imk->ijk", d, s)
    return float(np.abs(lhs - rhs).max())


def exp_f(t: float, f: np.ndarray) -> np.ndarray:
    """exp(tF) = Id + sin(t) F + (1 - cos t) F^2, valid when F^3 = -F."""
    f = np.asarray(f, dtype=float)
    f2 = f @ f
    if np.abs(f2 @ f + f).max() > 1e-10:
        raise ValueError("closed-form exponential needs F^3 = -F")
    return np.eye(len(f)) + np.sin(t) * f + (1.0 - np.cos(t)) * f2
