import itertools

import numpy as np
import pytest

from sl2o import algebra as alg
from sl2o import derivations as der
from sl2o.g2 import is_automorphism
from sl2o.linalg import commutator, rank


def test_three_forms_agree(rng):
    for _ in range(20):
        a, b = rng.normal(size=(2, 8))
        d = der.d_ab(a, b)
        assert np.abs(d - der.d_ab_half_sum(a, b)).max() < 1e-12
        assert np.abs(d - der.d_ab_operator(a, b)).max() < 1e-12


def test_d_ab_examples(e, rng):
    assert not np.any(der.d_ab(e[1], e[1]))
    a, b = rng.normal(size=(2, 8))
    assert np.abs(der.d_ab(a, b)[:, 0]).max() < 1e-12
    # [[e1,e2],e4] = 4 e7 e4 = -4 e3 and [e1,e2,e4] = -2 e3
    assert np.allclose(der.apply(der.d_ab(e[1], e[2]), e[4]), 2 * e[3])


def test_is_derivation_examples(e):
    assert der.is_derivation(der.d_ab(e[1], e[2]))
    assert not der.is_derivation(der.r_ij(1, 2))
    assert der.is_derivation(np.zeros((8, 8)))


def test_r_ij(e):
    r = der.r_ij(1, 2)
    assert np.array_equal(r @ e[1], e[2])
    assert np.array_equal(r @ e[2], -e[1])
    assert not np.any(r @ e[5])
    assert np.array_equal(der.r_ij(2, 1), -r)
    assert np.linalg.matrix_rank(r) == 2 and np.array_equal(r, -r.T)
    with pytest.raises(ValueError):
        der.r_ij(3, 3)
    with pytest.raises(ValueError):
        der.r_ij(0, 3)


def test_listed_f_basis():
    fs = der.f_basis()
    assert len(fs) == 14
    for f in fs:
        assert der.is_derivation(f)
        assert not np.any(f[:, 0]) and np.array_equal(f, -f.T)
        f2 = f @ f
        assert np.allclose(f2 @ f, -f)
        assert np.allclose(f2 @ f2, -f2)
        assert np.allclose(f2 @ f2 @ f, f)
    assert rank(fs) == 14
    assert np.linalg.matrix_rank(fs.reshape(14, -1)) == 14


def test_f_kij_errors():
    with pytest.raises(ValueError):
        der.f_kij(1, 1, 2)
    # e2 and e7 lie on the line through e1
    with pytest.raises(ValueError):
        der.f_kij(1, 2, 7)


def test_every_valid_f_is_derivation():
    for k, i, j in itertools.permutations(range(1, 8), 3):
        try:
            f = der.f_kij(k, i, j)
        except ValueError:
            continue
        assert der.is_derivation(f)


def test_dependence_relations(e):
    rel = der.dependence_relations()
    assert sorted(rel) == list(range(1, 8))
    for k, pairs in rel.items():
        assert len(pairs) == 3 and len({x for p in pairs for x in p}) == 6
        total = sum(der.d_ab(e[i], e[j]) for i, j in pairs)
        assert np.abs(total).max() < 1e-12


def test_spans_coincide(e):
    ds = [der.d_ab(e[i], e[j]) for i in range(1, 8) for j in range(i + 1, 8)]
    assert rank(ds) == 14
    assert rank(list(ds) + list(der.f_basis())) == 14
    for d in ds:
        assert der.is_derivation(d) and not np.any(d[:, 0])
        assert np.allclose(d[1:, 1:], -d[1:, 1:].T)


def test_generalized_jacobi(rng, e):
    for _ in range(30):
        a, b, c, d = (e[k] for k in rng.integers(1, 8, size=4))
        dab, dcd = der.d_ab(a, b), der.d_ab(c, d)
        lhs = dab @ dcd
        rhs = der.d_ab(dab @ c, d) + der.d_ab(c, dab @ d) + dcd @ dab
        assert np.abs(lhs - rhs).max() < 1e-10


def test_bracket_closes(e):
    f = der.f_basis()
    for x, y in itertools.combinations(f, 2):
        assert der.is_derivation(commutator(x, y))


def test_exp_f():
    f = der.f_kij(1, 2, 4)
    assert np.allclose(der.exp_f(0.0, f), np.eye(8))
    assert np.allclose(der.exp_f(2 * np.pi, f), np.eye(8))
    assert np.allclose(der.exp_f(0.3, f) @ der.exp_f(0.4, f), der.exp_f(0.7, f))
    g = der.exp_f(0.3, f)
    assert np.allclose(g.T @ g, np.eye(8))
    assert is_automorphism(g)
    assert is_automorphism(der.exp_f(0.7, der.f_kij(2, 5, 1)))
    with pytest.raises(ValueError):
        der.exp_f(0.1, 2 * f)


def test_rank_oracle_agrees_with_svd(rng):
    for n in range(1, 6):
        m = rng.normal(size=(6, n)) @ rng.normal(size=(n, 9))
        assert rank(m) == np.linalg.matrix_rank(m) == n
