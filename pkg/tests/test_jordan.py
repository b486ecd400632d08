import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sl2o import algebra as alg
from sl2o import jordan as jd
from sl2o.jordan import Hermitian2, Matrix2K

from .conftest import half, octonions


def test_vec_to_herm_example():
    v = np.arange(10.0)
    h = jd.vec_to_herm(v)
    assert (h.alpha, h.beta) == (9.0, -9.0)
    assert np.array_equal(h.x, np.arange(1.0, 9.0))
    assert np.array_equal(jd.herm_to_vec(h), v)
    with pytest.raises(ValueError):
        jd.vec_to_herm(np.zeros(5))


@pytest.mark.parametrize("level", [0, 1, 2, 3])
def test_det_is_lorentz_norm(level, rng):
    v = rng.normal(size=jd.vector_size(level))
    h = jd.vec_to_herm(v)
    assert np.isclose(jd.det_herm(h), jd.quadratic_form(v))
    assert np.isclose(jd.det_herm(h.array()), jd.quadratic_form(v))
    assert np.isclose(v @ jd.eta(len(v)) @ v, jd.quadratic_form(v))


def test_hermitian_roundtrip_and_validation(rng):
    h = Hermitian2(1.5, -2.0, rng.normal(size=8))
    back = Hermitian2.from_array(h.array())
    assert (back.alpha, back.beta) == (1.5, -2.0) and np.array_equal(back.x, h.x)
    bad = h.array()
    bad[1, 0, 3] += 1.0
    with pytest.raises(ValueError):
        Hermitian2.from_array(bad)
    assert Hermitian2.from_json(h.to_json()).alpha == 1.5


def test_matrix_basics(e):
    m = Matrix2K(e[1], e[2], e[3], e[4])
    assert m.level == 3
    assert np.array_equal(m.dagger().b, -e[3])
    assert np.array_equal(m.trace(), e[1] + e[4])
    assert np.array_equal(Matrix2K.from_json(m.to_json()).array(), m.array())
    ident = Matrix2K.identity().array()
    assert np.array_equal(jd.matmul(ident, m.array()), m.array())
    with pytest.raises(ValueError):
        Matrix2K(e[1], e[2], e[3], np.zeros(4))


def test_matmul_entries(rng):
    p, q = rng.normal(size=(2, 2, 2, 8))
    out = jd.matmul(p, q)
    assert np.allclose(out[0, 1], alg.mul(p[0, 0], q[0, 1]) + alg.mul(p[0, 1], q[1, 1]))
    assert np.allclose(jd.dagger(jd.dagger(p)), p)


@settings(max_examples=100)
@given(half, half, octonions, half, half, octonions)
def test_jordan_identity(a1, b1, x1, a2, b2, x2):
    x, y = Hermitian2(a1, b1, x1), Hermitian2(a2, b2, x2)
    x2_ = jd.jordan_product(x, x)
    lhs = jd.jordan_product(jd.jordan_product(x, y), x2_)
    rhs = jd.jordan_product(x, jd.jordan_product(y, x2_))
    assert np.allclose(lhs.array(), rhs.array(), atol=1e-9)
    assert np.allclose(jd.jordan_product(x, y).array(), jd.jordan_product(y, x).array())


def test_det_mmdagger_matches_determinant_over_associative_levels(rng):
    for level in (0, 1, 2):
        dim = alg.DIMS[level]
        m = Matrix2K(*rng.normal(size=(4, dim)))
        h = Hermitian2.from_array(jd.matmul(m.array(), m.dagger().array()), tol=1e-10)
        assert np.isclose(jd.det_herm(h), jd.det_mmdagger(m))


def test_octonionic_action_does_not_preserve_det(e):
    # (0, e1; e2, 0) with x = e4: both off-diagonal entries of (M X) M^dagger
    # come out as +e3, so the result is not even Hermitian
    m = Matrix2K(np.zeros(8), e[1], e[2], np.zeros(8))
    x = Hermitian2(0.0, 0.0, e[4])
    y = jd.hermitian_action(m, x)
    assert np.array_equal(y[0, 1], e[3]) and np.array_equal(y[1, 0], e[3])
    assert jd.hermiticity_error(y) == 2.0


def test_vec_json():
    v = np.arange(6.0)
    assert jd.vec_to_json(v) == {"level": 2, "coords": v.tolist()}
    assert np.array_equal(jd.vec_from_json(jd.vec_to_json(v)), v)
    assert np.array_equal(jd.vec_from_json("[1, 2, 3]"), [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        jd.vec_from_json({"level": 3, "coords": [1, 2]})
    with pytest.raises(ValueError):
        jd.lorentz_form([1, 2], [1, 2, 3])


def test_light_cone_examples():
    v = np.zeros(10)
    v[0] = 1.0
    h = jd.vec_to_herm(v)
    assert (h.alpha, h.beta, jd.det_herm(h)) == (1.0, 1.0, 1.0)
    v = np.zeros(10)
    v[-1] = 1.0
    h = jd.vec_to_herm(v)
    assert (h.alpha, h.beta, jd.det_herm(h)) == (1.0, -1.0, -1.0)


def test_jordan_product_examples(rng):
    x = Hermitian2(0.5, -1.5, rng.normal(size=8))
    ident = Hermitian2(1.0, 1.0, np.zeros(8))
    out = jd.jordan_product(x, ident)
    assert np.allclose(out.array(), x.array())
    sq = jd.jordan_product(x, x)
    assert np.allclose(sq.array(), jd.matmul(x.array(), x.array()))
    y = Hermitian2(*rng.normal(size=2), rng.normal(size=8))
    assert jd.hermiticity_error(0.5 * (jd.matmul(x.array(), y.array()) + jd.matmul(y.array(), x.array()))) < 1e-12
