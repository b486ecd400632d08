import numpy as np
import pytest

from sl2o import algebra as alg
from sl2o import derivations as der
from sl2o import lorentz as lz
from sl2o.jordan import Hermitian2, Matrix2K
from sl2o.linalg import commutator, rank

LEVELS = [0, 1, 2, 3]


def test_commutator_display_entry(e):
    # C_{e7} sends e2 to 2 e7 e2 = -2 e1
    assert lz.phi(lz.Sl2Element(Matrix2K(*np.zeros((4, 8))), cd=e[7]))[2, 3] == -2.0


def test_commutator_display_matches_operator(rng):
    d = alg.imag(rng.normal(size=8))
    block = lz.phi_commutator_part(d)[2:9, 2:9]
    assert np.allclose(block, lz.commutator_map(d)[1:, 1:])


@pytest.mark.parametrize("level", LEVELS)
def test_image_rank(level):
    assert len(lz.sl2_basis(level)) == lz.IMAGE_DIMS[level]
    assert lz.image_rank(level) == lz.IMAGE_DIMS[level]


@pytest.mark.parametrize("level", LEVELS)
def test_phi_lands_in_so_and_matches_action(level, rng):
    for _ in range(10):
        x = lz.random_element(level, rng)
        assert lz.so_residual(lz.phi(x)) < 1e-12
        assert np.abs(lz.action_matrix(x) - lz.phi(x)).max() < 1e-11


@pytest.mark.parametrize("level", LEVELS)
def test_homomorphism(level, rng):
    assert lz.check_homomorphism(level, 25, rng)["max_residual"] < 1e-9


@pytest.mark.parametrize("level", LEVELS)
def test_phi_inverse_roundtrip(level, rng):
    x = lz.random_element(level, rng)
    y = lz.phi_inverse(lz.phi(x), level)
    assert np.allclose(y.vector(), x.vector(), atol=1e-9)
    junk = rng.normal(size=(lz.vector_size(level),) * 2)
    with pytest.raises(ValueError):
        lz.phi_inverse(junk, level)


def test_phi_inverse_of_derivation(e):
    g = der.d_ab(e[1], e[2])
    out = lz.phi_inverse(lz.phi_derivation_part(g))
    assert np.allclose(out.g, g) and not np.any(np.abs(out.cd) > 1e-12)
    assert np.abs(out.m.array()).max() < 1e-12


def test_tangent_action_of_derivation(e):
    n = lz.Sl2Element(Matrix2K(*np.zeros((4, 8))), g=der.d_ab(e[1], e[2]))
    out = lz.tangent_action(n, Hermitian2(1.0, 2.0, e[4]))
    assert (out.alpha, out.beta) == (0.0, 0.0)
    assert np.allclose(out.x, 2 * e[3])


def test_so7_splits(e, rng):
    assert rank(lz._so7_basis()) == 21
    d, g = lz.split_so7(der.d_ab(e[1], e[2]))
    assert np.abs(d).max() < 1e-12
    d, g = lz.split_so7(lz.commutator_map(e[4]))
    assert np.allclose(d, e[4]) and np.abs(g).max() < 1e-12
    a = rng.normal(size=(7, 7))
    d, g = lz.split_so7(a - a.T)
    assert der.is_derivation(g)
    assert np.allclose(lz.commutator_map(d)[1:, 1:] + g[1:, 1:], a - a.T)
    with pytest.raises(ValueError):
        lz.split_so7(np.eye(7))


def test_jacobi(rng):
    for _ in range(5):
        x, y, z = (lz.random_element(3, rng) for _ in range(3))
        b = lz.bracket
        total = b(x, b(y, z)) + b(y, b(z, x)) + b(z, b(x, y))
        assert np.abs(total.vector()).max() < 1e-9


def test_bracket_antisymmetric(rng):
    x, y = lz.random_element(3, rng), lz.random_element(3, rng)
    assert np.allclose(lz.bracket(x, y).vector(), -lz.bracket(y, x).vector())


def test_derivation_pairing(rng):
    # only the pairing D_{y,c} + D_{z,b} makes phi a homomorphism
    x, y = lz.random_element(3, rng, "m"), lz.random_element(3, rng, "m")
    target = commutator(lz.phi(x), lz.phi(y))
    good = lz.bracket(x, y)
    assert np.abs(lz.phi(good) - target).max() < 1e-10
    w, yy, z = x.m.a, x.m.b, x.m.c
    a, b, c = y.m.a, y.m.b, y.m.c
    swapped = (2 * der.d_ab(w, a) + der.d_ab(yy, b) + der.d_ab(z, c)) / 3
    bad = lz.Sl2Element(good.m, good.cd, swapped)
    assert np.abs(lz.phi(bad) - target).max() > 1e-3


def test_quaternion_closure(rng):
    x, y = lz.random_element(2, rng), lz.random_element(2, rng)
    out = lz.bracket(x, y)
    assert abs(out.m.trace()[0]) < 1e-12


def test_element_validation(e):
    z = np.zeros(8)
    with pytest.raises(ValueError):
        lz.Sl2Element(Matrix2K(e[0], z, z, e[0]))
    with pytest.raises(ValueError):
        lz.Sl2Element(Matrix2K(z, z, z, z), cd=e[0])
    with pytest.raises(ValueError):
        lz.Sl2Element(Matrix2K(z, z, z, z), g=der.r_ij(1, 2))
    z4 = np.zeros(4)
    # imaginary trace is allowed for quaternions only
    lz.Sl2Element(Matrix2K(np.eye(4)[1], z4, z4, z4))
    with pytest.raises(ValueError):
        lz.Sl2Element(Matrix2K(np.eye(2)[1], np.zeros(2), np.zeros(2), np.zeros(2)))
    with pytest.raises(ValueError):
        lz.Sl2Element(Matrix2K(z4, z4, z4, z4), cd=e[1])


def test_json_roundtrip(rng):
    x = lz.random_element(3, rng)
    y = lz.Sl2Element.from_json(x.to_json())
    assert np.array_equal(x.vector(), y.vector())
