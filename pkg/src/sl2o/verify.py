"""
Seeded property suites behind ``octo verify``.

Each suite returns a list of checks; a check records a measured value, the
bound it is compared against and whether it passed.  Samples come from a
Philox generator so a seed fixes the report exactly.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from . import algebra as alg
from . import derivations as der
from . import g2, group, jordan, lorentz
from .linalg import rank

SUITES = (
    "moufang", "artin", "lemma-u3", "lemma4", "detfactor",
    "iso-R", "iso-C", "iso-H", "iso-O",
    "g2-tangent", "sl2o-tangent", "lorentz-word",
)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def half_integers(rng: np.random.Generator, shape, bound: float = 2.0) -> np.ndarray:
    """Uniform draws from {-bound, ..., -1/2, 0, 1/2, ..., bound}."""
    k = int(2 * bound)
    return rng.integers(-k, k + 1, size=shape) / 2.0


def _check(name: str, value, bound, relation: str = "<") -> dict:
    value = float(value) if relation == "<" else int(value)
    passed = value < bound if relation == "<" else value == bound
    return {"name": name, "value": value, "bound": bound, "relation": relation, "passed": bool(passed)}


def _maxabs(x) -> float:
    return float(np.abs(x).max())


# -- suites ---------------------------------------------------------------------------

def suite_moufang(rng, samples, tol=1e-11):
    x, y, z = half_integers(rng, (3, samples, 8))
    mul, inv, cj = alg.mul, alg.inv, alg.conj
    z = np.where(alg.norm2(z)[:, None] == 0.0, alg.scalar(1.0), z)
    c, a = alg.commutator, alg.associator
    zxz = mul(mul(z, x), z)
    zyz = mul(mul(z, y), z)
    out = [
        ("norm-multiplicative", alg.norm(mul(x, y)) - alg.norm(x) * alg.norm(y)),
        ("moufang-left", mul(z, mul(x, mul(z, y))) - mul(zxz, y)),
        ("moufang-right", mul(mul(mul(x, z), y), z) - mul(x, zyz)),
        ("moufang-middle", mul(mul(z, x), mul(y, z)) - mul(mul(z, mul(x, y)), z)),
        ("derived-moufang-1", mul(mul(x, y), z) - mul(mul(x, inv(z)), zyz)),
        ("derived-moufang-2", mul(z, mul(x, y)) - mul(zxz, mul(inv(z), y))),
        ("conj-commutator", np.concatenate([c(cj(x), y) + c(x, y), cj(c(x, y)) + c(x, y)])),
        ("conj-associator", np.concatenate([a(cj(x), y, z) + a(x, y, z), cj(a(x, y, z)) + a(x, y, z)])),
        ("six-associator", 6 * a(x, y, z) - c(c(x, y), z) - c(c(y, z), x) - c(c(z, x), y)),
    ]
    return [_check(name, _maxabs(r), tol) for name, r in out]


@lru_cache(maxsize=None)
def _bracketings(n: int):
    """All full parenthesizations of n leaves, as nested tuples of indices."""
    def build(lo, hi):
        if hi - lo == 1:
            return [lo]
        out = []
        for mid in range(lo + 1, hi):
            out += [(l, r) for l in build(lo, mid) for r in build(mid, hi)]
        return out
    return tuple(build(0, n))


def _evaluate(tree, letters):
    if isinstance(tree, int):
        return letters[tree]
    return alg.mul(_evaluate(tree[0], letters), _evaluate(tree[1], letters))


def suite_artin(rng, samples, tol=1e-11):
    a, b = rng.normal(size=(2, samples, 8))
    a /= alg.norm(a)[:, None]
    b /= alg.norm(b)[:, None]
    worst = 0.0
    for n in range(3, 7):
        for pattern in itertools.product((0, 1), repeat=n):
            letters = [a if p == 0 else b for p in pattern]
            values = [_evaluate(t, letters) for t in _bracketings(n)]
            worst = max(worst, max(_maxabs(v - values[0]) for v in values[1:]))
    return [_check("artin-two-generator", worst, tol)]


def sample_off_cone(rng, size, margin=0.1):
    out = []
    while len(out) < size:
        u = rng.normal(size=8)
        u /= alg.norm(u)
        if alg.norm(alg.imag(g2.cube_closed_form(u))) > margin:
            out.append(u)
    return np.array(out)


def suite_lemma_u3(rng, samples, tol=None):
    on = g2.sample_cone(rng, samples)
    reals = np.zeros((max(1, samples // 10), 8))
    reals[:, 0] = rng.uniform(0.5, 2.0, len(reals)) * rng.choice([-1.0, 1.0], len(reals))
    off = sample_off_cone(rng, samples)
    miss_on = sum(not g2.is_automorphism(g2.conjugation_map(u)) for u in np.concatenate([on, reals]))
    miss_off = sum(g2.is_automorphism(g2.conjugation_map(u)) for u in off)
    cube = max(_maxabs(alg.imag(alg.mul(alg.mul(u, u), u))) for u in on)
    return [
        _check("cone-misclassified", miss_on, 0, "=="),
        _check("off-cone-misclassified", miss_off, 0, "=="),
        _check("cone-cube-imaginary", cube, 1e-10),
    ]


def suite_lemma4(rng, samples, tol=1e-12):
    a, b, c, d = half_integers(rng, (4, samples, 8), bound=1.0)
    lhs, rhs = group.lemma4_identity(a, b, c, d)
    return [_check("lemma4", _maxabs(lhs - rhs), tol)]


def suite_detfactor(rng, samples, tol=1e-10):
    m = half_integers(rng, (samples, 2, 2, 8), bound=1.0)
    x = half_integers(rng, (samples, 8), bound=1.0)
    val = group.det_cond_octonion(m, x)
    return [
        _check("detfactor", _maxabs(val[..., 0] - group.detfactor_expansion(m, x)), tol),
        _check("det-cond-real", _maxabs(val[..., 1:]), tol),
    ]


def iso_checks(level, rng, samples, tol_hom=1e-9, tol_action=1e-11):
    basis = lorentz.sl2_basis(level)
    so = max(lorentz.so_residual(lorentz.phi(b)) for b in basis)
    hom = lorentz.check_homomorphism(level, samples, rng)["max_residual"]
    size = jordan.vector_size(level)
    act = 0.0
    for _ in range(samples):
        n = lorentz.random_element(level, rng)
        v = rng.normal(size=size)
        lhs = jordan.herm_to_vec(lorentz.tangent_action(n, jordan.vec_to_herm(v)))
        act = max(act, _maxabs(lhs - lorentz.phi(n) @ v))
    return [
        _check("image-rank", lorentz.image_rank(level), lorentz.IMAGE_DIMS[level], "=="),
        _check("so-condition", so, 1e-12),
        _check("homomorphism", hom, tol_hom),
        _check("tangent-action", act, tol_action),
    ]


def suite_g2_tangent(rng, samples, tol=1e-5):
    e = np.eye(8)
    worst = max(
        float(np.linalg.norm(g2.tangent_at_identity(e[i], e[j]) - der.d_ab(e[i], e[j])))
        for i in range(1, 8) for j in range(i + 1, 8)
    )
    rand = 0.0
    for _ in range(min(samples, 50)):
        a = np.concatenate([[0.0], rng.normal(size=7)])
        b = np.concatenate([[0.0], rng.normal(size=7)])
        a *= 2.0 / max(2.0, float(alg.norm(a)))
        b -= a * alg.dot(a, b) / alg.norm2(a)
        b *= 2.0 / max(2.0, float(alg.norm(b)))
        rand = max(rand, float(np.linalg.norm(g2.tangent_at_identity(a, b) - der.d_ab(a, b))))
    return [_check("basis-pairs", worst, tol), _check("random-pairs", rand, tol)]


def suite_sl2o_tangent(rng, samples, tol=1e-5):
    fams = group.curve_families()
    vectors = []
    for curves in fams.values():
        vectors += [lorentz.phi(group.tangent_of_curve(c)) for c in curves]
    e = np.eye(8)
    g2_err = max(
        _maxabs(group.tangent_of_curve(group.g2_curve(e[i], e[j])).g - der.d_ab(e[i], e[j]))
        for i in range(1, 8) for j in range(i + 1, 8)
    )
    one_gen = 0.0
    for k in range(1, 8):
        t = group.tangent_of_curve(group.commutator_curve(k))
        one_gen = max(one_gen, _maxabs(t.vector() - group.generator_tangent(e[k], 0 * e[k], 0 * e[k], e[k]).vector()))
    return [
        _check("reachable-rank", rank(vectors, 1e-6), 45, "=="),
        _check("g2-curve-tangent", g2_err, tol),
        _check("one-generator-tangent", one_gen, tol),
    ]


def suite_lorentz_word(rng, samples, tol=1e-9):
    inv_err = lor = mult = 0.0
    basis = [jordan.vec_to_herm(v) for v in np.eye(10)]
    for _ in range(samples):
        w = group.random_word(rng, int(rng.integers(1, 9)))
        w2 = group.random_word(rng, int(rng.integers(1, 5)))
        winv = group.word_inverse(w)
        for x in basis:
            back = group.word_apply(winv, group.word_apply(w, x))
            inv_err = max(inv_err, _maxabs(jordan.herm_to_vec(back) - jordan.herm_to_vec(x)))
        lam = group.word_to_so91(w)
        lam2 = group.word_to_so91(w2)
        scale = max(1.0, _maxabs(lam)) ** 2
        lor = max(lor, group.lorentz_residual(lam) / scale)
        both = group.word_to_so91(group.compose(w2, w))
        mult = max(mult, _maxabs(both - lam2 @ lam) / max(1.0, _maxabs(lam2) * _maxabs(lam)))
    return [_check("inverse", inv_err, tol), _check("lorentz", lor, tol), _check("multiplicative", mult, tol)]


_RUNNERS = {
    "moufang": suite_moufang,
    "artin": suite_artin,
    "lemma-u3": suite_lemma_u3,
    "lemma4": suite_lemma4,
    "detfactor": suite_detfactor,
    "iso-R": lambda rng, n, tol=None: iso_checks(0, rng, n),
    "iso-C": lambda rng, n, tol=None: iso_checks(1, rng, n),
    "iso-H": lambda rng, n, tol=None: iso_checks(2, rng, n),
    "iso-O": lambda rng, n, tol=None: iso_checks(3, rng, n),
    "g2-tangent": suite_g2_tangent,
    "sl2o-tangent": suite_sl2o_tangent,
    "lorentz-word": suite_lorentz_word,
}


def run_suite(name: str, seed: int = 0, samples: int = 100, tolerances: dict | None = None) -> dict:
    """Run one suite; ``tolerances`` overrides the bound of any '<' check by name."""
    if name not in _RUNNERS:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if samples < 1:
        raise ValueError("samples must be at least 1")
    checks = _RUNNERS[name](make_rng(seed), samples)
    for c in checks:
        if tolerances and c["name"] in tolerances and c["relation"] == "<":
            bound = float(tolerances[c["name"]])
            if bound <= 0:
                raise ValueError("tolerances must be positive")
            c["bound"] = bound
            c["passed"] = c["value"] < bound
    return {
        "suite": name,
        "seed": seed,
        "samples": samples,
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }
