"""
SL(2, O) as words of generators
================================

A single octonionic matrix need not preserve the determinant of a
Hermitian matrix.  Matrices whose entries share one imaginary direction do,
and words in them act as Lorentz transformations of R^{9,1}.
"""

# %%
import numpy as np

from sl2o import group as gp
from sl2o.jordan import Matrix2K

rng = np.random.default_rng(2)
e = np.eye(8)

# %%
print(gp.is_det_preserving(Matrix2K(np.zeros(8), e[1], e[2], np.zeros(8))))
print(gp.is_det_preserving(gp.random_generator(rng).matrix()))

# %%
# A boost along the x9 axis.
r = np.sqrt(2.0)
boost = gp.GroupWord((gp.GeneratorMatrix([r, 0, 0, 1 / r], [0, 0, 0, 0], e[1]),))
print(np.round(gp.word_to_so91(boost)[[0, 9]][:, [0, 9]], 6))

# %%
w = gp.random_word(rng, 6)
lam = gp.word_to_so91(w)
print("Lorentz residual", gp.lorentz_residual(lam))
print("w w^-1 - I", np.abs(gp.word_to_so91(gp.compose(w, gp.word_inverse(w))) - np.eye(10)).max())

# %%
# Tangent vectors of three curve families fill all 45 directions.
from sl2o.linalg import rank
from sl2o.lorentz import phi

vectors = [phi(gp.tangent_of_curve(c)) for fam in gp.curve_families().values() for c in fam]
print("reachable rank:", rank(vectors, 1e-6))
