"""
sl(2, K) as a Lorentz algebra
==============================

phi sends sl(2, K) into so(n+1, 1) for K = R, C, H, O.  For the octonions
the algebra is 45-dimensional: traceless matrices plus commutator maps plus
derivations.
"""

# %%
import numpy as np

from sl2o import lorentz as lz
from sl2o.linalg import commutator

rng = np.random.default_rng(1)

# %%
for level, name in enumerate("RCHO"):
    print(name, "image rank", lz.image_rank(level), " homomorphism residual",
          lz.check_homomorphism(level, 20, rng)["max_residual"])

# %%
# The bracket on sl(2, O) is built component by component; phi turns it
# into the matrix commutator.
x, y = lz.random_element(3, rng), lz.random_element(3, rng)
print(np.abs(lz.phi(lz.bracket(x, y)) - commutator(lz.phi(x), lz.phi(y))).max())

# %%
# And back again: phi is injective, so a 10x10 image can be decoded.
back = lz.phi_inverse(lz.phi(x))
print(np.abs(back.vector() - x.vector()).max())
