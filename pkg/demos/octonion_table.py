"""
Octonion arithmetic and the multiplication table
=================================================

Elements are plain numpy arrays of 8 coefficients, so everything below
broadcasts over stacks of octonions.
"""

# %%
import numpy as np

from sl2o import algebra as alg
from sl2o.algebra import AlgebraElement as O

e = np.eye(8)
print("oriented lines:", alg.TRIPLES)
print("e3 e5 =", alg.format_basis(*alg.basis_product(3, 5)))
print("e1 e4 =", alg.format_basis(*alg.basis_product(1, 4)))

# %%
# The product is not associative, but any two elements generate an
# associative subalgebra.  The associator of three basis units on different
# lines is twice a unit.
print("[e1, e2, e5] =", alg.associator(e[1], e[2], e[5]))
print("[e1, e1, e5] =", alg.associator(e[1], e[1], e[5]))

# %%
# Norms multiply, over 10^4 random pairs at once.
rng = np.random.default_rng(0)
x, y = rng.normal(size=(2, 10_000, 8))
gap = np.abs(alg.norm(alg.mul(x, y)) - alg.norm(x) * alg.norm(y)).max()
print("max | |xy| - |x||y| | =", gap)

# %%
# Operator syntax for interactive work.
u = O.parse("0.5+2e3-e7")
print(u * u.inverse())
print("tables with these two pinned products:",
      sum((1, 3, 5) in t and (1, 6, 4) in t for t in alg.enumerate_tables()), "of 480")
