"""
G2: derivations and the nested conjugation curve
=================================================

Conjugation by u is an automorphism exactly when u^3 is real.  Nesting
four such conjugations gives a curve in G2 whose tangent at the identity
is the derivation D_{a,b}.
"""

# %%
import itertools

import numpy as np

from sl2o import derivations as der
from sl2o import g2
from sl2o.linalg import rank

e = np.eye(8)

# %%
# Conjugation by a cube root of -1 is an automorphism; by 1 + e1 it is not.
u = 0.5 * e[0] + np.sqrt(3) / 2 * e[1]
print(g2.is_automorphism(g2.conjugation_map(u)), g2.is_automorphism(g2.conjugation_map(e[0] + e[1])))

# %%
# The 21 maps D_{e_i, e_j} span a 14-dimensional space, and the seven
# three-term relations account for the difference.
ds = [der.d_ab(e[i], e[j]) for i, j in itertools.combinations(range(1, 8), 2)]
print("rank of D span:", rank(ds), " rank with F basis:", rank(ds + list(der.f_basis())))
print("relations:", der.dependence_relations())

# %%
# Finite-difference tangent of t -> G^t_{a,b} versus D_{a,b}.
rep = g2.tangent_report(e[1], e[2], h=1e-4)
print("distance:", rep["distance"])
print(np.round(rep["d_ab"], 3))

# %%
# exp(tF) stays inside G2.
f = der.f_kij(1, 2, 4)
print([g2.is_automorphism(der.exp_f(t, f)) for t in np.linspace(0, 2 * np.pi, 5)])
