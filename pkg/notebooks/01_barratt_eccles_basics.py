# coding: utf-8

# # Barratt-Eccles simplices and the complexity filtration

# A simplex of E(r) is a sequence of permutations of {1..r} with no two
# neighbours equal. Internally each permutation is an index into a lex table,
# so a simplex is a tuple of small integers.

# In[1]:

import numpy as np

from enkoszul.barratt_eccles import BEChain, differential, orbit_basis, partial_composite
from enkoszul.symm import perm_table

T = perm_table(3)
print(T.perms)


# The 1-simplex (123, 213) swaps the letters 1 and 2 once. Its boundary is the
# difference of its two vertices.

# In[2]:

x = BEChain(3, 1, {(T.index[(1, 2, 3)], T.index[(2, 1, 3)]): 1})
print(differential(x))


# ## Counting orbits per filtration level

# The twisted coinvariants are spanned by orbit representatives, which we
# choose to start at the identity. Compare E_1, E_2 and E_3 in arity 4.

# In[3]:

for n in (1, 2, 3):
    sizes = [len(orbit_basis(n, 4, k)) for k in range(7)]
    print("E_%d(4)" % n, sizes)


# E_1 is concentrated in degree 0: it is the associative operad. E_2(4)
# stops in degree 6, the number of pairs of letters, because each pair may
# flip at most once.

# Arity 3 has three pairs, so E_n(3) tops out in degree 3(n - 1).

# In[4]:

counts = np.array([[len(orbit_basis(n, 3, k)) for k in range(7)] for n in (1, 2, 3)])
print(counts)
print("top degree", [int(np.flatnonzero(row).max()) for row in counts])


# ## Composition

# Partial composition substitutes one simplex into a slot of another and
# shuffles the two along the Eilenberg-Zilber map.

# In[5]:

P2 = perm_table(2)
mu = BEChain(2, 1, {(P2.index[(1, 2)], P2.index[(2, 1)]): 1})
print(partial_composite(mu, mu, 1))
