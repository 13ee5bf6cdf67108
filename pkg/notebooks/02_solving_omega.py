# coding: utf-8

# # Solving the Maurer-Cartan equation

# omega is built one arity at a time. At each order the already known terms
# produce an obstruction, which must be a boundary, and omega(r) is minus a
# chosen preimage.

# In[1]:

from enkoszul.chains import F2, ZZ
from enkoszul.mc_solver import solve_omega, verify_mc

cert = solve_omega(2, 5)
for c in cert.checks:
    print(c.r, c.chain_degree, c.expected_degree, c.nterms, c.slice_size)


# The residual d(omega) + omega∘omega is recomputed from scratch by verify_mc.

# In[2]:

rep = verify_mc(cert)
print(rep.ok, rep.residual_orders)


# For m = 1 nothing happens past order 2, since E_1 has no room in the
# required degree r - 2.

# In[3]:

print(sorted(solve_omega(1, 6).omega.terms))


# Other seeds give other lifts. Over F_2 the terms differ as sets but both
# solve the equation.

# In[4]:

a = solve_omega(2, 4, ring=F2, seed=0).omega.terms[4]
b = solve_omega(2, 4, ring=F2, seed=1).omega.terms[4]
print(len(a), len(b), len(set(a) ^ set(b)))


# Certificates are plain JSON and reload exactly.

# In[5]:

import json

from enkoszul.mc_solver import OmegaCertificate

text = cert.to_json()
again = OmegaCertificate.from_dict(json.loads(text))
print(len(text), again.omega.terms == cert.omega.terms)
