# coding: utf-8

# # Homology of twisted complexes

# The twisted complex is E_n truncated at arity R with differential
# d + ad(omega). We report the homology of its dual, graded by the
# topological degree q = r m - c.

# In[1]:

from enkoszul.chains import F2, ZZ
from enkoszul.koszul_complex import TwistedComplexSpec, homology_report
from enkoszul.mc_solver import solve_omega

cert = solve_omega(1, 4)
rep = homology_report(TwistedComplexSpec(2, 1, 4, ZZ, cert))
for row in rep.rows:
    if row.rank or row.torsion:
        print(row.q, row.rank, row.torsion, "stable" if row.stable else "")


# The same complex over F_2. Universal coefficients predict the dimension in
# each degree from the integral answer: the rank, plus one for each even
# torsion factor here or one degree below.

# In[2]:

rep2 = homology_report(TwistedComplexSpec(2, 1, 4, F2, solve_omega(1, 4, ring=F2)))
Z = {r.q: r for r in rep.rows}
for row in rep2.rows:
    z, below = Z[row.q], Z.get(row.q - 1)
    pred = z.rank + sum(t % 2 == 0 for t in z.torsion)
    pred += sum(t % 2 == 0 for t in below.torsion) if below else 0
    print(row.q, row.rank, pred)


# Without the twist the complex splits by arity, and the answer is a sum of
# coinvariant homologies.

# In[3]:

flat = homology_report(TwistedComplexSpec(2, 1, 4, ZZ, None))
print([(r.q, r.rank, r.torsion) for r in flat.rows if r.rank or r.torsion])


# A report serialises to JSON or CSV.

# In[4]:

print(rep.to_csv())
