"""Standard lattices, discriminant groups, divisibility.

Run:  python demos/01_lattices_and_discriminants.py
"""

from extmukai import (
    discriminant_group,
    divisibility,
    orthogonal_complement,
    smith_normal_form,
    standard_lattice,
)
from extmukai.linalg import Mat, Q

# %% the basic building blocks
u = standard_lattice("U")
k3 = standard_lattice("K3")
e8 = standard_lattice("E8_minus")
print("U:        det %s, signature %s" % (u.det(), (u.signature(),)))
print("E8(-1):   det %s, signature %s" % (e8.det(), (e8.signature(),)))
print("K3:       rank %d, det %s, even: %s" % (k3.rank, k3.det(), k3.is_even()))

# %% Smith normal form with unimodular transforms
m = Mat([[4, 2], [2, 8]])
U, D, V = smith_normal_form(m)
print("\nSNF of [[4,2],[2,8]]:", [[str(D[i, j]) for j in range(2)] for i in range(2)])
assert U * m * V == D

# %% discriminant groups: A(<2-2n>) is cyclic of order 2n-2
for n in (2, 3, 5):
    lat = standard_lattice("A1", k=2 - 2 * n)
    dg = discriminant_group(lat)
    print("A(<%d>) = %s with q(gen) = %s mod 2Z" % (2 - 2 * n, dg, dg.q_values[0]))

# %% a Mukai vector and its orthogonal complement in the rank-24 lattice
mukai = standard_lattice("MukaiK3")
n = 3
v = tuple(Q(c) for c in [1, 1 - n] + [0] * 22)  # the vector (1, 0, 1-n)
print("\n<v, v> =", mukai.norm(v))
perp = orthogonal_complement(mukai, [v])
print("v_perp: rank %d, |det| = %s  (= 2n-2)" % (perp.rank, abs(perp.det())))
print("divisibility of v:", divisibility(mukai, v))
