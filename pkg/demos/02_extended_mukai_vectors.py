"""The extended Mukai lattice of a Hilbert scheme and its integral lattices.

Run:  python demos/02_extended_mukai_vectors.py
"""

from fractions import Fraction as Q

from extmukai import (
    ExtMukaiSpace,
    discriminant_group,
    divisibility,
    ext_vector_line_bundle,
    ext_vector_point,
    k3n_lattices,
    k3n_type,
    membership,
    shifted_integral_lattice,
)

# %% the rational quadratic space Q.alpha + H^2 + Q.beta for K3^[2]-type
n = 2
space = ExtMukaiSpace(k3n_type(n))
print("dim =", space.dim, " c_X =", space.dtype.c_x, " r_X =", space.dtype.r_x)

# %% extended Mukai vectors of line bundles have square -2 r_X
v0 = ext_vector_line_bundle(space, [0] * space.b2)
print("v(O) =", "alpha + %s beta," % v0.coords[-1], "square", v0.square())
vd = ext_vector_line_bundle(space, [0] * 22 + [1])
print("v(O(delta)) square:", vd.square())
print("v(k(x)) = beta, square", ext_vector_point(space).square())

# %% the distinguished rank-25 lattices
lats = k3n_lattices(space)
print("\nLambda_S unimodular: |det| =", abs(lats.lam_s.det()))
print("Lambda = Lambda_S + Z delta~, det =", lats.lam.det())
print("A(Lambda) =", discriminant_group(lats.lam))
dt = lats.lam.coords_of_ambient(lats.delta_tilde)
print("divisibility of delta~ in Lambda:", divisibility(lats.lam, dt))

# %% the geometric lattice contains every line-bundle vector
inside = all(
    membership(lats.lam_g, ext_vector_line_bundle(space, lam).coords)[0]
    for lam in ([1] + [0] * 22, [0] * 22 + [1], [2, -1] + [0] * 21)
)
print("line-bundle vectors inside Lambda_g:", inside)

# %% Lambda does not depend on which exceptional-type class shifts it
gamma = [0] * 22 + [1]
gamma2 = [2 * n - 2] + [0] * 21 + [1]  # delta + (2n-2) e for isotropic e
same = shifted_integral_lattice(space, gamma2).same_subset_as(lats.lam)
print("B-field shift by another (2-2n, 2n-2)-class gives the same lattice:", same)
