"""Eichler transport inside Lambda and moduli-space discriminant checks.

Run:  python demos/05_transport_and_moduli.py
"""

from fractions import Fraction as Q

from extmukai import (
    AlgebraicMukaiLattice,
    ExtMukaiSpace,
    disc_lemma_check,
    eichler_transport,
    fineness,
    k3n_lattices,
    k3n_type,
    ns_of_moduli,
)
from extmukai.linalg import Mat

# %% transport a square--2 vector into a hyperbolic plane by transvections
space = ExtMukaiSpace(k3n_type(3))
lam = k3n_lattices(space).lam
v = lam.coords_of_ambient(
    tuple(a + b for a, b in zip(k3n_lattices(space).alpha_tilde, space.beta))
)
w = tuple(Q(c) for c in [0, 1, -1] + [0] * 22)
word = eichler_transport(lam, v, w)
print("transport word of length", len(word), "verified:", word.apply(v) == w)

# %% a non-fine moduli space: v = (0, H, 1-g) on a degree-(2g-2) surface
g = 3
lat = AlgebraicMukaiLattice(Mat([[2 * g - 2]]))
v = lat.vector(0, [1], 1 - g)
fine, order = fineness(lat, v)
print("\nPoincare vector (0, H, 1-g), g = %d: fine=%s, obstruction order %d" % (g, fine, order))
print("NS of the moduli space:", ns_of_moduli(lat, v).gram.entries())

# %% the discriminant identity disc(NS(M)) * <v,v> = |K|^2 * disc(U + NS)
v2 = lat.vector(1, [0], -2)  # square 4: a sixfold
rep = disc_lemma_check(lat, v2)
for key in ("square", "disc_ns_moduli", "disc_ambient", "index_K", "fine", "all"):
    print("  %-16s %s" % (key, rep[key]))
