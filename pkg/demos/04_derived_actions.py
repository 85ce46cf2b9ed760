"""The catalog of isometries induced by derived equivalences.

Run:  python demos/04_derived_actions.py
"""

from extmukai import (
    ExtMukaiSpace,
    action,
    disc_action,
    dn_transfer,
    k3_extended_space,
    k3n_lattices,
    k3n_type,
    poincare_checks,
    preserves_lattice,
    reflection,
    spinor_norm,
)
from extmukai.linalg import vec_add

# %% every catalog action preserves the rank-25 lattice Lambda
n = 3
space = ExtMukaiSpace(k3n_type(n))
lats = k3n_lattices(space)
for key in ("shift", "sign_equivalence", "spherical_P"):
    named = action(space, key)
    g = named.iso
    print(
        "%-17s det %2s  spinor %2d  disc %-14s preserves Lambda: %s"
        % (
            key,
            g.det,
            spinor_norm(g),
            disc_action(g, lats.lam)[0],
            preserves_lattice(g, lats.lam),
        )
    )

# %% transferring the spherical twist of the surface to the Hilbert scheme
k3 = k3_extended_space()
s = reflection(k3, vec_add(k3.alpha, k3.beta))
transferred = dn_transfer(space, s)
direct = action(space, "spherical_P").iso
print("\ndn-transfer of the surface spherical twist equals spherical_P:",
      transferred.matrix == direct.matrix)

# %% the Poincare exchange of hyperbolic planes on a Lagrangian fibration
print("\nPoincare exchange, genus 2:")
for check in poincare_checks(2):
    print("  [%s] %s" % ("ok" if check["pass"] else "XX", check["name"]))
