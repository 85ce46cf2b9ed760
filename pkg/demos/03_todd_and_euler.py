"""Todd linearisations, Fujiki integrals, Euler characteristics.

Run:  python demos/03_todd_and_euler.py
"""

from fractions import Fraction as Q
from math import factorial

from extmukai import (
    ExtMukaiSpace,
    euler_char_line_bundle,
    integrate,
    integrate_via_pairing,
    k3n_type,
    kumn_type,
    pair_with_sh,
    restricted_space,
    sqrt_todd_argument,
    sqrt_todd_bar,
    todd_argument,
)

# %% the square root of the Todd class as the projection of a binomial power
n = 2
space = ExtMukaiSpace(k3n_type(n))
small = restricted_space(space, [])  # only alpha/beta directions needed here
print("T((alpha + r_X beta)^n / n!) =", sqrt_todd_bar(small).coeffs)
print("integral of sqrt Todd:", pair_with_sh(small, [], sqrt_todd_argument(small)),
      "= c_X r_X^n / n! =", space.dtype.c_x * space.dtype.r_x**n / factorial(n))

# %% chi(O) = n + 1 for both families
for make, name in ((k3n_type, "K3n"), (kumn_type, "Kumn")):
    for m in (2, 3, 4):
        sp = restricted_space(ExtMukaiSpace(make(m)), [])
        print("chi(O) for %s n=%d:" % (name, m),
              pair_with_sh(sp, [], todd_argument(sp)))

# %% Euler characteristics of line bundles on K3^[2]
print("\nchi(L) on a fourfold for b(c1, c1) = l:")
for l in (0, 2, 4, 8):
    lam = [Q(0)] * 23
    lam[0], lam[1] = Q(1), Q(l, 2)  # a class of square l in the first U
    print("  l = %d: chi = %s   (l^2/8 + 5l/4 + 3)" % (l, euler_char_line_bundle(space, lam)))

# %% polarized Fujiki relation: matchings vs the pairing route
w1 = tuple(Q(c) for c in [1, 2] + [0] * 21)
w2 = tuple(Q(c) for c in [0, 1, 1, -1] + [0] * 19)
vals = integrate(space, [w1, w1, w2, w2]), integrate_via_pairing(space, [w1, w1, w2, w2])
print("\nintegral of w1 w1 w2 w2 via matchings and via the pairing:", vals)
assert vals[0] == vals[1]
