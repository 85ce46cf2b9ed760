"""Mukai vectors on a K3 surface and lattice invariants of their moduli.

Only the algebraic Mukai lattice U + NS(S) is modeled, with basis
((1,0,0), (0,0,1), NS-basis) and pairing

    <(r, c, s), (r', c', s')> = c.c' - r s' - r' s.

Operations: dimension of the moduli space, its Neron-Severi lattice as a
saturated orthogonal complement, the fineness criterion (existence of w
with <v, w> = 1), the discriminant index identity

    disc(NS(M)) * disc(Zv) = |K|^2 * disc(U + NS),   K = L / (Zv + v_perp),

and the summary of lattice-level invariants shared by derived partners.
"""

from math import gcd

from .lattice import (
    QuadLattice,
    discriminant_group,
    divisibility,
    is_primitive,
    orthogonal_complement,
)
from .linalg import Mat, Q


class ModuliError(ValueError):
    pass


class AlgebraicMukaiLattice:
    """U + NS(S) with basis ((1,0,0), (0,0,1), NS-basis)."""

    def __init__(self, ns_gram):
        if not ns_gram.is_symmetric():
            raise ModuliError("NS gram must be symmetric")
        self.ns_gram = ns_gram
        self.rho = ns_gram.rows
        self.lattice = QuadLattice(
            Mat.block_diagonal([Mat([[0, -1], [-1, 0]]), ns_gram]),
            name="U + NS",
        )
        if not self.lattice.is_even():
            raise ModuliError("NS must be an even lattice")
        self.rank = self.lattice.rank

    def vector(self, r, c, s):
        """Coordinates of the Mukai vector (r, c, s)."""
        c = tuple(Q(x) for x in c)
        if len(c) != self.rho:
            raise ModuliError("NS part of length %d expected" % self.rho)
        return (Q(r), Q(s)) + c

    def unpack(self, coords):
        return coords[0], tuple(coords[2:]), coords[1]

    def pairing(self, v, w):
        return self.lattice.pairing(v, w)

    def square(self, v):
        return self.lattice.pairing(v, v)

    def b_field(self, mu):
        """The isometry (r, c, s) -> (r, c + r mu, s + c.mu + r mu^2/2)."""
        mu = tuple(Q(x) for x in mu)
        cols = []
        qmu = sum(a * b for a, b in zip(mu, self.ns_gram.apply(mu)))
        cols.append(self.vector(1, mu, qmu / 2))          # image of (1,0,0)
        cols.append(self.vector(0, (0,) * self.rho, 1))   # image of (0,0,1)
        for i in range(self.rho):
            c = tuple(Q(1) if j == i else Q(0) for j in range(self.rho))
            pairing = sum(a * b for a, b in zip(mu, self.ns_gram.apply(c)))
            cols.append(self.vector(0, c, pairing))
        m = Mat.from_columns(cols)
        if (m.transpose() * self.lattice.gram * m) != self.lattice.gram:
            raise ModuliError("b-field construction failed")
        return m


def _require_primitive(lat, v):
    if not is_primitive(lat.lattice, v):
        raise ModuliError("Mukai vector must be primitive")


def moduli_dimension(lat, v):
    """<v, v> + 2 for a primitive vector of square >= -2."""
    _require_primitive(lat, v)
    sq = lat.square(v)
    if sq < -2:
        raise ModuliError("square below -2")
    return int(sq) + 2


def ns_of_moduli(lat, v):
    """Saturated orthogonal complement of v: the NS lattice of the moduli space."""
    _require_primitive(lat, v)
    return orthogonal_complement(lat.lattice, [v])


def fineness(lat, v):
    """(fine, obstruction_order) with obstruction_order = gcd of <v, basis>.

    Fine iff the order is 1, i.e. iff some w pairs to 1 with v.
    """
    _require_primitive(lat, v)
    order = divisibility(lat.lattice, v)
    return order == 1, order


def pairing_witness(lat, v):
    """A vector w with <v, w> = 1, or None (independent fineness route)."""
    pairings = [int(p) for p in lat.lattice.gram.apply(v)]
    # extended euclid across the pairing values
    g, coeffs = _ext_gcd_list(pairings)
    if abs(g) != 1:
        return None
    sign = 1 if g == 1 else -1
    return tuple(Q(sign * c) for c in coeffs)


def _ext_gcd_list(values):
    g = 0
    coeffs = [0] * len(values)
    for i, a in enumerate(values):
        if a == 0:
            continue
        if g == 0:
            g = a
            coeffs = [0] * len(values)
            coeffs[i] = 1
            continue
        d, x, y = _ext_gcd(g, a)
        coeffs = [x * c for c in coeffs]
        coeffs[i] += y
        g = d
    return g, coeffs


def _ext_gcd(a, b):
    if b == 0:
        return a, 1, 0
    d, x, y = _ext_gcd(b, a % b)
    return d, y, x - (a // b) * y


def disc_lemma_check(lat, v):
    """The discriminant identity around N = Zv inside L = U + NS.

    Computes disc(NS(M)), |K| = [L : Zv + v_perp], verifies

        disc(NS(M)) * disc(Zv) = |K|^2 * disc(L)

    exactly, and the equivalences: fine <=> |K| = <v,v> <=> disc(NS(M)) =
    <v,v> * disc(L).  Requires <v, v> > 0.
    """
    _require_primitive(lat, v)
    sq = lat.square(v)
    if sq <= 0:
        raise ModuliError("the discriminant identity needs <v, v> > 0")
    ns_m = ns_of_moduli(lat, v)
    disc_ns = ns_m.det()
    disc_l = lat.lattice.det()
    # index of Zv + v_perp in L via the coordinate matrix
    rows = [v] + [ns_m.basis_in_ambient.row(i) for i in range(ns_m.rank)]
    m = Mat.from_rows(rows)
    if m.rows != lat.rank:
        raise ModuliError("unexpected corank")
    index = abs(m.det())
    if index.denominator != 1:
        raise ModuliError("non-integral index")
    index = index.numerator
    fine, order = fineness(lat, v)
    identity_holds = disc_ns * sq == index**2 * disc_l
    divides = int(sq) % index == 0
    equiv = (fine == (index == sq)) and (fine == (disc_ns == sq * disc_l))
    witness = pairing_witness(lat, v)
    witness_ok = (witness is not None) == fine
    if witness is not None:
        witness_ok = witness_ok and lat.pairing(v, witness) == 1
    return {
        "square": int(sq),
        "disc_ns_moduli": disc_ns,
        "disc_ambient": disc_l,
        "index_K": index,
        "obstruction_order": order,
        "fine": fine,
        "identity_holds": identity_holds,
        "K_divides_square": divides,
        "fineness_equivalences": equiv,
        "witness_consistent": witness_ok,
        "all": identity_holds and divides and equiv and witness_ok,
    }


def disc_form_profile(lat, disc, cap=4096):
    """Canonical profile of the discriminant form: the sorted multiset of
    q-values over all group elements (a presentation-free invariant)."""
    if disc.order > cap:
        return None
    from itertools import product as iproduct

    vals = []
    ranges = [range(d) for d in disc.cyclic_orders]
    for ks in iproduct(*ranges):
        rep = [Q(0)] * lat.rank
        for k, gen in zip(ks, disc.generators):
            rep = [a + k * b for a, b in zip(rep, gen)]
        vals.append(lat.norm(tuple(rep)) % 2)
    return tuple(sorted(vals))


def partner_invariants(lat, v):
    """Lattice-level invariants shared by derived partners of the moduli space.

    The discriminant form enters through its canonical element-wise
    q-profile; per-generator q-values depend on the chosen presentation
    and are not invariants.
    """
    _require_primitive(lat, v)
    ns_m = ns_of_moduli(lat, v)
    disc = discriminant_group(ns_m) if ns_m.is_even() and ns_m.det() != 0 else None
    fine, order = fineness(lat, v)
    return {
        "square": int(lat.square(v)),
        "obstruction_order": int(order),
        "fine": fine,
        "ns_disc_orders": tuple(disc.cyclic_orders) if disc else (),
        "ns_disc_profile": disc_form_profile(ns_m, disc) if disc else (),
        "ns_det": ns_m.det(),
    }


def primitive_vectors_in_box(lat, bound):
    """All primitive vectors of U + NS with coordinates in [-bound, bound]."""
    from itertools import product

    rng = range(-bound, bound + 1)
    out = []
    for tup in product(rng, repeat=lat.rank):
        if all(c == 0 for c in tup):
            continue
        g = 0
        for c in tup:
            g = gcd(g, c)
        if g == 1:
            out.append(tuple(Q(c) for c in tup))
    return out
