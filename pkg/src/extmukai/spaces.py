"""The extended Mukai lattice of a hyper-Kaehler deformation type.

The rational quadratic space is Q.alpha + H^2(X, Q) + Q.beta with alpha,
beta isotropic, orthogonal to H^2, and b(alpha, beta) = -1.  A deformation
type contributes the rank and Gram of H^2, the Fujiki constant c_X and the
Todd parameter r_X.  Built-in parameter sets:

    K3n   (Hilbert schemes of K3s):  c_X = 1,     r_X = (n+3)/4,  b_2 = 23
    Kumn  (generalized Kummers):     c_X = n + 1, r_X = (n+1)/4,  b_2 = 7
    OG10:                            c_X = 1,     r_X = (n+3)/4,  b_2 = 24
    OG6:                             c_X = 4,     r_X = (n+1)/4,  b_2 = 8

For the K3n family the module also builds the distinguished rank-25
integral lattices: the B-field shift Lambda of the integral extended Mukai
lattice, its unimodular part Lambda_S, the index-two overlattice Lambda_g,
and the span Lambda_LB of all line-bundle Mukai vectors.

Hodge structures are modeled combinatorially: an optional designated
algebraic sublattice NS of H^2 splits every lattice into an algebraic and a
transcendental part, and "Hodge isometry" means "isometry preserving that
split".
"""

from math import gcd

from .isometry import Isometry, QuadSpace, disc_action, preserves_lattice, spinor_norm
from .lattice import QuadLattice, standard_lattice
from .linalg import Mat, Q, hnf_row_basis, vec_is_zero


class SpaceError(ValueError):
    pass


class DeformationType:
    """Numerical invariants of a deformation type of hyper-Kaehler 2n-folds."""

    def __init__(self, family, n, c_x, r_x, h2_gram):
        if n < 1:
            raise SpaceError("n must be >= 1")
        self.family = family
        self.n = n
        self.c_x = Q(c_x)
        self.r_x = Q(r_x)
        self.h2_gram = h2_gram
        self.b2 = h2_gram.rows
        if self.c_x <= 0:
            raise SpaceError("Fujiki constant must be positive")

    def __repr__(self):
        return "<DeformationType %s n=%d b2=%d>" % (self.family, self.n, self.b2)


def k3n_type(n):
    """Hilbert-scheme family: H^2 = K3 + <2-2n>, delta last."""
    if n < 2:
        raise SpaceError("the K3n family needs n >= 2")
    gram = Mat.block_diagonal([standard_lattice("K3").gram, Mat([[2 - 2 * n]])])
    return DeformationType("K3n", n, 1, Q(n + 3, 4), gram)


def kumn_type(n):
    """Generalized Kummer family: H^2 = U^3 + <-2n-2>."""
    if n < 2:
        raise SpaceError("the Kumn family needs n >= 2")
    u = standard_lattice("U").gram
    gram = Mat.block_diagonal([u, u, u, Mat([[-2 * n - 2]])])
    return DeformationType("Kumn", n, n + 1, Q(n + 1, 4), gram)


def og10_type():
    u = standard_lattice("U").gram
    e8 = standard_lattice("E8_minus").gram
    a2m = Mat([[-2, 1], [1, -2]])
    gram = Mat.block_diagonal([u, u, u, e8, e8, a2m])
    return DeformationType("OG10", 5, 1, Q(2), gram)


def og6_type():
    u = standard_lattice("U").gram
    gram = Mat.block_diagonal([u, u, u, Mat([[-2]]), Mat([[-2]])])
    return DeformationType("OG6", 3, 4, Q(1), gram)


def k3_surface_type():
    """n = 1 convenience: the extended lattice of a K3 surface itself."""
    return DeformationType("K3", 1, 1, Q(1), standard_lattice("K3").gram)


def custom_type(n, c_x, r_x, h2_gram):
    return DeformationType("custom", n, c_x, r_x, h2_gram)


class ExtMukaiSpace(QuadSpace):
    """Q.alpha + H^2 + Q.beta with basis order (alpha, h2 basis..., beta)."""

    def __init__(self, dtype, ns_sublattice=None):
        b2 = dtype.b2
        dim = b2 + 2
        rows = [[Q(0)] * dim for _ in range(dim)]
        rows[0][dim - 1] = Q(-1)
        rows[dim - 1][0] = Q(-1)
        for i in range(b2):
            for j in range(b2):
                rows[1 + i][1 + j] = dtype.h2_gram[i, j]
        super().__init__(Mat(rows))
        self.dtype = dtype
        self.b2 = b2
        self.alpha = self.basis_vector(0)
        self.beta = self.basis_vector(dim - 1)
        self.ns_sublattice = None
        if ns_sublattice is not None:
            self.ns_sublattice = [tuple(Q(c) for c in v) for v in ns_sublattice]
            for v in self.ns_sublattice:
                if len(v) != b2 or not all(c.denominator == 1 for c in v):
                    raise SpaceError("NS generators must be integral H^2 vectors")
            from .linalg import Mat as _M, saturation_basis, solve_linear

            gens_t = _M.from_rows(self.ns_sublattice).transpose()
            sat = saturation_basis([[int(c) for c in v] for v in self.ns_sublattice])
            if len(sat) != len(self.ns_sublattice):
                raise SpaceError("NS must be primitive (saturated) in H^2")
            for w in sat:
                x = solve_linear(gens_t, tuple(Q(c) for c in w))
                if x is None or not all(c.denominator == 1 for c in x):
                    raise SpaceError("NS must be primitive (saturated) in H^2")

    # -- coordinates ---------------------------------------------------------

    def h2_embed(self, h2coords):
        """Lift an H^2 coordinate vector to the ambient space."""
        if len(h2coords) != self.b2:
            raise SpaceError("H^2 vector of length %d expected" % self.b2)
        return (Q(0),) + tuple(Q(c) for c in h2coords) + (Q(0),)

    def h2_part(self, v):
        return tuple(v[1 : 1 + self.b2])

    def is_h2(self, v):
        return v[0] == 0 and v[self.dim - 1] == 0

    def bbf(self, x, y):
        """BBF pairing of two H^2 coordinate vectors."""
        gy = self.dtype.h2_gram.apply(y)
        return sum((a * b for a, b in zip(x, gy)), Q(0))

    def vector(self, a_coeff, h2coords, b_coeff):
        return (Q(a_coeff),) + tuple(Q(c) for c in h2coords) + (Q(b_coeff),)

    def integral_lattice(self):
        """Z.alpha + H^2(X, Z) + Z.beta inside the space."""
        return QuadLattice.from_basis(
            [self.basis_vector(i) for i in range(self.dim)], self.gram,
            name="extended integral lattice",
        )

    def __repr__(self):
        return "<ExtMukaiSpace %s n=%d dim=%d>" % (
            self.dtype.family, self.dtype.n, self.dim,
        )


ORBIT_TAGS = ("line_bundle", "O_orbit", "kx_orbit", "plain")


class ExtVector:
    """A vector of the extended Mukai space with an orbit tag."""

    def __init__(self, space, coords, orbit_tag="plain"):
        if orbit_tag not in ORBIT_TAGS:
            raise SpaceError("unknown orbit tag %r" % (orbit_tag,))
        self.space = space
        self.coords = tuple(Q(c) for c in coords)
        if len(self.coords) != space.dim:
            raise SpaceError("coordinate length mismatch")
        sq = space.norm(self.coords)
        if orbit_tag in ("line_bundle", "O_orbit") and sq != -2 * space.dtype.r_x:
            raise SpaceError("O-orbit vectors must have square -2 r_X")
        if orbit_tag == "kx_orbit" and sq != 0:
            raise SpaceError("k(x)-orbit vectors must be isotropic")
        self.orbit_tag = orbit_tag

    def square(self):
        return self.space.norm(self.coords)

    def __repr__(self):
        return "<ExtVector %s %s>" % (self.orbit_tag, [str(c) for c in self.coords])


def ext_vector_line_bundle(space, lam):
    """v(L) = alpha + lambda + (r_X + b(lambda, lambda)/2) beta."""
    lam = tuple(Q(c) for c in lam)
    if len(lam) != space.b2:
        raise SpaceError("lambda must be an H^2 vector")
    s = space.dtype.r_x + space.bbf(lam, lam) / 2
    return ExtVector(space, space.vector(1, lam, s), "line_bundle")


def ext_vector_point(space):
    """v(k(x)) = beta."""
    return ExtVector(space, space.beta, "kx_orbit")


def signum_normalize(space, v, omega=None, epsilon=1):
    """Sign normalization of an extended Mukai vector.

    The sign is fixed by the alpha coefficient when nonzero, else by the
    sign of b(omega, lambda) for the Kaehler surrogate omega, else by the
    beta coefficient; the result is additionally multiplied by epsilon.
    """
    if epsilon not in (1, -1):
        raise SpaceError("epsilon must be +-1")
    coords = v.coords if isinstance(v, ExtVector) else tuple(Q(c) for c in v)
    r = coords[0]
    lam = space.h2_part(coords)
    if r != 0:
        sgn = 1 if r > 0 else -1
    elif not vec_is_zero(lam):
        if omega is None:
            raise SpaceError("very-general class required")
        c = space.bbf(tuple(Q(x) for x in omega), lam)
        if c == 0:
            raise SpaceError("very-general class required")
        sgn = 1 if c > 0 else -1
    else:
        s = coords[-1]
        if s == 0:
            raise SpaceError("zero vector has no signum")
        sgn = 1 if s > 0 else -1
    out = tuple(epsilon * sgn * c for c in coords)
    tag = v.orbit_tag if isinstance(v, ExtVector) else "plain"
    return ExtVector(space, out, tag)


class K3nLattices:
    """The distinguished lattices of a K3n-type space."""

    def __init__(self, lam, lam_s, lam_g, lam_lb, alpha_tilde, delta_tilde):
        self.lam = lam
        self.lam_s = lam_s
        self.lam_g = lam_g
        self.lam_lb = lam_lb
        self.alpha_tilde = alpha_tilde
        self.delta_tilde = delta_tilde


def k3n_lattices(space):
    """Lambda, Lambda_S, Lambda_g, Lambda_LB and the vectors involved.

    Basis orders:
      Lambda_S: (alpha~, K3 basis, beta)              (unimodular, rank 24)
      Lambda:   (alpha~, K3 basis, beta, delta~)      (rank 25)
      Lambda_g: (alpha~, K3 basis, beta, delta~/2)
    with alpha~ = alpha - delta/2 + (1-n)/4 beta and
    delta~ = delta + (n-1) beta.
    """
    if space.dtype.family != "K3n":
        raise SpaceError("the distinguished lattices need the K3n family")
    n = space.dtype.n
    dim = space.dim
    delta = space.basis_vector(dim - 2)  # last H^2 basis vector
    alpha_tilde = tuple(
        a - Q(1, 2) * d + Q(1 - n, 4) * b
        for a, d, b in zip(space.alpha, delta, space.beta)
    )
    delta_tilde = tuple(d + (n - 1) * b for d, b in zip(delta, space.beta))
    k3_basis = [space.basis_vector(i) for i in range(1, dim - 2)]
    lam_s_rows = [alpha_tilde] + k3_basis + [space.beta]
    lam_s = QuadLattice.from_basis(lam_s_rows, space.gram, name="Lambda_S")
    lam = QuadLattice.from_basis(lam_s_rows + [delta_tilde], space.gram, name="Lambda")
    half_dt = tuple(Q(1, 2) * c for c in delta_tilde)
    lam_g = QuadLattice.from_basis(lam_s_rows + [half_dt], space.gram, name="Lambda_g")
    lam_lb = _line_bundle_lattice(space, name="Lambda_LB")
    return K3nLattices(lam, lam_s, lam_g, lam_lb, alpha_tilde, delta_tilde)


def _line_bundle_lattice(space, name):
    """Integral span of all line-bundle vectors v(lambda), lambda in H^2(X,Z)."""
    gens = [ext_vector_line_bundle(space, [0] * space.b2).coords]
    basis_h2 = [tuple(Q(1) if j == i else Q(0) for j in range(space.b2)) for i in range(space.b2)]
    for lam in basis_h2:
        gens.append(ext_vector_line_bundle(space, lam).coords)
        gens.append(ext_vector_line_bundle(space, tuple(-c for c in lam)).coords)
    for i in range(space.b2):
        for j in range(i + 1, space.b2):
            lam = tuple(a + b for a, b in zip(basis_h2[i], basis_h2[j]))
            gens.append(ext_vector_line_bundle(space, lam).coords)
    # common denominator, integer HNF, rescale back
    den = 1
    for v in gens:
        for c in v:
            den = den * c.denominator // gcd(den, c.denominator)
    int_rows = [[int(c * den) for c in v] for v in gens]
    basis = hnf_row_basis(int_rows)
    rows = [tuple(Q(c, den) for c in row) for row in basis]
    return QuadLattice.from_basis(rows, space.gram, name=name)


def shifted_integral_lattice(space, gamma):
    """B_{-gamma/2}(Z.alpha + H^2(X,Z) + Z.beta) for an H^2 class gamma."""
    b = b_field(space, tuple(-Q(c) / 2 for c in gamma))
    rows = [b(space.basis_vector(i)) for i in range(space.dim)]
    return QuadLattice.from_basis(rows, space.gram, name="shifted integral lattice")


def membership(lat, v):
    """(contained, coords) for an ambient vector against an embedded lattice."""
    coords = v.coords if isinstance(v, ExtVector) else tuple(Q(c) for c in v)
    x = lat.coords_of_ambient(coords)
    if x is None or not all(c.denominator == 1 for c in x):
        return False, None
    return True, x


def _algebraic_span_forms(space):
    """Linear forms (coefficient vectors) cutting out Q.alpha + NS_Q + Q.beta."""
    from .linalg import kernel_basis as q_kernel

    ns_ambient = [space.h2_embed(v) for v in space.ns_sublattice]
    span = [space.alpha] + ns_ambient + [space.beta]
    # a form f vanishes on the span iff span_mat . f = 0
    return q_kernel(Mat.from_rows(span))


def split_algebraic(space, lat):
    """(algebraic, transcendental) parts of an embedded lattice.

    The algebraic part is the saturated intersection with
    Q.alpha + NS x Q + Q.beta; the transcendental part is its orthogonal
    complement inside the lattice.  Requires a designated NS.
    """
    if space.ns_sublattice is None:
        raise SpaceError("no designated algebraic sublattice")
    forms = _algebraic_span_forms(space)
    if not forms:
        alg_rows = [lat.basis_in_ambient.row(i) for i in range(lat.rank)]
        alg = QuadLattice.from_basis(alg_rows, space.gram, name="algebraic part")
    else:
        # rows: one per form, evaluated on the lattice basis; kernel = coords
        # of lattice vectors inside the span (saturated automatically)
        from .linalg import integer_kernel_basis

        m = Mat.from_rows(
            [[sum(f[k] * lat.basis_in_ambient[i, k] for k in range(space.dim))
              for i in range(lat.rank)] for f in forms]
        )
        coords = integer_kernel_basis(m)
        if coords:
            alg_rows = [lat.ambient_vector(c) for c in coords]
            alg = QuadLattice.from_basis(alg_rows, space.gram, name="algebraic part")
        else:
            alg = QuadLattice(Mat.zero(0, 0), Mat.zero(0, space.dim), space.gram,
                              name="algebraic part")
    if alg.rank == 0:
        return alg, lat
    from .lattice import orthogonal_complement

    gens = [lat.coords_of_ambient(alg.basis_in_ambient.row(i)) for i in range(alg.rank)]
    tr = orthogonal_complement(lat, gens)
    tr.name = "transcendental part"
    return alg, tr


def is_hodge_isometry(g, space):
    """Isometry preserving the (algebraic, transcendental) split; vacuous
    when no NS is designated.

    It suffices to check that the algebraic span is carried into itself:
    the transcendental side is its orthogonal complement and g is an
    isometry.
    """
    if space.ns_sublattice is None:
        return True
    ns_ambient = [space.h2_embed(v) for v in space.ns_sublattice]
    span = [space.alpha] + ns_ambient + [space.beta]
    forms = _algebraic_span_forms(space)
    for v in span:
        gv = g(v)
        for f in forms:
            if sum(a * b for a, b in zip(gv, f)) != 0:
                return False
    return True


def b_field(space, lam):
    """The unipotent isometry B_lambda of the extended Mukai space:

        B(r alpha + mu + s beta)
            = r alpha + mu + r lambda + (s + b(lambda, mu) + r b(lambda, lambda)/2) beta

    for lambda in H^2.  B_lambda o B_mu = B_{lambda + mu}.
    """
    lam = tuple(Q(c) for c in lam)
    if len(lam) == space.dim:
        if not space.is_h2(lam):
            raise SpaceError("lambda must have no alpha or beta component")
        lam = space.h2_part(lam)
    if len(lam) != space.b2:
        raise SpaceError("lambda must be an H^2 vector")
    qlam = space.bbf(lam, lam)
    cols = [space.vector(1, lam, qlam / 2)]
    for i in range(space.b2):
        mu = tuple(Q(1) if j == i else Q(0) for j in range(space.b2))
        cols.append(space.vector(0, mu, space.bbf(lam, mu)))
    cols.append(space.beta)
    return Isometry(space, Mat.from_columns(cols), check=False)


def rank_predicate_o_orbit(r, n):
    """|r| = a^n for an integer a; returns (ok, a or None)."""
    r = int(r)
    if r == 0:
        return True, 0
    a = _integer_nth_root(abs(r), n)
    if a is not None:
        return True, a
    return False, None


_KX_TABLES = {}


def _kx_tables(n, c_int):
    """Residue tables for the integer fast path of the k(x) rank predicate."""
    key = (n, c_int)
    if key not in _KX_TABLES:
        from math import factorial as _f, gcd as _g

        fact = _f(n)
        gtab = [_g(m, fact) for m in range(fact)]
        qok = []
        for m in range(fact):
            q = fact // gtab[m]
            root = round(q ** (1.0 / n))
            qok.append(root**n == q)
        _KX_TABLES[key] = (fact, gtab, qok)
    return _KX_TABLES[key]


def kx_rank_core(r, n, c_int):
    """Integer core: the signed n-th-root numerator a_p when r = (a_p/a_q)^n
    n!/c for integers a_p, a_q, else None."""
    fact, gtab, qok = _kx_tables(n, c_int)
    num = r * c_int
    m = num % fact
    if not qok[m]:
        return None
    g = gtab[m]
    p = num // g
    if p < 0 and n % 2 == 0:
        return None
    ap = -p if p < 0 else p
    a = round(ap ** (1.0 / n)) if ap else 0
    for cand in (a - 1, a, a + 1):
        if cand >= 0 and cand**n == ap:
            return -cand if p < 0 else cand
    return None


def rank_predicate_kx_orbit(r, n, c_x):
    """r = a^n n!/c_X for rational a; returns (ok, a, a_is_integral).

    For integral c_X the integrality of a is reported alongside (for even n
    only |a| is determined; the returned witness is nonnegative)."""
    r = int(r)
    c_x = Q(c_x)
    from math import factorial as _f

    fact = _f(n)
    # integral Fujiki constants get the table-driven integer pre-filter
    if c_x.denominator == 1 and kx_rank_core(r, n, c_x.numerator) is None:
        return False, None, None
    target = Q(r) * c_x / fact  # = a^n
    ok, a = _rational_nth_root(target, n)
    if not ok:
        return False, None, None
    return True, a, a.denominator == 1


def _integer_nth_root(m, n):
    if m < 0:
        return None
    if m == 0:
        return 0
    a = round(m ** (1.0 / n))
    for c in (a - 1, a, a + 1):
        if c >= 0 and c**n == m:
            return c
    return None


def _rational_nth_root(x, n):
    """(ok, a) with a^n = x, a rational; for even n requires x >= 0 and
    returns the nonnegative root."""
    if x == 0:
        return True, Q(0)
    neg = x < 0
    if neg and n % 2 == 0:
        return False, None
    p = _integer_nth_root(abs(x.numerator), n)
    q = _integer_nth_root(x.denominator, n)
    if p is None or q is None:
        return False, None
    a = Q(p, q)
    return True, -a if neg else a


def in_hat_aut_plus(g, space, lattices=None):
    """Membership test for the plus-subgroup of the Lambda stabilizer.

    Conjunction of: preserves Lambda; preserves the algebraic/transcendental
    split when an NS is designated; real spinor norm +1; acts as +-id on the
    discriminant group.  Returns (ok, reasons) with one entry per check.
    """
    if lattices is None:
        lattices = k3n_lattices(space)
    reasons = {}
    reasons["preserves_lattice"] = preserves_lattice(g, lattices.lam)
    reasons["hodge"] = is_hodge_isometry(g, space)
    reasons["spinor_norm"] = spinor_norm(g) == 1
    if reasons["preserves_lattice"]:
        label, _ = disc_action(g, lattices.lam)
        reasons["disc_action"] = label in ("identity", "minus_identity")
    else:
        reasons["disc_action"] = False
    return all(reasons.values()), reasons
