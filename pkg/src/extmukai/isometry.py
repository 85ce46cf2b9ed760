"""Isometries of rational quadratic spaces.

Constructors: reflections s_v, B-field maps B_lambda on extended Mukai
spaces, Eichler transvections t(e, a).  Invariants: determinant, real
spinor norm, induced action on discriminant groups, lattice preservation.
Constructive tools: Cartan-Dieudonne decomposition into reflections,
Eichler transport of primitive vectors by words of transvections, and
bounded subgroup generation.

Spinor norm convention: spin(s_v) = +1 iff b(v, v) < 0.  With this choice
every transvection and every reflection along a negative-square vector has
spinor norm +1, so the realized generators of the plus-subgroups below all
land on the +1 side.  Computationally the norm is evaluated as the sign of
det of the isometry compressed to a maximal positive-definite subspace,
which agrees with the product of sign(-b(v_i, v_i)) over any reflection
decomposition and is manifestly decomposition-independent.
"""

from .lattice import NotFound, discriminant_group, divisibility, is_primitive
from .linalg import (
    Mat,
    Q,
    vec_add,
    vec_is_zero,
    vec_primitive_part,
    vec_scale,
    vec_sub,
)


class IsometryError(ValueError):
    pass


class QuadSpace:
    """A rational quadratic space: a dimension and a symmetric Gram matrix."""

    def __init__(self, gram):
        if not gram.is_symmetric():
            raise IsometryError("gram must be symmetric")
        self.gram = gram
        self.dim = gram.rows
        self._pos_basis = None
        self._gram_inv = None

    def gram_inverse(self):
        if self._gram_inv is None:
            self._gram_inv = self.gram.inverse()
        return self._gram_inv

    def pairing(self, x, y):
        gy = self.gram.apply(y)
        return sum((a * b for a, b in zip(x, gy)), Q(0))

    def norm(self, x):
        return self.pairing(x, x)

    def basis_vector(self, i):
        return tuple(Q(1) if j == i else Q(0) for j in range(self.dim))

    def positive_basis(self):
        """A basis of a maximal positive-definite subspace (cached)."""
        if self._pos_basis is None:
            self._pos_basis = _diagonalizing_positive_basis(self.gram)
        return self._pos_basis

    def __eq__(self, other):
        return isinstance(other, QuadSpace) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)


def _diagonalizing_positive_basis(gram):
    """Vectors b_i with b(b_i, b_j) = 0 (i != j) and b(b_i, b_i) > 0 spanning
    a maximal positive subspace; found by congruence elimination."""
    n = gram.rows
    m = [list(r) for r in gram.entries()]
    trans = [[Q(1) if i == j else Q(0) for j in range(n)] for i in range(n)]
    out = []
    for step in range(n):
        p = None
        for i in range(step, n):
            if m[i][i] != 0:
                p = i
                break
        if p is None:
            pair = None
            for i in range(step, n):
                for j in range(i + 1, n):
                    if m[i][j] != 0:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                break
            i, j = pair
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            trans[i] = [a + b for a, b in zip(trans[i], trans[j])]
            p = i
        if p != step:
            m[step], m[p] = m[p], m[step]
            for row in m:
                row[step], row[p] = row[p], row[step]
            trans[step], trans[p] = trans[p], trans[step]
        d = m[step][step]
        if d > 0:
            out.append(tuple(trans[step]))
        for i in range(step + 1, n):
            if m[i][step] != 0:
                f = m[i][step] / d
                for k in range(n):
                    m[i][k] -= f * m[step][k]
                for k in range(n):
                    m[k][i] -= f * m[k][step]
                trans[i] = [a - f * b for a, b in zip(trans[i], trans[step])]
    return out


class Isometry:
    """An exact isometry of a QuadSpace, acting on column vectors."""

    __slots__ = ("space", "matrix", "word", "_det", "_spin")

    def __init__(self, space, matrix, word=None, check=True):
        if check and (matrix.transpose() * space.gram * matrix) != space.gram:
            raise IsometryError("matrix does not preserve the form")
        self.space = space
        self.matrix = matrix
        self.word = word
        self._det = None
        self._spin = None

    @property
    def det(self):
        if self._det is None:
            self._det = self.matrix.det()
        return self._det

    def __call__(self, v):
        return self.matrix.apply(v)

    def compose(self, other, word=None):
        """self after other (matrix product self * other)."""
        if self.space != other.space:
            raise IsometryError("space mismatch")
        return Isometry(self.space, self.matrix * other.matrix, word=word, check=False)

    def inverse(self):
        # for an isometry, M^{-1} = G^{-1} M^T G
        ginv = self.space.gram_inverse()
        inv = ginv * self.matrix.transpose() * self.space.gram
        return Isometry(self.space, inv, check=False)

    def __eq__(self, other):
        return (
            isinstance(other, Isometry)
            and self.space == other.space
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash(self.matrix)

    def is_identity(self):
        return self.matrix == Mat.identity(self.space.dim)

    def __repr__(self):
        w = " word=%s" % (self.word,) if self.word else ""
        return "<Isometry dim %d det %s%s>" % (self.space.dim, self.det, w)


def identity_isometry(space):
    return Isometry(space, Mat.identity(space.dim), word=(), check=False)


def minus_identity(space):
    return Isometry(space, Mat.identity(space.dim).scale(-1), check=False)


def reflection(space, v):
    """Reflection along an anisotropic vector: x -> x - 2 b(x,v)/b(v,v) v."""
    q = space.norm(v)
    if q == 0:
        raise IsometryError("isotropic vector")
    cols = []
    for j in range(space.dim):
        e = space.basis_vector(j)
        c = 2 * space.pairing(e, v) / q
        cols.append(vec_sub(e, vec_scale(c, v)))
    return Isometry(space, Mat.from_columns(cols), check=False)


def eichler_transvection(space, e, a):
    """t(e, a): x -> x - b(a,x) e + b(e,x) a - (b(a,a)/2) b(e,x) e.

    Requires b(e, e) = 0 and b(e, a) = 0.  Determinant +1, spinor norm +1,
    trivial on any discriminant group of a lattice containing e and a.
    """
    if space.norm(e) != 0:
        raise IsometryError("e must be isotropic")
    if space.pairing(e, a) != 0:
        raise IsometryError("a must be orthogonal to e")
    half_qa = space.norm(a) / 2
    cols = []
    for j in range(space.dim):
        x = space.basis_vector(j)
        be = space.pairing(e, x)
        ba = space.pairing(a, x)
        img = vec_add(x, vec_scale(-ba - half_qa * be, e))
        img = vec_add(img, vec_scale(be, a))
        cols.append(img)
    return Isometry(space, Mat.from_columns(cols), check=False)


def apply_transvection(space, e, a, v):
    """t(e, a)(v) without building the matrix."""
    be = space.pairing(e, v)
    ba = space.pairing(a, v)
    img = vec_add(v, vec_scale(-ba - (space.norm(a) / 2) * be, e))
    return vec_add(img, vec_scale(be, a))


# -- Cartan-Dieudonne ---------------------------------------------------------


def _orthogonal_basis(space):
    """Orthogonal basis with all vectors anisotropic (form nondegenerate)."""
    basis = []
    current = [space.basis_vector(i) for i in range(space.dim)]
    while current:
        v = None
        for cand in current:
            if space.norm(cand) != 0:
                v = cand
                break
        if v is None:
            for i in range(len(current)):
                for j in range(i + 1, len(current)):
                    w = vec_add(current[i], current[j])
                    if space.norm(w) != 0:
                        v = w
                        break
                if v is not None:
                    break
        if v is None:
            raise IsometryError("degenerate form")
        v = vec_primitive_part(v)
        basis.append(v)
        qv = space.norm(v)
        nxt = []
        for w in current:
            w2 = vec_sub(w, vec_scale(space.pairing(w, v) / qv, v))
            if not vec_is_zero(w2):
                nxt.append(w2)
        # drop dependencies: keep a spanning subset of the projected vectors
        nxt = _independent_subset(nxt)
        current = nxt
    return basis


def _independent_subset(vectors):
    kept = []
    echelon = []  # (pivot index, reduced row)
    for v in vectors:
        row = list(v)
        for pidx, er in echelon:
            if row[pidx] != 0:
                f = row[pidx] / er[pidx]
                row = [a - f * b for a, b in zip(row, er)]
        p = next((i for i, a in enumerate(row) if a != 0), None)
        if p is not None:
            echelon.append((p, row))
            kept.append(v)
    return kept


def cartan_dieudonne(g):
    """Reflection vectors v_1, ..., v_k with g = s_{v_1} o ... o s_{v_k}.

    Anisotropic vectors, scaled primitive.  The isotropic-difference case is
    handled by the standard two-step fix through g(u) + u.
    """
    space = g.space
    basis = _orthogonal_basis(space)
    refs = []
    h = g
    for u in basis:
        hu = h(u)
        w = vec_sub(hu, u)
        if vec_is_zero(w):
            continue
        if space.norm(w) != 0:
            w = vec_primitive_part(w)
            refs.append(w)
            h = reflection(space, w).compose(h)
        else:
            w2 = vec_primitive_part(vec_add(hu, u))
            refs.append(w2)
            refs.append(vec_primitive_part(u))
            h = reflection(space, u).compose(reflection(space, w2)).compose(h)
    if not h.is_identity():
        raise IsometryError("decomposition failed to terminate at the identity")
    return refs


def spinor_norm(g):
    """Real spinor norm in the convention spin(s_v) = +1 iff b(v,v) < 0.

    Computed as sign det of g compressed to a maximal positive-definite
    subspace; equals the product of sign(-b(v,v)) over any reflection
    decomposition of g.
    """
    pos = g.space.positive_basis()
    if not pos:
        return 1
    images = [g(u) for u in pos]
    rows = []
    for u in pos:
        qu = g.space.norm(u)
        rows.append([g.space.pairing(u, img) / qu for img in images])
    d = Mat(rows).det()
    if d == 0:
        raise IsometryError("not an isometry of the real form")
    return 1 if d > 0 else -1


def spinor_norm_from_reflections(space, vectors):
    s = 1
    for v in vectors:
        if space.norm(v) > 0:
            s = -s
    return s


# -- lattice interaction ------------------------------------------------------


def preserves_lattice(g, lat):
    """True iff g(L) = L as subsets of the ambient space."""
    if lat.basis_in_ambient is None:
        raise IsometryError("lattice must be embedded in the isometry's space")
    if lat.ambient_gram != g.space.gram:
        raise IsometryError("dimension mismatch")
    if lat.rank == g.space.dim:
        # full rank: conjugate into lattice coordinates, check both directions
        lat.coords_of_ambient(g.space.basis_vector(0))  # prime the basis cache
        c = lat._basis_t
        cinv = lat._basis_t_inv
        m = cinv * g.matrix * c
        if not m.is_integral():
            return False
        minv = cinv * g.inverse().matrix * c
        return minv.is_integral()
    for i in range(lat.rank):
        img = g(lat.basis_in_ambient.row(i))
        if not lat.contains_ambient(img):
            return False
    ginv = g.inverse()
    for i in range(lat.rank):
        img = ginv(lat.basis_in_ambient.row(i))
        if not lat.contains_ambient(img):
            return False
    return True


def lattice_witness(g, lat):
    """A basis vector of L whose image leaves L, or None."""
    for i in range(lat.rank):
        v = lat.basis_in_ambient.row(i)
        if not lat.contains_ambient(g(v)):
            return v
        if not lat.contains_ambient(g.inverse()(v)):
            return g.inverse()(v)
    return None


def disc_action(g, lat):
    """Classify the action induced on A(L): identity, minus_identity, other.

    Returns (label, witness) where witness is None or a dual generator whose
    image is not +-(itself) modulo L.
    """
    if not preserves_lattice(g, lat):
        raise IsometryError("isometry does not preserve the lattice")
    disc = discriminant_group(lat)
    gens_ambient = [lat.ambient_vector(gen) for gen in disc.generators]
    is_id = True
    is_minus = True
    witness = None
    for w in gens_ambient:
        gw = g(w)
        if not lat.contains_ambient(vec_sub(gw, w)):
            is_id = False
        if not lat.contains_ambient(vec_add(gw, w)):
            is_minus = False
        if not (is_id or is_minus) and witness is None:
            witness = w
    if is_id:
        return "identity", None
    if is_minus:
        return "minus_identity", None
    return "other", witness


def generate_bounded(gens, depth, cap=20000):
    """All distinct products of word length <= depth (the empty product, the
    identity, included), deduplicated by exact matrix."""
    if not gens:
        raise IsometryError("no generators")
    space = gens[0].space
    for g in gens:
        if g.space != space:
            raise IsometryError("generators on different spaces")
    seen = {Mat.identity(space.dim): identity_isometry(space)}
    frontier = [seen[Mat.identity(space.dim)]]
    for _ in range(depth):
        nxt = []
        for h in frontier:
            for g in gens:
                prod = g.compose(h)
                if prod.matrix not in seen:
                    if len(seen) >= cap:
                        raise IsometryError("generation cap exceeded")
                    seen[prod.matrix] = prod
                    nxt.append(prod)
        frontier = nxt
        if not frontier:
            break
    return set(seen.values())


# -- Eichler transport --------------------------------------------------------


class TransvectionWord:
    """A word of Eichler transvections: (e, a) pairs in the carrier's
    coordinates, applied by apply() in list order (pairs[0] acts first)."""

    def __init__(self, carrier, pairs):
        self.carrier = carrier
        self.pairs = list(pairs)
        self._int_gram = None

    def apply(self, v):
        if (
            self.carrier.gram.is_integral()
            and all(c.denominator == 1 for c in v)
            and all(
                c.denominator == 1 for e, a in self.pairs for c in (*e, *a)
            )
        ):
            return self._apply_int(v)
        for e, a in self.pairs:
            be = self.carrier.pairing(e, v)
            ba = self.carrier.pairing(a, v)
            v = vec_add(v, vec_scale(-ba - (self.carrier.norm(a) / 2) * be, e))
            v = vec_add(v, vec_scale(be, a))
        return v

    def _apply_int(self, v):
        if self._int_gram is None:
            self._int_gram = [[int(x) for x in row] for row in self.carrier.gram.entries()]
        G = self._int_gram

        def pair(x, y):
            return sum(xi * sum(g * yj for g, yj in zip(G[i], y)) for i, xi in enumerate(x) if xi)

        w = tuple(int(c) for c in v)
        for e, a in self.pairs:
            e = tuple(int(c) for c in e)
            a = tuple(int(c) for c in a)
            be = pair(e, w)
            ba = pair(a, w)
            qa = pair(a, a)
            ce = -ba - (qa // 2) * be if qa % 2 == 0 else None
            if ce is None:
                coef = -Q(ba) - Q(qa, 2) * be
                w = tuple(Q(wi) + coef * ei + be * ai for wi, ei, ai in zip(w, e, a))
                w = tuple(Q(c) for c in w)
            else:
                w = tuple(wi + ce * ei + be * ai for wi, ei, ai in zip(w, e, a))
        return tuple(Q(c) for c in w)

    def inverse(self):
        return TransvectionWord(
            self.carrier, [(e, vec_scale(-1, a)) for e, a in reversed(self.pairs)]
        )

    def then(self, other):
        """Word doing self first, then other."""
        return TransvectionWord(self.carrier, self.pairs + other.pairs)

    def __len__(self):
        return len(self.pairs)


def _find_hyperbolic_pairs(lat, count=2):
    """Locate `count` pairwise orthogonal basis-vector hyperbolic pairs.

    Returns tuples (i, j, s): q(e_i) = q(e_j) = 0, b(e_i, s*e_j) = 1.  The
    remaining basis vectors must be orthogonal to all chosen pairs (the
    lattice splits off the planes on the nose); otherwise raises.
    """
    g = lat.gram
    found = []
    used = set()
    for i in range(lat.rank):
        if i in used or g[i, i] != 0:
            continue
        for j in range(lat.rank):
            if j == i or j in used or g[j, j] != 0 or abs(g[i, j]) != 1:
                continue
            if any(g[i, k] != 0 or g[j, k] != 0 for pair in found for k in pair[:2]):
                continue
            found.append((i, j, 1 if g[i, j] == 1 else -1))
            used.update((i, j))
            break
        if len(found) == count:
            break
    if len(found) < count:
        raise IsometryError("lattice does not expose %d orthogonal hyperbolic planes" % count)
    rest = [k for k in range(lat.rank) if all(k not in pair[:2] for pair in found)]
    for k in rest:
        for pair in found:
            if g[k, pair[0]] != 0 or g[k, pair[1]] != 0:
                raise IsometryError("hyperbolic planes do not split off orthogonally")
    return found, rest


class _Reducer:
    """Drives the transvection reduction of a vector over L = U1 + U2 + L0.

    Works internally in plain integer arithmetic (the lattice must be even
    and integral); emitted words carry Fraction coordinates.
    """

    def __init__(self, lat):
        pairs, rest = _find_hyperbolic_pairs(lat, 2)
        p1, p2 = pairs
        if not lat.is_even():
            raise IsometryError("transport needs an even integral lattice")
        self.lat = lat
        self.G = [[int(x) for x in row] for row in lat.gram.entries()]
        self.rest = rest
        self.E1 = self._unit(p1[0])
        self.F1 = self._unit(p1[1], p1[2])
        self.E2 = self._unit(p2[0])
        self.F2 = self._unit(p2[1], p2[2])
        self.word = []
        self.v = None

    def _unit(self, idx, sign=1):
        u = [0] * self.lat.rank
        u[idx] = sign
        return tuple(u)

    def _pair(self, x, y):
        G = self.G
        return sum(xi * sum(g * yj for g, yj in zip(G[i], y)) for i, xi in enumerate(x) if xi)

    # elementary actions -----------------------------------------------------

    def t(self, e, a):
        if not any(a):
            return
        v = self.v
        be = self._pair(e, v)
        ba = self._pair(a, v)
        qa = self._pair(a, a)
        coef_e = -ba - (qa // 2) * be
        self.v = tuple(
            vi + coef_e * ei + be * ai for vi, ei, ai in zip(v, e, a)
        )
        self.word.append((e, a))

    def coords(self):
        """(a1, b1, a2, b2) with v = a1 E1 + b1 F1 + a2 E2 + b2 F2 + z."""
        v = self.v
        return (
            self._pair(self.F1, v),
            self._pair(self.E1, v),
            self._pair(self.F2, v),
            self._pair(self.E2, v),
        )

    # matrix model X = [[p, q], [r, s]] = [[a1, -a2], [b2, b1]] ---------------

    def _X(self):
        a1, b1, a2, b2 = self.coords()
        return [a1, -a2, b2, b1]

    @staticmethod
    def _scale(t, v):
        return tuple(t * c for c in v)

    def row1_add(self, t):  # row1 += t * row2
        self.t(self.E1, self._scale(-t, self.E2))

    def row2_add(self, t):  # row2 += t * row1
        self.t(self.F1, self._scale(t, self.F2))

    def col1_add(self, t):  # col1 += t * col2
        self.t(self.E1, self._scale(t, self.F2))

    def col2_add(self, t):  # col2 += t * col1
        self.t(self.F1, self._scale(-t, self.E2))

    def rot_rows(self, sigma=1):  # (row1, row2) -> (sigma row2, -sigma row1)
        self.row1_add(sigma)
        self.row2_add(-sigma)
        self.row1_add(sigma)

    def rot_cols(self, sigma=1):  # (col1, col2) -> (sigma col2, -sigma col1)
        self.col1_add(sigma)
        self.col2_add(-sigma)
        self.col1_add(sigma)

    @staticmethod
    def _nearest_quot(r, p):
        """Quotient t with |r - t p| <= |p| / 2 (balanced Euclid step)."""
        t, rem = divmod(r, p)
        if 2 * abs(rem) > abs(p):
            t += 1
        return t

    def plane_smith(self):
        """Clear the U2-component: bring X to [[p, 0], [0, s]] with
        p = gcd of the four plane coefficients, p > 0.

        The pivot is steered positive by choosing rotation signs, so no
        final sign pass is needed and words stay short."""
        guard = 0
        while True:
            guard += 1
            if guard > 500:
                raise IsometryError("plane reduction did not converge")
            p, q, r, s = self._X()
            if p == q == r == s == 0:
                return
            if p == 0:
                if r != 0:
                    self.row1_add(1 if r > 0 else -1)
                elif q != 0:
                    self.col1_add(1 if q > 0 else -1)
                else:  # only s nonzero
                    self.row1_add(1)
                continue
            if p < 0:
                if r != 0:
                    self.rot_rows(1 if r > 0 else -1)
                elif q != 0:
                    self.rot_cols(1 if q > 0 else -1)
                else:
                    self.row2_add(1)  # r = p < 0, then rotate it in
                continue
            if r % p == 0 and q % p == 0:
                if r:
                    self.row2_add(-(r // p))
                if q:
                    self.col2_add(-(q // p))
                p2, _q2, _r2, s2 = self._X()
                if s2 % p2 != 0:
                    self.col1_add(1)
                    continue
                return
            if r % p != 0:
                self.row2_add(-self._nearest_quot(r, p))
                r2 = self._X()[2]
                self.rot_rows(1 if r2 > 0 else -1)
            else:
                self.col2_add(-self._nearest_quot(q, p))
                q2 = self._X()[1]
                self.rot_cols(1 if q2 > 0 else -1)

    # full reduction -----------------------------------------------------------

    def rest_pairings(self):
        return [self._pair(self._unit(k), self.v) for k in self.rest]

    def reduce(self, v):
        """Carry v to d E1 + b F1 + d*zeta, d = div(v) > 0, zeta canonical."""
        self.v = tuple(int(c) for c in v)
        self.word = []
        a1, b1, a2, b2 = self.coords()
        if a1 == b1 == a2 == b2 == 0:
            for k in self.rest:
                x = self._unit(k)
                if self._pair(x, self.v) != 0:
                    self.t(self.F1, x)
                    break
            else:
                raise IsometryError("vector pairs to zero with the whole lattice")
        self.plane_smith()
        # shrink the pivot to the divisibility using L0 pairings
        changed = True
        guard = 0
        while changed:
            guard += 1
            if guard > 200:
                raise IsometryError("divisibility reduction did not converge")
            changed = False
            a1 = self.coords()[0]
            for k, pk in zip(self.rest, self.rest_pairings()):
                if pk % a1 != 0:
                    self.t(self.E2, self._unit(k))
                    self.plane_smith()
                    changed = True
                    break
        d = self.coords()[0]
        # canonicalize the L0 part to d * (class representative): subtract the
        # integer part of each rest coordinate divided by d
        y = [0] * self.lat.rank
        nonzero = False
        for k in self.rest:
            delta = self.v[k] // d
            if delta:
                y[k] = delta
                nonzero = True
        if nonzero:
            self.t(self.F1, self._scale(-1, tuple(y)))
        word = TransvectionWord(
            self.lat,
            [(tuple(Q(c) for c in e), tuple(Q(c) for c in a)) for e, a in self.word],
        )
        return word, self.v


def disc_class_rep(lat, v):
    """Canonical representative of [v / div(v)] in A(L): coordinates mod Z."""
    d = divisibility(lat, v)
    return tuple((c / d) % 1 for c in v)


def eichler_transport(lat, v, w):
    """Word of Eichler transvections carrying v to w inside L = U + U + L0.

    Preconditions checked: v, w primitive, equal square, equal class in
    A(L).  Mismatches return NotFound('square' | 'primitivity' |
    'disc class').  The word is verified by application before returning.
    """
    v = tuple(Q(c) for c in v)
    w = tuple(Q(c) for c in w)
    if not (is_primitive(lat, v) and is_primitive(lat, w)):
        return NotFound("primitivity")
    if lat.norm(v) != lat.norm(w):
        return NotFound("square")
    if disc_class_rep(lat, v) != disc_class_rep(lat, w):
        return NotFound("disc class")
    if v == w:
        return TransvectionWord(lat, [])
    red = _Reducer(lat)
    word_v, v_red = red.reduce(v)
    word_w, w_red = red.reduce(w)
    if v_red != w_red:
        return NotFound("reduction mismatch")
    word = word_v.then(word_w.inverse())
    if word.apply(v) != w:
        return NotFound("verification failed")
    return word


def transport_word_isometry(space, lat, word):
    """Materialize a transport word (lattice coordinates) on the ambient
    space; word pairs apply first-to-last, so later factors multiply on
    the left."""
    g = identity_isometry(space)
    for e, a in word.pairs:
        ge = lat.ambient_vector(e)
        ga = lat.ambient_vector(a)
        g = eichler_transvection(space, ge, ga).compose(g)
    return g
