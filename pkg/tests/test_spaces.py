import random
from fractions import Fraction as Q

import pytest

from extmukai.isometry import minus_identity
from extmukai.lattice import discriminant_group, divisibility
from extmukai.linalg import Mat
from extmukai.spaces import (
    ExtMukaiSpace,
    SpaceError,
    b_field,
    ext_vector_line_bundle,
    ext_vector_point,
    in_hat_aut_plus,
    k3n_lattices,
    k3n_type,
    kumn_type,
    membership,
    og6_type,
    og10_type,
    rank_predicate_kx_orbit,
    rank_predicate_o_orbit,
    shifted_integral_lattice,
    signum_normalize,
    split_algebraic,
)

rng = random.Random(99)


def test_family_parameters():
    t = k3n_type(4)
    assert (t.c_x, t.r_x, t.b2) == (1, Q(7, 4), 23)
    t = kumn_type(4)
    assert (t.c_x, t.r_x, t.b2) == (5, Q(5, 4), 7)
    assert (og10_type().c_x, og10_type().r_x, og10_type().b2) == (1, 2, 24)
    assert (og6_type().c_x, og6_type().r_x, og6_type().b2) == (4, 1, 8)


def test_line_bundle_vector_examples():
    space = ExtMukaiSpace(k3n_type(2))
    v0 = ext_vector_line_bundle(space, [0] * 23)
    assert v0.coords == space.vector(1, [0] * 23, Q(5, 4))
    delta = [0] * 22 + [1]
    vd = ext_vector_line_bundle(space, delta)
    assert vd.coords == space.vector(1, delta, Q(1, 4))
    for _ in range(20):
        lam = [rng.randint(-3, 3) for _ in range(23)]
        v = ext_vector_line_bundle(space, lam)
        assert v.square() == -2 * space.dtype.r_x


def test_point_vector():
    space = ExtMukaiSpace(k3n_type(3))
    v = ext_vector_point(space)
    assert v.coords == space.beta
    assert v.square() == 0
    v_o = ext_vector_line_bundle(space, [0] * 23)
    assert space.pairing(v_o.coords, v.coords) == -1


def test_signum_rules():
    space = ExtMukaiSpace(k3n_type(2))
    lam = [1] + [0] * 22
    v = space.vector(-1, [-c for c in lam], -3)
    out = signum_normalize(space, v)
    assert out.coords == space.vector(1, lam, 3)
    # rule 2: no alpha part, sign of b(omega, lambda)
    omega = [0, 1] + [0] * 21  # pairs 1 with e1 via the U block
    w = space.vector(0, lam, 5)
    out = signum_normalize(space, w, omega=omega)
    assert out.coords == w
    out = signum_normalize(space, w, omega=[0, -1] + [0] * 21)
    assert out.coords == tuple(-c for c in w)
    # degenerate omega consulted -> error
    with pytest.raises(SpaceError, match="very-general"):
        signum_normalize(space, w, omega=[0] * 23)
    with pytest.raises(SpaceError, match="very-general"):
        signum_normalize(space, w)
    # rule 3: pure beta
    out = signum_normalize(space, space.vector(0, [0] * 23, -2))
    assert out.coords == space.vector(0, [0] * 23, 2)
    # epsilon multiplies
    out = signum_normalize(space, v, epsilon=-1)
    assert out.coords == space.vector(-1, [-c for c in lam], -3)


def test_k3n_lattice_facts():
    for n in (2, 3):
        space = ExtMukaiSpace(k3n_type(n))
        lats = k3n_lattices(space)
        at, dt = lats.alpha_tilde, lats.delta_tilde
        assert space.norm(at) == 0
        assert space.pairing(at, space.beta) == -1
        assert space.pairing(at, dt) == 0
        assert space.norm(dt) == 2 - 2 * n
        # Lambda = Lambda_S + Z delta~ orthogonally; Lambda_S unimodular
        assert abs(lats.lam_s.det()) == 1
        assert lats.lam.gram == Mat.block_diagonal(
            [lats.lam_s.gram, Mat([[2 - 2 * n]])]
        )
        # A(Lambda) = Z/(2n-2); delta~ has divisibility 2n-2
        assert discriminant_group(lats.lam).cyclic_orders == (2 * n - 2,)
        assert divisibility(lats.lam, lats.lam.coords_of_ambient(dt)) == 2 * n - 2
        # index two: Lambda inside Lambda_g
        assert abs(lats.lam_g.det()) * 4 == abs(lats.lam.det())
        for i in range(lats.lam.rank):
            assert membership(lats.lam_g, lats.lam.basis_in_ambient.row(i))[0]


def test_lambda_lb_between_lattices():
    for n in (2, 3):
        space = ExtMukaiSpace(k3n_type(n))
        lats = k3n_lattices(space)
        assert lats.lam_lb.rank == 25
        for i in range(25):
            assert membership(lats.lam_g, lats.lam_lb.basis_in_ambient.row(i))[0]
        # both Lambda and Lambda_LB sit in Lambda_g with index two, but they
        # differ as subsets: v(O) generates the half-delta~ direction of
        # Lambda_LB and does not lie in Lambda
        assert abs(lats.lam_lb.det()) == abs(lats.lam.det())
        assert abs(lats.lam_g.det()) * 4 == abs(lats.lam_lb.det())
        v0 = ext_vector_line_bundle(space, [0] * 23).coords
        assert membership(lats.lam_lb, v0)[0]
        assert not membership(lats.lam, v0)[0]
        assert not lats.lam_lb.same_subset_as(lats.lam)


def test_membership_examples():
    space = ExtMukaiSpace(k3n_type(2))
    lats = k3n_lattices(space)
    # v(O_Pn) = l + delta~/2 + beta with l a (-2)-class of the K3 part
    l_amb = space.h2_embed([1, -1] + [0] * 21)
    v = tuple(
        a + Q(1, 2) * d + b for a, d, b in zip(l_amb, lats.delta_tilde, space.beta)
    )
    assert membership(lats.lam_g, v)[0]
    assert not membership(lats.lam, v)[0]
    assert membership(lats.lam, space.beta)[0]
    # v(lambda) in Lambda_g for 100 random integral lambda
    for _ in range(100):
        lam = [rng.randint(-3, 3) for _ in range(23)]
        ok, _ = membership(lats.lam_g, ext_vector_line_bundle(space, lam).coords)
        assert ok


def test_line_bundle_rewrite_identity():
    # v(lambda) = alpha~ + delta~/2 + lambda + (1 + b(lambda,lambda)/2) beta
    space = ExtMukaiSpace(k3n_type(3))
    lats = k3n_lattices(space)
    for _ in range(20):
        lam = [rng.randint(-3, 3) for _ in range(23)]
        lhs = ext_vector_line_bundle(space, lam).coords
        lam_amb = space.h2_embed(lam)
        q = space.norm(lam_amb)
        rhs = tuple(
            a + Q(1, 2) * d + l + (1 + q / 2) * b
            for a, d, l, b in zip(lats.alpha_tilde, lats.delta_tilde, lam_amb, space.beta)
        )
        assert lhs == rhs


def test_lambda_independent_of_exceptional_choice():
    # B_{-gamma/2}(integral lattice) = Lambda for any gamma of square 2-2n
    # and divisibility 2n-2
    for n in (2, 3):
        space = ExtMukaiSpace(k3n_type(n))
        lats = k3n_lattices(space)
        candidates = []
        delta = [0] * 22 + [1]
        candidates.append(delta)
        # delta + (2n-2) e for isotropic e in distinct hyperbolic planes
        e1 = [0] * 23
        e1[0] = 2 * n - 2
        candidates.append([a + b for a, b in zip(delta, e1)])
        f2 = [0] * 23
        f2[3] = 2 * n - 2
        candidates.append([a + b for a, b in zip(delta, f2)])
        for gamma in candidates:
            amb = space.h2_embed(gamma)
            assert space.norm(amb) == 2 - 2 * n
            assert divisibility(space.integral_lattice(),
                                space.integral_lattice().coords_of_ambient(amb)) == 2 * n - 2
            shifted = shifted_integral_lattice(space, gamma)
            assert shifted.same_subset_as(lats.lam)


def test_split_algebraic():
    space = ExtMukaiSpace(
        k3n_type(2),
        ns_sublattice=[[1] + [0] * 22, [0, 1] + [0] * 21, [0] * 22 + [1]],
    )
    lats = k3n_lattices(space)
    alg, tr = split_algebraic(space, lats.lam)
    assert alg.rank == 5  # alpha~, e1, f1, delta~-ish, beta directions
    assert tr.rank == 20
    # transcendental part of Lambda = transcendental part of H^2
    h2_tr_basis = [space.basis_vector(i) for i in range(3, 23)]
    for b in h2_tr_basis:
        assert tr.contains_ambient(b)
    alg2, tr2 = split_algebraic(space, space.integral_lattice())
    assert tr2.rank == 20
    for b in h2_tr_basis:
        assert tr2.contains_ambient(b)
    # NS = all of H^2 -> transcendental part is zero
    full = ExtMukaiSpace(
        k3n_type(2),
        ns_sublattice=[[1 if j == i else 0 for j in range(23)] for i in range(23)],
    )
    lats_f = k3n_lattices(full)
    algf, trf = split_algebraic(full, lats_f.lam)
    assert algf.rank == 25 and trf.rank == 0


def test_rank_predicates():
    assert rank_predicate_o_orbit(8, 3) == (True, 2)
    assert rank_predicate_o_orbit(-8, 3) == (True, 2)
    assert rank_predicate_o_orbit(12, 3) == (False, None)
    assert rank_predicate_o_orbit(1, 5) == (True, 1)
    assert rank_predicate_o_orbit(0, 3) == (True, 0)

    ok, a, integral = rank_predicate_kx_orbit(0, 3, 1)
    assert ok and a == 0
    ok, a, integral = rank_predicate_kx_orbit(2, 2, 1)
    assert ok and a == 1 and integral
    ok, _, _ = rank_predicate_kx_orbit(3, 2, 1)
    assert not ok
    # rational witness: n = 2, c_X = 1, r = 2 * (3/2)^2 = 9/2 not integral;
    # r = 2 * (1/2)^2 /... q^n must divide n!: a = 1/..., n! = 2: no q > 1
    ok, a, integral = rank_predicate_kx_orbit(6 * 27, 3, 1)  # a = 3
    assert ok and a == 3 and integral


def test_in_hat_aut_plus():
    space = ExtMukaiSpace(
        k3n_type(2), ns_sublattice=[[1] + [0] * 22, [0, 1] + [0] * 21, [0] * 22 + [1]]
    )
    lats = k3n_lattices(space)
    lam_ns = [2, 1] + [0] * 20 + [1]  # integral class inside NS
    ok, reasons = in_hat_aut_plus(b_field(space, lam_ns), space, lats)
    assert ok, reasons
    ok, reasons = in_hat_aut_plus(minus_identity(space), space, lats)
    assert ok, reasons
    s10 = ExtMukaiSpace(k3n_type(10))
    l10 = k3n_lattices(s10)
    g = b_field(s10, [Q(0)] * 22 + [Q(1, 3)])
    ok, reasons = in_hat_aut_plus(g, s10, l10)
    assert not ok and not reasons["preserves_lattice"]


def test_ns_must_be_primitive():
    with pytest.raises(SpaceError):
        ExtMukaiSpace(k3n_type(2), ns_sublattice=[[2] + [0] * 22])
