import random
from fractions import Fraction as Q

import pytest

from extmukai.catalog import (
    CatalogError,
    PoincareModel,
    action,
    dn_transfer,
    k3_extended_space,
    poincare_checks,
)
from extmukai.isometry import minus_identity, preserves_lattice, reflection
from extmukai.linalg import vec_add, vec_scale
from extmukai.spaces import ExtMukaiSpace, b_field, k3n_lattices, k3n_type

rng = random.Random(4)


def test_shift_and_epsilon():
    s2 = ExtMukaiSpace(k3n_type(2))
    named = action(s2, "shift")
    assert named.iso.matrix == minus_identity(s2).matrix
    assert named.epsilon == -1  # det(-id) on a 25-dimensional space
    s3 = ExtMukaiSpace(k3n_type(3))
    assert action(s3, "shift").epsilon is None


def test_tensor_line_bundle_is_b_field():
    space = ExtMukaiSpace(k3n_type(2))
    lam = [rng.randint(-2, 2) for _ in range(23)]
    named = action(space, "tensor_line_bundle", lam=lam)
    assert named.iso.matrix == b_field(space, lam).matrix
    assert named.epsilon == 1


def test_sign_equivalence_action():
    # s_{delta~} swaps the two shifted line-bundle expressions
    space = ExtMukaiSpace(k3n_type(3))
    lats = k3n_lattices(space)
    named = action(space, "sign_equivalence")
    lam = space.h2_embed([1, 2] + [0] * 21)
    q = space.norm(lam)
    plus = vec_add(
        vec_add(lats.alpha_tilde, vec_scale(Q(1, 2), lats.delta_tilde)),
        vec_add(lam, vec_scale(1 + q / 2, space.beta)),
    )
    minus = vec_add(
        vec_add(lats.alpha_tilde, vec_scale(Q(-1, 2), lats.delta_tilde)),
        vec_add(lam, vec_scale(1 + q / 2, space.beta)),
    )
    assert named.iso(plus) == minus
    assert named.iso(minus) == plus


def test_spherical_p_odd_n():
    space = ExtMukaiSpace(k3n_type(3))
    lats = k3n_lattices(space)
    p = action(space, "spherical_P").iso
    v_o = vec_add(
        vec_add(lats.alpha_tilde, vec_scale(Q(1, 2), lats.delta_tilde)), space.beta
    )
    v_o_md = vec_add(
        vec_add(lats.alpha_tilde, vec_scale(Q(-1, 2), lats.delta_tilde)), space.beta
    )
    assert p(v_o) == tuple(-c for c in v_o_md)


def test_fm_ext1_and_horja_only_n2():
    s3 = ExtMukaiSpace(k3n_type(3))
    with pytest.raises(CatalogError):
        action(s3, "fm_ext1")
    with pytest.raises(CatalogError):
        action(s3, "horja_EZ")
    s2 = ExtMukaiSpace(k3n_type(2))
    lats = k3n_lattices(s2)
    fm = action(s2, "fm_ext1").iso
    # -s_{alpha~+beta}: agrees with spherical_P at n = 2
    assert fm.matrix == action(s2, "spherical_P").iso.matrix
    hj = action(s2, "horja_EZ").iso
    want = minus_identity(s2).compose(
        reflection(s2, vec_add(lats.delta_tilde, s2.beta))
    )
    assert hj.matrix == want.matrix
    assert fm.compose(fm).is_identity()
    assert hj.compose(hj).is_identity()


def test_all_actions_preserve_lattices():
    for n in (2, 3):
        space = ExtMukaiSpace(k3n_type(n))
        lats = k3n_lattices(space)
        keys = ["shift", "sign_equivalence", "spherical_P"]
        if n == 2:
            keys += ["fm_ext1", "horja_EZ"]
        for key in keys:
            g = action(space, key).iso
            assert preserves_lattice(g, lats.lam), key
            assert preserves_lattice(g, lats.lam_g), key
        g = action(space, "tensor_line_bundle",
                   lam=[rng.randint(-2, 2) for _ in range(23)]).iso
        assert preserves_lattice(g, lats.lam)
        assert preserves_lattice(g, lats.lam_g)


def test_dn_transfer_reflection_identity():
    k3 = k3_extended_space()
    s_ab = reflection(k3, vec_add(k3.alpha, k3.beta))
    for n in (2, 3):
        space = ExtMukaiSpace(k3n_type(n))
        lats = k3n_lattices(space)
        got = dn_transfer(space, s_ab)
        want = reflection(space, vec_add(lats.alpha_tilde, space.beta))
        if (n + 1) % 2:
            want = minus_identity(space).compose(want)
        assert got.matrix == want.matrix


def test_dn_transfer_b_field_correspondence():
    # surface B-fields transfer to Hilbert-scheme B-fields on the K3 block
    k3 = k3_extended_space()
    lam22 = [rng.randint(-2, 2) for _ in range(22)]
    space = ExtMukaiSpace(k3n_type(2))
    got = dn_transfer(space, b_field(k3, lam22))
    want = b_field(space, lam22 + [0])
    assert got.matrix == want.matrix


def test_dn_transfer_fixed_directions():
    # g fixing alpha and beta with det 1 transfers to an isometry fixing
    # alpha~, beta, delta~ and acting as g on the K3 block
    k3 = k3_extended_space()
    e1 = k3.basis_vector(1)
    f1 = k3.basis_vector(2)
    w1 = vec_add(e1, f1)  # square 2
    w2 = vec_add(e1, vec_scale(-1, f1))  # square -2
    g = reflection(k3, w1).compose(reflection(k3, w2))  # det 1, fixes alpha, beta
    assert g(k3.alpha) == k3.alpha and g(k3.beta) == k3.beta
    for n in (2, 3):
        space = ExtMukaiSpace(k3n_type(n))
        lats = k3n_lattices(space)
        out = dn_transfer(space, g)
        assert out(lats.alpha_tilde) == lats.alpha_tilde
        assert out(space.beta) == space.beta
        assert out(lats.delta_tilde) == lats.delta_tilde
        for i in range(1, 23):
            src = k3.basis_vector(i)
            img = g(src)
            assert out(space.basis_vector(i)) == tuple(img[:23]) + (Q(0), img[23])


def test_dn_transfer_homomorphism():
    k3 = k3_extended_space()
    space = ExtMukaiSpace(k3n_type(2))
    gens = [
        b_field(k3, [1] + [0] * 21),
        reflection(k3, vec_add(k3.alpha, k3.beta)),
        minus_identity(k3),
    ]
    for _ in range(20):
        g = gens[rng.randint(0, 2)].compose(gens[rng.randint(0, 2)])
        h = gens[rng.randint(0, 2)]
        assert dn_transfer(space, g.compose(h)).matrix == dn_transfer(space, g).compose(
            dn_transfer(space, h)
        ).matrix


def test_poincare_model():
    for g in range(2, 7):
        model = PoincareModel(g)
        sp = model.space
        assert sp.norm(model.h) == 0
        assert sp.pairing(model.f, tuple(-c for c in model.h)) == 1
        iso = model.exchange_isometry()
        assert iso(sp.alpha) == model.h
        assert iso(model.h) == sp.alpha
        assert iso(sp.beta) == model.f
        assert iso(model.f) == sp.beta
        checks = poincare_checks(g)
        assert all(c["pass"] for c in checks), [c for c in checks if not c["pass"]]


def test_poincare_genus_bound():
    with pytest.raises(CatalogError):
        PoincareModel(1)
