import random

import pytest

from extmukai.lattice import discriminant_group
from extmukai.linalg import Mat
from extmukai.moduli import (
    AlgebraicMukaiLattice,
    ModuliError,
    disc_lemma_check,
    fineness,
    moduli_dimension,
    ns_of_moduli,
    pairing_witness,
    partner_invariants,
)

rng = random.Random(6)


def test_mukai_pairing_convention():
    lat = AlgebraicMukaiLattice(Mat([[4]]))
    v = lat.vector(1, [2], 3)
    w = lat.vector(2, [1], -1)
    # <(r,c,s),(r',c',s')> = c.c' - r s' - r' s
    assert lat.pairing(v, w) == 2 * 4 * 1 - 1 * (-1) - 2 * 3
    assert lat.square(lat.vector(1, [0], 1 - 3)) == 2 * 3 - 2


def test_moduli_dimension():
    lat = AlgebraicMukaiLattice(Mat([[0, 1], [1, 0]]))
    for n in (2, 3, 5):
        v = lat.vector(1, [0, 0], 1 - n)
        assert moduli_dimension(lat, v) == 2 * n
    # isotropic fiber-type vector: dimension 2
    assert moduli_dimension(lat, lat.vector(0, [1, 0], 0)) == 2
    # spherical: dimension 0
    assert moduli_dimension(lat, lat.vector(1, [0, 0], 1)) == 0
    with pytest.raises(ModuliError):
        moduli_dimension(lat, lat.vector(1, [0, 0], 2))  # square -4
    with pytest.raises(ModuliError):
        moduli_dimension(lat, lat.vector(2, [0, 0], 2))  # imprimitive


def test_ns_of_moduli_poincare_basis():
    # NS(S) = <2g-2>, v = (0, H, 1-g): Gram [[2g-2, 2], [2, 0]]
    for g in (2, 3, 4):
        lat = AlgebraicMukaiLattice(Mat([[2 * g - 2]]))
        v = lat.vector(0, [1], 1 - g)
        ns_m = ns_of_moduli(lat, v)
        assert ns_m.rank == lat.rank - 1
        assert ns_m.gram == Mat([[2 * g - 2, 2], [2, 0]]) or ns_m.gram == Mat(
            [[0, 2], [2, 2 * g - 2]]
        )


def test_ns_of_moduli_rank_and_containment():
    lat = AlgebraicMukaiLattice(Mat([[2 * 5]]))
    n = 3
    v = lat.vector(1, [0], 1 - n)
    ns_m = ns_of_moduli(lat, v)
    assert ns_m.rank == lat.rank - 1
    assert ns_m.is_even()
    dg = discriminant_group(ns_m)
    assert dg.order == abs(ns_m.det())


def test_fineness_examples():
    lat = AlgebraicMukaiLattice(Mat([[4]]))  # g = 3 for the H example
    v = lat.vector(1, [0], 1 - 3)
    fine, order = fineness(lat, v)
    assert fine and order == 1
    w = pairing_witness(lat, v)
    assert w is not None and lat.pairing(v, w) == 1
    # v = (0, H, 1-g) on NS = <2g-2>: obstruction order g-1 (= 2 at g = 3)
    v2 = lat.vector(0, [1], 1 - 3)
    fine2, order2 = fineness(lat, v2)
    assert not fine2 and order2 == 2
    assert pairing_witness(lat, v2) is None
    with pytest.raises(ModuliError):
        fineness(lat, lat.vector(2, [0], 2))


def test_disc_lemma_fine_case():
    for g in (2, 4):
        for n in (2, 3, 4):
            lat = AlgebraicMukaiLattice(Mat([[2 * g]]))
            v = lat.vector(1, [0], 1 - n)
            rep = disc_lemma_check(lat, v)
            assert rep["all"], rep
            assert rep["fine"]
            assert rep["index_K"] == 2 * n - 2
            assert rep["disc_ns_moduli"] == (2 * n - 2) * rep["disc_ambient"]


def test_disc_lemma_divides():
    lat = AlgebraicMukaiLattice(Mat([[2]]))
    count = 0
    for v in _primitive_box(lat, 3):
        if lat.square(v) in (2, 4, 6):
            rep = disc_lemma_check(lat, v)
            assert rep["all"], (v, rep)
            assert (2 * _half(lat.square(v)) - 2) % rep["index_K"] == 0
            count += 1
    assert count > 10


def _half(sq):
    return int(sq) // 2 + 1


def _primitive_box(lat, bound):
    from extmukai.moduli import primitive_vectors_in_box

    return primitive_vectors_in_box(lat, bound)


def test_partner_invariants():
    lat = AlgebraicMukaiLattice(Mat([[2]]))
    v = lat.vector(1, [0], -2)  # square 4, n = 3
    inv = partner_invariants(lat, v)
    # invariance under the lattice b-field isometries
    for _ in range(5):
        mu = [rng.randint(-2, 2)]
        m = lat.b_field(mu)
        v2 = m.apply(v)
        assert partner_invariants(lat, v2) == inv
    # stability under sign
    assert partner_invariants(lat, tuple(-c for c in v)) == inv


def test_partner_invariants_may_differ():
    # v = (1, 0, 1-n) vs v = (0, H, 1-g)-style vectors can have different
    # obstruction orders on NS = <2n-2>
    n = 3
    lat = AlgebraicMukaiLattice(Mat([[2 * n - 2]]))
    a = partner_invariants(lat, lat.vector(1, [0], 1 - n))
    b = partner_invariants(lat, lat.vector(0, [1], 1 - n))
    assert a["obstruction_order"] == 1
    assert b["obstruction_order"] == 2
    assert a["obstruction_order"] != b["obstruction_order"]
