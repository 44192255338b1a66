"""Grothendieck-group presentations, invariants, and the cosimplicial level."""

from math import comb

from deltak.abelian import free_ab, zmod
from deltak.k0 import (
    basis_simplices,
    canonical_iso_to_gamma,
    check_cosimplicial_identities,
    cosimplicial_structure,
    hom_into,
    k0_invariants,
    k0_presentation,
    lattices_agree,
    reduce_to_basis,
    verify_basis,
)
from deltak.simplex import simplex
from deltak.simplicial import check_simplicial_identities


def test_presentation_shapes():
    pres = k0_presentation(1, 3, "euler")
    assert len(pres.generators) == 10
    degenerate_rows = sum(
        1 for row in pres.relations.data if sum(1 for x in row if x) == 1
    )
    assert degenerate_rows == 4
    assert pres.relations.rows == 4 + 4
    pres = k0_presentation(1, 3, "ar")
    assert pres.relations.rows == 4 + 3
    pres = k0_presentation(2, 2, "euler")
    assert pres.relations.rows == 9
    assert sum(1 for s in pres.generators if s.is_injective) == 1


def test_euler_row_signs():
    # the row of rho = (0,1,2) at (m,n) = (1,2): e01 - e02 + e12
    pres = k0_presentation(1, 2, "euler")
    index = {s.values: k for k, s in enumerate(pres.generators)}
    relation_rows = [
        row for row in pres.relations.data if sum(1 for x in row if x) > 1
    ]
    assert len(relation_rows) == 1
    row = relation_rows[0]
    assert row[index[(0, 1)]] == 1
    assert row[index[(0, 2)]] == -1
    assert row[index[(1, 2)]] == 1


def test_invariants():
    assert k0_invariants(1, 3) == (3, [])
    assert k0_invariants(2, 4) == (6, [])
    assert k0_invariants(2, 2) == (1, [])
    for m in (1, 2, 3):
        for n in range(m, 7):
            assert k0_invariants(m, n) == (comb(n, m), [])


def test_lattices_agree():
    assert lattices_agree(1, 4)
    assert lattices_agree(2, 5)
    assert lattices_agree(1, 1)


def test_basis_certification():
    for m in (1, 2):
        for n in range(m, 6):
            assert verify_basis(m, n)
            assert len(basis_simplices(m, n)) == comb(n, m)


def test_reduce_to_basis():
    # degenerate classes die
    assert reduce_to_basis(simplex((1, 1), 3), 1, 3) == [0, 0, 0]
    # basis elements are fixed
    assert reduce_to_basis(simplex((0, 2), 3), 1, 3) == [0, 1, 0]
    # (1,2) rewrites through the Euler relation of (0,1,2): e02 - e01
    basis = [s.values for s in basis_simplices(1, 3)]
    out = reduce_to_basis(simplex((1, 2), 3), 1, 3)
    assert out[basis.index((0, 2))] == 1
    assert out[basis.index((0, 1))] == -1


def test_cosimplicial_structure():
    cs = cosimplicial_structure(1, 4)
    assert check_cosimplicial_identities(cs) == []
    # delta_0 post-composition sends the class of (0,1) into level 3
    mat = cs.coface_maps[(3, 0)]
    basis2 = [s.values for s in cs.bases[2]]
    basis3 = [s.values for s in cs.bases[3]]
    col = [mat.data[i][basis2.index((0, 1))] for i in range(len(basis3))]
    # (0,1) -> (1,2) = e02 - e01 in the level-3 basis
    expect = [0] * len(basis3)
    expect[basis3.index((0, 2))] = 1
    expect[basis3.index((0, 1))] = -1
    assert col == expect
    cs2 = cosimplicial_structure(2, 4)
    assert check_cosimplicial_identities(cs2) == []


def test_hom_into():
    X = hom_into(zmod(2), 1, 3)
    assert X.levels[3].orders == (2, 2, 2)
    assert X.levels[0].rank == 0
    assert check_simplicial_identities(X) == []
    Y = hom_into(free_ab(1), 2, 4)
    assert Y.levels[4].orders == (0,) * 6
    assert Y.levels[1].rank == 0


def test_canonical_iso_to_gamma():
    canonical_iso_to_gamma(zmod(2), 1, 4)
    canonical_iso_to_gamma(zmod(2), 2, 4)
    canonical_iso_to_gamma(free_ab(1), 2, 5)
