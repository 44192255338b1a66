"""Truncated simplicial abelian groups, Moore complexes, Dold-Kan, na1."""

from math import comb

import pytest

from deltak.abelian import GroupHom, free_ab, zmod
from deltak.errors import TruncationTooShallow
from deltak.simplicial import (
    check_simplicial_identities,
    compare_via,
    dold_kan_unit_maps,
    gamma,
    homotopy_group,
    moore_complex,
    na1,
    simplicial_from_json,
    simplicial_to_json,
    surjections,
)


def test_surjection_counts():
    for n in range(6):
        for m in range(n + 1):
            assert len(surjections(n, m)) == comb(n, m)


def test_gamma_level_ranks():
    X = gamma(zmod(3), 2, 4)
    assert X.levels[4].orders == (3,) * 6
    assert X.levels[2].orders == (3,)
    assert X.levels[1].orders == ()
    Y = gamma(free_ab(1), 1, 4)
    for n in range(5):
        assert Y.levels[n].rank == n


def test_moore_differential_squares_to_zero():
    X = gamma(zmod(4), 2, 5)
    cx = moore_complex(X)
    for n in range(2, 6):
        comp = cx.diffs[n - 1].compose(cx.diffs[n])
        assert comp.is_zero()


def test_homotopy_groups_of_gamma():
    X = gamma(zmod(2), 2, 5)
    assert homotopy_group(X, 2).same_group(zmod(2))
    assert homotopy_group(X, 1).is_trivial
    assert homotopy_group(X, 0).is_trivial
    assert homotopy_group(X, 3).is_trivial
    Y = gamma(free_ab(1), 1, 4)
    assert homotopy_group(Y, 1).same_group(free_ab(1))
    assert homotopy_group(Y, 0).is_trivial
    with pytest.raises(TruncationTooShallow):
        homotopy_group(Y, 4)


def test_na1_levels_and_structure():
    N = na1(zmod(3), 3)
    assert N.levels[2].orders == (3, 3)
    # d0 in reduced coordinates: (a01, a02) -> (a02 - a01)
    assert N.face(2, 0).matrix == ((2, 1),)  # -1 = 2 mod 3
    # s0 on level 1: (a01) -> (0, a01)
    assert N.degeneracy(1, 0).matrix == ((0,), (1,))


def test_identities_pass_and_detect_faults():
    assert check_simplicial_identities(gamma(zmod(2), 1, 4)) == []
    assert check_simplicial_identities(na1(free_ab(1), 4)) == []
    X = gamma(free_ab(1), 1, 3)
    X.face_maps[(2, 1)] = X.face_maps[(2, 1)].negate()
    bad = check_simplicial_identities(X)
    assert bad and bad[0][0] == "dd"


def test_na1_matches_gamma():
    for A in (free_ab(1), zmod(4)):
        N = na1(A, 4)
        maps = dold_kan_unit_maps(N, A, 1)
        assert compare_via(gamma(A, 1, 4), N, maps)


def test_compare_via_detects_sign_flip():
    A = zmod(4)
    N = na1(A, 3)
    maps = dold_kan_unit_maps(N, A, 1)
    maps[2] = maps[2].negate()
    assert not compare_via(gamma(A, 1, 3), N, maps)


def test_em_property_sweep():
    for A in (free_ab(1), zmod(2), zmod(6)):
        for m in (1, 2):
            L = m + 2
            X = gamma(A, m, L)
            for n in range(L):
                pi = homotopy_group(X, n)
                if n == m:
                    assert pi.same_group(A)
                else:
                    assert pi.is_trivial


def test_json_round_trip():
    X = gamma(zmod(2), 1, 3)
    Y = simplicial_from_json(simplicial_to_json(X))
    assert Y.truncation == X.truncation
    assert Y.levels == X.levels
    assert Y.face_maps == X.face_maps
    assert Y.degeneracy_maps == X.degeneracy_maps
