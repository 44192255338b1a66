"""Finitely generated abelian groups and their homomorphisms."""

import pytest

from deltak.abelian import (
    FgAb,
    GroupHom,
    direct_sum,
    free_ab,
    parse_group_spec,
    repeat_group,
    zmod,
)
from deltak.errors import SchemaError, ShapeMismatch


def test_invariant_factors():
    assert free_ab(2).invariant_factors() == (2, [])
    assert zmod(6).invariant_factors() == (0, [6])
    A = direct_sum(zmod(2), zmod(4), free_ab(1))
    assert A.invariant_factors() == (1, [2, 4])
    # non-coprime orders merge into a divisibility chain
    B = direct_sum(zmod(2), zmod(3))
    assert B.invariant_factors() == (0, [6])


def test_same_group():
    assert direct_sum(zmod(2), zmod(3)).same_group(zmod(6))
    assert not zmod(4).same_group(direct_sum(zmod(2), zmod(2)))
    assert FgAb(()).same_group(FgAb((1,)))


def test_parse_group_spec():
    assert parse_group_spec("Z").orders == (0,)
    assert parse_group_spec("Z/4").orders == (4,)
    assert parse_group_spec("Z + Z/2").orders == (0, 2)
    with pytest.raises(SchemaError):
        parse_group_spec("Q")


def test_hom_compatibility():
    # Z/2 -> Z admits only the zero map
    with pytest.raises(ShapeMismatch):
        GroupHom.make(zmod(2), free_ab(1), [[1]])
    GroupHom.make(zmod(2), free_ab(1), [[0]])
    # Z/2 -> Z/4 must land in the 2-torsion
    GroupHom.make(zmod(2), zmod(4), [[2]])
    with pytest.raises(ShapeMismatch):
        GroupHom.make(zmod(2), zmod(4), [[1]])


def test_hom_reduction_and_compose():
    f = GroupHom.make(zmod(4), zmod(4), [[5]])
    assert f.matrix == ((1,),)
    g = GroupHom.make(zmod(4), zmod(4), [[2]])
    assert g.compose(g).matrix == ((0,),)


def test_isomorphism_and_inverse():
    f = GroupHom.make(free_ab(2), free_ab(2), [[1, 1], [0, 1]])
    assert f.is_isomorphism()
    inv = f.inverse()
    assert inv.compose(f) == GroupHom.identity(free_ab(2))
    assert f.compose(inv) == GroupHom.identity(free_ab(2))
    g = GroupHom.make(free_ab(2), free_ab(2), [[2, 0], [0, 1]])
    assert not g.is_isomorphism()
    # multiplication by 3 is invertible on Z/4
    h = GroupHom.make(zmod(4), zmod(4), [[3]])
    assert h.is_isomorphism()
    assert h.inverse().matrix == ((3,),)


def test_repeat_group():
    assert repeat_group(zmod(2), 3).orders == (2, 2, 2)
    assert repeat_group(free_ab(1), 0).orders == ()
