"""The simplex category: generators, posets Delta(m, n), faces, cubes."""

from math import comb

import pytest

from deltak.errors import (
    DegenerateInput,
    DomainMismatch,
    IndexOutOfRange,
    OutOfRange,
    ShapeMismatch,
    ZeroSimplexHasNoFaces,
)
from deltak.simplex import (
    MonotoneMap,
    Simplex,
    ar_cube,
    codegeneracy,
    coface,
    compose,
    cube_corners,
    enumerate_simplices,
    epi_mono_factor,
    euler_cube,
    faces,
    nondegenerate_simplices,
    poset_leq,
    simplex,
)


def test_compose_identity():
    g = MonotoneMap.identity(2)
    f = simplex((0, 2), 2)
    assert compose(g, f).values == (0, 2)


def test_compose_evaluation():
    g = MonotoneMap(2, 1, (0, 0, 1))
    f = MonotoneMap(1, 2, (0, 2))
    assert compose(g, f).values == (0, 1)
    f2 = MonotoneMap(1, 2, (1, 2))
    g2 = MonotoneMap(2, 1, (0, 1, 1))
    assert compose(g2, f2).values == (1, 1)


def test_compose_domain_mismatch():
    with pytest.raises(DomainMismatch):
        compose(MonotoneMap(1, 2, (0, 2)), MonotoneMap(1, 3, (0, 1)))


def test_generators():
    assert coface(2, 1).values == (0, 2)
    assert codegeneracy(1, 0).values == (0, 0, 1)
    assert coface(1, 0).values == (1,)
    with pytest.raises(IndexOutOfRange):
        coface(2, 3)
    with pytest.raises(IndexOutOfRange):
        codegeneracy(1, 2)


def test_epi_mono_factor():
    f = MonotoneMap(2, 2, (0, 0, 2))
    epi, mono = epi_mono_factor(f)
    assert epi.values == (0, 0, 1)
    assert mono.values == (0, 2)
    assert compose(mono, epi).values == f.values
    inj = MonotoneMap(1, 3, (1, 3))
    epi, mono = epi_mono_factor(inj)
    assert epi.is_identity
    surj = MonotoneMap(2, 1, (0, 1, 1))
    epi, mono = epi_mono_factor(surj)
    assert mono.is_identity


def test_faces():
    assert [f.values for f in faces(simplex((0, 1, 2), 3))] == [
        (1, 2),
        (0, 2),
        (0, 1),
    ]
    assert [f.values for f in faces(simplex((0, 0, 3), 3))] == [
        (0, 3),
        (0, 3),
        (0, 0),
    ]
    assert [f.values for f in faces(simplex((1, 3), 3))] == [(3,), (1,)]
    with pytest.raises(ZeroSimplexHasNoFaces):
        faces(simplex((2,), 3))


def test_faces_commute():
    for m in range(1, 4):
        for n in range(m, 6):
            for s in enumerate_simplices(m, n):
                if s.domain < 2:
                    continue
                fs = faces(s)
                for j in range(1, s.domain + 1):
                    for i in range(j):
                        assert faces(fs[j])[i] == faces(fs[i])[j - 1]


def test_enumerate_counts():
    sims = enumerate_simplices(1, 2)
    assert [s.values for s in sims] == [
        (0, 0),
        (0, 1),
        (0, 2),
        (1, 1),
        (1, 2),
        (2, 2),
    ]
    assert len(enumerate_simplices(2, 4)) == 35
    assert len(nondegenerate_simplices(2, 4)) == 10
    assert len(enumerate_simplices(0, 3)) == 4
    for m in range(4):
        for n in range(6):
            assert len(enumerate_simplices(m, n)) == comb(n + m + 1, m + 1)
            assert len(nondegenerate_simplices(m, n)) == comb(n + 1, m + 1)


def test_poset_leq():
    assert poset_leq(simplex((0, 1), 2), simplex((0, 2), 2))
    assert not poset_leq(simplex((0, 2), 2), simplex((1, 1), 2))
    s = simplex((1, 2), 2)
    assert poset_leq(s, s)
    with pytest.raises(ShapeMismatch):
        poset_leq(simplex((0, 1), 2), simplex((0, 1), 3))


def test_euler_cube():
    c = euler_cube(simplex((0, 1, 2), 2))
    assert c.vertex((0, 0)).values == (0, 1)
    assert c.vertex((1, 0)).values == (1, 1)
    assert c.vertex((0, 1)).values == (0, 2)
    assert c.vertex((1, 1)).values == (1, 2)
    c = euler_cube(simplex((1, 2, 4), 4))
    assert c.vertex((0, 0)).values == (1, 2)
    assert c.vertex((1, 0)).values == (2, 2)
    assert c.vertex((0, 1)).values == (1, 4)
    assert c.vertex((1, 1)).values == (2, 4)
    c = euler_cube(simplex((0, 1, 2, 3), 3))
    nondeg = sorted(
        c.vertex(v).values for v in cube_corners(3) if not c.vertex(v).is_degenerate
    )
    assert nondeg == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    with pytest.raises(DegenerateInput):
        euler_cube(simplex((0, 0, 1), 2))


def test_euler_cube_face_vertices():
    # vertex 1...10...0 with k ones is the k-th face of rho when nondegenerate
    rho = simplex((0, 2, 3, 5), 5)
    c = euler_cube(rho)
    fs = faces(rho)
    m1 = rho.domain
    assert c.vertex((1,) * m1) == fs[0]
    assert c.vertex((0,) * m1) == fs[m1]
    for k in range(1, m1):
        v = (1,) * k + (0,) * (m1 - k)
        if not c.vertex(v).is_degenerate:
            assert c.vertex(v) == fs[k]


def test_cube_monotone():
    for rho in nondegenerate_simplices(3, 5):
        c = euler_cube(rho)
        for v in cube_corners(3):
            for i in range(3):
                if v[i] == 0:
                    w = v[:i] + (1,) + v[i + 1 :]
                    assert poset_leq(c.vertex(v), c.vertex(w))


def test_ar_cube():
    c = ar_cube(simplex((0, 1), 3))
    got = sorted(c.vertex(v).values for v in cube_corners(2))
    assert got == [(0, 1), (0, 2), (1, 1), (1, 2)]
    c = ar_cube(simplex((0, 1, 2), 4))
    assert {c.vertex(v).values for v in cube_corners(3)} == {
        tuple(a + b for a, b in zip((0, 1, 2), v)) for v in cube_corners(3)
    }
    with pytest.raises(OutOfRange):
        ar_cube(simplex((2, 3), 3))
    with pytest.raises(DegenerateInput):
        ar_cube(simplex((1, 1), 3))


def test_generator_identities():
    # the three cosimplicial relation families, exhaustively for n <= 6
    for n in range(2, 7):
        for j in range(n + 1):
            for i in range(j):
                assert compose(coface(n, j), coface(n - 1, i)) == compose(
                    coface(n, i), coface(n - 1, j - 1)
                )
    for n in range(6):
        for j in range(n + 1):
            for i in range(j + 1):
                assert compose(codegeneracy(n, i), codegeneracy(n + 1, j + 1)) == compose(
                    codegeneracy(n, j), codegeneracy(n + 1, i)
                )
    for n in range(6):
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = compose(codegeneracy(n, j), coface(n + 1, i))
                if i == j or i == j + 1:
                    assert lhs.is_identity
                elif i < j:
                    assert lhs == compose(coface(n, i), codegeneracy(n - 1, j - 1))
                else:
                    assert lhs == compose(coface(n, i - 1), codegeneracy(n - 1, j))


def test_simplex_alias():
    assert Simplex is MonotoneMap
    with pytest.raises(ShapeMismatch):
        simplex((1, 0), 2)
    with pytest.raises(ShapeMismatch):
        simplex((0, 3), 2)
