"""Rational chain complexes: cones, totalizations, biCartesian squares."""

import pytest

from deltak.errors import ShapeMismatch, SignError
from deltak.intmat import QMatrix
from deltak.qchain import (
    ChainMapQ,
    QComplex,
    ZERO_COMPLEX,
    betti,
    cone,
    is_acyclic,
    is_bicartesian,
    single,
    totalize,
)

Q = single()  # one copy of the rationals in degree 0


def test_complex_validation():
    # d o d = 0 is enforced
    with pytest.raises(ShapeMismatch):
        QComplex.make(
            {0: 1, 1: 1, 2: 1},
            {1: QMatrix.from_rows([[1]]), 2: QMatrix.from_rows([[1]])},
        )
    two_step = QComplex.make(
        {0: 1, 1: 1}, {1: QMatrix.from_rows([[1]])}
    )
    assert is_acyclic(two_step)


def test_chain_map_validation():
    X = QComplex.make({0: 1, 1: 1}, {1: QMatrix.from_rows([[1]])})
    ChainMapQ.make(X, X, {0: QMatrix.from_rows([[1]]), 1: QMatrix.from_rows([[1]])})
    with pytest.raises(ShapeMismatch):
        ChainMapQ.make(
            X, X, {0: QMatrix.from_rows([[1]]), 1: QMatrix.from_rows([[2]])}
        )


def test_cone_examples():
    assert is_acyclic(cone(ChainMapQ.identity(Q)))
    c = cone(ChainMapQ.zero(Q, Q))
    assert betti(c) == {0: 1, 1: 1}
    f = ChainMapQ.zero(ZERO_COMPLEX, Q)
    assert cone(f) == Q


def test_betti():
    assert betti(Q) == {0: 1}
    assert betti(ZERO_COMPLEX) == {}
    shifted = single(2, 3)
    assert betti(shifted) == {3: 2}


def test_totalize_zero_cube():
    objs = {v: ZERO_COMPLEX for v in [(0, 0), (0, 1), (1, 0), (1, 1)]}
    edges = {}
    for v in [(0, 0), (0, 1), (1, 0)]:
        for i in range(2):
            if v[i] == 0:
                w = v[:i] + (1,) + v[i + 1 :]
                edges[(v, i)] = ChainMapQ.zero(objs[v], objs[w])
    assert totalize(objs, edges, 2).total.is_zero_complex


def _square(x00, x01, x10, x11, maps=None):
    objs = {(0, 0): x00, (0, 1): x01, (1, 0): x10, (1, 1): x11}
    edges = {}
    for v in [(0, 0), (0, 1), (1, 0)]:
        for i in range(2):
            if v[i] == 0:
                w = v[:i] + (1,) + v[i + 1 :]
                f = None if maps is None else maps.get((v, w))
                edges[(v, i)] = (
                    f if f is not None else ChainMapQ.zero(objs[v], objs[w])
                )
    return objs, edges


def test_totalize_identity_square_acyclic():
    objs, edges = _square(
        Q, Q, ZERO_COMPLEX, ZERO_COMPLEX,
        {((0, 0), (0, 1)): ChainMapQ.identity(Q)},
    )
    assert is_acyclic(totalize(objs, edges, 2).total)
    assert is_bicartesian(objs, edges, 2)


def test_totalize_lone_corner_not_acyclic():
    objs, edges = _square(Q, ZERO_COMPLEX, ZERO_COMPLEX, ZERO_COMPLEX)
    t = totalize(objs, edges, 2).total
    assert betti(t) == {2: 1}
    assert not is_bicartesian(objs, edges, 2)


def test_exact_sequence_cube_bicartesian():
    # 0 -> Q -> Q^2 -> Q -> 0 along one axis of a 3-cube
    Q2 = single(2)
    inc = ChainMapQ.make(Q, Q2, {0: QMatrix.from_rows([[1], [1]])})
    quo = ChainMapQ.make(Q2, Q, {0: QMatrix.from_rows([[1, -1]])})
    objs = {}
    edges = {}
    for v in [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]:
        objs[v] = ZERO_COMPLEX
    objs[(1, 0, 0)] = Q
    objs[(1, 1, 0)] = Q2
    objs[(1, 1, 1)] = Q
    for v in objs:
        for i in range(3):
            if v[i] == 0:
                w = v[:i] + (1,) + v[i + 1 :]
                if (v, w) == ((1, 0, 0), (1, 1, 0)):
                    edges[(v, i)] = inc
                elif (v, w) == ((1, 1, 0), (1, 1, 1)):
                    edges[(v, i)] = quo
                else:
                    edges[(v, i)] = ChainMapQ.zero(objs[v], objs[w])
    assert is_bicartesian(objs, edges, 3)


def test_sign_error_on_noncommuting_square():
    # both routes nonzero but different: id versus -id around the square
    maps = {
        ((0, 0), (0, 1)): ChainMapQ.identity(Q),
        ((0, 0), (1, 0)): ChainMapQ.identity(Q),
        ((0, 1), (1, 1)): ChainMapQ.identity(Q),
        ((1, 0), (1, 1)): ChainMapQ.identity(Q).negate(),
    }
    objs, edges = _square(Q, Q, Q, Q, maps)
    with pytest.raises(SignError):
        totalize(objs, edges, 2)


def test_chain_map_algebra():
    f = ChainMapQ.identity(Q)
    assert f.compose(f) == f
    assert f.add(f.negate()).is_zero()
