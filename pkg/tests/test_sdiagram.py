"""Diagrams of complexes over Delta(m, n): knitting, membership, mutation."""

import random

import pytest

from deltak.errors import NoPathFound, NotAFunctor, SchemaError
from deltak.qchain import ChainMapQ, betti, is_acyclic, single
from deltak.sdiagram import (
    CornerData,
    SDiagram,
    check_membership,
    corner_direct_sum,
    corner_from_json,
    corner_to_json,
    diagram_betti,
    diagram_direct_sum,
    diagrams_equal,
    interval_indicator_corner,
    knit_from_corner,
    knit_from_slice,
    mutate_data,
    random_corner,
    reindex,
    restrict_to_slice,
    sdiagram_from_json,
    sdiagram_to_json,
)
from deltak.simplex import codegeneracy, coface, compose, nondegenerate_simplices, simplex
from deltak.slices import MutationMove, Slice, convex_hull, initial_slice, mutation_orbit

Q = single()


def test_knit_cone_of_identity():
    C = CornerData(
        1, 2,
        {(0, 1): Q, (0, 2): Q},
        {((0, 1), (0, 2)): ChainMapQ.identity(Q)},
    )
    X = knit_from_corner(C)
    assert is_acyclic(X.object((1, 2)))
    assert check_membership(X).passes


def test_knit_zero_map():
    C = CornerData(1, 2, {(0, 1): Q, (0, 2): Q}, {})
    X = knit_from_corner(C)
    assert betti(X.object((1, 2))) == {0: 1, 1: 1}
    assert check_membership(X).passes


def test_knit_three_columns():
    # corner values all Q with maps (id, 0); the composite is forced to be 0
    C = CornerData(
        2, 3,
        {(0, 1, 2): Q, (0, 1, 3): Q, (0, 2, 3): Q},
        {((0, 1, 2), (0, 1, 3)): ChainMapQ.identity(Q)},
    )
    X = knit_from_corner(C)
    assert betti(X.object((1, 2, 3))) == {0: 1}
    assert check_membership(X).passes


def test_knit_restriction_and_membership():
    rng = random.Random(11)
    for m, n in [(1, 3), (1, 4), (2, 3), (2, 4)]:
        for _ in range(5):
            C = random_corner(m, n, rng)
            X = knit_from_corner(C)
            for v, cx in C.objects.items():
                assert X.object(v) == cx
            for (a, b), f in C.arrows.items():
                assert X.cover_arrow(a, b) == f
            rep = check_membership(X)
            assert rep.passes
            assert rep.euler_failures == [] and rep.ar_failures == []


def test_knit_rejects_noncommuting_corner():
    objs = {(0, 1, 2): Q, (0, 1, 3): Q, (0, 2, 3): Q}
    arrows = {
        ((0, 1, 2), (0, 1, 3)): ChainMapQ.identity(Q),
        ((0, 1, 3), (0, 2, 3)): ChainMapQ.identity(Q),
        # the other route (0,1,2) -> (0,2,2) -> (0,2,3) passes through a
        # degenerate vertex, so the composite must be acyclic-compatible;
        # an identity composite with no matching second route fails
    }
    C = CornerData(2, 3, objs, arrows)
    with pytest.raises(NotAFunctor) as exc:
        knit_from_corner(C)
    assert exc.value.square is not None


def test_degenerate_vertices_are_acyclic():
    rng = random.Random(5)
    X = knit_from_corner(random_corner(2, 3, rng))
    for s in (t for t in X.objects if simplex(t, 3).is_degenerate):
        assert is_acyclic(X.object(s))


def test_euler_characteristic_shadow():
    # alternating vertex Euler characteristics over every Euler cube vanish
    rng = random.Random(13)
    X = knit_from_corner(random_corner(2, 4, rng))

    def chi(cx):
        return sum((-1) ** k * d for k, d in cx.dims)

    for rho in nondegenerate_simplices(3, 4):
        total = 0
        for v in [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]:
            vertex = tuple(rho.values[i + v[i]] for i in range(3))
            total += (-1) ** sum(v) * chi(X.object(vertex))
        assert total == 0


def test_membership_detects_single_vertex_fault():
    rng = random.Random(7)
    X = knit_from_corner(random_corner(1, 3, rng))
    Z = SDiagram(1, 3, {(1, 2): Q}, {})
    B = diagram_direct_sum(X, Z)
    rep = check_membership(B)
    assert not rep.passes
    assert rep.euler_failures and rep.ar_failures
    # the two cube families flag failures together
    assert bool(rep.euler_failures) == bool(rep.ar_failures)


def test_membership_survives_noncommuting_diagram():
    # destroying arrows leaves non-commuting cubes; that is a failure
    # report, not an exception
    rng = random.Random(7)
    X = knit_from_corner(random_corner(1, 3, rng))
    objects = dict(X.objects)
    objects[(1, 2)] = single(2)
    arrows = {k: f for k, f in X.arrows.items() if (1, 2) not in k}
    rep = check_membership(SDiagram(1, 3, objects, arrows))
    assert not rep.passes
    assert bool(rep.euler_failures) == bool(rep.ar_failures)


def test_reindex_identity():
    rng = random.Random(2)
    X = knit_from_corner(random_corner(1, 3, rng))
    from deltak.simplex import MonotoneMap

    assert diagrams_equal(reindex(X, MonotoneMap.identity(3)), X)


def test_reindex_retractions():
    rng = random.Random(3)
    for m, n in [(1, 3), (2, 3), (2, 4)]:
        X = knit_from_corner(random_corner(m, n, rng))
        for i in range(n + 1):
            s_i = codegeneracy(n, i)
            lifted = reindex(X, s_i)
            for j in (i, i + 1):
                d_j = coface(n + 1, j)
                assert diagrams_equal(reindex(lifted, d_j), X)
                assert diagrams_equal(
                    reindex(X, compose(s_i, d_j)), reindex(lifted, d_j)
                )


def test_reindex_functoriality():
    rng = random.Random(4)
    X = knit_from_corner(random_corner(1, 4, rng))
    a = coface(4, 2)  # [3] -> [4]
    b = codegeneracy(3, 1)  # [4] -> [3]
    assert diagrams_equal(
        reindex(reindex(X, a), b), reindex(X, compose(a, b))
    )


def test_mutate_data_round_trip():
    rng = random.Random(6)
    for m, n in [(1, 3), (2, 4)]:
        orbit = mutation_orbit(m, n)
        X = knit_from_corner(random_corner(m, n, rng))
        for i, k, move in orbit.edges:
            S = orbit.nodes[i]
            sd = restrict_to_slice(X, S)
            td = mutate_data(sd, move)
            if move.direction == "forward":
                back = MutationMove(
                    simplex(tuple(v + 1 for v in move.pivot.values), n), "backward"
                )
            else:
                back = MutationMove(
                    simplex(tuple(v - 1 for v in move.pivot.values), n), "forward"
                )
            rd = mutate_data(td, back)
            assert rd.objects == sd.objects
            assert rd.arrows == sd.arrows


def test_mutate_data_value_is_quasi_correct():
    # the transported value matches the true diagram value up to Betti
    rng = random.Random(8)
    m, n = 2, 4
    orbit = mutation_orbit(m, n)
    X = knit_from_corner(random_corner(m, n, rng))
    for i, k, move in orbit.edges:
        if move.direction != "forward":
            continue
        S = orbit.nodes[i]
        sd = restrict_to_slice(X, S)
        td = mutate_data(sd, move)
        new = tuple(v + 1 for v in move.pivot.values)
        assert betti(td.object(new)) == betti(X.object(new))


def test_knit_from_slice_initial_is_knit_from_corner():
    rng = random.Random(9)
    C = random_corner(1, 3, rng)
    X = knit_from_corner(C)
    sd = restrict_to_slice(X, initial_slice(1, 3))
    Y = knit_from_slice(sd)
    assert diagrams_equal(X, Y)


def test_knit_from_slice_orbit():
    rng = random.Random(10)
    for m, n in [(1, 3), (2, 3)]:
        for S in mutation_orbit(m, n).nodes:
            X = knit_from_corner(random_corner(m, n, rng))
            sd = restrict_to_slice(X, S)
            Y = knit_from_slice(sd)
            assert check_membership(Y).passes
            for t in convex_hull(S):
                if t.is_injective:
                    assert betti(sd.object(t.values)) == betti(Y.object(t.values))


def test_knit_from_slice_unreachable():
    # a fabricated slice outside the orbit has no backward path
    members = frozenset(
        {simplex((0, 1), 3), simplex((0, 2), 3), simplex((1, 3), 3)}
    )
    bad = Slice(1, 3, members)
    sd = restrict_to_slice(
        knit_from_corner(random_corner(1, 3, random.Random(0))), bad
    )
    with pytest.raises(NoPathFound):
        knit_from_slice(sd)


def test_interval_indicator_validation():
    with pytest.raises(Exception):
        interval_indicator_corner(1, 3, (1, 2), (1, 3))  # lo must start at 0
    with pytest.raises(Exception):
        interval_indicator_corner(1, 3, (0, 1), (1, 2))  # contains degenerates
    C = interval_indicator_corner(2, 4, (0, 1, 3), (0, 2, 4))
    assert check_membership(knit_from_corner(C)).passes


def test_corner_direct_sum_dims():
    a = interval_indicator_corner(1, 3, (0, 1), (0, 3))
    b = interval_indicator_corner(1, 3, (0, 2), (1, 3), shift=1)
    C = corner_direct_sum([a, b])
    assert C.object((0, 2)).dim(0) == 1
    assert C.object((0, 2)).dim(1) == 1


def test_sdiagram_json_round_trip():
    rng = random.Random(12)
    X = knit_from_corner(random_corner(2, 3, rng))
    Y = sdiagram_from_json(sdiagram_to_json(X))
    assert diagrams_equal(X, Y)
    assert diagram_betti(X) == diagram_betti(Y)


def test_corner_json_round_trip():
    rng = random.Random(14)
    C = random_corner(1, 4, rng)
    D = corner_from_json(corner_to_json(C))
    assert D.objects == C.objects
    assert D.arrows == C.arrows


def test_json_schema_errors():
    with pytest.raises(SchemaError):
        sdiagram_from_json({"m": 1})
    with pytest.raises(SchemaError):
        corner_from_json({"m": "x", "n": 2, "objects": {}, "arrows": {}})
