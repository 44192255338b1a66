"""The acceptance suite: ten self-contained checks covering the headline
properties of the package, shared between the test suite and `deltak verify`.

Each criterion function returns (passed, detail) where detail is a short
human-readable string.  The runner adds wall-clock timing and enforces the
runtime budgets that a few criteria carry.
"""

from __future__ import annotations

import random
import time
from math import comb

from .abelian import free_ab, zmod
from .errors import NotMutable
from .intmat import IntMatrix, _hnf_rows, det_unimodular, smith_normal_form
from .k0 import canonical_iso_to_gamma, k0_invariants, lattices_agree
from .qchain import betti
from .sdiagram import (
    check_membership,
    diagrams_equal,
    knit_from_corner,
    knit_from_slice,
    random_corner,
    reindex,
    restrict_to_slice,
)
from .simplex import Simplex, codegeneracy, coface, compose
from .simplicial import compare_via, dold_kan_unit_maps, gamma, homotopy_group, na1
from .slices import (
    MutationMove,
    brute_force_slices_m1,
    convex_hull,
    initial_slice,
    mutate,
    mutation_orbit,
)


def criterion_1():
    """Eilenberg-Mac Lane property: pi_n(gamma(A, m)) is A at n = m and
    trivial at every other certified degree."""
    bad = []
    for A, label in [(free_ab(1), "Z"), (zmod(2), "Z/2"), (zmod(4), "Z/4"), (zmod(6), "Z/6")]:
        for m in (1, 2, 3):
            L = m + 3
            X = gamma(A, m, L)
            for n in range(L):
                pi = homotopy_group(X, n)
                ok = pi.same_group(A) if n == m else pi.is_trivial
                if not ok:
                    bad.append((label, m, n, str(pi)))
    return not bad, f"{len(bad)} wrong homotopy groups" if bad else "12 (A, m) pairs"


def criterion_2(n_max=8):
    """K0 ranks: free rank C(n, m), no torsion, for 1 <= m <= 3, m <= n <= n_max."""
    bad = []
    for m in (1, 2, 3):
        for n in range(m, n_max + 1):
            inv = k0_invariants(m, n)
            if inv != (comb(n, m), []):
                bad.append((m, n, inv))
    return not bad, f"failures {bad}" if bad else f"all (m, n) with n <= {n_max}"


def criterion_3(n_max=7):
    """Mesh relations generate the Euler relations: identical row lattices."""
    bad = [
        (m, n)
        for m in (1, 2, 3)
        for n in range(m, n_max + 1)
        if not lattices_agree(m, n)
    ]
    return not bad, f"disagreements {bad}" if bad else f"all (m, n) with n <= {n_max}"


def criterion_4():
    """The triangular-array model of N(A[1]) is isomorphic to gamma(A, 1)
    as a simplicial abelian group, via the canonical comparison maps."""
    bad = []
    for A, label in [(free_ab(1), "Z"), (zmod(4), "Z/4")]:
        N = na1(A, 5)
        maps = dold_kan_unit_maps(N, A, 1)
        if not compare_via(gamma(A, 1, 5), N, maps):
            bad.append(label)
    return not bad, f"failed for {bad}" if bad else "Z and Z/4 at truncation 5"


def criterion_5():
    """Hom(K0 quotient, A) is isomorphic to gamma(A, m) levelwise and
    simplicially (the comparison is certified inside the constructor)."""
    bad = []
    for m, L, A, label in [
        (1, 4, zmod(2), "(1,4,Z/2)"),
        (2, 4, zmod(2), "(2,4,Z/2)"),
        (2, 5, free_ab(1), "(2,5,Z)"),
    ]:
        try:
            canonical_iso_to_gamma(A, m, L)
        except Exception as exc:  # noqa: BLE001 - any failure falsifies the claim
            bad.append((label, repr(exc)))
    return not bad, f"failures {bad}" if bad else "three (m, L, A) triples"


def criterion_6(trials=50, seed=20260824):
    """Knitting: for random corner data the knitted diagram restricts back
    to the input exactly and certifies membership with no failed cubes."""
    rng = random.Random(seed)
    bad = []
    for m, n in [(1, 3), (1, 4), (2, 3), (2, 4)]:
        for t in range(trials):
            C = random_corner(m, n, rng)
            X = knit_from_corner(C)
            for v, cx in C.objects.items():
                if X.object(v) != cx:
                    bad.append((m, n, t, "object", v))
            for (a, b), f in C.arrows.items():
                if X.cover_arrow(a, b) != f:
                    bad.append((m, n, t, "arrow", a, b))
            rep = check_membership(X)
            if not rep.passes:
                bad.append((m, n, t, "membership"))
    return not bad, (
        f"{len(bad)} failures, first {bad[0]}" if bad else f"{trials} trials per (m, n)"
    )


def criterion_7(seed=7, cap=10000):
    """Slice equivalence shadow: data on any slice in the orbit knits to a
    member diagram whose Betti table agrees with the data on the hull."""
    rng = random.Random(seed)
    bad = []
    for m, n in [(1, 3), (2, 3), (2, 4)]:
        orbit = mutation_orbit(m, n, cap)
        for k, S in enumerate(orbit.nodes):
            source = knit_from_corner(random_corner(m, n, rng))
            sd = restrict_to_slice(source, S)
            Y = knit_from_slice(sd, cap)
            if not check_membership(Y).passes:
                bad.append((m, n, k, "membership"))
                continue
            for t in convex_hull(S):
                if t.is_degenerate:
                    continue
                if betti(sd.object(t.values)) != betti(Y.object(t.values)):
                    bad.append((m, n, k, "betti", t.values))
    return not bad, (
        f"{len(bad)} failures, first {bad[0]}" if bad else "every slice in three orbits"
    )


def criterion_8():
    """Mutation combinatorics: orbit sizes 2^(n-1) at m = 1 against the
    independent section enumerator, involutivity of every orbit edge, and
    the standard first mutation of the (2, 4) initial slice."""
    problems = []
    for n in range(1, 6):
        orbit = mutation_orbit(1, n)
        if len(orbit.nodes) != 2 ** (n - 1):
            problems.append(f"orbit size at (1,{n})")
        expected = brute_force_slices_m1(n)
        if {S.members for S in orbit.nodes} != expected:
            problems.append(f"orbit membership at (1,{n})")
    for m, n in [(1, 4), (1, 5), (2, 3), (2, 4)]:
        orbit = mutation_orbit(m, n)
        for i, k, move in orbit.edges:
            S, T = orbit.nodes[i], orbit.nodes[k]
            if move.direction == "forward":
                back = MutationMove(
                    Simplex(m, n, tuple(v + 1 for v in move.pivot.values)), "backward"
                )
            else:
                back = MutationMove(
                    Simplex(m, n, tuple(v - 1 for v in move.pivot.values)), "forward"
                )
            try:
                if mutate(T, back).members != S.members:
                    problems.append(f"involution at ({m},{n}) edge {i}->{k}")
            except NotMutable:
                problems.append(f"inverse inadmissible at ({m},{n}) edge {i}->{k}")
    S = initial_slice(2, 4)
    T = mutate(S, MutationMove(Simplex(2, 4, (0, 1, 2)), "forward"))
    want = (S.members - {Simplex(2, 4, (0, 1, 2))}) | {Simplex(2, 4, (1, 2, 3))}
    if T.members != want:
        problems.append("(2,4) pivot (0,1,2) exchange")
    return not problems, "; ".join(problems) if problems else "orbits, involutions, pivot move"


def criterion_9(seed=9):
    """Simplicial identities for reindexing: strict functoriality in the
    indexing map and the exact retraction identities d_i s_i = d_{i+1} s_i = id."""
    rng = random.Random(seed)
    bad = []
    for m, n in [(1, 3), (1, 4), (2, 3), (2, 4)]:
        X = knit_from_corner(random_corner(m, n, rng))
        for i in range(n + 1):
            s_i = codegeneracy(n, i)  # [n+1] -> [n]
            lifted = reindex(X, s_i)
            for j in (i, i + 1):
                d_j = coface(n + 1, j)  # [n] -> [n+1]
                if not diagrams_equal(reindex(lifted, d_j), X):
                    bad.append((m, n, "retraction", i, j))
                if not diagrams_equal(
                    reindex(X, compose(s_i, d_j)), reindex(lifted, d_j)
                ):
                    bad.append((m, n, "functoriality", i, j))
    return not bad, f"violations {bad}" if bad else "retractions exact on four (m, n)"


def _smith_valid(M):
    dec = smith_normal_form(M)
    if dec.U @ M @ dec.V != dec.S:
        return False
    if abs(det_unimodular(dec.U)) != 1 or abs(det_unimodular(dec.V)) != 1:
        return False
    diag = []
    for i in range(dec.S.rows):
        for j in range(dec.S.cols):
            v = dec.S.data[i][j]
            if i == j:
                diag.append(v)
            elif v:
                return False
    if any(v < 0 for v in diag):
        return False
    nz = [v for v in diag if v]
    if diag[: len(nz)] != nz:
        return False
    return all(a == 0 or b % a == 0 for a, b in zip(nz, nz[1:]))


def criterion_10(count=1000, max_size=40, seed=10):
    """Exact normal forms: U M V = S with unimodular U, V and a divisibility
    chain, plus idempotence of the Hermite form, on random matrices."""
    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        r = rng.randint(1, max_size)
        c = rng.randint(1, max_size)
        M = IntMatrix.from_rows(
            [[rng.randint(-50, 50) for _ in range(c)] for _ in range(r)], c
        )
        try:
            if not _smith_valid(M):
                bad += 1
                continue
            H, _ = _hnf_rows(M.data, c)
            H2, _ = _hnf_rows(H, c)
            if H != H2:
                bad += 1
        except Exception:  # noqa: BLE001 - counted, not raised
            bad += 1
    return bad == 0, f"{bad} failures out of {count}" if bad else f"{count} matrices"


CRITERIA = [
    ("1", "Eilenberg-Mac Lane homotopy groups", criterion_1, 10.0),
    ("2", "K0 free ranks C(n, m)", criterion_2, 60.0),
    ("3", "mesh relations generate Euler relations", criterion_3, None),
    ("4", "array model matches Dold-Kan", criterion_4, None),
    ("5", "Hom(K0, A) matches gamma(A, m)", criterion_5, None),
    ("6", "knitting restricts exactly and certifies", criterion_6, 120.0),
    ("7", "slice data knits to a member diagram", criterion_7, None),
    ("8", "mutation orbits and involutivity", criterion_8, None),
    ("9", "simplicial identities for reindexing", criterion_9, None),
    ("10", "integer normal-form property suite", criterion_10, 30.0),
]


def run_criterion(label, fn, budget, **kwargs):
    start = time.perf_counter()
    passed, detail = fn(**kwargs)
    elapsed = time.perf_counter() - start
    if budget is not None and elapsed > budget:
        passed = False
        detail += f"; exceeded {budget:.0f} s budget"
    return {
        "criterion": label,
        "passed": passed,
        "detail": detail,
        "seconds": round(elapsed, 2),
    }


def run_all(profile="full"):
    """Run every criterion; the quick profile shrinks the heavy sweeps."""
    quick_kwargs = {
        "2": {"n_max": 6},
        "6": {"trials": 10},
        "10": {"count": 200},
    }
    results = []
    for label, name, fn, budget in CRITERIA:
        kwargs = quick_kwargs.get(label, {}) if profile == "quick" else {}
        res = run_criterion(label, fn, budget, **kwargs)
        res["name"] = name
        results.append(res)
    return results
