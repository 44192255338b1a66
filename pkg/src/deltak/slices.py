"""Slices in the poset Delta(m, n) and their mutation.

A slice is a set of C(n, m) nondegenerate m-simplices; the initial one
consists of the simplices starting at 0.  Mutation trades a pivot sigma for
sigma + (1,...,1) (or back) when every intermediate shift sigma + v is
degenerate or already present.  A slice here means, operationally, a member
of the mutation orbit of the initial slice.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import comb

from .errors import CapExceeded, NotInSlice, NotMutable, ShapeMismatch
from .simplex import (
    Cube,
    Simplex,
    ar_cube,
    cube_corners,
    enumerate_simplices,
    nondegenerate_simplices,
    poset_leq,
    shift,
)

DEFAULT_ORBIT_CAP = 10000


@dataclass(frozen=True)
class Slice:
    m: int
    n: int
    members: frozenset  # nondegenerate m-simplices

    def __post_init__(self):
        for s in self.members:
            if (s.domain, s.codomain) != (self.m, self.n):
                raise ShapeMismatch(f"{s!r} does not live in Delta({self.m},{self.n})")
            if s.is_degenerate:
                raise ShapeMismatch(f"slice member {s!r} is degenerate")

    def sorted_members(self):
        return sorted(self.members, key=lambda s: s.values)

    def __contains__(self, s):
        return s in self.members

    def key(self):
        """Canonical hashable form, used as orbit node identity."""
        return tuple(s.values for s in self.sorted_members())


@dataclass(frozen=True)
class MutationMove:
    pivot: Simplex
    direction: str  # "forward" or "backward"

    def __post_init__(self):
        if self.direction not in ("forward", "backward"):
            raise ShapeMismatch(f"unknown direction {self.direction!r}")


def initial_slice(m, n):
    """The nondegenerate simplices with first coordinate 0; size C(n, m)."""
    if not 1 <= m <= n:
        raise ShapeMismatch("need n >= m >= 1")
    members = frozenset(
        s for s in nondegenerate_simplices(m, n) if s.values[0] == 0
    )
    assert len(members) == comb(n, m)
    return Slice(m, n, members)


def _admissibility_failure(S, sigma):
    """None if every strict intermediate shift of sigma is degenerate or in
    S; otherwise the first offending simplex."""
    m = S.m
    for v in cube_corners(m + 1):
        if not 0 < sum(v) < m + 1:
            continue
        t = shift(sigma, v)
        if t.is_degenerate or t in S.members:
            continue
        return t
    return None


def mutate(S, move):
    """The mutated slice; raises NotInSlice / NotMutable with the reason."""
    sigma = move.pivot
    if sigma not in S.members:
        raise NotInSlice(f"pivot {sigma!r} not in slice")
    ones = (1,) * (S.m + 1)
    if move.direction == "forward":
        if sigma.values[-1] >= S.n:
            raise NotMutable(f"pivot {sigma!r} has sigma_m = n, cannot shift up")
        base = sigma
        new = shift(sigma, ones)
    else:
        if sigma.values[0] <= 0:
            raise NotMutable(f"pivot {sigma!r} has sigma_0 = 0, cannot shift down")
        base = Simplex(S.m, S.n, tuple(v - 1 for v in sigma.values))
        new = base
    bad = _admissibility_failure(S, base)
    if bad is not None:
        raise NotMutable(
            f"intermediate simplex {bad!r} of the cube at {base!r} "
            "is neither degenerate nor in the slice"
        )
    return Slice(S.m, S.n, (S.members - {sigma}) | {new})


def admissible_moves(S):
    """All admissible moves from S, pivots in lexicographic order."""
    moves = []
    for sigma in S.sorted_members():
        for direction in ("forward", "backward"):
            move = MutationMove(sigma, direction)
            try:
                mutate(S, move)
            except (NotMutable, NotInSlice):
                continue
            moves.append(move)
    return moves


@dataclass
class OrbitGraph:
    m: int
    n: int
    nodes: list  # Slice, in BFS discovery order
    edges: list  # (source index, target index, MutationMove)
    connected: bool
    complete: bool


def mutation_orbit(m, n, cap=DEFAULT_ORBIT_CAP):
    """Breadth-first closure of the initial slice under mutation.

    Deterministic: the frontier is a queue and moves are tried in pivot
    order, so node indices are reproducible.  Raises CapExceeded with the
    partial graph attached once more than `cap` nodes appear.
    """
    start = initial_slice(m, n)
    index = {start.key(): 0}
    nodes = [start]
    edges = []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        S = nodes[i]
        for move in admissible_moves(S):
            T = mutate(S, move)
            k = index.get(T.key())
            if k is None:
                if len(nodes) >= cap:
                    graph = OrbitGraph(m, n, nodes, edges, True, False)
                    raise CapExceeded(
                        f"orbit exploration hit the cap of {cap} nodes",
                        partial=graph,
                    )
                k = len(nodes)
                index[T.key()] = k
                nodes.append(T)
                queue.append(k)
            edges.append((i, k, move))
    return OrbitGraph(m, n, nodes, edges, True, True)


def convex_hull(members, m=None, n=None):
    """All tau with s <= tau <= s' for some pair in the set, degenerate tau
    included.  Accepts a Slice or a plain collection of simplices."""
    if isinstance(members, Slice):
        m, n, members = members.m, members.n, members.members
    members = list(members)
    if not members:
        return set()
    if m is None:
        m, n = members[0].domain, members[0].codomain
    hull = set()
    for tau in enumerate_simplices(m, n):
        if any(poset_leq(s, tau) for s in members) and any(
            poset_leq(tau, s) for s in members
        ):
            hull.add(tau)
    return hull


def diamond_poset(S, move):
    """The hull of S together with its mutation, plus the distinguished
    (m+1)-cube across which the exchange happens."""
    T = mutate(S, move)
    poset = convex_hull(S.members | T.members, S.m, S.n)
    if move.direction == "forward":
        cube = ar_cube(move.pivot)
    else:
        base = Simplex(S.m, S.n, tuple(v - 1 for v in move.pivot.values))
        cube = ar_cube(base)
    return poset, cube


def orbit_dot(graph):
    """DOT source for a mutation orbit graph."""
    lines = ["digraph orbit {"]
    for i, S in enumerate(graph.nodes):
        label = "\\n".join(
            "(" + ",".join(map(str, s.values)) + ")" for s in S.sorted_members()
        )
        lines.append(f'  n{i} [label="{label}"];')
    seen = set()
    for i, k, move in graph.edges:
        if move.direction == "backward":
            continue
        pivot = ",".join(map(str, move.pivot.values))
        key = (i, k, pivot)
        if key in seen:
            continue
        seen.add(key)
        lines.append(f'  n{i} -> n{k} [label="({pivot})"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def brute_force_slices_m1(n):
    """Independent enumeration of m = 1 slices from the intrinsic section
    axioms of the translation quiver on the arcs (i, j), 0 <= i < j <= n:
    exactly one arc per diagonal j - i = d (d = 1..n), and consecutive
    diagonal members adjacent via an irreducible arrow, so the member on
    diagonal d is obtained from the member (i, j) on diagonal d + 1 as
    (i + 1, j) or (i, j - 1).  The diagonal d = n is forced to (0, n); each
    of the remaining n - 1 steps offers two choices, hence 2^(n-1) sections.

    Used only as a cross-check oracle for the mutation orbit.
    """
    out = set()

    def walk(i, j, acc):
        if j - i == 1:
            out.add(frozenset(acc))
            return
        for nxt in ((i + 1, j), (i, j - 1)):
            walk(nxt[0], nxt[1], acc + [Simplex(1, n, nxt)])

    walk(0, n, [Simplex(1, n, (0, n))])
    return out
