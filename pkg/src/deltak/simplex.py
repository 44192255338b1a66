"""The simplex category: monotone maps, the posets Delta(m, n), and the two
cube families (Euler cubes and mesh cubes) attached to simplices.

Simplices are stored as dense value tuples; a monotone map [m] -> [n] is the
tuple (f(0), ..., f(m)).  Delta(m, n) is enumerated in lexicographic order,
which fixes the generator indexing used by the K_0 presentation matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import comb

from .errors import (
    DegenerateInput,
    DomainMismatch,
    IndexOutOfRange,
    OutOfRange,
    ShapeMismatch,
    ZeroSimplexHasNoFaces,
)


@dataclass(frozen=True)
class MonotoneMap:
    """A monotone function [domain] -> [codomain], stored by its value tuple."""

    domain: int
    codomain: int
    values: tuple

    def __post_init__(self):
        if self.domain < 0 or self.codomain < 0:
            raise ShapeMismatch("negative simplex dimension")
        if len(self.values) != self.domain + 1:
            raise ShapeMismatch(
                f"expected {self.domain + 1} values, got {len(self.values)}"
            )
        prev = 0
        for v in self.values:
            if v < prev:
                raise ShapeMismatch(f"values {self.values} not monotone")
            prev = v
        if self.values and self.values[-1] > self.codomain:
            raise ShapeMismatch(
                f"value {self.values[-1]} exceeds codomain [{self.codomain}]"
            )

    def __call__(self, i):
        return self.values[i]

    @property
    def is_injective(self):
        return all(a < b for a, b in zip(self.values, self.values[1:]))

    @property
    def is_surjective(self):
        return set(self.values) == set(range(self.codomain + 1))

    @property
    def is_degenerate(self):
        return not self.is_injective

    @property
    def is_identity(self):
        return self.domain == self.codomain and self.values == tuple(
            range(self.domain + 1)
        )

    @staticmethod
    def identity(n):
        return MonotoneMap(n, n, tuple(range(n + 1)))

    def __repr__(self):
        return f"({','.join(map(str, self.values))}):[{self.domain}]->[{self.codomain}]"


# An m-simplex in Delta^n is exactly a monotone map [m] -> [n].
Simplex = MonotoneMap


def simplex(values, n):
    """Build the simplex with the given value tuple inside Delta^n."""
    values = tuple(values)
    return Simplex(len(values) - 1, n, values)


def compose(g, f):
    """The composite g o f in the simplex category."""
    if f.codomain != g.domain:
        raise DomainMismatch(f"cannot compose {g!r} after {f!r}")
    return MonotoneMap(f.domain, g.codomain, tuple(g.values[v] for v in f.values))


def generator(kind, n, i):
    """The elementary coface delta_i: [n-1] -> [n] or codegeneracy
    sigma_i: [n+1] -> [n]."""
    if kind == "coface":
        if n < 1 or not 0 <= i <= n:
            raise IndexOutOfRange(f"coface index {i} out of range for [{n}]")
        values = tuple(v for v in range(n + 1) if v != i)
        return MonotoneMap(n - 1, n, values)
    if kind == "codegeneracy":
        if not 0 <= i <= n:
            raise IndexOutOfRange(f"codegeneracy index {i} out of range for [{n}]")
        values = tuple(range(i + 1)) + tuple(range(i, n + 1))
        return MonotoneMap(n + 1, n, values)
    raise IndexOutOfRange(f"unknown generator kind {kind!r}")


def coface(n, i):
    return generator("coface", n, i)


def codegeneracy(n, i):
    return generator("codegeneracy", n, i)


def epi_mono_factor(f):
    """The unique factorization f = mono o epi with epi surjective and mono
    injective."""
    image = sorted(set(f.values))
    index = {v: k for k, v in enumerate(image)}
    epi = MonotoneMap(f.domain, len(image) - 1, tuple(index[v] for v in f.values))
    mono = MonotoneMap(len(image) - 1, f.codomain, tuple(image))
    return epi, mono


def faces(sigma):
    """All faces d_i(sigma), i = 0..m, obtained by deleting coordinate i."""
    m = sigma.domain
    if m == 0:
        raise ZeroSimplexHasNoFaces(repr(sigma))
    return [
        Simplex(m - 1, sigma.codomain, sigma.values[:i] + sigma.values[i + 1 :])
        for i in range(m + 1)
    ]


def face(sigma, i):
    m = sigma.domain
    if m == 0:
        raise ZeroSimplexHasNoFaces(repr(sigma))
    if not 0 <= i <= m:
        raise IndexOutOfRange(f"face index {i} for {sigma!r}")
    return Simplex(m - 1, sigma.codomain, sigma.values[:i] + sigma.values[i + 1 :])


@lru_cache(maxsize=None)
def enumerate_simplices(m, n):
    """All of Delta(m, n) in lexicographic order; length C(n+m+1, m+1)."""
    if m < 0 or n < 0:
        raise ShapeMismatch("m and n must be non-negative")
    sims = tuple(
        Simplex(m, n, values)
        for values in combinations_with_replacement(range(n + 1), m + 1)
    )
    assert len(sims) == comb(n + m + 1, m + 1)
    return sims


@lru_cache(maxsize=None)
def nondegenerate_simplices(m, n):
    return tuple(s for s in enumerate_simplices(m, n) if s.is_injective)


def poset_leq(sigma, tau):
    """The coordinatewise partial order on Delta(m, n)."""
    if (sigma.domain, sigma.codomain) != (tau.domain, tau.codomain):
        raise ShapeMismatch(f"{sigma!r} and {tau!r} live in different posets")
    return all(a <= b for a, b in zip(sigma.values, tau.values))


def shift(sigma, v):
    """sigma + v for a 0/1 vector v, staying inside Delta^n."""
    values = tuple(a + b for a, b in zip(sigma.values, v))
    return Simplex(sigma.domain, sigma.codomain, values)


@dataclass(frozen=True)
class Cube:
    """A cube in the poset Delta(m, n): a monotone assignment {0,1}^dim -> simplices."""

    dim: int
    vertices: tuple  # tuple of (v, Simplex) pairs, v running lexicographically

    def __post_init__(self):
        table = dict(self.vertices)
        for v, w in product(table, repeat=2):
            if all(a <= b for a, b in zip(v, w)):
                if not poset_leq(table[v], table[w]):
                    raise ShapeMismatch(
                        f"cube vertex map not monotone at {v} -> {w}"
                    )

    def vertex(self, v):
        return dict(self.vertices)[tuple(v)]

    def as_dict(self):
        return dict(self.vertices)


def cube_corners(dim):
    return list(product((0, 1), repeat=dim))


def euler_cube(rho):
    """The (m+1)-cube with vertices q(v)_i = rho_{i + v_i} attached to a
    nondegenerate (m+1)-simplex rho.

    Vertex (1,...,1) is d_0(rho); the vertex with k trailing ones is
    d_{m+1-k}(rho); every v with a descent gives a degenerate vertex.
    """
    if rho.is_degenerate:
        raise DegenerateInput(f"{rho!r} is degenerate")
    m = rho.domain - 1
    if m < 0:
        raise ShapeMismatch("euler cube needs a simplex of dimension >= 1")
    verts = []
    for v in cube_corners(m + 1):
        values = tuple(rho.values[i + v[i]] for i in range(m + 1))
        verts.append((v, Simplex(m, rho.codomain, values)))
    return Cube(m + 1, tuple(verts))


def ar_cube(sigma):
    """The mesh cube with vertices sigma + v, v in {0,1}^(m+1), attached to a
    nondegenerate m-simplex with sigma_m < n."""
    if sigma.is_degenerate:
        raise DegenerateInput(f"{sigma!r} is degenerate")
    if sigma.values[-1] >= sigma.codomain:
        raise OutOfRange(f"{sigma!r} has no room to shift: sigma_m = n")
    m = sigma.domain
    verts = [(v, shift(sigma, v)) for v in cube_corners(m + 1)]
    return Cube(m + 1, tuple(verts))


def cover_relations(m, n):
    """Cover pairs (sigma, sigma + e_i) of the poset Delta(m, n)."""
    covers = []
    for sigma in enumerate_simplices(m, n):
        for i in range(m + 1):
            bumped = list(sigma.values)
            bumped[i] += 1
            if bumped[i] > n:
                continue
            if i + 1 <= m and bumped[i] > sigma.values[i + 1]:
                continue
            covers.append((sigma, Simplex(m, n, tuple(bumped))))
    return covers


def hasse_dot(m, n, highlight_nondegenerate=False):
    """DOT source for the Hasse diagram of Delta(m, n)."""
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for s in enumerate_simplices(m, n):
        name = "_".join(map(str, s.values))
        label = ",".join(map(str, s.values))
        attrs = [f'label="({label})"']
        if highlight_nondegenerate and s.is_injective:
            attrs.append("style=filled")
            attrs.append("fillcolor=lightblue")
        lines.append(f'  s{name} [{", ".join(attrs)}];')
    for a, b in cover_relations(m, n):
        na = "_".join(map(str, a.values))
        nb = "_".join(map(str, b.values))
        lines.append(f"  s{na} -> s{nb};")
    lines.append("}")
    return "\n".join(lines) + "\n"
