"""Truncated simplicial abelian groups: the Moore complex and homotopy
groups, the Dold-Kan construction of Eilenberg-Mac Lane objects, and the
explicit triangular-array model of the 1-dimensional case.

A truncated object stores levels 0..L with all face maps (levels 1..L) and
all degeneracy maps (levels 0..L-1).  Homotopy groups are certified only for
n <= L - 1, since homology at n needs level n + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .abelian import (
    ChainCx,
    FgAb,
    GroupHom,
    homology,
    kron_with_identity,
    repeat_group,
)
from .errors import (
    IdentityViolation,
    ShapeMismatch,
    TruncationTooShallow,
)
from .simplex import MonotoneMap, coface, codegeneracy, compose


@dataclass
class SimplicialAb:
    """A simplicial abelian group truncated at level L."""

    truncation: int
    levels: list  # FgAb per level 0..L
    face_maps: dict  # (n, i) -> GroupHom: level n -> level n-1, 1 <= n <= L
    degeneracy_maps: dict  # (n, i) -> GroupHom: level n -> level n+1, 0 <= n < L

    def face(self, n, i):
        return self.face_maps[(n, i)]

    def degeneracy(self, n, i):
        return self.degeneracy_maps[(n, i)]

    def validate_shapes(self):
        L = self.truncation
        if len(self.levels) != L + 1:
            raise ShapeMismatch("level list does not match truncation")
        for n in range(1, L + 1):
            for i in range(n + 1):
                d = self.face_maps[(n, i)]
                if d.source != self.levels[n] or d.target != self.levels[n - 1]:
                    raise ShapeMismatch(f"face ({n},{i}) has wrong endpoints")
        for n in range(L):
            for i in range(n + 1):
                s = self.degeneracy_maps[(n, i)]
                if s.source != self.levels[n] or s.target != self.levels[n + 1]:
                    raise ShapeMismatch(f"degeneracy ({n},{i}) has wrong endpoints")

    def structure_map(self, alpha):
        """The map X(alpha): level alpha.codomain -> level alpha.domain for an
        arbitrary monotone alpha, via the generator factorization."""
        a, b = alpha.domain, alpha.codomain
        if b > self.truncation or a > self.truncation:
            raise TruncationTooShallow(f"{alpha!r} leaves the truncation")
        if alpha.is_identity:
            return GroupHom.identity(self.levels[a])
        if not alpha.is_surjective:
            j = min(set(range(b + 1)) - set(alpha.values))
            rest = MonotoneMap(
                a, b - 1, tuple(v - 1 if v > j else v for v in alpha.values)
            )
            return self.structure_map(rest).compose(self.face(b, j))
        # surjective, not injective: peel the first repeat
        i = next(k for k in range(a) if alpha.values[k] == alpha.values[k + 1])
        rest = MonotoneMap(a - 1, b, alpha.values[:i] + alpha.values[i + 1 :])
        return self.degeneracy(a - 1, i).compose(self.structure_map(rest))


def check_simplicial_identities(X):
    """All violations of the three identity families within the truncation,
    as (identity, n, i, j) tuples."""
    L = X.truncation
    bad = []
    for n in range(2, L + 1):
        for j in range(n + 1):
            for i in range(j):
                lhs = X.face(n - 1, i).compose(X.face(n, j))
                rhs = X.face(n - 1, j - 1).compose(X.face(n, i))
                if lhs != rhs:
                    bad.append(("dd", n, i, j))
    for n in range(L - 1):
        for j in range(n + 1):
            for i in range(j + 1, n + 2):
                lhs = X.degeneracy(n + 1, i).compose(X.degeneracy(n, j))
                rhs = X.degeneracy(n + 1, j).compose(X.degeneracy(n, i - 1))
                if lhs != rhs:
                    bad.append(("ss", n, i, j))
    for n in range(L):
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = X.face(n + 1, i).compose(X.degeneracy(n, j))
                if i == j or i == j + 1:
                    rhs = GroupHom.identity(X.levels[n])
                elif i < j:
                    rhs = X.degeneracy(n - 1, j - 1).compose(X.face(n, i))
                else:
                    rhs = X.degeneracy(n - 1, j).compose(X.face(n, i - 1))
                if lhs != rhs:
                    bad.append(("ds", n, i, j))
    return bad


def moore_complex(X):
    """The (unnormalized) Moore complex with differential the alternating
    face sum."""
    L = X.truncation
    diffs = {}
    for n in range(1, L + 1):
        d = X.face(n, 0)
        for i in range(1, n + 1):
            term = X.face(n, i)
            d = d.add(term.negate() if i % 2 else term)
        diffs[n] = d
    cx = ChainCx(groups=list(X.levels), diffs=diffs)
    try:
        cx.check()
    except ShapeMismatch as exc:
        raise IdentityViolation(str(exc)) from exc
    return cx


def homotopy_group(X, n):
    """pi_n of X as an FgAb in canonical form; needs n <= truncation - 1."""
    if n > X.truncation - 1:
        raise TruncationTooShallow(
            f"pi_{n} needs truncation >= {n + 1}, have {X.truncation}"
        )
    return homology(moore_complex(X), n)


def surjections(n, m):
    """All epis [n] ->> [m] in lexicographic order of value tuples."""
    out = []
    for values in combinations_with_replacement(range(m + 1), n + 1):
        f = MonotoneMap(n, m, values)
        if f.is_surjective:
            out.append(f)
    return out


def gamma(A, m, L):
    """The Eilenberg-Mac Lane object: Dold-Kan applied to A placed in degree
    m, truncated at L.  Level n is one copy of A per epi [n] ->> [m]."""
    if m < 1:
        raise ShapeMismatch("m must be >= 1")
    surj = {n: surjections(n, m) for n in range(L + 1)}
    levels = [repeat_group(A, len(surj[n])) for n in range(L + 1)]

    def structure_coeffs(n_src, alpha, n_tgt):
        # component eta -> eta o alpha, kept only when still surjective
        tgt_index = {e.values: k for k, e in enumerate(surj[n_tgt])}
        coeffs = [[0] * len(surj[n_src]) for _ in range(len(surj[n_tgt]))]
        for j, eta in enumerate(surj[n_src]):
            comp = compose(eta, alpha)
            if comp.is_surjective:
                coeffs[tgt_index[comp.values]][j] = 1
        return coeffs

    face_maps = {}
    degeneracy_maps = {}
    for n in range(1, L + 1):
        for i in range(n + 1):
            coeffs = structure_coeffs(n, coface(n, i), n - 1)
            if coeffs and coeffs[0]:
                face_maps[(n, i)] = kron_with_identity(coeffs, A)
            else:
                face_maps[(n, i)] = GroupHom.zero(levels[n], levels[n - 1])
    for n in range(L):
        for i in range(n + 1):
            coeffs = structure_coeffs(n, codegeneracy(n, i), n + 1)
            if coeffs:
                degeneracy_maps[(n, i)] = kron_with_identity(coeffs, A)
            else:
                degeneracy_maps[(n, i)] = GroupHom.zero(levels[n], levels[n + 1])
    X = SimplicialAb(L, levels, face_maps, degeneracy_maps)
    X.validate_shapes()
    return X


def na1(A, L):
    """The triangular-array model of the 1-dimensional Eilenberg-Mac Lane
    object, in reduced coordinates (a_{01}, ..., a_{0n}) at level n.

    Faces delete a row and column of the full array, degeneracies repeat
    one; the reduced-coordinate matrices below are derived from those rules
    using a_{jk} = a_{0k} - a_{0j}.
    """
    levels = [repeat_group(A, n) for n in range(L + 1)]
    face_maps = {}
    degeneracy_maps = {}
    for n in range(1, L + 1):
        for i in range(n + 1):
            coeffs = [[0] * n for _ in range(n - 1)]
            for k in range(1, n):  # target coordinate a'_{0k}
                if i == 0:
                    coeffs[k - 1][k] += 1  # a_{0,k+1}
                    coeffs[k - 1][0] -= 1  # - a_{01}
                else:
                    src = k if k < i else k + 1
                    coeffs[k - 1][src - 1] += 1
            face_maps[(n, i)] = (
                kron_with_identity(coeffs, A)
                if n - 1 > 0
                else GroupHom.zero(levels[n], levels[0])
            )
    for n in range(L):
        for i in range(n + 1):
            coeffs = [[0] * n for _ in range(n + 1)]
            for k in range(1, n + 2):  # target coordinate a'_{0k}
                src = k if k <= i else k - 1
                if src >= 1:
                    coeffs[k - 1][src - 1] += 1
            degeneracy_maps[(n, i)] = kron_with_identity(coeffs, A)
    X = SimplicialAb(L, levels, face_maps, degeneracy_maps)
    X.validate_shapes()
    return X


def compare_via(X, Y, maps):
    """Whether the given levelwise homs X_n -> Y_n form an isomorphism of
    simplicial abelian groups (all structure squares commute exactly)."""
    report = compare_via_report(X, Y, maps)
    return report is None


def compare_via_report(X, Y, maps):
    """None if the maps form a simplicial isomorphism; otherwise a tuple
    describing the first failure."""
    L = min(X.truncation, Y.truncation)
    if len(maps) < L + 1:
        raise ShapeMismatch("need one comparison map per level")
    for n in range(L + 1):
        h = maps[n]
        if h.source != X.levels[n] or h.target != Y.levels[n]:
            raise ShapeMismatch(f"comparison map at level {n} has wrong endpoints")
        if not h.is_isomorphism():
            return ("not_iso", n)
    for n in range(1, L + 1):
        for i in range(n + 1):
            if maps[n - 1].compose(X.face(n, i)) != Y.face(n, i).compose(maps[n]):
                return ("face", n, i)
    for n in range(L):
        for i in range(n + 1):
            if maps[n + 1].compose(X.degeneracy(n, i)) != Y.degeneracy(n, i).compose(maps[n]):
                return ("degeneracy", n, i)
    return None


def dold_kan_unit_maps(X, A, m):
    """The canonical levelwise isomorphisms gamma(A, m, L) -> X for a
    truncated simplicial abelian group X whose normalized complex is A
    concentrated in degree m (checked implicitly: level m must literally be
    one copy of A and level m-1 must vanish).

    Level n sends the summand at an epi eta: [n] ->> [m] through X(eta).
    """
    L = X.truncation
    if X.levels[m] != A:
        raise ShapeMismatch("level m is not a single copy of A")
    if m >= 1 and not X.levels[m - 1].is_trivial:
        raise ShapeMismatch("level m-1 must vanish for the unit formula")
    maps = []
    for n in range(L + 1):
        cols = []
        for eta in surjections(n, m):
            block = X.structure_map(eta).matrix  # X_m = A -> X_n
            cols.append(block)
        rows = [
            [block[i][a] for block in cols for a in range(A.rank)]
            for i in range(X.levels[n].rank)
        ]
        maps.append(GroupHom.make(repeat_group(A, len(cols)), X.levels[n], rows))
    return maps


def simplicial_to_json(X):
    """JSON-serializable description of a truncated simplicial abelian group."""
    return {
        "truncation": X.truncation,
        "levels": [list(g.orders) for g in X.levels],
        "faces": {
            f"{n},{i}": [list(r) for r in X.face(n, i).matrix]
            for n in range(1, X.truncation + 1)
            for i in range(n + 1)
        },
        "degeneracies": {
            f"{n},{i}": [list(r) for r in X.degeneracy(n, i).matrix]
            for n in range(X.truncation)
            for i in range(n + 1)
        },
    }


def simplicial_from_json(doc):
    L = doc["truncation"]
    levels = [FgAb(tuple(o)) for o in doc["levels"]]
    faces = {}
    degens = {}
    for key, rows in doc["faces"].items():
        n, i = map(int, key.split(","))
        faces[(n, i)] = GroupHom.make(levels[n], levels[n - 1], rows)
    for key, rows in doc["degeneracies"].items():
        n, i = map(int, key.split(","))
        degens[(n, i)] = GroupHom.make(levels[n], levels[n + 1], rows)
    X = SimplicialAb(L, levels, faces, degens)
    X.validate_shapes()
    return X
