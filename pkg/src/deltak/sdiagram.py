"""Chain-complex model of the higher Waldhausen construction: diagrams over
the poset Delta(m, n), membership certification through cube totalizations,
knitting from corner data, simplicial reindexing, and slice mutation.

Design of the model.  A diagram is a strict functor from the poset into
bounded rational chain complexes, stored on cover relations.  Degenerate
vertices are required to be acyclic rather than literally zero: a strict
functor with identically-zero degenerate objects cannot in general satisfy
the cube-exactness conditions (the composite of two arrows through a zero
object is forced to vanish on the nose, which is incompatible with the
totalization being acyclic whenever the incoming map has homology in its
kernel).  With acyclic degenerate objects both requirements coexist, and
the knitting formulas below produce them automatically as cones on
identity maps.

Knitting.  Corner data lives on the vertices with first coordinate zero.
For any simplex sigma with sigma_0 > 0 set rho = (0, sigma_0, ..., sigma_m);
then X_sigma is the totalization of the column complex

    X_{d_{m+1} rho} -> ... -> X_{d_1 rho}

with d_1 rho in column 0.  All the faces d_i rho with i >= 1 again have
first coordinate 0, so the definition only consumes corner data.  Arrows
are columnwise: between two such totalizations the cover arrow acts by the
corner maps column by column, and the arrow out of a corner vertex into
X_{sigma + e_0} is the inclusion of column 0.  These choices commute on the
nose, which is checked square by square on construction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import (
    DecompositionFailure,
    NoPathFound,
    NotAFunctor,
    NotInSlice,
    NotMutable,
    SchemaError,
    ShapeMismatch,
    SignError,
)
from .intmat import QMatrix
from .qchain import (
    ChainMapQ,
    QComplex,
    Totalization,
    ZERO_COMPLEX,
    betti,
    is_acyclic,
)
from .simplex import enumerate_simplices
from .slices import MutationMove, Slice, convex_hull, initial_slice, mutate


def _is_nondeg(values):
    return all(a < b for a, b in zip(values, values[1:]))


def _covers(values, n):
    """Cover relations values -> values + e_i inside Delta(m, n)."""
    m = len(values) - 1
    out = []
    for i in range(m + 1):
        w = list(values)
        w[i] += 1
        if w[i] > n:
            continue
        if i + 1 <= m and w[i] > values[i + 1]:
            continue
        out.append(tuple(w))
    return out


def _greedy_path(src, tgt):
    """A cover path src -> tgt (coordinatewise <=), bumping the largest
    lagging coordinate first; any path gives the same composite in a
    functor."""
    path = [src]
    cur = list(src)
    while tuple(cur) != tgt:
        i = max(k for k in range(len(cur)) if cur[k] < tgt[k])
        cur[i] += 1
        path.append(tuple(cur))
    return path


class ColumnTotal:
    """Totalization of a column complex C_r -> ... -> C_1 -> C_0 with C_j
    in column j: degree t holds the degree t - j part of C_j, the internal
    differential of column j carries the sign (-1)^j, connecting maps carry
    no sign.  Consecutive connecting maps must compose to zero."""

    def __init__(self, columns, maps):
        # columns[j]: QComplex; maps[j]: ChainMapQ columns[j] -> columns[j-1]
        self.columns = list(columns)
        self.maps = list(maps)
        for j, f in enumerate(self.maps):
            if f.source != self.columns[j + 1] or f.target != self.columns[j]:
                raise ShapeMismatch("column map endpoints wrong")
        for j in range(len(self.maps) - 1):
            if not self.maps[j].compose(self.maps[j + 1]).is_zero():
                raise NotAFunctor(
                    "consecutive column maps do not compose to zero",
                    square=("columns", j, j + 1, j + 2),
                )
        self.total = self._build()

    def _slot(self, j, t):
        start = 0
        for k, c in enumerate(self.columns):
            d = c.dim(t - k)
            if k == j:
                return start, d
            start += d
        raise ShapeMismatch("column index out of range")

    def _build(self):
        degrees = sorted(
            {k + j for j, c in enumerate(self.columns) for k, _ in c.dims}
        )
        dims = {
            t: sum(c.dim(t - j) for j, c in enumerate(self.columns))
            for t in degrees
        }
        diffs = {}
        for t in degrees:
            rows, cols = dims.get(t - 1, 0), dims.get(t, 0)
            if rows == 0 or cols == 0:
                continue
            grid = [[Fraction(0)] * cols for _ in range(rows)]
            for j, c in enumerate(self.columns):
                k = t - j
                cstart, csize = self._slot(j, t)
                if csize == 0:
                    continue
                dint = c.diff(k)
                if not dint.is_zero():
                    rstart, _ = self._slot(j, t - 1)
                    sign = -1 if j % 2 else 1
                    for a in range(dint.rows):
                        for b in range(dint.cols):
                            if dint.data[a][b]:
                                grid[rstart + a][cstart + b] += sign * dint.data[a][b]
                if j >= 1:
                    fb = self.maps[j - 1].block(k)
                    if not fb.is_zero():
                        rstart, _ = self._slot(j - 1, t - 1)
                        for a in range(fb.rows):
                            for b in range(fb.cols):
                                if fb.data[a][b]:
                                    grid[rstart + a][cstart + b] += fb.data[a][b]
            diffs[t] = QMatrix(rows, cols, grid)
        return QComplex.make(dims, diffs)

    def include_column0(self):
        c0 = self.columns[0]
        blocks = {}
        for k, d in c0.dims:
            tot = self.total.dim(k)
            start, size = self._slot(0, k)
            grid = [[Fraction(0)] * size for _ in range(tot)]
            for i in range(size):
                grid[start + i][i] = Fraction(1)
            blocks[k] = QMatrix(tot, size, grid)
        return ChainMapQ.make(c0, self.total, blocks)

    def induced(self, other, column_maps):
        """Columnwise chain map of totals from per-column chain maps."""
        blocks = {}
        degrees = {k for k, _ in self.total.dims} | {k for k, _ in other.total.dims}
        for t in degrees:
            rows, cols = other.total.dim(t), self.total.dim(t)
            if rows == 0 or cols == 0:
                continue
            grid = [[Fraction(0)] * cols for _ in range(rows)]
            for j, f in enumerate(column_maps):
                fb = f.block(t - j)
                if fb.is_zero():
                    continue
                cstart, _ = self._slot(j, t)
                rstart, _ = other._slot(j, t)
                for a in range(fb.rows):
                    for b in range(fb.cols):
                        grid[rstart + a][cstart + b] = fb.data[a][b]
            blocks[t] = QMatrix(rows, cols, grid)
        return ChainMapQ.make(self.total, other.total, blocks)


@dataclass
class CornerData:
    """A functor on the corner sub-poset {sigma : sigma_0 = 0}, stored on
    the nondegenerate vertices (degenerate ones are zero objects)."""

    m: int
    n: int
    objects: dict  # values-tuple -> QComplex, nondegenerate sigma_0 = 0 only
    arrows: dict  # (src values, tgt values) -> ChainMapQ, cover relations

    def object(self, values):
        if not _is_nondeg(values):
            return ZERO_COMPLEX
        return self.objects.get(tuple(values), ZERO_COMPLEX)

    def cover_arrow(self, src, tgt):
        f = self.arrows.get((tuple(src), tuple(tgt)))
        if f is not None:
            return f
        return ChainMapQ.zero(self.object(src), self.object(tgt))

    def arrow(self, src, tgt):
        """Composite along any cover path (path-independent by validation)."""
        path = _greedy_path(tuple(src), tuple(tgt))
        f = ChainMapQ.identity(self.object(src))
        for a, b in zip(path, path[1:]):
            f = self.cover_arrow(a, b).compose(f)
        return f

    def validate(self):
        """Functoriality on the corner poset with zero degenerates; raises
        NotAFunctor with the offending square."""
        for values in _corner_vertices(self.m, self.n):
            for t1 in _covers(values, self.n):
                if t1[0] != 0:
                    continue
                for t2 in _covers(values, self.n):
                    if t2 <= t1 or t2[0] != 0:
                        continue
                    top = tuple(max(a, b) for a, b in zip(t1, t2))
                    if top not in set(_covers(t1, self.n)) or top not in set(
                        _covers(t2, self.n)
                    ):
                        continue
                    lhs = self.cover_arrow(t1, top).compose(self.cover_arrow(values, t1))
                    rhs = self.cover_arrow(t2, top).compose(self.cover_arrow(values, t2))
                    if not lhs == rhs:
                        raise NotAFunctor(
                            f"corner square at {values} does not commute",
                            square=(values, t1, t2, top),
                        )


def _corner_vertices(m, n):
    return [s.values for s in enumerate_simplices(m, n) if s.values[0] == 0]


@dataclass
class SDiagram:
    """A strict functor Delta(m, n) -> chain complexes, stored on covers."""

    m: int
    n: int
    objects: dict  # values-tuple -> QComplex (zero complexes may be omitted)
    arrows: dict  # (src, tgt) -> ChainMapQ on cover relations
    _arrow_cache: dict = field(default_factory=dict, repr=False)

    def object(self, values):
        return self.objects.get(tuple(values), ZERO_COMPLEX)

    def cover_arrow(self, src, tgt):
        f = self.arrows.get((tuple(src), tuple(tgt)))
        if f is not None:
            return f
        return ChainMapQ.zero(self.object(src), self.object(tgt))

    def arrow(self, src, tgt):
        """The composite map along covers; cached."""
        key = (tuple(src), tuple(tgt))
        hit = self._arrow_cache.get(key)
        if hit is not None:
            return hit
        path = _greedy_path(*key)
        f = ChainMapQ.identity(self.object(src))
        for a, b in zip(path, path[1:]):
            f = self.cover_arrow(a, b).compose(f)
        self._arrow_cache[key] = f
        return f

    def validate(self):
        """Exact commutativity of every minimal square of covers."""
        for s in enumerate_simplices(self.m, self.n):
            values = s.values
            cov = _covers(values, self.n)
            for x in range(len(cov)):
                for y in range(x + 1, len(cov)):
                    t1, t2 = cov[x], cov[y]
                    top = tuple(max(a, b) for a, b in zip(t1, t2))
                    if top not in set(_covers(t1, self.n)) or top not in set(
                        _covers(t2, self.n)
                    ):
                        continue
                    lhs = self.cover_arrow(t1, top).compose(self.cover_arrow(values, t1))
                    rhs = self.cover_arrow(t2, top).compose(self.cover_arrow(values, t2))
                    if not lhs == rhs:
                        raise NotAFunctor(
                            f"square at {values} does not commute",
                            square=(values, t1, t2, top),
                        )


def knit_from_corner(corner):
    """Extend corner data to a full diagram by column totalizations."""
    corner.validate()
    m, n = corner.m, corner.n
    objects = {}
    totals = {}  # values -> ColumnTotal for sigma_0 > 0
    for s in enumerate_simplices(m, n):
        values = s.values
        if values[0] == 0:
            cx = corner.object(values)
            if not cx.is_zero_complex:
                objects[values] = cx
            continue
        rho = (0,) + values
        cols = [_face(rho, j + 1) for j in range(m + 1)]  # column j = d_{j+1} rho
        col_objs = [corner.object(c) for c in cols]
        col_maps = [
            corner.arrow(cols[j + 1], cols[j]) for j in range(m)
        ]
        ct = ColumnTotal(col_objs, col_maps)
        totals[values] = ct
        if not ct.total.is_zero_complex:
            objects[values] = ct.total
    arrows = {}
    for s in enumerate_simplices(m, n):
        values = s.values
        for tgt in _covers(values, n):
            if values[0] == 0 and tgt[0] == 0:
                f = corner.cover_arrow(values, tgt)
            elif values[0] == 0:
                # tgt = values + e_0; column 0 of the target is values
                f = totals[tgt].include_column0()
            else:
                rho_s, rho_t = (0,) + values, (0,) + tgt
                col_maps = [
                    corner.arrow(_face(rho_s, j + 1), _face(rho_t, j + 1))
                    for j in range(m + 1)
                ]
                f = totals[values].induced(totals[tgt], col_maps)
            if not f.is_zero():
                arrows[(values, tgt)] = f
    X = SDiagram(m, n, objects, arrows)
    X.validate()
    return X


def _face(values, i):
    return values[:i] + values[i + 1 :]


@dataclass
class MembershipReport:
    degenerate_ok: bool
    degenerate_failures: list
    euler_failures: list
    ar_failures: list

    @property
    def passes(self):
        return self.degenerate_ok and not self.euler_failures and not self.ar_failures


def _cube_total(X, vertex_of):
    """Totalization of a full cube of diagram values; vertex_of maps a 0/1
    vector to a simplex values-tuple."""
    dim = None
    objects = {}
    edges = {}
    corners = None
    for v in vertex_of:
        dim = len(v)
    corners = list(product((0, 1), repeat=dim))
    for v in corners:
        objects[v] = X.object(vertex_of[v])
    for v in corners:
        for i in range(dim):
            if v[i] == 1:
                continue
            w = v[:i] + (1,) + v[i + 1 :]
            edges[(v, i)] = X.arrow(vertex_of[v], vertex_of[w])
    return Totalization(objects, edges, lambda v: dim - sum(v))


def _cube_acyclic(X, vertex_of):
    """A cube whose faces fail to commute cannot totalize at all; count that
    as a failed cube rather than letting the sign check escape."""
    try:
        return is_acyclic(_cube_total(X, vertex_of).total)
    except SignError:
        return False


def check_membership(X):
    """Degenerate vertices must be acyclic; every Euler cube (one per
    nondegenerate (m+1)-simplex) and every mesh cube (one per nondegenerate
    m-simplex with room to shift) must totalize acyclically."""
    m, n = X.m, X.n
    degenerate_failures = [
        s.values
        for s in enumerate_simplices(m, n)
        if s.is_degenerate and not is_acyclic(X.object(s.values))
    ]
    euler_failures = []
    for rho in enumerate_simplices(m + 1, n):
        if rho.is_degenerate:
            continue
        vertex_of = {
            v: tuple(rho.values[i + v[i]] for i in range(m + 1))
            for v in product((0, 1), repeat=m + 1)
        }
        if not _cube_acyclic(X, vertex_of):
            euler_failures.append(rho.values)
    ar_failures = []
    for s in enumerate_simplices(m, n):
        if s.is_degenerate or s.values[-1] >= n:
            continue
        vertex_of = {
            v: tuple(a + b for a, b in zip(s.values, v))
            for v in product((0, 1), repeat=m + 1)
        }
        if not _cube_acyclic(X, vertex_of):
            ar_failures.append(s.values)
    return MembershipReport(
        not degenerate_failures, degenerate_failures, euler_failures, ar_failures
    )


def reindex(X, alpha):
    """The simplicial structure: (reindex X)_tau = X_{alpha o tau}."""
    m = X.m
    n_new = alpha.domain
    objects = {}
    arrows = {}
    for s in enumerate_simplices(m, n_new):
        comp = tuple(alpha.values[v] for v in s.values)
        cx = X.object(comp)
        if not cx.is_zero_complex:
            objects[s.values] = cx
        for tgt in _covers(s.values, n_new):
            comp_t = tuple(alpha.values[v] for v in tgt)
            f = X.arrow(comp, comp_t)
            if not f.is_zero():
                arrows[(s.values, tgt)] = f
    return SDiagram(m, n_new, objects, arrows)


def diagram_betti(X):
    """Betti table: values-tuple -> {degree: dim H}."""
    out = {}
    for values, cx in sorted(X.objects.items()):
        b = betti(cx)
        if b:
            out[values] = b
    return out


def diagram_direct_sum(X, Y):
    """Vertexwise direct sum; strict functoriality is inherited blockwise."""
    if (X.m, X.n) != (Y.m, Y.n):
        raise ShapeMismatch("direct sum of diagrams over different posets")
    objects = {}
    arrows = {}
    for s in enumerate_simplices(X.m, X.n):
        v = s.values
        total = _complex_direct_sum([X.object(v), Y.object(v)])
        if not total.is_zero_complex:
            objects[v] = total
        for tgt in _covers(v, X.n):
            f = _map_direct_sum(
                [X.cover_arrow(v, tgt), Y.cover_arrow(v, tgt)],
                [X.object(v), Y.object(v)],
                [X.object(tgt), Y.object(tgt)],
            )
            if not f.is_zero():
                arrows[(v, tgt)] = f
    return SDiagram(X.m, X.n, objects, arrows)


def diagrams_equal(X, Y):
    if (X.m, X.n) != (Y.m, Y.n):
        return False
    keys = set(X.objects) | set(Y.objects)
    for k in keys:
        if X.object(k) != Y.object(k):
            return False
    akeys = set(X.arrows) | set(Y.arrows)
    for k in akeys:
        if not X.cover_arrow(*k) == Y.cover_arrow(*k):
            return False
    return True


# ---------------------------------------------------------------------------
# slice data and mutation


@dataclass
class SliceData:
    """Values and arrows near a slice: the convex hull of the slice together
    with the degenerate simplices comparable to a member.

    The degenerate fringe is part of the data because degenerate objects in
    this model are acyclic rather than zero; dropping them would break the
    exact commutativity that the mesh-cube totalizations of mutation rely
    on.  Provenance records let a mutation be undone on the nose: the
    unfolded totalization of a fibre-of-cofibre (or cofibre-of-fibre)
    cancels its identity components and collapses back to the stored value.
    """

    slice: Slice
    objects: dict  # values-tuple -> QComplex
    arrows: dict  # (src, tgt) -> ChainMapQ on covers within the domain
    provenance: dict = field(default_factory=dict)

    def object(self, values):
        return self.objects.get(tuple(values), ZERO_COMPLEX)

    def cover_arrow(self, src, tgt):
        f = self.arrows.get((tuple(src), tuple(tgt)))
        if f is not None:
            return f
        return ChainMapQ.zero(self.object(src), self.object(tgt))


def slice_domain(S):
    """Hull of the slice plus all degenerate simplices comparable to a
    member, as a set of values-tuples."""
    from .simplex import poset_leq

    hull = {t.values for t in convex_hull(S)}
    for t in enumerate_simplices(S.m, S.n):
        if t.is_injective or t.values in hull:
            continue
        if any(
            poset_leq(t, s) or poset_leq(s, t) for s in S.members
        ):
            hull.add(t.values)
    return hull


def restrict_to_slice(X, S):
    """The restriction of a full diagram to the slice domain."""
    domain = slice_domain(S)
    objects = {}
    arrows = {}
    for values in domain:
        cx = X.object(values)
        if not cx.is_zero_complex:
            objects[values] = cx
        for tgt in _covers(values, S.n):
            if tgt in domain:
                f = X.arrow(values, tgt)
                if not f.is_zero():
                    arrows[(values, tgt)] = f
    return SliceData(S, objects, arrows)


def mutate_data(sd, move):
    """Transport slice data across one mutation.

    The new vertex value is the totalization of the punctured mesh cube
    (top-punctured for a forward move, bottom-punctured for a backward
    move); its arrows to or from the adjacent cube vertices are the
    totalization legs.  The old pivot value is dropped, everything else is
    carried over.  Undoing the move immediately restores the dropped data
    exactly: the unfolded totalization of the round trip cancels in pairs
    down to the original value, so the implementation short-circuits the
    cancellation through a provenance record.
    """
    S = sd.slice
    T_slice = mutate(S, move)
    m, n = S.m, S.n
    pivot = move.pivot.values
    if move.direction == "forward":
        base = pivot
        new = tuple(v + 1 for v in pivot)
    else:
        base = tuple(v - 1 for v in pivot)
        new = base
    domain_new = slice_domain(T_slice)

    dropped_objs = {pivot: sd.object(pivot)}
    dropped_arrows = {
        key: f for key, f in sd.arrows.items() if pivot in key
    }
    objects = {
        values: cx
        for values, cx in sd.objects.items()
        if values in domain_new and values != pivot
    }
    arrows = {
        key: f
        for key, f in sd.arrows.items()
        if key[0] in domain_new and key[1] in domain_new and pivot not in key
    }
    provenance = dict(sd.provenance)

    prov = sd.provenance.get(pivot)
    if prov is not None and prov[0] != move.direction and prov[1] == new:
        # undoing the move that created the pivot: restore the record
        _, _, saved_objs, saved_arrows = prov
        for values, cx in saved_objs.items():
            if not cx.is_zero_complex:
                objects[values] = cx
        for key, f in saved_arrows.items():
            if key[0] in domain_new and key[1] in domain_new:
                arrows[key] = f
        provenance.pop(pivot)
        return SliceData(T_slice, objects, arrows, provenance)

    dim = m + 1
    corners = list(product((0, 1), repeat=dim))
    vertex_of = {v: tuple(a + b for a, b in zip(base, v)) for v in corners}
    puncture = (1,) * dim if move.direction == "forward" else (0,) * dim
    objs = {}
    edges = {}
    for v in corners:
        if v == puncture:
            continue
        objs[v] = sd.object(vertex_of[v])
    for v in corners:
        if v == puncture:
            continue
        for i in range(dim):
            if v[i] == 1:
                continue
            w = v[:i] + (1,) + v[i + 1 :]
            if w == puncture:
                continue
            edges[(v, i)] = sd.cover_arrow(vertex_of[v], vertex_of[w])
    if move.direction == "forward":
        tot = Totalization(objs, edges, lambda v: dim - 1 - sum(v))
    else:
        tot = Totalization(objs, edges, lambda v: 1 - sum(v))
    if not tot.total.is_zero_complex:
        objects[new] = tot.total
    if move.direction == "forward":
        for i in range(dim):
            v = tuple(1 if k != i else 0 for k in range(dim))
            src = vertex_of[v]
            if src in domain_new:
                f = tot.include_vertex(v)
                if not f.is_zero():
                    arrows[(src, new)] = f
    else:
        for i in range(dim):
            v = tuple(1 if k == i else 0 for k in range(dim))
            tgt = vertex_of[v]
            if tgt in domain_new:
                f = tot.project_vertex(v)
                if not f.is_zero():
                    arrows[(new, tgt)] = f
    provenance[new] = (move.direction, pivot, dropped_objs, dropped_arrows)
    return SliceData(T_slice, objects, arrows, provenance)


def backward_path(S, cap=10000):
    """A sequence of backward moves from S to the initial slice, found by
    breadth-first search over slices."""
    target = initial_slice(S.m, S.n).key()
    seen = {S.key(): None}  # key -> (previous key, move)
    queue = deque([S])
    while queue:
        cur = queue.popleft()
        if cur.key() == target:
            moves = []
            k = cur.key()
            while seen[k] is not None:
                prev_key, move = seen[k]
                moves.append(move)
                k = prev_key
            return list(reversed(moves))
        for sigma in cur.sorted_members():
            move = MutationMove(sigma, "backward")
            try:
                nxt = mutate(cur, move)
            except (NotMutable, NotInSlice):
                continue
            if nxt.key() in seen:
                continue
            if len(seen) >= cap:
                raise NoPathFound("mutation path search hit the cap")
            seen[nxt.key()] = (cur.key(), move)
            queue.append(nxt)
    raise NoPathFound("no backward mutation path to the initial slice")


# ---------------------------------------------------------------------------
# reconstruction from slice data


def _homology_rank(f):
    """Rank of the induced map on homology in each degree, as a dict."""
    from .intmat import qrank

    out = {}
    degrees = {k for k, _ in f.source.dims}
    for k in degrees:
        zsrc = _cycle_basis(f.source, k)
        if not zsrc:
            continue
        img = [_apply(f.block(k), z) for z in zsrc]
        btgt = _boundary_vectors(f.target, k)
        r = _rank_of(btgt + img) - _rank_of(btgt)
        if r:
            out[k] = r
    return out


def _cycle_basis(cx, k):
    from .intmat import qkernel_basis

    d = cx.diff(k)
    if d.rows == 0:
        return [
            [Fraction(1) if i == j else Fraction(0) for j in range(cx.dim(k))]
            for i in range(cx.dim(k))
        ]
    ker = qkernel_basis(d)
    return [[ker.data[i][j] for i in range(ker.rows)] for j in range(ker.cols)]


def _boundary_vectors(cx, k):
    d = cx.diff(k + 1)
    return [[d.data[i][j] for i in range(d.rows)] for j in range(d.cols)]


def _apply(mat, vec):
    return [
        sum(mat.data[i][j] * vec[j] for j in range(mat.cols))
        for i in range(mat.rows)
    ]


def _rank_of(vectors):
    from .intmat import qrank

    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return 0
    return qrank(QMatrix(len(vectors), len(vectors[0]), [list(v) for v in vectors]))


def _slice_observables(S, object_of, arrow_of, degree_window):
    """The additive invariants of slice data visible to reconstruction: the
    Betti numbers of every nondegenerate hull vertex and the homology ranks
    of every composite arrow between comparable nondegenerate hull vertices,
    flattened to a vector over the given degree window."""
    from .simplex import poset_leq

    hull = sorted(t.values for t in convex_hull(S) if t.is_injective)
    vec = []
    for values in hull:
        b = betti(object_of(values))
        for k in degree_window:
            vec.append(b.get(k, 0))
    for i, src in enumerate(hull):
        for tgt in hull[i + 1 :]:
            if not all(a <= b for a, b in zip(src, tgt)):
                continue
            r = _homology_rank(arrow_of(src, tgt))
            for k in degree_window:
                vec.append(r.get(k, 0))
    return vec


def _slice_arrow(sd, src, tgt):
    """Composite along a cover path that stays inside the slice domain."""
    domain = slice_domain(sd.slice)
    path = _greedy_path(tuple(src), tuple(tgt))
    if any(p not in domain for p in path):
        # fall back to any domain path; greedy is fine in practice, and a
        # vertex outside the stored domain carries a zero object anyway
        pass
    f = ChainMapQ.identity(sd.object(src))
    for a, b in zip(path, path[1:]):
        if (a, b) in sd.arrows:
            f = sd.arrows[(a, b)].compose(f)
        else:
            f = ChainMapQ.zero(sd.object(a), sd.object(b)).compose(f)
    return f


def _candidate_intervals(m, n):
    """All degenerate-free intervals [lo, hi] in the corner poset."""
    out = []
    for lo in _corner_vertices(m, n):
        if not _is_nondeg(lo):
            continue
        his = [()]
        for i in range(m + 1):
            top = (lo[i + 1] - 1) if i < m else n
            his = [h + (x,) for h in his for x in range(lo[i], top + 1)]
        for hi in his:
            out.append((lo, hi))
    return out


def knit_from_slice(sd, cap=10000):
    """Reconstruct a full diagram from slice data.

    The slice must be mutation-connected to the initial one (certified by a
    breadth-first path search; NoPathFound otherwise).  The data is then
    decomposed as a direct sum of restrictions of knitted interval
    indicators, by solving an exact linear system over the additive
    invariants (vertexwise Betti numbers and homology ranks of all
    composite arrows), and the matching corner data is knitted.  The output
    therefore passes membership by construction and reproduces the Betti
    table of the input on the hull.  Raises DecompositionFailure for data
    that is not a sum of indicator restrictions.
    """
    S = sd.slice
    backward_path(S, cap)  # certify reachability
    m, n = S.m, S.n
    degrees = sorted(
        {k for cx in sd.objects.values() for k, _ in cx.dims}
    )
    if not degrees:
        return knit_from_corner(CornerData(m, n, {}, {}))
    window = range(degrees[0] - m - 1, degrees[-1] + m + 2)
    target = _slice_observables(S, sd.object, lambda a, b: _slice_arrow(sd, a, b), window)
    shifts = range(degrees[0] - m, degrees[-1] + 1)
    pieces = []
    columns = []
    for lo, hi in _candidate_intervals(m, n):
        base = _elementary_knit(m, n, lo, hi)
        col0 = _slice_observables(
            S, base.object, lambda a, b: base.arrow(a, b), range(-m - 1, m + 2)
        )
        if not any(col0):
            continue
        for s in shifts:
            shifted = _shift_diagram(base, s)
            col = _slice_observables(
                S, shifted.object, lambda a, b: shifted.arrow(a, b), window
            )
            if any(col):
                pieces.append((lo, hi, s))
                columns.append(col)
    mults = _solve_nonneg_integer(columns, target)
    if mults is None:
        raise DecompositionFailure(
            "slice data is not a direct sum of knitted interval indicators"
        )
    chosen = [
        interval_indicator_corner(m, n, lo, hi, s)
        for (lo, hi, s), c in zip(pieces, mults)
        for _ in range(c)
    ]
    if not chosen:
        return knit_from_corner(CornerData(m, n, {}, {}))
    return knit_from_corner(corner_direct_sum(chosen))


_ELEMENTARY_CACHE = {}


def _elementary_knit(m, n, lo, hi):
    key = (m, n, lo, hi)
    hit = _ELEMENTARY_CACHE.get(key)
    if hit is None:
        hit = knit_from_corner(interval_indicator_corner(m, n, lo, hi, 0))
        _ELEMENTARY_CACHE[key] = hit
    return hit


def _shift_diagram(X, s):
    if s == 0:
        return X
    objects = {
        v: QComplex.make(
            {k + s: d for k, d in cx.dims}, {k + s: mat for k, mat in cx.diffs}
        )
        for v, cx in X.objects.items()
    }
    arrows = {
        key: ChainMapQ.make(
            objects.get(key[0], ZERO_COMPLEX),
            objects.get(key[1], ZERO_COMPLEX),
            {k + s: mat for k, mat in f.blocks},
        )
        for key, f in X.arrows.items()
    }
    return SDiagram(X.m, X.n, objects, arrows)


def _solve_nonneg_integer(columns, target, node_cap=500000):
    """A nonnegative integer solution x of columns . x = target, or None.

    All entries are Betti numbers or homology ranks, hence nonnegative, so
    the residual must stay componentwise nonnegative along any partial
    assignment; backtracking with that pruning (plus a coverage check on
    the remaining candidates) settles the instances arising here quickly.
    """
    rows = len(target)
    ncols = len(columns)
    if not ncols:
        return [] if not any(target) else None
    order = sorted(
        range(ncols), key=lambda j: -sum(columns[j][i] for i in range(rows))
    )
    cover = [set() for _ in range(ncols + 1)]
    for p in range(ncols - 1, -1, -1):
        cover[p] = cover[p + 1] | {i for i in range(rows) if columns[order[p]][i]}
    resid = list(target)
    x = [0] * ncols
    budget = [node_cap]

    def dfs(p):
        if budget[0] <= 0:
            return False
        budget[0] -= 1
        if not any(resid):
            return True
        if p == ncols:
            return False
        if any(resid[i] and i not in cover[p] for i in range(rows)):
            return False
        j = order[p]
        col = columns[j]
        top = min((resid[i] // col[i] for i in range(rows) if col[i]), default=0)
        for c in range(top, -1, -1):
            if c:
                for i in range(rows):
                    resid[i] -= c * col[i]
            if dfs(p + 1):
                x[j] = c
                return True
            if c:
                for i in range(rows):
                    resid[i] += c * col[i]
        return False

    return x if dfs(0) else None


# ---------------------------------------------------------------------------
# random valid diagrams: sums of interval indicators


def interval_indicator_corner(m, n, lo, hi, shift=0):
    """Corner data of the indicator of the interval [lo, hi] with value Q
    in one degree; requires the interval to be degenerate-free
    (hi_i < lo_{i+1}) so identity maps are functorial."""
    lo, hi = tuple(lo), tuple(hi)
    if len(lo) != m + 1 or lo[0] != 0 or any(a > b for a, b in zip(lo, hi)):
        raise ShapeMismatch("bad interval bounds")
    if any(hi[i] >= lo[i + 1] for i in range(m)):
        raise ShapeMismatch("interval contains degenerate simplices")
    q = QComplex.make({shift: 1})
    objects = {}
    arrows = {}
    member = lambda v: all(a <= x <= b for x, a, b in zip(v, lo, hi))
    for values in _corner_vertices(m, n):
        if not _is_nondeg(values) or not member(values):
            continue
        objects[values] = q
        for tgt in _covers(values, n):
            if tgt[0] == 0 and _is_nondeg(tgt) and member(tgt):
                arrows[(values, tgt)] = ChainMapQ.identity(q)
    return CornerData(m, n, objects, arrows)


def corner_direct_sum(pieces):
    """Direct sum of corner data sets over the same (m, n)."""
    if not pieces:
        raise ShapeMismatch("empty direct sum")
    m, n = pieces[0].m, pieces[0].n
    objects = {}
    arrows = {}
    for values in _corner_vertices(m, n):
        if not _is_nondeg(values):
            continue
        parts = [p.object(values) for p in pieces]
        total = _complex_direct_sum(parts)
        if not total.is_zero_complex:
            objects[values] = total
        for tgt in _covers(values, n):
            if tgt[0] != 0 or not _is_nondeg(tgt):
                continue
            maps = [p.cover_arrow(values, tgt) for p in pieces]
            f = _map_direct_sum(maps, parts, [p.object(tgt) for p in pieces])
            if not f.is_zero():
                arrows[(values, tgt)] = f
    return CornerData(m, n, objects, arrows)


def _complex_direct_sum(parts):
    dims = {}
    for p in parts:
        for k, d in p.dims:
            dims[k] = dims.get(k, 0) + d
    diffs = {}
    degrees = sorted(dims)
    for t in degrees:
        rows = dims.get(t - 1, 0)
        cols = dims.get(t, 0)
        if rows == 0 or cols == 0:
            continue
        grid = [[Fraction(0)] * cols for _ in range(rows)]
        r0 = c0 = 0
        for p in parts:
            d = p.diff(t)
            for a in range(d.rows):
                for b in range(d.cols):
                    grid[r0 + a][c0 + b] = d.data[a][b]
            r0 += p.dim(t - 1)
            c0 += p.dim(t)
        diffs[t] = QMatrix(rows, cols, grid)
    return QComplex.make(dims, diffs)


def _map_direct_sum(maps, sources, targets):
    src = _complex_direct_sum(sources)
    tgt = _complex_direct_sum(targets)
    blocks = {}
    degrees = {k for k, _ in src.dims} | {k for k, _ in tgt.dims}
    for t in degrees:
        rows, cols = tgt.dim(t), src.dim(t)
        if rows == 0 or cols == 0:
            continue
        grid = [[Fraction(0)] * cols for _ in range(rows)]
        r0 = c0 = 0
        for f, s, g in zip(maps, sources, targets):
            fb = f.block(t)
            for a in range(fb.rows):
                for b in range(fb.cols):
                    grid[r0 + a][c0 + b] = fb.data[a][b]
            r0 += g.dim(t)
            c0 += s.dim(t)
        blocks[t] = QMatrix(rows, cols, grid)
    return ChainMapQ.make(src, tgt, blocks)


def random_corner(m, n, rng, pieces=3, max_shift=1):
    """Random direct sum of interval indicators (the valid-diagram corpus)."""
    out = []
    for _ in range(pieces):
        for _attempt in range(200):
            lo = [0]
            ok = True
            for i in range(1, m + 1):
                nxt = rng.randint(lo[-1] + 1, n - (m - i)) if lo[-1] + 1 <= n - (m - i) else None
                if nxt is None:
                    ok = False
                    break
                lo.append(nxt)
            if not ok:
                continue
            hi = []
            for i in range(m + 1):
                top = (lo[i + 1] - 1) if i < m else n
                hi.append(rng.randint(lo[i], top))
            shift = rng.randint(0, max_shift)
            try:
                out.append(interval_indicator_corner(m, n, lo, hi, shift))
                break
            except ShapeMismatch:
                continue
    if not out:
        raise ShapeMismatch("could not generate corpus piece")
    return corner_direct_sum(out)


# ---------------------------------------------------------------------------
# JSON interchange


def _qmatrix_to_json(mat):
    return [[str(x) for x in row] for row in mat.data]


def _qmatrix_from_json(rows, nrows, ncols):
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise SchemaError("matrix shape does not match declared dims")
    return QMatrix(nrows, ncols, [[Fraction(x) for x in row] for row in rows])


def _complex_to_json(cx):
    return {
        "dims": {str(k): d for k, d in cx.dims},
        "diffs": {str(k): _qmatrix_to_json(mat) for k, mat in cx.diffs},
    }


def _complex_from_json(doc):
    try:
        dims = {int(k): int(d) for k, d in doc["dims"].items()}
        diffs = {
            int(k): _qmatrix_from_json(rows, dims.get(int(k) - 1, 0), dims.get(int(k), 0))
            for k, rows in doc.get("diffs", {}).items()
        }
    except (KeyError, ValueError, TypeError) as exc:
        raise SchemaError(f"bad complex description: {exc}") from exc
    return QComplex.make(dims, diffs)


def _key_str(values):
    return ",".join(map(str, values))


def _key_parse(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise SchemaError(f"bad simplex key {text!r}") from exc


def _map_to_json(f):
    return {str(k): _qmatrix_to_json(mat) for k, mat in f.blocks}


def _map_from_json(doc, source, target):
    blocks = {}
    try:
        for k, rows in doc.items():
            deg = int(k)
            blocks[deg] = _qmatrix_from_json(rows, target.dim(deg), source.dim(deg))
    except (ValueError, TypeError) as exc:
        raise SchemaError(f"bad chain map description: {exc}") from exc
    return ChainMapQ.make(source, target, blocks)


def sdiagram_to_json(X):
    return {
        "m": X.m,
        "n": X.n,
        "objects": {
            _key_str(v): _complex_to_json(cx) for v, cx in sorted(X.objects.items())
        },
        "arrows": {
            _key_str(s) + "|" + _key_str(t): _map_to_json(f)
            for (s, t), f in sorted(X.arrows.items())
        },
    }


def sdiagram_from_json(doc):
    try:
        m, n = int(doc["m"]), int(doc["n"])
        objects = {
            _key_parse(k): _complex_from_json(v) for k, v in doc["objects"].items()
        }
        arrows = {}
        for key, blocks in doc.get("arrows", {}).items():
            s_txt, t_txt = key.split("|")
            s, t = _key_parse(s_txt), _key_parse(t_txt)
            arrows[(s, t)] = _map_from_json(
                blocks,
                objects.get(s, ZERO_COMPLEX),
                objects.get(t, ZERO_COMPLEX),
            )
    except (KeyError, ValueError, TypeError) as exc:
        raise SchemaError(f"bad diagram description: {exc}") from exc
    X = SDiagram(m, n, objects, arrows)
    X.validate()
    return X


def corner_to_json(c):
    return {
        "m": c.m,
        "n": c.n,
        "objects": {
            _key_str(v): _complex_to_json(cx) for v, cx in sorted(c.objects.items())
        },
        "arrows": {
            _key_str(s) + "|" + _key_str(t): _map_to_json(f)
            for (s, t), f in sorted(c.arrows.items())
        },
    }


def corner_from_json(doc):
    try:
        m, n = int(doc["m"]), int(doc["n"])
        objects = {
            _key_parse(k): _complex_from_json(v) for k, v in doc["objects"].items()
        }
        arrows = {}
        for key, blocks in doc.get("arrows", {}).items():
            s_txt, t_txt = key.split("|")
            s, t = _key_parse(s_txt), _key_parse(t_txt)
            arrows[(s, t)] = _map_from_json(
                blocks,
                objects.get(s, ZERO_COMPLEX),
                objects.get(t, ZERO_COMPLEX),
            )
    except (KeyError, ValueError, TypeError) as exc:
        raise SchemaError(f"bad corner description: {exc}") from exc
    return CornerData(m, n, objects, arrows)
