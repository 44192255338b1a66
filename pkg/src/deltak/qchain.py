"""Bounded chain complexes of finite-dimensional rational vector spaces,
chain maps, mapping cones, and totalizations of hypercubes of complexes.

The totalization conventions are fixed once for the whole package: a vertex
placed at column offset c contributes its degree-k part in total degree
k + c, its internal differential carries the sign (-1)^c, and the edge map
along direction i out of a cube vertex v carries the Koszul sign
(-1)^(v_0 + ... + v_{i-1}).  These choices make d^2 = 0, which is asserted
on every construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import ShapeMismatch, SignError
from .intmat import QMatrix, qrank


@dataclass(frozen=True)
class QComplex:
    """dims maps degree -> dimension (absent means 0); diffs maps degree k
    to the matrix of d: degree k -> k-1."""

    dims: tuple  # tuple of (degree, dim) pairs, sorted
    diffs: tuple  # tuple of (degree, QMatrix) pairs, sorted

    @staticmethod
    def make(dims, diffs=None):
        dims = {k: d for k, d in dict(dims).items() if d}
        diffs = dict(diffs or {})
        cx = QComplex(
            tuple(sorted(dims.items())),
            tuple(sorted((k, m) for k, m in diffs.items())),
        )
        cx._validate()
        return cx

    def _validate(self):
        dims = dict(self.dims)
        for k, mat in self.diffs:
            if mat.cols != dims.get(k, 0) or mat.rows != dims.get(k - 1, 0):
                raise ShapeMismatch(f"differential at degree {k} has wrong shape")
        for k, _ in self.diffs:
            dd = self.diff(k - 1) @ self.diff(k)
            if not dd.is_zero():
                raise ShapeMismatch(f"d o d != 0 at degree {k}")

    def dim(self, k):
        return dict(self.dims).get(k, 0)

    def diff(self, k):
        for deg, mat in self.diffs:
            if deg == k:
                return mat
        return QMatrix.zero(self.dim(k - 1), self.dim(k))

    @property
    def degrees(self):
        return [k for k, _ in self.dims]

    @property
    def is_zero_complex(self):
        return not self.dims


ZERO_COMPLEX = QComplex((), ())


def single(dim=1, degree=0):
    """The complex with one vector space concentrated in one degree."""
    return QComplex.make({degree: dim})


@dataclass(frozen=True)
class ChainMapQ:
    source: QComplex
    target: QComplex
    blocks: tuple  # tuple of (degree, QMatrix) pairs, sorted

    @staticmethod
    def make(source, target, blocks):
        blocks = {
            k: m for k, m in dict(blocks).items() if not (m.rows == 0 and m.cols == 0)
        }
        f = ChainMapQ(source, target, tuple(sorted(blocks.items())))
        f._validate()
        return f

    def _validate(self):
        for k, mat in self.blocks:
            if mat.cols != self.source.dim(k) or mat.rows != self.target.dim(k):
                raise ShapeMismatch(f"chain map block at degree {k} has wrong shape")
        degrees = {k for k, _ in self.source.dims} | {k for k, _ in self.blocks}
        for k in degrees:
            lhs = self.target.diff(k) @ self.block(k)
            rhs = self.block(k - 1) @ self.source.diff(k)
            if not (lhs + (-rhs)).is_zero():
                raise ShapeMismatch(f"chain map does not commute with d at degree {k}")

    def block(self, k):
        for deg, mat in self.blocks:
            if deg == k:
                return mat
        return QMatrix.zero(self.target.dim(k), self.source.dim(k))

    @staticmethod
    def zero(source, target):
        return ChainMapQ.make(source, target, {})

    @staticmethod
    def identity(cx):
        return ChainMapQ.make(cx, cx, {k: QMatrix.identity(d) for k, d in cx.dims})

    def compose(self, other):
        """self o other."""
        if other.target != self.source:
            raise ShapeMismatch("chain map composition mismatch")
        degrees = {k for k, _ in other.source.dims}
        return ChainMapQ.make(
            other.source,
            self.target,
            {k: self.block(k) @ other.block(k) for k in degrees},
        )

    def add(self, other):
        if (other.source, other.target) != (self.source, self.target):
            raise ShapeMismatch("chain map sum mismatch")
        degrees = {k for k, _ in self.blocks} | {k for k, _ in other.blocks}
        return ChainMapQ.make(
            self.source,
            self.target,
            {k: self.block(k) + other.block(k) for k in degrees},
        )

    def negate(self):
        return ChainMapQ.make(
            self.source, self.target, {k: -m for k, m in self.blocks}
        )

    def is_zero(self):
        return all(m.is_zero() for _, m in self.blocks)

    def __eq__(self, other):
        if not isinstance(other, ChainMapQ):
            return NotImplemented
        if (other.source, other.target) != (self.source, self.target):
            return False
        degrees = {k for k, _ in self.blocks} | {k for k, _ in other.blocks}
        return all((self.block(k) + (-other.block(k))).is_zero() for k in degrees)


def cone(f):
    """Mapping cone: degree k part target_k + source_{k-1}, differential
    [[d_T, f], [0, -d_S]]."""
    S, T = f.source, f.target
    degrees = sorted({k for k, _ in T.dims} | {k + 1 for k, _ in S.dims})
    dims = {k: T.dim(k) + S.dim(k - 1) for k in degrees}
    diffs = {}
    for k in degrees + [max(degrees) + 1] if degrees else []:
        rows = dims.get(k - 1, T.dim(k - 1) + S.dim(k - 2))
        cols = dims.get(k, T.dim(k) + S.dim(k - 1))
        if rows == 0 or cols == 0:
            continue
        dT, dS = T.diff(k), S.diff(k - 1)
        fb = f.block(k - 1)
        grid = [[Fraction(0)] * cols for _ in range(rows)]
        for i in range(dT.rows):
            for j in range(dT.cols):
                grid[i][j] = dT.data[i][j]
        for i in range(fb.rows):
            for j in range(fb.cols):
                grid[i][T.dim(k) + j] = fb.data[i][j]
        for i in range(dS.rows):
            for j in range(dS.cols):
                grid[T.dim(k - 1) + i][T.dim(k) + j] = -dS.data[i][j]
        diffs[k] = QMatrix(rows, cols, grid)
    return QComplex.make(dims, diffs)


def betti(cx):
    """dim H_k per degree, as a dict degree -> positive Betti number."""
    out = {}
    for k in cx.degrees:
        d_in = cx.diff(k + 1)
        d_out = cx.diff(k)
        h = cx.dim(k) - qrank(d_out) - qrank(d_in)
        if h:
            out[k] = h
    return out


def is_acyclic(cx):
    return not betti(cx)


class Totalization:
    """Total complex of a cube of complexes, remembering the layout so
    inclusions of and projections onto single vertices can be formed."""

    def __init__(self, objects, edges, offset):
        self.objects = dict(objects)
        self.edges = dict(edges)
        self.offset = {v: offset(v) for v in self.objects}
        self.order = sorted(self.objects)
        self.total = self._build()

    def _slot(self, v, t):
        """(start, size) of vertex v inside total degree t."""
        start = 0
        for w in self.order:
            d = self.objects[w].dim(t - self.offset[w])
            if w == v:
                return start, d
            start += d
        raise ShapeMismatch(f"vertex {v} not in totalization")

    def _build(self):
        degrees = sorted(
            {
                k + self.offset[v]
                for v in self.order
                for k, _ in self.objects[v].dims
            }
        )
        dims = {
            t: sum(self.objects[v].dim(t - self.offset[v]) for v in self.order)
            for t in degrees
        }
        diffs = {}
        for t in degrees + ([max(degrees) + 1] if degrees else []):
            rows = dims.get(t - 1, 0)
            cols = dims.get(t, 0)
            if rows == 0 or cols == 0:
                continue
            grid = [[Fraction(0)] * cols for _ in range(rows)]
            for v in self.order:
                off = self.offset[v]
                k = t - off
                cstart, csize = self._slot(v, t)
                if csize == 0:
                    continue
                # internal differential, sign (-1)^offset
                dint = self.objects[v].diff(k)
                if not dint.is_zero():
                    rstart, _ = self._slot(v, t - 1)
                    sign = -1 if off % 2 else 1
                    for i in range(dint.rows):
                        for j in range(dint.cols):
                            if dint.data[i][j]:
                                grid[rstart + i][cstart + j] += sign * dint.data[i][j]
                # edge maps out of v, Koszul signs
                for i_dir in range(len(v)):
                    if v[i_dir] == 1:
                        continue
                    w = v[:i_dir] + (1,) + v[i_dir + 1 :]
                    if w not in self.objects:
                        continue
                    f = self.edges.get((v, i_dir))
                    if f is None:
                        continue
                    fb = f.block(k)
                    if fb.is_zero():
                        continue
                    rstart, _ = self._slot(w, t - 1)
                    sign = -1 if sum(v[:i_dir]) % 2 else 1
                    for i in range(fb.rows):
                        for j in range(fb.cols):
                            if fb.data[i][j]:
                                grid[rstart + i][cstart + j] += sign * fb.data[i][j]
            diffs[t] = QMatrix(rows, cols, grid)
        try:
            return QComplex.make(dims, diffs)
        except ShapeMismatch as exc:
            raise SignError(f"totalization differential fails d^2 = 0: {exc}") from exc

    def include_vertex(self, v):
        """The inclusion X_v[offset] -> total; a chain map only when no
        differential leaves the image unaccounted (offset-0 column)."""
        blocks = {}
        for k, d in self.objects[v].dims:
            t = k + self.offset[v]
            tot = self.total.dim(t)
            start, size = self._slot(v, t)
            grid = [[Fraction(0)] * size for _ in range(tot)]
            for i in range(size):
                grid[start + i][i] = Fraction(1)
            blocks[t] = QMatrix(tot, size, grid)
        shifted = _shift_complex(self.objects[v], self.offset[v])
        return ChainMapQ.make(shifted, self.total, blocks)

    def project_vertex(self, v):
        """The projection total -> X_v[offset]."""
        blocks = {}
        for k, d in self.objects[v].dims:
            t = k + self.offset[v]
            tot = self.total.dim(t)
            start, size = self._slot(v, t)
            grid = [[Fraction(0)] * tot for _ in range(size)]
            for i in range(size):
                grid[i][start + i] = Fraction(1)
            blocks[t] = QMatrix(size, tot, grid)
        shifted = _shift_complex(self.objects[v], self.offset[v])
        return ChainMapQ.make(self.total, shifted, blocks)

    def induced_map(self, other, vertex_maps):
        """Chain map self.total -> other.total from vertexwise chain maps
        commuting with all edges (offsets must agree per vertex)."""
        blocks = {}
        degrees = {k for k, _ in self.total.dims} | {k for k, _ in other.total.dims}
        for t in degrees:
            rows, cols = other.total.dim(t), self.total.dim(t)
            if rows == 0 or cols == 0:
                continue
            grid = [[Fraction(0)] * cols for _ in range(rows)]
            for v in self.order:
                if v not in vertex_maps or v not in other.objects:
                    continue
                if self.offset[v] != other.offset[v]:
                    raise ShapeMismatch("vertex offsets disagree in induced map")
                k = t - self.offset[v]
                fb = vertex_maps[v].block(k)
                if fb.is_zero():
                    continue
                cstart, _ = self._slot(v, t)
                rstart, _ = other._slot(v, t)
                for i in range(fb.rows):
                    for j in range(fb.cols):
                        grid[rstart + i][cstart + j] = fb.data[i][j]
            blocks[t] = QMatrix(rows, cols, grid)
        return ChainMapQ.make(self.total, other.total, blocks)


def _shift_complex(cx, c):
    """cx with all degrees raised by c; differentials keep their sign (the
    sign bookkeeping lives in the totalization, not the shift)."""
    if c == 0:
        return cx
    return QComplex.make(
        {k + c: d for k, d in cx.dims},
        {k + c: m for k, m in cx.diffs},
    )


def totalize(objects, edges, dim):
    """Full cube totalization, vertex v in column dim - |v|."""
    return Totalization(objects, edges, lambda v: dim - sum(v))


def total_cofibre(objects, edges, dim):
    """Totalization of the top-punctured cube (vertex (1,...,1) absent),
    vertex v in column dim - 1 - |v|; the vertices just below the puncture
    sit in column 0 and include as chain maps."""
    top = (1,) * dim
    if top in objects:
        raise ShapeMismatch("cofibre totalization expects the top vertex absent")
    return Totalization(objects, edges, lambda v: dim - 1 - sum(v))


def total_fibre(objects, edges, dim):
    """Totalization of the bottom-punctured cube (vertex (0,...,0) absent),
    vertex v at offset 1 - |v|; the vertices just above the puncture sit at
    offset 0 and project onto as chain maps."""
    bottom = (0,) * dim
    if bottom in objects:
        raise ShapeMismatch("fibre totalization expects the bottom vertex absent")
    return Totalization(objects, edges, lambda v: 1 - sum(v))


def is_bicartesian(objects, edges, dim):
    """Whether the full commuting cube has acyclic totalization."""
    return is_acyclic(totalize(objects, edges, dim).total)


def full_cube_corners(dim):
    return list(product((0, 1), repeat=dim))
