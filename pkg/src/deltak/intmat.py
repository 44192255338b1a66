"""Exact arbitrary-precision linear algebra: Hermite and Smith normal forms,
cokernel invariants, lattice comparison and rational rank/kernel.

Row-style HNF with positive pivots and reduced off-pivot entries is the
canonical form for lattices, so lattice equality is a plain comparison of
stripped HNFs.  The SNF routine selects a minimal-absolute-value pivot
(ties broken by smallest row, then column index) which keeps coefficient
growth manageable and makes the output deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ShapeMismatch


@dataclass
class IntMatrix:
    """Dense integer matrix; entries are Python ints (arbitrary precision)."""

    rows: int
    cols: int
    data: list  # list of row lists

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ShapeMismatch("entry grid does not match declared shape")

    @staticmethod
    def from_rows(rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ShapeMismatch("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        return IntMatrix(len(rows), cols, rows)

    @staticmethod
    def identity(n):
        return IntMatrix(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(rows, cols):
        return IntMatrix(rows, cols, [[0] * cols for _ in range(rows)])

    def copy(self):
        return IntMatrix(self.rows, self.cols, [row[:] for row in self.data])

    def transpose(self):
        return IntMatrix(self.cols, self.rows, [list(col) for col in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)])

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ShapeMismatch("matrix product shape mismatch")
        out = [[0] * other.cols for _ in range(self.rows)]
        for i, row in enumerate(self.data):
            orow = out[i]
            for k, a in enumerate(row):
                if a:
                    brow = other.data[k]
                    for j, b in enumerate(brow):
                        if b:
                            orow[j] += a * b
        return IntMatrix(self.rows, other.cols, out)

    def mul_vec(self, vec):
        if len(vec) != self.cols:
            raise ShapeMismatch("vector length mismatch")
        return [sum(a * b for a, b in zip(row, vec)) for row in self.data]

    def is_diagonal(self):
        return all(
            not v
            for i, row in enumerate(self.data)
            for j, v in enumerate(row)
            if i != j
        )

    def diagonal(self):
        return [self.data[i][i] for i in range(min(self.rows, self.cols))]


@dataclass
class SmithDecomposition:
    """S = U @ M @ V with U, V unimodular and S diagonal with a divisibility chain."""

    S: IntMatrix
    U: IntMatrix
    V: IntMatrix
    shape: tuple


def det_unimodular(M):
    """Determinant of a square matrix by fraction-free Gaussian elimination."""
    n = M.rows
    if n != M.cols:
        raise ShapeMismatch("determinant of a non-square matrix")
    a = [row[:] for row in M.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def _hnf_rows(data, cols, track=False):
    """Row-style HNF core.  Returns (rows, U_rows); U_rows is None unless track."""
    a = [row[:] for row in data]
    m = len(a)
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if track else None
    r = 0
    for j in range(cols):
        if r >= m:
            break
        while True:
            # minimal-absolute-value pivot in column j among rows >= r
            piv = -1
            best = None
            for i in range(r, m):
                v = a[i][j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    piv = i
                    if best == 1:
                        break
            if piv < 0:
                break  # column already clear; no pivot here
            if piv != r:
                a[r], a[piv] = a[piv], a[r]
                if track:
                    u[r], u[piv] = u[piv], u[r]
            pivot = a[r][j]
            dirty = False
            for i in range(r + 1, m):
                v = a[i][j]
                if v:
                    q = v // pivot
                    if q:
                        # rows >= r vanish left of column j; skip that part
                        row = a[r]
                        ai = a[i]
                        ai[j:] = [x - q * y for x, y in zip(ai[j:], row[j:])]
                        if track:
                            urow = u[r]
                            u[i] = [x - q * y for x, y in zip(u[i], urow)]
                    if a[i][j]:
                        dirty = True
            if dirty:
                continue
            # column settled: positive pivot, reduce the entries above it
            if a[r][j] < 0:
                a[r] = [-x for x in a[r]]
                if track:
                    u[r] = [-x for x in u[r]]
            pivot = a[r][j]
            for i in range(r):
                q = a[i][j] // pivot
                if q:
                    row = a[r]
                    ai = a[i]
                    ai[j:] = [x - q * y for x, y in zip(ai[j:], row[j:])]
                    if track:
                        urow = u[r]
                        u[i] = [x - q * y for x, y in zip(u[i], urow)]
            r += 1
            break
    return a, u


def hermite_normal_form(M):
    """Canonical row HNF.  Returns (H, U) with H = U @ M and U unimodular."""
    a, u = _hnf_rows(M.data, M.cols, track=True)
    return IntMatrix(M.rows, M.cols, a), IntMatrix(M.rows, M.rows, u)

def hnf_basis(M):
    """Nonzero rows of the canonical HNF: a canonical basis of the row lattice."""
    a, _ = _hnf_rows(M.data, M.cols)
    return [row for row in a if any(row)]


def lattice_equal(A, B):
    """Whether two row sets span the same integer lattice."""
    if A.cols != B.cols:
        raise ShapeMismatch("lattices live in different ambient ranks")
    return hnf_basis(A) == hnf_basis(B)


def lattice_contains(basis_rows, vec):
    """Membership of vec in the lattice spanned by HNF basis rows (echelon)."""
    v = list(vec)
    for row in basis_rows:
        j = next((k for k, x in enumerate(row) if x), None)
        if j is None:
            continue
        if v[j] % row[j] == 0:
            q = v[j] // row[j]
            if q:
                v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


def _snf_core(data, nrows, ncols, track):
    a = [row[:] for row in data]
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)] if track else None
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)] if track else None

    def row_sub(i, k, q, start):  # row_i -= q * row_k, zero left of start
        ai = a[i]
        ak = a[k]
        ai[start:] = [x - q * y for x, y in zip(ai[start:], ak[start:])]
        if track:
            u[i] = [x - q * y for x, y in zip(u[i], u[k])]

    def col_sub(j, k, q, start):  # col_j -= q * col_k, zero above start
        for row in a[start:]:
            row[j] -= q * row[k]
        if track:
            for row in v:
                row[j] -= q * row[k]

    def row_swap(i, k):
        a[i], a[k] = a[k], a[i]
        if track:
            u[i], u[k] = u[k], u[i]

    def col_swap(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        if track:
            for row in v:
                row[j], row[k] = row[k], row[j]

    t = 0
    while t < min(nrows, ncols):
        # locate a minimal-absolute-value pivot in the trailing block
        piv = None
        best = None
        for i in range(t, nrows):
            row = a[i]
            for j in range(t, ncols):
                val = row[j]
                if val and (best is None or abs(val) < best):
                    best = abs(val)
                    piv = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if piv is None:
            break
        if piv[0] != t:
            row_swap(t, piv[0])
        if piv[1] != t:
            col_swap(t, piv[1])
        while True:
            # clear column t then row t; remainders force another pass
            changed = False
            for i in range(t + 1, nrows):
                val = a[i][t]
                if val:
                    q = val // a[t][t]
                    if q:
                        row_sub(i, t, q, t)
                    if a[i][t]:
                        changed = True
            if changed:
                # move the smallest nonzero remainder up to the pivot slot
                best_i = min(
                    (i for i in range(t + 1, nrows) if a[i][t]),
                    key=lambda i: (abs(a[i][t]), i),
                )
                row_swap(t, best_i)
                continue
            for j in range(t + 1, ncols):
                val = a[t][j]
                if val:
                    q = val // a[t][t]
                    if q:
                        col_sub(j, t, q, t)
                    if a[t][j]:
                        changed = True
            if changed:
                best_j = min(
                    (j for j in range(t + 1, ncols) if a[t][j]),
                    key=lambda j: (abs(a[t][j]), j),
                )
                col_swap(t, best_j)
                continue
            break
        # pivot must divide the rest of the block for the divisibility chain
        pivot = a[t][t]
        offender = None
        for i in range(t + 1, nrows):
            row = a[i]
            for j in range(t + 1, ncols):
                if row[j] % pivot:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_sub(t, offender, -1, t)  # fold the offending row into the pivot row
            continue
        if pivot < 0:
            a[t] = [-x for x in a[t]]
            if track:
                u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def smith_normal_form(M):
    """Full Smith decomposition S = U @ M @ V."""
    s, u, v = _snf_core(M.data, M.rows, M.cols, track=True)
    return SmithDecomposition(
        S=IntMatrix(M.rows, M.cols, s),
        U=IntMatrix(M.rows, M.rows, u),
        V=IntMatrix(M.cols, M.cols, v),
        shape=(M.rows, M.cols),
    )


def smith_diagonal(M):
    """Just the SNF diagonal (no transform tracking; faster)."""
    s, _, _ = _snf_core(M.data, M.rows, M.cols, track=False)
    return [s[i][i] for i in range(min(M.rows, M.cols))]


def cokernel_invariants(M):
    """Invariant factors of Z^cols / rowlattice(M): (free rank, torsion chain)."""
    diag = [d for d in smith_diagonal(M) if d]
    free_rank = M.cols - len(diag)
    torsion = [abs(d) for d in diag if abs(d) > 1]
    return free_rank, torsion


def integer_kernel(M):
    """Basis of the integer kernel {x : M x = 0}, as a list of column vectors."""
    dec = smith_normal_form(M)
    rank = sum(1 for d in dec.S.diagonal() if d)
    return [[dec.V.data[i][j] for i in range(M.cols)] for j in range(rank, M.cols)]


def solve_integer(M, b):
    """One integer solution x of M x = b, or None if none exists."""
    dec = smith_normal_form(M)
    y = dec.U.mul_vec(b)
    diag = dec.S.diagonal()
    x = [0] * M.cols
    for i in range(M.rows):
        d = diag[i] if i < len(diag) else 0
        if d:
            if y[i] % d:
                return None
            x[i] = y[i] // d
        elif y[i]:
            return None
    return dec.V.mul_vec(x)


# --- exact rational matrices -------------------------------------------------


@dataclass
class QMatrix:
    """Dense matrix of exact rationals."""

    rows: int
    cols: int
    data: list

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ShapeMismatch("entry grid does not match declared shape")

    @staticmethod
    def from_rows(rows, cols=None):
        rows = [[Fraction(x) for x in r] for r in rows]
        if cols is None:
            if not rows:
                raise ShapeMismatch("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        return QMatrix(len(rows), cols, rows)

    @staticmethod
    def identity(n):
        one, zero = Fraction(1), Fraction(0)
        return QMatrix(n, n, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(rows, cols):
        z = Fraction(0)
        return QMatrix(rows, cols, [[z] * cols for _ in range(rows)])

    def copy(self):
        return QMatrix(self.rows, self.cols, [row[:] for row in self.data])

    def __eq__(self, other):
        return (
            isinstance(other, QMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ShapeMismatch("matrix product shape mismatch")
        zero = Fraction(0)
        out = [[zero] * other.cols for _ in range(self.rows)]
        for i, row in enumerate(self.data):
            orow = out[i]
            for k, a in enumerate(row):
                if a:
                    brow = other.data[k]
                    for j, b in enumerate(brow):
                        if b:
                            orow[j] += a * b
        return QMatrix(self.rows, other.cols, out)

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatch("matrix sum shape mismatch")
        return QMatrix(
            self.rows,
            self.cols,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
        )

    def __neg__(self):
        return QMatrix(self.rows, self.cols, [[-a for a in row] for row in self.data])

    def is_zero(self):
        return all(not v for row in self.data for v in row)


def _rref(data, cols):
    a = [row[:] for row in data]
    pivots = []
    r = 0
    for j in range(cols):
        piv = next((i for i in range(r, len(a)) if a[i][j]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][j]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][j]:
                f = a[i][j]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(j)
        r += 1
        if r == len(a):
            break
    return a, pivots


def qrank(M):
    """Rank over the rationals."""
    _, pivots = _rref(M.data, M.cols)
    return len(pivots)


def qkernel_basis(M):
    """Kernel basis as columns of a QMatrix (cols x nullity)."""
    a, pivots = _rref(M.data, M.cols)
    free = [j for j in range(M.cols) if j not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * M.cols
        vec[f] = Fraction(1)
        for r, j in enumerate(pivots):
            vec[j] = -a[r][f]
        basis.append(vec)
    data = [[basis[k][i] for k in range(len(basis))] for i in range(M.cols)]
    return QMatrix(M.cols, len(basis), data)
