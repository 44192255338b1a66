"""Finitely generated abelian groups, homomorphisms between them, and exact
homology of chain complexes of such groups.

A group is a list of generator orders (0 meaning infinite cyclic); a
homomorphism is an integer matrix taken modulo the target orders.  Homology
with torsion coefficients lifts everything to integer presentations and
reduces with Smith normal form, so a single normal-form kernel serves all
invariant computations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import SchemaError, ShapeMismatch
from .intmat import (
    IntMatrix,
    cokernel_invariants,
    hnf_basis,
    integer_kernel,
    smith_normal_form,
    solve_integer,
)


@dataclass(frozen=True)
class FgAb:
    """A finitely generated abelian group, presented as sum of Z/orders[i]."""

    orders: tuple

    def __post_init__(self):
        if any(o < 0 for o in self.orders):
            raise ShapeMismatch("generator orders must be non-negative")

    @property
    def rank(self):
        return len(self.orders)

    @property
    def is_trivial(self):
        return all(o == 1 for o in self.orders)

    def invariant_factors(self):
        """Canonical form: (free rank, torsion divisibility chain)."""
        rows = [
            [self.orders[i] if j == i else 0 for j in range(self.rank)]
            for i in range(self.rank)
            if self.orders[i] > 0
        ]
        return cokernel_invariants(IntMatrix(len(rows), self.rank, rows))

    def same_group(self, other):
        return self.invariant_factors() == other.invariant_factors()

    def __str__(self):
        free, torsion = self.invariant_factors()
        parts = [f"Z/{t}" for t in torsion] + ["Z"] * free
        return " + ".join(parts) if parts else "0"


ZERO_GROUP = FgAb(())
Z = FgAb((0,))


def zmod(k):
    return FgAb((k,))


def free_ab(r):
    return FgAb((0,) * r)


def direct_sum(*groups):
    orders = ()
    for g in groups:
        orders += g.orders
    return FgAb(orders)


def repeat_group(g, times):
    return FgAb(g.orders * times)


_SPEC_TERM = re.compile(r"^(Z(/([0-9]+))?)$")


def parse_group_spec(text):
    """Parse specs like "Z", "Z/4", "Z+Z/2" into an FgAb."""
    orders = []
    for term in text.replace(" ", "").split("+"):
        m = _SPEC_TERM.match(term)
        if not m:
            raise SchemaError(f"bad group term {term!r}")
        orders.append(int(m.group(3)) if m.group(3) else 0)
    return FgAb(tuple(orders))


def _reduce_entry(v, order):
    return v % order if order > 0 else v


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism source -> target given by an integer matrix
    (target.rank x source.rank), stored reduced modulo the target orders."""

    source: FgAb
    target: FgAb
    matrix: tuple  # tuple of row tuples

    @staticmethod
    def make(source, target, rows):
        rows = [list(r) for r in rows]
        if len(rows) != target.rank or any(len(r) != source.rank for r in rows):
            raise ShapeMismatch(
                f"hom matrix must be {target.rank} x {source.rank}"
            )
        reduced = tuple(
            tuple(_reduce_entry(v, target.orders[i]) for v in row)
            for i, row in enumerate(rows)
        )
        hom = GroupHom(source, target, reduced)
        hom._check_compatible()
        return hom

    def _check_compatible(self):
        # d * column_j must vanish in the target when generator j has order d
        for j, d in enumerate(self.source.orders):
            if d == 0:
                continue
            for i, o in enumerate(self.target.orders):
                v = d * self.matrix[i][j]
                if (v % o if o > 0 else v) != 0:
                    raise ShapeMismatch(
                        f"matrix incompatible with orders at entry ({i},{j})"
                    )

    @staticmethod
    def identity(group):
        return GroupHom.make(
            group,
            group,
            [[1 if i == j else 0 for j in range(group.rank)] for i in range(group.rank)],
        )

    @staticmethod
    def zero(source, target):
        return GroupHom.make(source, target, [[0] * source.rank for _ in range(target.rank)])

    def as_intmatrix(self):
        return IntMatrix.from_rows([list(r) for r in self.matrix], self.source.rank)

    def compose(self, other):
        """self o other (apply other first)."""
        if other.target != self.source:
            raise ShapeMismatch("composition target/source mismatch")
        prod = self.as_intmatrix() @ other.as_intmatrix()
        return GroupHom.make(other.source, self.target, prod.data)

    def add(self, other):
        if (other.source, other.target) != (self.source, self.target):
            raise ShapeMismatch("sum of homs with different endpoints")
        rows = [
            [a + b for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.matrix, other.matrix)
        ]
        return GroupHom.make(self.source, self.target, rows)

    def negate(self):
        return GroupHom.make(self.source, self.target, [[-v for v in r] for r in self.matrix])

    def __eq__(self, other):
        return (
            isinstance(other, GroupHom)
            and self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def is_zero(self):
        return all(not v for row in self.matrix for v in row)

    def is_isomorphism(self):
        """True iff the induced map is bijective.

        F.g. abelian groups are Hopfian, so for groups with equal invariants
        surjectivity implies bijectivity; surjectivity is a lattice check.
        """
        if not self.source.same_group(self.target):
            return False
        rows = [list(col) for col in zip(*self.matrix)] if self.target.rank else []
        rows = [list(r) for r in rows]
        for i, o in enumerate(self.target.orders):
            if o > 0:
                rows.append([o if j == i else 0 for j in range(self.target.rank)])
        if self.target.rank == 0:
            return True
        basis = hnf_basis(IntMatrix.from_rows(rows, self.target.rank))
        ident = [[1 if i == j else 0 for j in range(self.target.rank)] for i in range(self.target.rank)]
        return basis == ident

    def inverse(self):
        """Exact inverse of an isomorphism, found by integer linear solving."""
        t = self.target.rank
        cols = []
        torsion_cols = [
            [o if i == k else 0 for i in range(t)]
            for k, o in enumerate(self.target.orders)
            if o > 0
        ]
        # solve [F | orders] y = e_j; the top block of y is the inverse column
        aug_rows = [
            list(row) + [tc[i] for tc in torsion_cols]
            for i, row in enumerate(self.matrix)
        ]
        aug = IntMatrix.from_rows(aug_rows, self.source.rank + len(torsion_cols)) if t else IntMatrix(0, self.source.rank + len(torsion_cols), [])
        for j in range(t):
            e = [1 if i == j else 0 for i in range(t)]
            sol = solve_integer(aug, e)
            if sol is None:
                raise ShapeMismatch("hom is not invertible")
            cols.append(sol[: self.source.rank])
        rows = [[cols[j][i] for j in range(t)] for i in range(self.source.rank)]
        inv = GroupHom.make(self.target, self.source, rows)
        if not inv.compose(self) == GroupHom.identity(self.source):
            raise ShapeMismatch("inverse verification failed")
        return inv


def kron_with_identity(coeffs, group):
    """Integer coefficient matrix acting diagonally on copies of `group`.

    coeffs is a t x s integer grid; the result maps group^s -> group^t with
    block (i, j) = coeffs[i][j] * id.
    """
    r = len(group.orders)
    t = len(coeffs)
    s = len(coeffs[0]) if t else 0
    rows = []
    for i in range(t):
        for a in range(r):
            row = [0] * (s * r)
            for j in range(s):
                if coeffs[i][j]:
                    row[j * r + a] = coeffs[i][j]
            rows.append(row)
    return GroupHom.make(repeat_group(group, s), repeat_group(group, t), rows)


@dataclass
class ChainCx:
    """A chain complex of f.g. abelian groups in degrees 0..L."""

    groups: list
    diffs: dict  # n -> GroupHom: groups[n] -> groups[n-1], n >= 1

    @property
    def length(self):
        return len(self.groups) - 1

    def check(self):
        for n, d in self.diffs.items():
            if d.source != self.groups[n] or d.target != self.groups[n - 1]:
                raise ShapeMismatch(f"differential {n} has wrong endpoints")
        for n in self.diffs:
            if n + 1 in self.diffs:
                if not self.diffs[n].compose(self.diffs[n + 1]).is_zero():
                    raise ShapeMismatch(f"d o d != 0 at degree {n + 1}")


def _order_rows(group):
    return [
        [group.orders[i] if j == i else 0 for j in range(group.rank)]
        for i in range(group.rank)
        if group.orders[i] > 0
    ]


def _express_in_hnf_basis(basis, vec):
    """Coefficients of vec over an echelon basis (HNF rows); vec must lie in
    the spanned lattice."""
    v = list(vec)
    coeffs = []
    for row in basis:
        j = next((k for k, x in enumerate(row) if x), None)
        if j is None:
            coeffs.append(0)
            continue
        if v[j] % row[j]:
            raise ShapeMismatch("vector outside lattice during basis expression")
        q = v[j] // row[j]
        coeffs.append(q)
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    if any(v):
        raise ShapeMismatch("vector outside lattice during basis expression")
    return coeffs


def homology(cx, n):
    """Invariant factors (as an FgAb) of H_n = ker d_n / im d_{n+1}."""
    C = cx.groups[n]
    r = C.rank
    # kernel lattice: x with d_n(x) = 0 in the target group
    if n == 0 or n not in cx.diffs or cx.diffs[n].target.rank == 0:
        kernel_rows = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    else:
        d = cx.diffs[n]
        tgt = d.target
        torsion_cols = [
            [o if i == k else 0 for i in range(tgt.rank)]
            for k, o in enumerate(tgt.orders)
            if o > 0
        ]
        aug_rows = [
            list(row) + [-tc[i] for tc in torsion_cols]
            for i, row in enumerate(d.matrix)
        ]
        aug = IntMatrix.from_rows(aug_rows, r + len(torsion_cols))
        kernel_rows = [col[:r] for col in integer_kernel(aug)]
    if not kernel_rows:
        return ZERO_GROUP
    basis = hnf_basis(IntMatrix.from_rows(kernel_rows, r))
    if not basis:
        return ZERO_GROUP
    # image lattice generators: columns of d_{n+1} plus the order relations
    image_vecs = []
    if n + 1 in cx.diffs:
        up = cx.diffs[n + 1]
        image_vecs.extend([list(col) for col in zip(*up.matrix)] if r else [])
    image_vecs.extend(_order_rows(C))
    rel_rows = [_express_in_hnf_basis(basis, v) for v in image_vecs]
    free, torsion = cokernel_invariants(
        IntMatrix.from_rows(rel_rows, len(basis)) if rel_rows else IntMatrix(0, len(basis), [])
    )
    return FgAb(tuple(torsion) + (0,) * free)
