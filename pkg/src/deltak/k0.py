"""Grothendieck groups of higher Auslander algebras of type A, presented on
the simplices Delta(m, n).

The free abelian group on all of Delta(m, n) is divided by unit relations on
degenerate simplices plus either the higher Euler relations (one per
nondegenerate (m+1)-simplex) or the mesh relations (one per nondegenerate
m-simplex with room to shift).  The nondegenerate simplices with first
coordinate 0 form a free basis of the quotient; these levels assemble into a
cosimplicial abelian group whose A-linear dual recovers the Eilenberg-Mac
Lane object.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .abelian import FgAb, GroupHom, kron_with_identity, repeat_group
from .errors import CommutationFailure, ShapeMismatch, WellDefinednessFailure
from .intmat import (
    IntMatrix,
    cokernel_invariants,
    hnf_basis,
    lattice_contains,
    lattice_equal,
)
from .simplex import (
    Simplex,
    coface,
    codegeneracy,
    compose,
    cube_corners,
    enumerate_simplices,
    faces,
    nondegenerate_simplices,
    shift,
)
from .simplicial import SimplicialAb, compare_via_report, dold_kan_unit_maps, gamma


@dataclass
class K0Presentation:
    """Relations matrix over the free group on all of Delta(m, n)."""

    m: int
    n: int
    generators: tuple  # all simplices, lexicographic
    relations: IntMatrix  # one row per relation
    flavor: str  # "euler" or "ar"


def _generator_index(m, n):
    return {s.values: k for k, s in enumerate(enumerate_simplices(m, n))}


def k0_presentation(m, n, flavor):
    """Unit rows on degenerate simplices first, then relation rows in
    lexicographic order of the indexing simplex."""
    if m < 1 or n < 0:
        raise ShapeMismatch("need m >= 1 and n >= 0")
    if flavor not in ("euler", "ar"):
        raise ShapeMismatch(f"unknown flavor {flavor!r}")
    gens = enumerate_simplices(m, n)
    index = _generator_index(m, n)
    rows = []
    for k, s in enumerate(gens):
        if s.is_degenerate:
            row = [0] * len(gens)
            row[k] = 1
            rows.append(row)
    if flavor == "euler":
        for rho in nondegenerate_simplices(m + 1, n):
            row = [0] * len(gens)
            for i, f in enumerate(faces(rho)):
                row[index[f.values]] += -1 if i % 2 else 1
            rows.append(row)
    else:
        for s in nondegenerate_simplices(m, n):
            if s.values[-1] >= n:
                continue
            row = [0] * len(gens)
            for v in cube_corners(m + 1):
                row[index[shift(s, v).values]] += -1 if sum(v) % 2 else 1
            rows.append(row)
    return K0Presentation(m, n, gens, IntMatrix.from_rows(rows, len(gens)), flavor)


def _nondeg_columns(pres):
    """Relation rows restricted to the nondegenerate coordinates.

    Degenerate generators are killed outright by their unit rows, so the
    quotient is the cokernel of this smaller matrix.
    """
    keep = [k for k, s in enumerate(pres.generators) if s.is_injective]
    rows = [
        [row[k] for k in keep]
        for row in pres.relations.data
        if any(row[k] for k in keep)
    ]
    # unit rows restricted to keep are all-zero and were dropped above
    return IntMatrix.from_rows(rows, len(keep)), keep


def k0_invariants(m, n):
    """(free rank, torsion) of the Euler-presented quotient; C(n, m) free."""
    pres = k0_presentation(m, n, "euler")
    reduced, _ = _nondeg_columns(pres)
    return cokernel_invariants(reduced)


def lattices_agree(m, n):
    """Whether the mesh relations span the same lattice as the Euler ones."""
    e = k0_presentation(m, n, "euler")
    a = k0_presentation(m, n, "ar")
    return lattice_equal(e.relations, a.relations)


def basis_simplices(m, n):
    """The chosen quotient basis: nondegenerate simplices starting at 0."""
    return tuple(s for s in nondegenerate_simplices(m, n) if s.values[0] == 0)


def verify_basis(m, n):
    """Certify the basis choice: the relation lattice projected onto the
    complementary coordinates must be everything, so the basis coordinates
    generate the quotient; rank counting does the rest."""
    pres = k0_presentation(m, n, "euler")
    basis_keys = {s.values for s in basis_simplices(m, n)}
    complement = [
        k for k, s in enumerate(pres.generators) if s.values not in basis_keys
    ]
    if not complement:
        return True
    proj = IntMatrix.from_rows(
        [[row[k] for k in complement] for row in pres.relations.data],
        len(complement),
    )
    basis = hnf_basis(proj)
    ident = [
        [1 if i == j else 0 for j in range(len(complement))]
        for i in range(len(complement))
    ]
    return basis == ident


def reduce_to_basis(sigma, m, n):
    """[M_sigma] written in the chosen basis.

    Degenerate classes vanish; a nondegenerate sigma with sigma_0 > 0 is
    rewritten through the Euler relation of rho = (0, sigma_0, ..., sigma_m),
    whose other faces all start at 0 already, so one rewriting step lands in
    the basis.
    """
    basis = basis_simplices(m, n)
    pos = {s.values: k for k, s in enumerate(basis)}
    out = [0] * len(basis)

    def add(values, coeff):
        s = Simplex(m, n, values)
        if s.is_degenerate:
            return
        if values[0] == 0:
            out[pos[values]] += coeff
            return
        rho = (0,) + values
        # e_sigma = sum_{i >= 1} (-1)^{i+1} e_{d_i rho}
        for i in range(1, m + 2):
            add(rho[:i] + rho[i + 1 :], coeff * (-1 if i % 2 == 0 else 1))

    add(tuple(sigma.values), 1)
    return out


@dataclass
class CosimplicialK0:
    """Quotient bases per level and structure matrices on those bases."""

    m: int
    truncation: int
    bases: list  # per level n, tuple of basis simplices
    coface_maps: dict  # (n, i) -> IntMatrix: level n-1 -> level n
    codegeneracy_maps: dict  # (n, i) -> IntMatrix: level n+1 -> level n


def _structure_matrix(alpha, m, basis_src, n_tgt):
    """Quotient matrix of e_sigma -> e_{alpha o sigma} on the chosen bases."""
    n_src = alpha.domain
    cols = [
        reduce_to_basis(compose(alpha, s), m, n_tgt)
        for s in basis_src
    ]
    del n_src
    rows = [[col[i] for col in cols] for i in range(comb(n_tgt, m))]
    return IntMatrix.from_rows(rows, len(cols))


def _certify_well_defined(alpha, m):
    """Each source relation, pushed along e_sigma -> e_{alpha o sigma}, must
    land in the target relation lattice."""
    n_src, n_tgt = alpha.domain, alpha.codomain
    src = k0_presentation(m, n_src, "euler")
    tgt = k0_presentation(m, n_tgt, "euler")
    tgt_index = _generator_index(m, n_tgt)
    basis = hnf_basis(tgt.relations)
    width = len(tgt.generators)
    for row in src.relations.data:
        image = [0] * width
        for k, c in enumerate(row):
            if c:
                image[tgt_index[compose(alpha, src.generators[k]).values]] += c
        if not lattice_contains(basis, image):
            raise WellDefinednessFailure(
                f"relation pushed along {alpha!r} leaves the target lattice"
            )


def cosimplicial_structure(m, L, certify=True):
    """All coface/codegeneracy matrices up to level L, with per-generator
    well-definedness certification."""
    if L < m:
        raise ShapeMismatch("truncation below m")
    bases = [basis_simplices(m, n) for n in range(L + 1)]
    cofaces = {}
    codegens = {}
    for n in range(1, L + 1):
        for i in range(n + 1):
            alpha = coface(n, i)  # [n-1] -> [n]
            if certify:
                _certify_well_defined(alpha, m)
            cofaces[(n, i)] = _structure_matrix(alpha, m, bases[n - 1], n)
    for n in range(L):
        for i in range(n + 1):
            alpha = codegeneracy(n, i)  # [n+1] -> [n]
            if certify:
                _certify_well_defined(alpha, m)
            codegens[(n, i)] = _structure_matrix(alpha, m, bases[n + 1], n)
    return CosimplicialK0(m, L, bases, cofaces, codegens)


def check_cosimplicial_identities(cs):
    """Violations of the cosimplicial identities among the stored matrices."""
    L = cs.truncation
    bad = []
    for n in range(2, L + 1):
        for j in range(n + 1):
            for i in range(j):
                lhs = cs.coface_maps[(n, j)] @ cs.coface_maps[(n - 1, i)]
                rhs = cs.coface_maps[(n, i)] @ cs.coface_maps[(n - 1, j - 1)]
                if lhs != rhs:
                    bad.append(("dd", n, i, j))
    for n in range(L - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                lhs = cs.codegeneracy_maps[(n, i)] @ cs.codegeneracy_maps[(n + 1, j + 1)]
                rhs = cs.codegeneracy_maps[(n, j)] @ cs.codegeneracy_maps[(n + 1, i)]
                if lhs != rhs:
                    bad.append(("ss", n, i, j))
    for n in range(L):
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = cs.codegeneracy_maps[(n, j)] @ cs.coface_maps[(n + 1, i)]
                if i == j or i == j + 1:
                    rhs = IntMatrix.identity(len(cs.bases[n]))
                elif i < j:
                    rhs = cs.coface_maps[(n, i)] @ cs.codegeneracy_maps[(n - 1, j - 1)]
                else:
                    rhs = cs.coface_maps[(n, i - 1)] @ cs.codegeneracy_maps[(n - 1, j)]
                if lhs != rhs:
                    bad.append(("sd", n, i, j))
    return bad


def hom_into(A, m, L, cs=None):
    """Hom(K0 quotient, A) as a simplicial abelian group: level n is one
    copy of A per basis simplex, structure maps the transposed matrices."""
    if cs is None:
        cs = cosimplicial_structure(m, L, certify=False)
    levels = [repeat_group(A, len(cs.bases[n])) for n in range(L + 1)]
    face_maps = {}
    degen_maps = {}
    for n in range(1, L + 1):
        for i in range(n + 1):
            coeffs = cs.coface_maps[(n, i)].transpose().data
            if coeffs and coeffs[0]:
                face_maps[(n, i)] = kron_with_identity(coeffs, A)
            else:
                face_maps[(n, i)] = GroupHom.zero(levels[n], levels[n - 1])
    for n in range(L):
        for i in range(n + 1):
            coeffs = cs.codegeneracy_maps[(n, i)].transpose().data
            if coeffs and coeffs[0]:
                degen_maps[(n, i)] = kron_with_identity(coeffs, A)
            else:
                degen_maps[(n, i)] = GroupHom.zero(levels[n], levels[n + 1])
    X = SimplicialAb(L, levels, face_maps, degen_maps)
    X.validate_shapes()
    return X


def canonical_iso_to_gamma(A, m, L):
    """Levelwise isomorphisms hom_into(A, m, L) -> gamma(A, m, L).

    Built as the inverse of the Dold-Kan comparison: level m of the Hom
    object is a single copy of A, so pushing it through the stored structure
    maps produces the canonical map out of gamma, inverted levelwise.  The
    commutation of every structure square is then checked exhaustively.
    """
    X = hom_into(A, m, L)
    into_X = dold_kan_unit_maps(X, A, m)
    maps = [h.inverse() for h in into_X]
    G = gamma(A, m, L)
    report = compare_via_report(X, G, maps)
    if report is not None:
        raise CommutationFailure(f"comparison square failed: {report}")
    return maps
