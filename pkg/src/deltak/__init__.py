"""deltak: combinatorial, K-theoretic and homological models of higher
Auslander algebras of type A and of higher Waldhausen S-constructions.

The modules split along the mathematics:

- simplex: the simplex category Delta, the posets Delta(m, n), cubes;
- intmat: exact integer and rational linear algebra (HNF, SNF, kernels);
- abelian: finitely generated abelian groups and their homomorphisms;
- simplicial: truncated simplicial abelian groups, Moore complexes,
  the Dold-Kan construction gamma and the array model na1;
- k0: Grothendieck-group presentations by Euler and mesh relations;
- slices: slices of Delta(m, n) and their mutation orbits;
- qchain: bounded rational chain complexes, cones, cube totalizations;
- sdiagram: Delta(m, n)-shaped diagrams of complexes, knitting,
  membership certification, slice data and its mutation.
"""

from .abelian import FgAb, GroupHom, free_ab, parse_group_spec, zmod
from .errors import (
    CapExceeded,
    CommutationFailure,
    DecompositionFailure,
    DegenerateInput,
    DeltakError,
    DomainMismatch,
    IdentityViolation,
    IndexOutOfRange,
    NoPathFound,
    NotAFunctor,
    NotInSlice,
    NotMutable,
    OutOfRange,
    SchemaError,
    ShapeMismatch,
    SignError,
    TruncationTooShallow,
    WellDefinednessFailure,
    ZeroSimplexHasNoFaces,
)
from .intmat import (
    IntMatrix,
    QMatrix,
    SmithDecomposition,
    cokernel_invariants,
    hermite_normal_form,
    lattice_equal,
    qkernel_basis,
    qrank,
    smith_normal_form,
)
from .k0 import (
    CosimplicialK0,
    K0Presentation,
    canonical_iso_to_gamma,
    cosimplicial_structure,
    hom_into,
    k0_invariants,
    k0_presentation,
    lattices_agree,
)
from .qchain import ChainMapQ, QComplex, betti, cone, is_bicartesian, totalize
from .sdiagram import (
    CornerData,
    MembershipReport,
    SDiagram,
    SliceData,
    check_membership,
    corner_from_json,
    corner_to_json,
    diagram_betti,
    knit_from_corner,
    knit_from_slice,
    mutate_data,
    random_corner,
    reindex,
    restrict_to_slice,
    sdiagram_from_json,
    sdiagram_to_json,
)
from .simplex import (
    Cube,
    MonotoneMap,
    Simplex,
    ar_cube,
    compose,
    enumerate_simplices,
    euler_cube,
    faces,
    poset_leq,
    simplex,
)
from .simplicial import (
    SimplicialAb,
    check_simplicial_identities,
    compare_via,
    gamma,
    homotopy_group,
    moore_complex,
    na1,
)
from .slices import (
    MutationMove,
    Slice,
    convex_hull,
    diamond_poset,
    initial_slice,
    mutate,
    mutation_orbit,
)

__version__ = "0.1.0"
