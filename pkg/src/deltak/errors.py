"""Exception hierarchy shared by all deltak modules."""


class DeltakError(Exception):
    """Base class for all errors raised by deltak."""


class DomainMismatch(DeltakError):
    """Attempted to compose monotone maps whose (co)domains do not match."""


class IndexOutOfRange(DeltakError):
    """Generator index outside the admissible range."""


class ShapeMismatch(DeltakError):
    """Operands indexed by different (m, n) or incompatible matrix shapes."""


class ZeroSimplexHasNoFaces(DeltakError):
    """Face list requested for a 0-simplex."""


class DegenerateInput(DeltakError):
    """A nondegenerate simplex was required."""


class OutOfRange(DeltakError):
    """Simplex coordinate at the boundary; the requested shift leaves Delta(m, n)."""


class TruncationTooShallow(DeltakError):
    """Homotopy group requested at a degree not certified by the truncation."""


class IdentityViolation(DeltakError):
    """A simplicial object failed its own structural identities."""


class WellDefinednessFailure(DeltakError):
    """A generator-level map did not preserve the relation lattice."""


class CommutationFailure(DeltakError):
    """A proposed simplicial isomorphism failed to commute with a structure map."""


class NotInSlice(DeltakError):
    """Mutation pivot is not a member of the slice."""


class NotMutable(DeltakError):
    """Mutation admissibility condition failed; the message names the culprit."""


class CapExceeded(DeltakError):
    """Orbit exploration hit the node cap; carries the partial graph."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class SignError(DeltakError):
    """Totalization differential did not square to zero (non-commuting input)."""


class NotAFunctor(DeltakError):
    """Input diagram violates poset functoriality; carries the offending square."""

    def __init__(self, message, square=None):
        super().__init__(message)
        self.square = square


class NoPathFound(DeltakError):
    """No mutation path to the initial slice within the cap."""


class SchemaError(DeltakError):
    """Input JSON does not match the expected schema."""


class DecompositionFailure(DeltakError):
    """Slice data could not be written as a sum of indicator restrictions."""
