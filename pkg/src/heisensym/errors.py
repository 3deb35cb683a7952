"""Exception hierarchy shared by all heisensym modules."""


class HeisensymError(Exception):
    """Base class for all package errors."""


class ParamMismatch(HeisensymError):
    """Operands were built over different parameter tuples."""


class NonInvertible(HeisensymError):
    """A 2x2 integer matrix has no inverse modulo the requested modulus."""


class NotAMember(HeisensymError):
    """The element fails the symmetry-group membership test."""


class NotInNormalizer(HeisensymError):
    """Conjugation by the matrix does not map the tensor Pauli family to itself."""


class IllConditioned(HeisensymError):
    """Numeric inversion is unreliable at the working tolerance."""


class BudgetExceeded(HeisensymError):
    """An enumeration would exceed the configured candidate budget."""


class BlockDivisibility(HeisensymError):
    """A 4x4 integer matrix violates the off-diagonal block divisibility pattern."""


class Disagreement(HeisensymError):
    """The two membership tests diverged; this indicates an internal bug."""
