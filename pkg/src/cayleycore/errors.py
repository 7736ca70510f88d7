"""Exception hierarchy shared by every module."""

from __future__ import annotations


class CayleyCoreError(ValueError):
    """Base class for all library errors."""


class InvalidFieldError(CayleyCoreError):
    """Raised for a non-prime modulus or a negative dimension."""


class DimensionMismatchError(CayleyCoreError):
    """Objects built over different fields were combined."""


class ResourceLimitError(CayleyCoreError):
    """A configured size cap would be exceeded."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class InvalidConnectionSetError(CayleyCoreError):
    """A connection set contains the zero vector or is otherwise malformed."""


class SymmetryViolationError(InvalidConnectionSetError):
    def __init__(self, witness):
        super().__init__(f"connection set is not closed under negation: -{witness} is missing")
        self.witness = witness


class DuplicateLineError(InvalidConnectionSetError):
    """The same projective point was supplied twice."""


class SingularMapError(CayleyCoreError):
    """A linear map required to be invertible is singular."""


class InvalidWitnessError(CayleyCoreError):
    """A witness pair does not satisfy the precondition of an operation."""


class DocumentError(CayleyCoreError):
    """A connection-set document is malformed."""
