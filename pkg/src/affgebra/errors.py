"""Exception hierarchy shared by every module."""


class AffgebraError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(AffgebraError, ValueError):
    pass


class SingularMatrix(AffgebraError, ArithmeticError):
    pass


class BadParameter(AffgebraError, ValueError):
    pass


class NotAutomorphism(AffgebraError, ValueError):
    pass


class NotCatalogAlgebra(AffgebraError, ValueError):
    pass


class InvalidPair(AffgebraError, ValueError):
    """The (f, g) pair does not satisfy the generalized-derivation identity."""


class FieldExtensionRequired(AffgebraError, ArithmeticError):
    """A reduction step needs an eigenvalue outside the rationals."""


class CanonicalizationError(AffgebraError, AssertionError):
    """Internal invariant of the case tree failed; indicates a bug, not bad input."""
