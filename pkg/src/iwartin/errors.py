"""Exception hierarchy shared across the package."""


class IwartinError(Exception):
    """Base class for all package errors."""


# -- permutation groups -------------------------------------------------

class InvalidPermutation(IwartinError):
    pass


class OrderCapExceeded(IwartinError):
    pass


class ElementNotInGroup(IwartinError):
    pass


class POrderViolation(IwartinError):
    pass


class NotASubgroup(IwartinError):
    pass


class NotAnInvolution(IwartinError):
    pass


# -- cyclotomic arithmetic ----------------------------------------------

class ConductorOverflow(IwartinError):
    pass


class NotAMultiple(IwartinError):
    pass


# -- character tables ----------------------------------------------------

class NoSuitableModularPrime(IwartinError):
    pass


class OrthogonalityFailure(IwartinError):
    """Internal consistency guard: a computed table failed orthogonality."""


class GroupMismatch(IwartinError):
    pass


class NonIntegerMultiplicity(IwartinError):
    pass


# -- mod-p polynomials ---------------------------------------------------

class NotSquarefree(IwartinError):
    pass


# -- audit ----------------------------------------------------------------

class NotASubMultiset(IwartinError):
    pass


class SchemaViolation(IwartinError):
    pass


# -- Iwasawa algebra -------------------------------------------------------

class PrecisionExhausted(IwartinError):
    pass


class DegreeCapExceeded(IwartinError):
    pass


class SearchExhausted(IwartinError):
    pass


class ParseError(IwartinError):
    pass
