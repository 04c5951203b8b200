class QTripleError(Exception):
    """Base class for every error raised by the qtriple library"""
    pass


class GranularityError(QTripleError):
    """Raised when two q-exponent grids cannot be reconciled"""
    pass


class DomainError(QTripleError):
    """Raised when an argument lies outside the domain of an operation"""
    pass


class NotInvertibleError(QTripleError):
    """Raised when a series or polynomial has no inverse in the ring at hand"""
    pass


class NotDivisibleError(QTripleError):
    """Raised when an exact division leaves a nonzero remainder"""
    pass


class PoleAtOriginError(QTripleError):
    """Raised when a Mobius action has a denominator vanishing at z=0"""
    pass


class SizeLimitError(DomainError):
    """Raised when an enumeration would exceed the configured size limit"""
    pass


class FixedPointError(DomainError):
    """Raised when an involution is applied to one of its fixed points"""
    pass


class BijectionViolation(QTripleError):
    """Raised when a bijection lands outside its declared target set"""
    pass
