"""Exception hierarchy shared by all modules."""


class LieRingError(Exception):
    """Base class for errors raised by this package."""


class NotPrime(LieRingError, ValueError):
    pass


class PrecisionTooSmall(LieRingError, ValueError):
    pass


class ContextMismatch(LieRingError, ValueError):
    pass


class PrecisionExhausted(LieRingError, ArithmeticError):
    """An answer would depend on digits beyond the tracked precision."""


class NotCoprime(LieRingError, ValueError):
    pass


class IndexOutOfRange(LieRingError, ValueError):
    pass


class InvalidGamma(LieRingError, ValueError):
    """The coefficients do not define an element of the surjective hom space."""


class NotOneParameter(LieRingError, ValueError):
    pass


class BoundViolation(LieRingError, AssertionError):
    """A computed invariant fell outside a proven bound (implementation bug)."""


class UnknownSuite(LieRingError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class ParseError(LieRingError, ValueError):
    pass
