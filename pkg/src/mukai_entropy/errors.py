"""Exception types raised by the library.

Every error derives from :class:`MukaiError`, which is a ``ValueError`` so
callers validating user input can catch either.
"""


class MukaiError(ValueError):
    pass


class ComplexEigenvalues(MukaiError):
    pass


class NotUnimodular(MukaiError):
    pass


class NotUpperHalfPlane(MukaiError):
    pass


class InvalidInput(MukaiError):
    pass


class InternalNonIntegral(MukaiError):
    pass


class NotClosed(MukaiError):
    pass


class NotFactorizable(MukaiError):
    pass


class PoleHit(MukaiError, ZeroDivisionError):
    pass


class NotApplicable(MukaiError):
    pass


class DegenerateSequence(MukaiError):
    pass


class OutOfScopeTrace(MukaiError):
    pass
