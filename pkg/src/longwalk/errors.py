"""Exception hierarchy.

Input problems derive from :class:`InputError` (a ``ValueError``); numerical
breakdowns derive from :class:`NumericalError` (an ``ArithmeticError``). The
command line maps the two families onto exit codes 2 and 3.
"""


class LongWalkError(Exception):
    pass


class InputError(LongWalkError, ValueError):
    pass


class NumericalError(LongWalkError, ArithmeticError):
    pass


# -- input errors -----------------------------------------------------------

class InvalidEdge(InputError):
    pass


class NotConnected(InputError):
    pass


class SameVertex(InputError):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class EdgeListParseError(InputError):
    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


# -- numerical errors -------------------------------------------------------

class ParameterOutOfRange(NumericalError):
    pass


class NoConvergence(NumericalError):
    pass


class NonPositiveEigenvector(NumericalError):
    pass


class PerronMismatch(NumericalError):
    pass


class SingularMatrix(NumericalError):
    pass


class SingularShift(NumericalError):
    pass


class SingularSubmatrix(NumericalError):
    pass


class NotAGInverse(NumericalError):
    pass


class NumericalInconsistency(NumericalError):
    pass


class NonPositiveWalkMatrix(NumericalError):
    pass


class NotALaplacian(NumericalError):
    pass


class DisconnectedKernel(NumericalError):
    pass


class PreconditionNotMet(NumericalError):
    pass
