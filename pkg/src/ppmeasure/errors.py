"""Exception hierarchy shared by every module of the package."""


class PPMeasureError(Exception):
    """Base class for all errors raised by ppmeasure."""


# field construction and arithmetic
class NonPrimeError(PPMeasureError, ValueError):
    pass


class ReducibleModulusError(PPMeasureError, ValueError):
    pass


class ModulusRequiredError(PPMeasureError, ValueError):
    pass


class FieldTooLargeError(PPMeasureError, ValueError):
    pass


class ZeroInverseError(PPMeasureError, ZeroDivisionError):
    pass


class ZeroLogError(PPMeasureError, ValueError):
    pass


# polynomials
class BadTableLengthError(PPMeasureError, ValueError):
    pass


class ZeroPolynomialError(PPMeasureError, ValueError):
    pass


class NotPermutationError(PPMeasureError, ValueError):
    pass


class NonzeroOriginError(PPMeasureError, ValueError):
    pass


# cyclotomic mappings
class NoCyclotomicFormError(PPMeasureError, ValueError):
    pass


class CosetMismatchError(PPMeasureError, ValueError):
    pass


# chains, Moebius maps, rank oracle
class InvalidChainError(PPMeasureError, ValueError):
    pass


class DegenerateChainError(PPMeasureError, ValueError):
    pass


class SingularMoebiusError(PPMeasureError, ValueError):
    pass


class OracleTooLargeError(PPMeasureError, ValueError):
    pass


# discrete log permutation and harness
class NotPrimeFieldError(PPMeasureError, ValueError):
    pass


class OrderNotDividingError(PPMeasureError, ValueError):
    pass


class DegreeTooSmallError(PPMeasureError, ValueError):
    pass


class ScanTooLargeError(PPMeasureError, ValueError):
    pass


class WeilBoundViolation(PPMeasureError, AssertionError):
    pass


# parsing
class ParseError(PPMeasureError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class CoefficientOutOfRangeError(PPMeasureError, ValueError):
    pass


class InvalidInputError(PPMeasureError, ValueError):
    """Malformed arguments that have no more specific error type."""
