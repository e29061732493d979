"""Exception hierarchy shared by all singhunt modules."""


class SinghuntError(Exception):
    """Base class for all errors raised by this package."""


# -- field construction and arithmetic ---------------------------------------

class NonPrime(SinghuntError):
    pass


class InvalidDegree(SinghuntError):
    pass


class DivisionByZero(SinghuntError):
    pass


class ContextMismatch(SinghuntError):
    pass


# -- polynomial parsing and manipulation -------------------------------------

class PolySyntaxError(SinghuntError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownVariable(PolySyntaxError):
    pass


class IndexOutOfRange(SinghuntError):
    pass


# -- linear algebra -----------------------------------------------------------

class NotSquare(SinghuntError):
    pass


class DimensionMismatch(SinghuntError):
    pass


# -- hunting and classification ------------------------------------------------

class BudgetExceeded(SinghuntError):
    pass


class NotLinearInParams(SinghuntError):
    pass


class NotSingular(SinghuntError):
    pass


class SmallCharacteristic(SinghuntError):
    """Classification is unreliable when the characteristic is <= deg f."""


# -- interpolation --------------------------------------------------------------

class InsufficientPoints(SinghuntError):
    pass


class NotOnVariety(SinghuntError):
    pass


# -- multimodular lifting --------------------------------------------------------

class DuplicatePrime(SinghuntError):
    pass


class BadPrime(SinghuntError):
    pass


class NoReconstruction(SinghuntError):
    """No rational within the height bound matches: collect more primes."""


class HeldOutMismatch(SinghuntError):
    """A reconstructed value failed verification at one or more primes."""

    def __init__(self, message, suspects=()):
        super().__init__(message)
        self.suspects = tuple(suspects)


# -- lattices and covers -----------------------------------------------------------

class NoSolution(SinghuntError):
    pass


class MultipleSolutions(SinghuntError):
    def __init__(self, message, solutions=()):
        super().__init__(message)
        self.solutions = list(solutions)


class NotAGenerator(SinghuntError):
    pass


class NonIntegral(SinghuntError):
    pass


class InconsistentData(SinghuntError):
    pass


class NegativeH0(SinghuntError):
    pass
