"""Exception hierarchy shared by all finhom modules."""


class FinhomError(Exception):
    """Base class for all errors raised by finhom."""


class NotAdmissibleWithinCap(FinhomError):
    """No degree m <= cap with every length-m path reducing to zero."""

    def __init__(self, cap, message=None):
        self.cap = cap
        super().__init__(message or f"ideal not certified admissible within degree cap {cap}")


class InvalidKupisch(FinhomError):
    pass


class BadMatching(FinhomError):
    pass


class NotDominantAGInput(FinhomError):
    pass


class NotQuadratic(FinhomError):
    pass


class NotGraded(FinhomError):
    pass


class NotKoszul(FinhomError):
    pass


class NotDominantAG(FinhomError):
    pass


class NotIndecomposable(FinhomError):
    pass


class DuplicateSummand(FinhomError):
    pass


class TauEscapesList(FinhomError):
    pass


class CensusRequired(FinhomError):
    pass


class NotGeneratorCogenerator(FinhomError):
    pass


class ExponentExceedsCap(FinhomError):
    pass


class DomdimTooSmall(FinhomError):
    pass


class RadicalUnavailable(FinhomError):
    pass


class IsoIndeterminate(FinhomError):
    """Isomorphism testing budget exhausted over a finite field."""


class ParseError(FinhomError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = f" (line {line}" + (f", col {column})" if column is not None else ")") if line else ""
        super().__init__(message + loc)
