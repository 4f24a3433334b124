"""Exception hierarchy for morseq."""


class MorseError(ValueError):
    """Base class for every error raised by the package."""


class InvalidFacet(MorseError):
    pass


class InvalidComplex(MorseError):
    """A face set that is not downward closed."""


class NotAFace(MorseError):
    pass


class HeterogeneousChain(MorseError):
    pass


class IllegalMove(MorseError):
    """An elementary move whose precondition does not hold.

    ``clause`` names the violated precondition.
    """

    def __init__(self, clause, message=None):
        self.clause = clause
        super().__init__(message or clause)


class NotAChainComplex(MorseError):
    pass


class DegreeMismatch(MorseError):
    pass


class TargetMismatch(MorseError):
    pass


class InvalidSequence(MorseError):
    """Raised when an operation needs a valid Morse sequence and gets one that fails replay."""


class IterationCap(MorseError):
    pass


class CyclicField(MorseError):
    pass


class NotBasic(MorseError):
    def __init__(self, prop, message=None):
        self.property = prop
        super().__init__(message or prop)


class NotAMorseFunction(MorseError):
    pass


class ParseError(MorseError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
