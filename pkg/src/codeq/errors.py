"""Exception types shared across the package."""


class CodeqError(Exception):
    """Base class for all errors raised by this package."""


class NotPrime(CodeqError):
    pass


class NotIrreducible(CodeqError):
    pass


class Overflow(CodeqError):
    pass


class DivisionByZero(CodeqError):
    pass


class Singular(CodeqError):
    pass


class DimensionMismatch(CodeqError):
    pass


class DegreeMismatch(CodeqError):
    pass


class AllZero(CodeqError):
    pass


class FullLength(CodeqError):
    pass


class NotProjective(CodeqError):
    pass


class ProfileMismatch(CodeqError):
    pass


class TooLarge(CodeqError):
    pass


class Unsatisfiable(CodeqError):
    pass


class RetriesExhausted(CodeqError):
    pass


class BlockingSet(CodeqError):
    pass


class MissingL(CodeqError):
    pass


class Degenerate(CodeqError):
    pass


class NotInPiece(CodeqError):
    pass


class NotIsoDualProfile(CodeqError):
    pass


class HFMismatch(CodeqError):
    pass


class NotAWitness(CodeqError):
    pass


class CapExceeded(CodeqError):
    pass


class DualityViolation(CodeqError):
    pass


class VerifyFail(CodeqError):
    pass


class ParseError(CodeqError):
    pass
