"""Exception types shared across the package."""


class CodebreakError(Exception):
    """Base class for all package errors."""


class ZeroInverse(CodebreakError, ZeroDivisionError):
    pass


class NotInvertible(CodebreakError):
    pass


class Singular(CodebreakError):
    pass


class NoSolution(CodebreakError):
    pass


class SupportRoot(CodebreakError):
    pass


class NotIrreducible(CodebreakError):
    pass


class NotDecodable(CodebreakError):
    pass


class NotInCode(CodebreakError):
    pass


class TooLarge(CodebreakError):
    pass


class DecryptFail(CodebreakError):
    pass


class KeygenExhausted(CodebreakError):
    pass


class NonceExhausted(CodebreakError):
    pass


class DimensionMismatch(CodebreakError):
    pass


class NotSameCode(CodebreakError):
    pass


class OracleFailure(CodebreakError):
    pass


class SingularDerived(CodebreakError):
    pass


class NotFound(CodebreakError):
    pass


class FormatError(CodebreakError):
    """Malformed key, ciphertext or signature file."""
