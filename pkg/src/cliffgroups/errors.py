class CliffordError(Exception):
    pass


class SignatureMismatch(CliffordError, ValueError):
    pass


class SingularError(CliffordError, ArithmeticError):
    """The element has no inverse in the algebra."""


class NotInvertible(SingularError):
    """A group predicate was asked about a non-invertible element."""


class SamplerExhausted(CliffordError, RuntimeError):
    pass


class UnsupportedGroup(CliffordError, ValueError):
    pass


class MissingWitness(CliffordError, LookupError):
    pass


class ParseError(CliffordError, ValueError):
    """Malformed expression text.

    ``offset`` is the byte offset of the offending token and ``expected`` the
    set of token kinds that would have been accepted there.
    """

    def __init__(self, message, offset=0, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f" (at offset {offset}"
        if self.expected:
            detail += ", expected one of: " + ", ".join(sorted(self.expected))
        detail += ")"
        super().__init__(message + detail)


class IndexOutOfRange(ParseError):
    pass
