"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
2 for invalid input, 3 for an exceeded enumeration budget and 4 when an
internal consistency check fails (these indicate a bug, not bad input).
"""


class PtlError(Exception):
    exit_code = 1


class ValidationError(PtlError):
    exit_code = 2


class BudgetExceeded(PtlError):
    exit_code = 3


class ConsistencyError(PtlError):
    exit_code = 4


class NotPrime(ValidationError):
    pass


class NotCoprime(ValidationError):
    pass


class ZeroPolynomial(ValidationError):
    pass


class InvalidModel(ValidationError):
    pass


class InvalidDatum(ValidationError):
    pass


class InconsistentSignature(ValidationError):
    pass


class GenusMismatch(ValidationError):
    pass


class BadDigits(ValidationError):
    pass


class ParseError(ValidationError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class SemanticError(ValidationError):
    pass


class NonIntegralCoefficient(ConsistencyError):
    pass


class NonIntegralSignature(ConsistencyError):
    pass


class WeilBoundViolation(ConsistencyError):
    pass
