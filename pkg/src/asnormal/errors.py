"""Exception types.

Every error carries a short ``code`` string so the command line front end can
report it verbatim and tests can match on it.
"""


class AsnormalError(Exception):
    code = "Error"

    def __init__(self, message=""):
        super().__init__(f"{self.code}: {message}" if message else self.code)


class NotPrime(AsnormalError, ValueError):
    code = "NotPrime"


class FieldTooLarge(AsnormalError, ValueError):
    code = "FieldTooLarge"


class FieldMismatch(AsnormalError, ValueError):
    code = "FieldMismatch"


class DivisionByZero(AsnormalError, ZeroDivisionError):
    code = "DivisionByZero"


class DegreeDivisibleByP(AsnormalError, ValueError):
    code = "DegreeDivisibleByP"


class NotDegreeM(AsnormalError, ValueError):
    code = "NotDegreeM"


class CurveMismatch(AsnormalError, ValueError):
    code = "CurveMismatch"


class RegimeMismatch(AsnormalError, ValueError):
    code = "RegimeMismatch"


class TrivialCurve(AsnormalError, ValueError):
    code = "TrivialCurve"


class HypothesisNotMet(AsnormalError, ValueError):
    code = "HypothesisNotMet"


class FormulaOutOfScope(AsnormalError, ValueError):
    code = "FormulaOutOfScope"


class NoConstructiveWitness(AsnormalError):
    code = "NoConstructiveWitness"


class ContradictionCaseReached(AsnormalError, AssertionError):
    """An impossible branch of a case analysis was hit; always a bug."""

    code = "ContradictionCaseReached"


class ConfigError(AsnormalError, ValueError):
    code = "ConfigError"
