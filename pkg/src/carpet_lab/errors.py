"""Exception hierarchy.

Every error carries a module-qualified ``code`` so the CLI can emit a
machine-readable error document without inspecting exception types.
"""


class CarpetLabError(Exception):
    module = "carpet-lab"
    name = "Error"

    @property
    def code(self) -> str:
        return f"{self.module}/{self.name}"


# carpet-core
class CarpetError(CarpetLabError):
    module = "carpet-core"


class DigitRangeError(CarpetError):
    name = "RangeError"


class DuplicateDigitError(CarpetError):
    name = "DuplicateDigit"


class BadBasesError(CarpetError):
    name = "BadBases"


class TooFewDigitsError(CarpetError):
    name = "TooFewDigits"


class NotApplicableError(CarpetError):
    name = "NotApplicable"


# coding
class CodingError(CarpetLabError):
    module = "coding"
    name = "InvalidCoding"


class BadLengthError(CodingError):
    name = "BadLength"


# runlength
class InsufficientWordError(CarpetLabError):
    module = "runlength"
    name = "InsufficientWord"


# measure
class MeasureError(CarpetLabError):
    module = "measure"


class OutOfRangeError(MeasureError):
    name = "OutOfRange"


class DepthTooShallowError(MeasureError):
    name = "DepthTooShallow"


class NoAdmissibleCenterError(MeasureError):
    name = "NoAdmissibleCenter"


class EmptySquareError(MeasureError):
    name = "EmptySquare"


# doubling-index
class IndexError_(CarpetLabError):
    module = "doubling-index"


class BadGaugeError(IndexError_):
    name = "BadGauge"


class BadTError(IndexError_):
    name = "BadT"


# classify
class BaseMismatchError(CarpetLabError):
    module = "classify"
    name = "BaseMismatch"


# cli
class TooDeepError(CarpetLabError):
    module = "cli"
    name = "TooDeep"


class ConfigError(CarpetLabError):
    module = "cli"
    name = "BadConfig"
