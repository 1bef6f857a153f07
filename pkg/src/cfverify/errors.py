"""Exception hierarchy.

Everything raised on purpose by the library derives from :class:`CFError`.
Numeric failures (poles, zero scalings, uncertifiable brackets) derive from
:class:`NumericError`; malformed input derives from :class:`ParseError`.
The CLI maps the two families onto exit codes 3 and 2.
"""


class CFError(Exception):
    pass


class NumericError(CFError):
    pass


class ParseError(CFError):
    pass


class TailPoleError(NumericError):
    def __init__(self, n, message=None):
        self.index = n
        super().__init__(message or f"tail denominator vanishes at n={n}")


class SequenceExhaustedError(NumericError):
    def __init__(self, n):
        self.index = n
        super().__init__(f"sequence has no tail and no head entry for n={n}")


class UndefinedConvergentError(NumericError):
    def __init__(self, n):
        self.index = n
        super().__init__(f"convergent f_{n} is undefined (B_{n} = 0)")


class UnknownPresetError(CFError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class DCoefficientPoleError(NumericError):
    def __init__(self, n):
        self.index = n
        super().__init__(f"Gauss coefficient d_{n} has a vanishing denominator")


class ZeroScalingError(NumericError):
    def __init__(self, n):
        self.index = n
        super().__init__(f"scaling factor r_{n} is zero")


class DivisionByZeroError(NumericError, ZeroDivisionError):
    pass


class SymbolicLimitUnavailableError(NumericError):
    pass


class BracketTooWideError(NumericError):
    pass


class ExprSyntaxError(ParseError):
    def __init__(self, message, position, expected=()):
        self.position = position
        self.expected = tuple(expected)
        text = f"{message} at offset {position}"
        if self.expected:
            text += f" (expected {', '.join(self.expected)})"
        super().__init__(text)


class PiNotAllowedError(ParseError):
    pass


class VariableNotAllowedError(ParseError):
    pass


class NonAffinePiError(ParseError):
    pass


class ZeroDenominatorError(ParseError, ZeroDivisionError):
    pass


class SpecFormatError(ParseError):
    pass
