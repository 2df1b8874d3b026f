"""Exception hierarchy.

Arithmetic and precision failures derive from :class:`FqArithmeticError`
(the CLI maps them to exit code 3); malformed input derives from
:class:`FqInputError` (exit code 2).
"""


class FqLinearError(Exception):
    pass


class FqArithmeticError(FqLinearError, ArithmeticError):
    pass


class FqInputError(FqLinearError, ValueError):
    pass


class DivisionByZero(FqArithmeticError, ZeroDivisionError):
    pass


class NotInvertible(FqArithmeticError):
    pass


class ValuationOfZero(FqArithmeticError):
    pass


class DivergentEvaluation(FqArithmeticError):
    pass


class LevelExhausted(FqArithmeticError):
    pass


class DegreeBudgetExceeded(FqArithmeticError):
    pass


class ZeroOperator(FqArithmeticError):
    pass


class Inconsistent(FqArithmeticError):
    """No formal solution: the coefficient relation at ``index`` reads 0 = nonzero."""

    def __init__(self, index: int, detail: str = ""):
        self.index = index
        msg = f"inconsistent coefficient relation at index {index}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class InvalidPartition(FqInputError):
    pass


class IrreducibilityError(FqInputError):
    pass


class ParseError(FqInputError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
