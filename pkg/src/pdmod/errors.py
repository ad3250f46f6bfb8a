"""Exception hierarchy shared by every module of the package."""


class PDModError(Exception):
    """Base class for all errors raised by pdmod."""


class ZeroDenominator(PDModError, ZeroDivisionError):
    pass


class NotExactDivision(PDModError, ArithmeticError):
    pass


class ZeroOrder(PDModError, ValueError):
    """The class of the zero multi-index is undefined."""


class NotSolvedForm(PDModError, ValueError):
    pass


class FieldMismatch(PDModError, TypeError):
    pass


class ParseError(PDModError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        parts = []
        if line is not None:
            parts.append(f"line {line}")
        if column is not None:
            parts.append(f"column {column}")
        where = f" ({', '.join(parts)})" if parts else ""
        super().__init__(message + where)


class NotInvolutive(PDModError, ValueError):
    pass


class MaxRoundsExceeded(PDModError, RuntimeError):
    pass


class NonGenericSeed(MaxRoundsExceeded):
    """Completion stalled in coordinates that the seeded changes failed to regularize."""


class NonFullClasses(PDModError, ValueError):
    """The localized system is not of finite type at the requested split."""


class ZeroDivisorInput(PDModError, ValueError):
    pass


class InfiniteDimensional(PDModError, ValueError):
    pass


class NonRationalEigenvalue(PDModError, ArithmeticError):
    def __init__(self, factor, direction=None):
        self.factor = factor
        self.direction = direction
        super().__init__(f"characteristic polynomial has a factor of degree > 1 over the base field: {factor}")


class NotInvariant(PDModError, ValueError):
    pass


class SpecializationError(PDModError, ValueError):
    """A parameter value makes a denominator vanish."""


class UsageError(PDModError, ValueError):
    pass


class StageError(PDModError, RuntimeError):
    def __init__(self, stage, error):
        self.stage = stage
        self.error = error
        super().__init__(f"stage '{stage}' failed: {type(error).__name__}: {error}")
