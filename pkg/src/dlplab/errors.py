"""Exception types shared across the package."""


class DlpLabError(Exception):
    """Base class for all errors raised by dlplab."""


class ParseError(DlpLabError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class AlphabetTooLarge(DlpLabError):
    pass


class ApplicabilityError(DlpLabError):
    """The semantics is not defined for this input (see the applicability table)."""


class ConstraintPresent(ApplicabilityError):
    pass


class PriorityCycle(DlpLabError):
    pass


class NoStrategyConfigured(DlpLabError):
    pass
