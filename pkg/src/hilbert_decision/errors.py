"""Exception hierarchy shared by the library and the CLI.

Each family carries the CLI exit code it maps to.
"""


class HilbertDecisionError(Exception):
    exit_code = 3


# numeric / domain failures (exit 3)

class NumericError(HilbertDecisionError):
    exit_code = 3


class NormalizationError(NumericError):
    """A vector cannot be scaled to unit norm (zero vector or far off)."""


class InvalidAmplitude(NumericError):
    """An amplitude or matrix entry is NaN or infinite."""


class DimMismatch(NumericError):
    """Operands live in spaces of different dimension, or an index is out of range."""


class HermiticityError(NumericError):
    """An operator expected to be Hermitian is not, within tolerance."""


class EmptyActionSet(NumericError):
    pass


class BudgetError(NumericError):
    """Portfolio holdings violate the budget constraint q0*a + b = W0."""


class DomainError(NumericError):
    """A parameter lies outside its admissible range."""


class OrthogonalMindError(NumericError):
    """Normalized moderation requested for a mind state orthogonal to the state."""


# input-document failures (exit 2)

class ScenarioError(HilbertDecisionError):
    exit_code = 2


class ParseError(ScenarioError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class SchemaError(ScenarioError):
    pass


class RenormalizationWarning(UserWarning):
    """Scenario amplitudes were slightly off unit norm and were rescaled."""


class IoError(HilbertDecisionError):
    """Reading a scenario or writing an output file failed."""

    exit_code = 4
