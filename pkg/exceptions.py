from core.constants import EXIT_CHECK_FAILURE, EXIT_USAGE_ERROR


class NcFourierException(Exception):
    default_message = "Something went wrong"
    error_code = "ErrorCodeNotDefined"
    exit_code = EXIT_CHECK_FAILURE

    def __init__(self, message=None):
        self.message = message if message else self.default_message
        self.error_code = self.error_code
        super().__init__(self.message)


class ParseError(NcFourierException):
    default_message = "Could not parse input"
    error_code = "ParseError"
    exit_code = EXIT_USAGE_ERROR

    def __init__(self, message=None, line: int = None, column: int = None):
        super().__init__(message)
        self.line = line
        self.column = column
        if line is not None:
            self.message = f"{self.message} (line {line}, column {column})"


class UnknownGenerator(ParseError):
    default_message = "Unknown generator"
    error_code = "UnknownGeneratorError"


class ZeroModulus(NcFourierException):
    default_message = "Cyclic factor modulus must be at least 1"
    error_code = "ZeroModulusError"
    exit_code = EXIT_USAGE_ERROR


class DataValidationException(NcFourierException):
    default_message = "Data entered incorrectly"
    error_code = "IncorrectDataError"
    exit_code = EXIT_USAGE_ERROR


class BudgetExceeded(NcFourierException):
    default_message = "Instance is larger than the configured budget"
    error_code = "BudgetExceededError"
    exit_code = EXIT_USAGE_ERROR


class DegreeOverflow(NcFourierException):
    default_message = "Product exceeds the degree bound"
    error_code = "DegreeOverflowError"


class InconsistentPresentation(NcFourierException):
    default_message = "Relations reduce 1 to 0"
    error_code = "InconsistentPresentationError"


class JacobiFailure(NcFourierException):
    default_message = "Bracket table violates the Jacobi identity"
    error_code = "JacobiFailureError"


class NotCentralExtension(NcFourierException):
    default_message = "Kernel is not a central square-zero ideal"
    error_code = "NotCentralExtensionError"


class PreimageMismatch(NcFourierException):
    default_message = "Chosen element is not a preimage"
    error_code = "PreimageMismatchError"


class LiftInconsistent(NcFourierException):
    default_message = "Lifted presentation collapses"
    error_code = "LiftInconsistentError"


class NotFiltered(NcFourierException):
    default_message = "Filtration is not multiplicative"
    error_code = "NotFilteredError"


class ZeroSymbol(NcFourierException):
    default_message = "Cannot localize at a zero symbol"
    error_code = "ZeroSymbolError"


class HypothesisFailure(NcFourierException):
    default_message = "Hypothesis of the criterion does not hold"
    error_code = "HypothesisFailureError"


class GroupMismatch(NcFourierException):
    default_message = "Kernel groups do not match"
    error_code = "GroupMismatchError"


class NotClosed(NcFourierException):
    default_message = "Closure exceeds the configured bound"
    error_code = "NotClosedError"


class NotAModule(NcFourierException):
    default_message = "Action is not compatible with the structure constants"
    error_code = "NotAModuleError"
