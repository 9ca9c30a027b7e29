"""Exception hierarchy for the engine.

Every error carries a stable ``code`` string so the CLI can surface the
originating operation without string matching on messages.
"""


class EngineError(Exception):
    code = "ENGINE_ERROR"

    def __init__(self, message, *, operation=None):
        super().__init__(message)
        self.operation = operation


class UndeterminedCoefficientError(EngineError):
    """A Laurent coefficient below the stored window was requested."""

    code = "UNDETERMINED_COEFFICIENT"


class ModuleMismatchError(EngineError):
    """A mode was applied to a vector living in the wrong module."""

    code = "MODULE_MISMATCH"


class CriticalLevelError(EngineError):
    """Virasoro modes requested at the critical level."""

    code = "CRITICAL_LEVEL"


class NotCriticalError(EngineError):
    """Central field modes requested away from the critical level."""

    code = "NOT_CRITICAL"


class MissingCapError(EngineError):
    """A degree-truncated basis needs an exponent cap for weight-zero modes."""

    code = "MISSING_CAP"


class WindowTooSmallError(EngineError):
    """Classification needs coefficients below the stored window."""

    code = "WINDOW_TOO_SMALL"


class NotEigenvectorError(EngineError):
    """A mode expected to act as a scalar produced new basis directions."""

    code = "NOT_EIGENVECTOR"


class InadmissibleFunctionalError(EngineError):
    """The one-dimensional character fails to kill a bracket of the subalgebra."""

    code = "INADMISSIBLE_FUNCTIONAL"


class UnsupportedModeError(EngineError):
    code = "UNSUPPORTED"


class UnknownCheckError(EngineError):
    code = "UNKNOWN_CHECK"


class ConfigInvalidError(EngineError):
    """Run configuration failed validation; ``field`` names the bad entry."""

    code = "CONFIG_INVALID"

    def __init__(self, message, *, field=None):
        super().__init__(message)
        self.field = field
