"""Exception hierarchy shared by the pipeline and the CLI exit-code mapping."""


class StiefelError(Exception):
    """Base class for all failures raised by this package."""


class HypothesisFailure(StiefelError):
    """A hypothesis of the signature formula does not hold (CLI exit 2)."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotZeroDimensional(HypothesisFailure):
    pass


class PivotMinorDegenerate(HypothesisFailure):
    pass


class DegenerateForm(HypothesisFailure):
    def __init__(self, message, form_label=None, report=None):
        super().__init__(message, report)
        self.form_label = form_label


class ValidationError(StiefelError, ValueError):
    """Malformed problem input (CLI exit 3)."""


class ResourceLimitExceeded(StiefelError):
    """A configured computation cap was hit (CLI exit 4)."""


class OracleError(StiefelError):
    """The numeric cross-check refused to produce an answer."""


class SignTooCloseToZero(OracleError):
    pass


class SolverIncomplete(OracleError):
    pass
