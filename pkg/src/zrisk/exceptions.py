"""Exception hierarchy.

Every error carries a module-qualified ``code`` (e.g. ``"fuzzy.domain"``)
so the CLI can report it without parsing messages.
"""


class ZRiskError(Exception):
    """Base class for all errors raised by zrisk."""

    code = "zrisk.error"

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code

    def __str__(self):
        return f"[{self.code}] {super().__str__()}"


class ValidationError(ZRiskError, ValueError):
    """Malformed or inconsistent input data."""

    code = "validation.invalid"


class ScaleLookupError(ValidationError, KeyError):
    """Unknown linguistic term code."""

    code = "scales.unknown-term"

    # KeyError.__str__ would repr() the message
    __str__ = ZRiskError.__str__


class DomainError(ZRiskError, ValueError):
    """Arithmetic requested outside its mathematical domain."""

    code = "fuzzy.domain"


class DegenerateInputError(ZRiskError, ValueError):
    """Input is well formed but makes the computation undefined."""

    code = "zrisk.degenerate"


class SingularDesignError(DegenerateInputError):
    """Regression design matrix is rank deficient."""

    code = "stats.singular"
