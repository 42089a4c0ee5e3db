"""
Error types for causal multiteam checking.

Every error raised on purpose by this package derives from
CausalMultiteamError. Errors caused by bad input also derive from ValueError,
so callers that only care about "the input was wrong" can catch that.
Guard errors form their own branch: the CLI maps them to exit code 3.
"""

from typing import List, Optional


class CausalMultiteamError(Exception):
    """Base class for all package errors."""


class ConfigError(CausalMultiteamError, ValueError):
    """An environment setting has an unusable value."""


class SignatureError(CausalMultiteamError, ValueError):
    """Malformed signature: duplicate variables, empty or repeating ranges."""


class ModelValidationError(CausalMultiteamError, ValueError):
    """A causal multiteam breaks one or more of its invariants."""

    def __init__(self, message: str, violations: Optional[List[str]] = None):
        self.violations = list(violations or [])
        if self.violations:
            message = f"{message}: " + "; ".join(self.violations)
        super().__init__(message)


class ModelFileError(ModelValidationError):
    """A model or signature file could not be read or did not validate."""


class InconsistentInterventionError(CausalMultiteamError, ValueError):
    """An intervention assigns two different values to one variable."""


class EmptyMultiteamError(CausalMultiteamError, ValueError):
    """Probabilities are undefined on the empty multiteam."""


class FormulaSyntaxError(CausalMultiteamError, ValueError):
    """Formula text does not match the grammar."""

    def __init__(self, message: str, text: str = "", line: int = 1, column: int = 1):
        self.text = text
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class BindingError(CausalMultiteamError, ValueError):
    """A formula mentions a variable or value unknown to the signature."""


class TwoLevelError(CausalMultiteamError, ValueError):
    """A probabilistic formula sits where only a CO formula is allowed."""


class WrongFragmentError(CausalMultiteamError, ValueError):
    """A rewrite or compiler was handed a formula outside its fragment."""


class LawsRequiredError(CausalMultiteamError, ValueError):
    """The formula is law-sensitive and no function component was supplied."""


class InvalidLawsError(CausalMultiteamError, ValueError):
    """A function component does not fit the signature."""


class DimensionMismatchError(CausalMultiteamError, ValueError):
    """Inequalities, sets or points of different dimension were combined."""


class ClassExceedsTargetError(CausalMultiteamError, ValueError):
    """An inequality set is outside the requested inequality class."""


class NotSynthesizableError(CausalMultiteamError, ValueError):
    """No formula of the target fragment is produced for this inequality."""


class ZeroCoefficientError(CausalMultiteamError, ValueError):
    """Cannot eliminate a variable whose coefficient is zero."""


class DeltaDomainError(CausalMultiteamError, ValueError):
    """The conic discriminant is only defined for delta strictly in (0, 1)."""


class OracleModeError(CausalMultiteamError, ValueError):
    """Counterfactual formulas cannot be certified without laws."""


class GuardExceededError(CausalMultiteamError):
    """An enumeration or search would exceed a configured bound."""


class SplitBoundExceededError(GuardExceededError):
    """Split search was requested on a multiteam above the split bound."""
