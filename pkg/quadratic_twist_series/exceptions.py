"""Custom exceptions specific to this project"""

from typing import Any, Optional


class DomainError(ValueError):
    """Exception raised when an arithmetic operation receives input outside its domain"""


class RepeatedRootError(DomainError):
    """Exception raised when a cubic f(x) does not have 3 distinct complex roots"""


class NotInPsiError(DomainError):
    """Exception raised when a pair (u, v) is not coprime or has F(u, v) = 0"""


class PreconditionError(DomainError):
    """Exception raised when a documented precondition of an operation is violated"""


class ConfigError(Exception):
    """Exception raised when a run configuration is rejected before dispatch"""

    def __init__(self, field: str, message: str):
        super().__init__(f"invalid {field}: {message}")
        self.field = field


class OutputInvalidException(Exception):
    """Exception raised when process is unable to generate valid output"""


class ValidationTestFailedException(Exception):
    "Exception raised when a validation check fails"

    def __init__(
        self, check: str, message: str, counterexample: Optional[dict[str, Any]] = None
    ):
        super().__init__(f"{check}: {message}")
        self.check = check
        self.counterexample = counterexample or {}
