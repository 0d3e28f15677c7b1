"""
Exception hierarchy for fhe-keygen.

Every error raised on purpose by the library derives from KeygenError so that
callers (the CLI in particular) can tell domain failures from programming
errors.
"""

from typing import Optional


class KeygenError(Exception):
    """Base class for all fhe-keygen errors."""

    pass


class InvalidParametersError(KeygenError, ValueError):
    """Raised when an argument violates an operation's precondition."""

    pass


class NotCoprimeError(KeygenError):
    """Raised when the generator shares a factor with x^n + 1 (Res = 0)."""

    pass


class SingularMatrixError(KeygenError, ValueError):
    """Raised when an exact elimination meets a singular matrix."""

    pass


class NotInvertibleError(KeygenError, ArithmeticError):
    """Raised when a modular inverse does not exist."""

    pass


class HnfStructureError(KeygenError):
    """Raised when an HNF lacks the divisibility structure of an ideal lattice."""

    pass


class RetriesExhaustedError(KeygenError):
    """Raised when key generation runs out of candidate generators."""

    def __init__(self, algorithm: str, trials: int):
        super().__init__(
            f"{algorithm}: no valid key after {trials} candidate generators"
        )
        self.algorithm = algorithm
        self.trials = trials


class KeyFileError(KeygenError, ValueError):
    """Raised when a key, polynomial or matrix file is malformed."""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ReportFormatError(KeygenError, ValueError):
    """Raised when a JSON or CSV report cannot be parsed back."""

    pass


class ConfigurationError(KeygenError):
    """Raised when a configuration file is present but invalid."""

    pass
