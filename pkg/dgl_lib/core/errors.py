"""
Exception hierarchy for the workbench.

Every exception carries the process exit code the CLI reports when it
escapes a command: 1 verification failure, 2 usage error, 3 capability or
coverage error.
"""

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_COVERAGE = 3


class WorkbenchError(Exception):
    """Base class for all workbench errors."""
    exit_code = EXIT_USAGE


# --- Usage -----------------------------------------------------------------

class UsageError(WorkbenchError, ValueError):
    """The command line or a configuration file is malformed."""


class UnknownExampleError(UsageError):
    """An example name is not registered."""


class ParameterError(UsageError):
    """An example parameter is missing, unknown or out of range."""


# --- Domain ----------------------------------------------------------------

class ShapeError(WorkbenchError, ValueError):
    """Matrix dimensions do not match."""


class SingularMatrixError(WorkbenchError, ValueError):
    """A matrix has zero determinant where an inverse is required."""


class OwnershipError(WorkbenchError, ValueError):
    """An element was handed to a group (or fragment) that does not own it."""


class DomainError(WorkbenchError, ValueError):
    """An argument violates a precondition of the operation."""


class OutOfDomainError(DomainError):
    """A pair (h, k) lies outside Omega(H, K)."""


class ValidationError(WorkbenchError, ValueError):
    """A constructed object fails its defining checks."""


class AdmissibilityError(ValidationError):
    """H and K do not form an admissible pair on the enumerated sample."""


class FreenessViolation(ValidationError):
    """Two distinct reduced words evaluated to the same matrix."""


class InvarianceError(DomainError):
    """A unit subset that must be invariant is not."""


class RepresentationError(WorkbenchError, ValueError):
    """Representation fibers or matrices are inconsistent."""


class SupportError(DomainError):
    """A measure vanishes on a unit where full support is required."""


# --- Coverage / capability -------------------------------------------------

class CapabilityError(WorkbenchError, RuntimeError):
    """The requested operation is not available for this object."""
    exit_code = EXIT_COVERAGE


class CoverageError(WorkbenchError, RuntimeError):
    """A computation needs an element outside the enumerated window."""
    exit_code = EXIT_COVERAGE


# --- Verification ----------------------------------------------------------

class OracleDisagreement(WorkbenchError, RuntimeError):
    """Closed-form and brute-force factorizations disagree."""
    exit_code = EXIT_FAILURE
