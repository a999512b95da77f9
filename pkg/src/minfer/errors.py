"""Exception hierarchy.

``ValidationError`` subclasses signal bad user input (CLI exit code 1);
``NumericError`` subclasses signal a computation that cannot proceed
(CLI exit code 2). Domain outcomes that are not failures of the caller,
such as an empty level set, derive from ``MinferError`` directly.
"""


class MinferError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(MinferError, ValueError):
    """Invalid input: counts, probabilities, or arguments out of range."""


class NegativeCount(ValidationError):
    """A cell count is negative."""


class InconsistentTotals(ValidationError):
    """Margin counts exceed their sample sizes (nx > n1 or ny > n2)."""


class EmptySample(ValidationError):
    """A sample size is zero."""


class ThetaOutOfDomain(ValidationError):
    """A parameter-of-interest value lies outside [0, 1]."""


class BoundaryTheta(ValidationError):
    """theta sits exactly on an identification bound where the requested
    classification (interior vs exterior) is undefined."""


class NumericError(MinferError):
    """A numeric routine cannot produce a valid result."""


class DegenerateVariance(NumericError):
    """The normal approximation is unavailable because an estimated cell
    probability sits on {0, 1}."""


class EmptyLevelSet(MinferError):
    """No grid point reaches the requested corroboration level."""


class NoQualifyingH(MinferError):
    """No candidate offset h meets the requested assurance level."""
