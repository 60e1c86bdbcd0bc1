"""Exceptions used by nilstalk."""


class Error(Exception):
    """Base exception class."""


class DomainError(Error):
    """Raised when an input is outside the domain of an operation."""


class InvalidCase(DomainError):
    """Raised when an unknown or unsupported case is requested."""


class InadmissibleCharacteristic(DomainError):
    """Raised when a case has no answer in the requested characteristic."""


class PreconditionError(DomainError):
    """Raised when a Gysin base does not have free, even cohomology."""


class ContainmentError(Error):
    """Raised when a summand is not contained in the group it is removed from."""


class InconsistentTablesError(Error):
    """Raised when stalk tables do not determine a valid decomposition matrix."""
