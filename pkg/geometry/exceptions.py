# exceptions.py


class GeometryError(Exception):
    """Base class for every error raised by the geometry library."""


class FieldConstructionError(GeometryError):
    """Bad characteristic, malformed or reducible modulus."""


class DomainError(GeometryError):
    """An argument lies outside the set the operation is defined on."""


class BoundExceededError(GeometryError):
    """A configured size bound would be exceeded."""


class FieldBoundError(BoundExceededError):
    """The requested field is larger than UNITAL_MAX_FIELD."""


class VerificationFailure(GeometryError):
    """A postcondition guaranteed by construction did not hold."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
