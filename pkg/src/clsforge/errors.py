"""Exception hierarchy shared by every clsforge module."""


class ClsError(Exception):
    """Base class for all clsforge errors."""


class GroupMismatch(ClsError):
    """Operands belong to different groups or different suites."""


class ZeroInverse(ClsError):
    """Attempted to invert the zero scalar."""


class MalformedEncoding(ClsError):
    """An element/scalar string could not be decoded under the suite."""


class InvalidInputKey(ClsError):
    """A partial private key handed to an attack fails its genuineness check."""


class InvalidObservation(ClsError):
    """An observed signature does not verify."""


class RoleViolation(ClsError):
    """The adversary issued a query its role forbids."""


class QueryLimitExceeded(ClsError):
    pass


class SchemaError(ClsError):
    """A transcript or key file does not match the expected layout."""


class ReplayMismatch(ClsError):
    """Replaying a transcript diverged from the recorded run."""


class ConfigError(ClsError):
    pass
