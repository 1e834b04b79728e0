"""Exception hierarchy shared by every module."""


class OddSubError(Exception):
    """Base class for all library errors."""


class InvalidInput(OddSubError, ValueError):
    """Parameters or data violate an operation's preconditions."""


class ResourceLimit(OddSubError):
    """A configured cap (vertices, colourings, search budget) was exceeded."""


class ConstructionBug(OddSubError):
    """A construction produced a set or path that fails its own self-check."""


class AlgorithmInvariantViolated(OddSubError):
    """A step that the underlying proof guarantees has failed.

    ``state`` carries whatever was known at the point of failure.
    """

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state or {}
