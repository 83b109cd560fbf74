"""Exception hierarchy shared by the library and the command line."""

from typing import Optional

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RUNTIME = 3


class NgramEstimationError(Exception):
    """Base class for every error raised by this package."""

    exit_code = EXIT_RUNTIME


class ConfigurationError(NgramEstimationError, ValueError):
    """A hash family, table or sketch was configured with invalid parameters."""

    exit_code = EXIT_USAGE


class UsageError(NgramEstimationError):
    """An operation was called in a state or with arguments it does not accept."""

    exit_code = EXIT_USAGE


class DomainError(NgramEstimationError, ValueError):
    """An argument lies outside the domain of a closed-form bound."""

    exit_code = EXIT_USAGE


class EmptyInputError(NgramEstimationError):
    """The stream holds fewer symbols than the n-gram length."""


class UndefinedEstimateError(NgramEstimationError):
    """The requested estimate has no value for the current sketch contents."""


class OracleCapacityError(NgramEstimationError):
    """Exact tabulation would exceed the configured key cap."""

    def __init__(self, limit: int):
        super().__init__(f"exact tabulation exceeded {limit} distinct keys")
        self.limit = limit


class StreamDecodeError(NgramEstimationError):
    """Malformed UTF-8 was met while reading code points."""

    def __init__(self, offset: int, reason: str):
        super().__init__(f"invalid UTF-8 at byte offset {offset}: {reason}")
        self.offset = offset


class LevelExhaustedError(NgramEstimationError):
    """The sketch needed a level beyond the hash width L.

    The partial estimate (buffer size times 2^L at the moment of failure) is
    attached so callers can still report it.
    """

    def __init__(self, level: int, buffered: int, partial_estimate: float, width: Optional[int] = None):
        super().__init__(
            f"sketch level would exceed the hash width (level={level}, buffered={buffered}); "
            "increase L or M"
        )
        self.level = level
        self.buffered = buffered
        self.partial_estimate = partial_estimate
        self.width = width
