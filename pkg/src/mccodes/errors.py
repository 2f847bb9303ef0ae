"""Exception hierarchy; CLI exit codes hang off these classes."""


class MCError(Exception):
    exit_code = 1


class ValidationError(MCError, ValueError):
    """Bad input: wrong lengths, malformed multisets, unsupported parameters."""

    exit_code = 2


class GuardError(MCError):
    """A brute-force instance exceeds its size guard."""

    exit_code = 3

    def __init__(self, message: str, limit: int, requested: int):
        super().__init__(f"{message} (limit {limit}, requested {requested})")
        self.limit = limit
        self.requested = requested


class InvariantViolation(MCError):
    """A property that the construction guarantees was observed to fail."""

    exit_code = 4


class DecodeError(ValidationError):
    """Decoder failure tagged with the pipeline stage that raised it."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
        self.reason = message
