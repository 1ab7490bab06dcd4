"""Exception types shared across the package."""


class ConfigMismatchError(ValueError):
    """Two values built under different (p, n) configurations were combined."""


class ParseError(ValueError):
    """Expression text violates the grammar; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ResourceGuardError(RuntimeError):
    """A computation was refused because it exceeds the supported desk scale."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; indicates an implementation bug."""
