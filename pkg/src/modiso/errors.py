"""Shared exception types."""


class CapExceeded(RuntimeError):
    """A configured resource cap fired; carries the cap's name for reporting."""

    def __init__(self, cap_name, message=None):
        super().__init__(message or f"cap exceeded: {cap_name}")
        self.cap_name = cap_name


class SpecParseError(ValueError):
    """Malformed input text (word grammar, family spec, field literal)."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
