"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """A parameter or structural requirement was violated at setup time."""


class InputRangeError(ValueError):
    """A time lookup fell outside the span covered by a series or history."""
