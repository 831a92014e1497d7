"""Exception types shared across the package."""


class OutOfRangeError(IndexError):
    """A 1-based query index fell outside its valid range."""


class FormatError(ValueError):
    """A serialized payload is malformed, truncated, or corrupt."""
