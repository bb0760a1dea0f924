class NumericError(RuntimeError):
    """Raised when an optimization or objective produces non-finite values."""
