class InvariantViolation(AssertionError):
    """An internal consistency check failed; this always indicates a bug."""
