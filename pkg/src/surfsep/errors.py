class EmbeddingError(ValueError):
    """Malformed rotation system or SEM1 data."""


class PreconditionError(ValueError):
    """An operation was called outside its stated domain."""


class InternalError(AssertionError):
    """A state the algorithms prove impossible was reached."""
