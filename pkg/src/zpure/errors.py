"""Shared exception types."""


class InputError(ValueError):
    """Raised on malformed caller input: dimension or modulus mismatch,
    ill-defined maps, non-exact sequences."""


class InternalCheckError(RuntimeError):
    """Raised when a structural invariant that must always hold fails.

    This always signals a bug in the library, never a mathematical outcome.
    """
