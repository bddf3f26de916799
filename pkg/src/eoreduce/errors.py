"""Exception hierarchy shared by all modules."""


class ReductionError(Exception):
    """Base class for every error raised by the package."""


class InputError(ReductionError, ValueError):
    """Malformed input: bad shapes, indices, text or preconditions."""


class UnsupportedRingError(ReductionError):
    """The requested operation is not effective over the given ring."""


class SearchCapError(ReductionError):
    """A certified coefficient search ran past its configured cap."""

    def __init__(self, message, step=None):
        super().__init__(message if step is None else f"[{step}] {message}")
        self.step = step


class CertificateError(ReductionError):
    """An internal certificate failed to replay; indicates a bug."""
