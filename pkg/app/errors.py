"""
Exception hierarchy shared by the services, the CLI and the HTTP routes
"""


class ShypError(Exception):
    """Base class for every error raised by the toolkit"""


class InvalidInputError(ShypError, ValueError):
    """Malformed dimension, cardinality set, subset, vector or range"""


class ImproperPolytopeError(InvalidInputError):
    """The operation needs a full-dimensional S-hypersimplex"""


class DegenerateInputError(InvalidInputError):
    """A point set does not span the dimension the operation needs"""


class CapExceededError(ShypError):
    """A configured size cap refused an exponential enumeration"""

    def __init__(self, what: str, value: int, cap: int):
        self.what = what
        self.value = value
        self.cap = cap
        super().__init__(f"{what} = {value} exceeds the configured cap {cap}")


class VerificationError(ShypError):
    """A certificate or formula/oracle cross-check failed"""
