"""Exception types raised by the selection routines."""


class SelectionError(Exception):
    """Base class for all errors raised by this package."""


class OutOfRangeError(SelectionError, IndexError):
    """A count or layer index lies outside the valid range."""


class InvalidConfigError(SelectionError, ValueError):
    """A configuration value (growth rate, value range, ...) is not usable."""


class InvalidInputError(SelectionError, ValueError):
    """Input data is empty, multi-dimensional, non-numeric, or contains NaN."""


class AgreementError(SelectionError):
    """Two selection methods returned different multisets for one instance."""

    def __init__(self, message, seed=None):
        super().__init__(message)
        self.seed = seed
