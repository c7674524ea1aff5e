"""Exception types shared across the toolkit."""

from __future__ import annotations


class ScanBudgetError(RuntimeError):
    """A minor scan would exceed its configured size guard."""


class EnumerationBudgetError(RuntimeError):
    """A path-collection enumeration or search would exceed its budget."""


class NetworkFormatError(ValueError):
    """Serialized network data is malformed; message carries the position."""


class SearchExhaustedError(RuntimeError):
    """Constant search ran out of candidates; carries the partial result."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
