"""Exception hierarchy shared across the package.

``QuohalError`` is the root.  ``InputError`` subclasses signal problems with
user-supplied data (malformed files, unresolved references, precondition
violations) and map to CLI exit code 3; verification *failures* are never
exceptions — they are report entries.
"""

from __future__ import annotations

__all__ = [
    "QuohalError",
    "InputError",
    "FormatError",
    "ConstructionError",
    "EmbeddingError",
    "RegimeError",
    "PreconditionError",
]


class QuohalError(Exception):
    """Base class for all package-specific errors."""


class InputError(QuohalError):
    """User-supplied data is unusable (exit code 3 at the CLI)."""


class FormatError(InputError):
    """Malformed instance file; carries a location string for diagnostics."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{message}" + (f" (at {location})" if location else ""))


class ConstructionError(QuohalError):
    """A constructor could not produce a valid object (e.g. no solution for β)."""


class EmbeddingError(InputError):
    """An inclusion map is not an injective unital algebra map."""


class RegimeError(InputError):
    """An operation was invoked outside the embedding regime it requires."""


class PreconditionError(InputError):
    """A hard precondition failed (e.g. antipode not invertible)."""
