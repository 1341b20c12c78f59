"""Exception hierarchy shared by the search engines and the CLI."""
from __future__ import annotations


class CollisionSearchError(Exception):
    """Base class for every error raised by this package."""


class ConfigurationError(CollisionSearchError, ValueError):
    """A parameter is outside the range an operation accepts."""


class VerificationError(CollisionSearchError):
    """An exact re-verification disagreed with the recorded relation."""


class ScanInvariantError(CollisionSearchError):
    """The priority-queue scan observed an out-of-order pop or a stale table slot."""


class CheckpointError(CollisionSearchError):
    """A checkpoint file could not be read or is malformed."""


class CheckpointMismatchError(CheckpointError):
    """A checkpoint was written for a different sieve plan."""


__all__ = [
    "CollisionSearchError",
    "ConfigurationError",
    "VerificationError",
    "ScanInvariantError",
    "CheckpointError",
    "CheckpointMismatchError",
]
