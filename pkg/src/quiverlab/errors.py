"""Error types shared across the package.

Guard violations (unsupported rank, precondition failures on public entry
points) are kept distinct from internal consistency failures so the command
line driver can map them to different exit codes.
"""
from __future__ import annotations


class GuardError(ValueError):
    """A public precondition was violated (unsupported type, bad label, ...)."""


class InternalCheckError(RuntimeError):
    """An internal invariant that should hold by construction failed."""
