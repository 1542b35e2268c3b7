"""Shared exception types."""

from __future__ import annotations


class CapacityError(RuntimeError):
    """A resource budget (qubits, enumeration size) would be exceeded.

    Carries the required and available amounts so callers can print the
    exact deficit.
    """

    def __init__(self, what: str, required: int, available: int):
        self.what = what
        self.required = int(required)
        self.available = int(available)
        super().__init__(
            f"{what}: requires {self.required}, available {self.available} "
            f"(deficit {self.required - self.available})"
        )
