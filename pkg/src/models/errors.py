from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class ConfigViolation:
    """One violated configuration constraint."""

    field: str
    value: Any
    message: str

    def __str__(self) -> str:
        return f"{self.field}={self.value!r}: {self.message}"


class ConfigError(ValueError):
    """Raised when a SimConfig (or its JSON document) is invalid."""

    def __init__(self, violations: list[ConfigViolation]):
        self.violations = list(violations)
        lines = "\n".join(f"  - {v}" for v in self.violations)
        super().__init__(f"Invalid configuration ({len(self.violations)} violation(s)):\n{lines}")


class ReassignmentError(ValueError):
    """Raised when reported weights do not cover a cluster's closed member set."""
