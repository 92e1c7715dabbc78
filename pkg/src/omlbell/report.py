"""Validation reports: axiom failures as data, with element witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class ValidationReport:
    """Outcome of an exhaustive axiom check.

    Each failure is a pair ``(axiom_name, witness)`` where the witness is the
    element tuple (or value tuple) on which the axiom broke.
    """

    failures: list[tuple[str, tuple]] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.failures

    def add(self, axiom: str, witness: tuple) -> None:
        self.failures.append((axiom, witness))

    def merge(self, other: "ValidationReport") -> None:
        self.failures.extend(other.failures)

    def __bool__(self) -> bool:
        return self.valid

    def summary(self, limit: int = 5) -> str:
        if self.valid:
            return "valid"
        lines = [f"invalid ({len(self.failures)} failure(s))"]
        for axiom, witness in self.failures[:limit]:
            lines.append(f"  {axiom}: witness {witness}")
        if len(self.failures) > limit:
            lines.append(f"  ... {len(self.failures) - limit} more")
        return "\n".join(lines)
