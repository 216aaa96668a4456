"""Three-valued outcome for truncation-limited causal checks."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["CausalVerdict"]

_STATUSES = ("Causal", "NotCausal", "Undetermined")


@dataclass(frozen=True)
class CausalVerdict:
    """Outcome of a causal decision that may be limited by finite truncation.

    ``Undetermined`` carries a reason so callers can distinguish, e.g., a
    truncation-edge artifact from an exhausted search budget.
    """

    status: str
    reason: str | None = None

    def __post_init__(self):
        if self.status not in _STATUSES:
            raise ValueError(f"status must be one of {_STATUSES}, got {self.status!r}")

    @classmethod
    def causal(cls) -> "CausalVerdict":
        return cls("Causal")

    @classmethod
    def not_causal(cls, reason: str | None = None) -> "CausalVerdict":
        return cls("NotCausal", reason)

    @classmethod
    def undetermined(cls, reason: str) -> "CausalVerdict":
        return cls("Undetermined", reason)

    @property
    def is_causal(self) -> bool:
        return self.status == "Causal"

    @property
    def is_not_causal(self) -> bool:
        return self.status == "NotCausal"

    @property
    def is_undetermined(self) -> bool:
        return self.status == "Undetermined"

    def __str__(self):
        if self.reason:
            return f"{self.status}({self.reason})"
        return self.status
