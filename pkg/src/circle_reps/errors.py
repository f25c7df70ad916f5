from __future__ import annotations

from typing import Any, Mapping


class DomainError(ValueError):
    """Input is well formed but violates a mathematical precondition."""

    def __init__(self, message: str, witness: Mapping[str, Any] | None = None) -> None:
        super().__init__(message)
        self.witness = dict(witness) if witness is not None else None

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"type": type(self).__name__, "message": str(self)}
        if self.witness is not None:
            data["witness"] = self.witness
        return data


class SpaceMismatchError(DomainError):
    pass


class ConditionViolationError(DomainError):
    pass


class NonIntegralOperatorError(DomainError):
    pass


class ToleranceError(DomainError):
    pass


class WeightExtractionError(ToleranceError):
    pass


class InputFormatError(ValueError):
    """A document could not be parsed into the expected structure."""
