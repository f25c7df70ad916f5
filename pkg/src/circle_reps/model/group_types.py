from __future__ import annotations

from enum import Enum, auto


class GroupType(Enum):
    """Which function group a presentation classifies.

    MEASURABLE is L0(mu, T): presentations carry a base measure and the
    marginal condition applies. CONTINUOUS is C(M, T) for zero-dimensional M:
    no marginal condition.
    """

    MEASURABLE = auto()
    CONTINUOUS = auto()

    def condition_label(self, condition: str) -> str | None:
        return _LABELS[self].get(condition)


_LABELS: dict[GroupType, dict[str, str]] = {
    GroupType.MEASURABLE: {
        "marginal": "A1",
        "distinct": "A2",
        "ordered": "A3",
        "chain": "A4",
    },
    GroupType.CONTINUOUS: {
        "distinct": "B1",
        "ordered": "B2",
        "chain": "B3",
    },
}
