from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from ..errors import ConditionViolationError, SpaceMismatchError
from ..measures.algebra import support_witness
from ..model.blocks import Presentation, Signature, WeightMultiset
from ..model.group_types import GroupType
from ..model.space import Atom
from ..representation.validation import validate_presentation
from .classifier import classify


@dataclass(frozen=True)
class ComparisonResult:
    equivalent: bool
    signature: Signature | None = None
    layer: int | None = None
    atom: Atom | None = None
    present_in: str | None = None

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"equivalent": self.equivalent}
        if not self.equivalent and self.signature is not None:
            data["witness"] = {
                "kappa": list(self.signature.exponents),
                "layer": self.layer,
                "atom": list(self.atom) if self.atom is not None else None,
                "present_in": self.present_in,
            }
        return data


def require_valid(
    presentation: Presentation,
    name: str = "presentation",
    group_type: GroupType = GroupType.MEASURABLE,
) -> None:
    report = validate_presentation(presentation, group_type)
    if not report.ok:
        first = report.violations()[0]
        msg = f"The {name} violates {first.condition} at ({first.signature}, {first.layer})"
        raise ConditionViolationError(msg, witness=first.to_dict())


def compare_presentations(
    p: Presentation,
    q: Presentation,
    group_type: GroupType = GroupType.MEASURABLE,
) -> ComparisonResult:
    """Slotwise mutual absolute continuity of two valid presentations."""
    if not p.space.same_points(q.space):
        msg = "Presentations live on different spaces."
        raise SpaceMismatchError(msg)
    require_valid(p, "first presentation", group_type)
    require_valid(q, "second presentation", group_type)

    keys = sorted(
        set(p.entries) | set(q.entries), key=lambda k: (*k[0].sort_key, k[1])
    )
    for kappa, layer in keys:
        left, right = p.entry(kappa, layer), q.entry(kappa, layer)
        atom = support_witness(left, right)
        if atom is not None:
            return ComparisonResult(False, kappa, layer, atom, "first")
        atom = support_witness(right, left)
        if atom is not None:
            return ComparisonResult(False, kappa, layer, atom, "second")
    return ComparisonResult(True)


def equivalent_representations(a: WeightMultiset, b: WeightMultiset) -> bool:
    """Unitary equivalence of the representations two weight multisets describe."""
    left, right = classify(a), classify(b)
    if left.fixed_dim != right.fixed_dim:
        return False
    return compare_presentations(left.canonical, right.canonical).equivalent
