from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from ..errors import SpaceMismatchError
from ..measures.algebra import marginal, support_witness, weighted_sum
from ..model.blocks import Presentation, Signature
from ..model.group_types import GroupType
from ..model.measure import AtomicMeasure
from .uniqueness import require_valid


def _marginal_family(presentation: Presentation) -> list[AtomicMeasure]:
    # fixed enumeration: signatures by (length, exponents), then layer, then coordinate
    return [
        marginal(measure, i)
        for (_kappa, _layer), measure in presentation.entries.items()
        for i in range(1, measure.arity + 1)
    ]


def minimal_measure(
    presentation: Presentation, group_type: GroupType = GroupType.MEASURABLE
) -> AtomicMeasure:
    """Weighted sum, coefficients 2^-t, of every marginal of every entry."""
    require_valid(presentation, group_type=group_type)
    family = _marginal_family(presentation)
    if not family:
        return AtomicMeasure.zero(presentation.space, 1)
    coeffs = [Fraction(1, 2**t) for t in range(1, len(family) + 1)]
    return weighted_sum(family, coeffs)


@dataclass(frozen=True)
class FactorizationCheck:
    factors: bool
    signature: Signature | None = None
    layer: int | None = None
    coordinate: int | None = None
    point: str | None = None

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"factors": self.factors}
        if not self.factors:
            data["witness"] = {
                "kappa": list(self.signature.exponents) if self.signature else None,
                "layer": self.layer,
                "coordinate": self.coordinate,
                "point": self.point,
            }
        return data


def factors_through(presentation: Presentation, nu: AtomicMeasure) -> FactorizationCheck:
    """Whether the representation factors through L0(nu, T): all marginals << nu."""
    if nu.arity != 1 or not nu.space.same_points(presentation.space):
        msg = "nu must be an arity-1 measure on the presentation's space."
        raise SpaceMismatchError(msg)
    for (kappa, layer), measure in presentation.entries.items():
        for i in range(1, measure.arity + 1):
            witness = support_witness(marginal(measure, i), nu)
            if witness is not None:
                return FactorizationCheck(False, kappa, layer, i, witness[0])
    return FactorizationCheck(True)
