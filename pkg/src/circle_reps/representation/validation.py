from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..measures.algebra import (
    diagonal_witness,
    marginal,
    order_witness,
    support_witness,
)
from ..model.blocks import Presentation, Signature
from ..model.group_types import GroupType
from ..model.space import Atom


@dataclass(frozen=True)
class Violation:
    condition: str
    signature: Signature
    layer: int
    atom: Atom
    coordinate: int | None = None

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "condition": self.condition,
            "kappa": list(self.signature.exponents),
            "layer": self.layer,
            "atom": list(self.atom),
        }
        if self.coordinate is not None:
            data["coordinate"] = self.coordinate
        return data


@dataclass(frozen=True)
class EntryCheck:
    signature: Signature
    layer: int
    distinct: bool
    ordered: bool
    marginal: bool | None


@dataclass(frozen=True)
class ChainCheck:
    signature: Signature
    layer: int
    holds: bool


@dataclass
class ValidationReport:
    group_type: GroupType
    entries: list[EntryCheck] = field(default_factory=list)
    chains: list[ChainCheck] = field(default_factory=list)
    found: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.found

    def violations(self) -> list[Violation]:
        return list(self.found)

    def to_dict(self) -> dict[str, Any]:
        label = self.group_type.condition_label
        return {
            "valid": self.ok,
            "group_type": self.group_type.name,
            "entries": [
                {
                    "kappa": list(e.signature.exponents),
                    "layer": e.layer,
                    label("distinct"): e.distinct,
                    label("ordered"): e.ordered,
                    **({label("marginal"): e.marginal} if e.marginal is not None else {}),
                }
                for e in self.entries
            ],
            "chains": [
                {
                    "kappa": list(c.signature.exponents),
                    "layers": [c.layer, c.layer + 1],
                    label("chain"): c.holds,
                }
                for c in self.chains
            ],
            "violations": [v.to_dict() for v in self.found],
        }


def validate_presentation(
    presentation: Presentation, group_type: GroupType = GroupType.MEASURABLE
) -> ValidationReport:
    """Check every entry and every layer chain; never raises.

    The marginal condition is checked only for MEASURABLE presentations that
    carry a base measure.
    """
    label = group_type.condition_label
    report = ValidationReport(group_type=group_type)
    base = presentation.base if group_type is GroupType.MEASURABLE else None

    for (kappa, layer), measure in presentation.entries.items():
        bad_diag = diagonal_witness(measure)
        bad_order = order_witness(measure, kappa)
        if bad_diag is not None:
            report.found.append(Violation(label("distinct"), kappa, layer, bad_diag))
        if bad_order is not None:
            report.found.append(Violation(label("ordered"), kappa, layer, bad_order))

        marginal_ok: bool | None = None
        if base is not None:
            marginal_ok = True
            for i in range(1, measure.arity + 1):
                point = support_witness(marginal(measure, i), base)
                if point is not None:
                    marginal_ok = False
                    report.found.append(
                        Violation(label("marginal"), kappa, layer, point, coordinate=i)
                    )
        report.entries.append(
            EntryCheck(
                signature=kappa,
                layer=layer,
                distinct=bad_diag is None,
                ordered=bad_order is None,
                marginal=marginal_ok,
            )
        )

    for kappa in presentation.signatures():
        layers = presentation.layers(kappa)
        for j in range(1, len(layers)):
            upper, lower = layers[j - 1], layers[j]
            witness = support_witness(lower, upper)
            report.chains.append(ChainCheck(kappa, j, witness is None))
            if witness is not None:
                report.found.append(Violation(label("chain"), kappa, j + 1, witness))

    return report
