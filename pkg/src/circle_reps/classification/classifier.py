from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Any, Sequence

from ..model.blocks import Block, Presentation, Signature, WeightMultiset
from ..model.measure import AtomicMeasure
from ..model.space import Atom, OrderedSpace
from ..representation.blocks import presentation_weights, sort_block
from ..utils.logging_utils import get_logger
from .layering import layer_normalize, layers_from_counts, multiplicity_layers

logger = get_logger(__name__)


@dataclass(frozen=True)
class ClassificationResult:
    """Canonical presentation of the nontrivial part plus the fixed dimension."""

    fixed_dim: int
    canonical: Presentation

    def weights(self) -> WeightMultiset:
        return reconstruct(self.canonical).with_fixed(self.fixed_dim)

    def layer_sizes(self) -> dict[Signature, list[int]]:
        return {
            kappa: [len(m.atoms) for m in self.canonical.layers(kappa)]
            for kappa in self.canonical.signatures()
        }


def signature_of(
    space: OrderedSpace, vector: Sequence[int]
) -> tuple[Signature, Atom] | None:
    """Signature and the (A2)+(A3) atom whose block character equals ``vector``.

    Returns ``None`` for the zero vector (a fixed vector).
    """
    if len(vector) != len(space):
        msg = f"Weight vector has {len(vector)} entries, expected {len(space)}"
        raise ValueError(msg)
    pairs = sorted(
        ((int(m), i) for i, m in enumerate(vector) if m != 0),
    )
    if not pairs:
        return None
    kappa = Signature(tuple(m for m, _ in pairs))
    atom = tuple(space.points[i] for _, i in pairs)
    return kappa, atom


def classify(weights: WeightMultiset) -> ClassificationResult:
    """Canonical presentation: per signature, atom p in layer j iff mult(p) >= j."""
    space = weights.space
    counts: dict[Signature, Counter[Atom]] = {}
    fixed = 0
    for vector, multiplicity in weights.items():
        found = signature_of(space, vector)
        if found is None:
            fixed += multiplicity
            continue
        kappa, atom = found
        counts.setdefault(kappa, Counter())[atom] += multiplicity

    layers = {
        kappa: layers_from_counts(space, len(kappa), per_atom)
        for kappa, per_atom in counts.items()
    }
    canonical = Presentation.from_layers(space, layers)
    logger.debug(
        "Classified %d vectors into %d signatures (fixed_dim=%d)",
        weights.total,
        len(layers),
        fixed,
    )
    return ClassificationResult(fixed_dim=fixed, canonical=canonical)


def reconstruct(presentation: Presentation) -> WeightMultiset:
    return presentation_weights(presentation)


def _sorted_measures(presentation: Presentation) -> dict[Signature, list[AtomicMeasure]]:
    per_kappa: dict[Signature, list[AtomicMeasure]] = {}
    for (kappa, _layer), measure in presentation.entries.items():
        for block in sort_block(Block(signature=kappa, measure=measure)):
            per_kappa.setdefault(kappa, []).append(block.measure)
    return per_kappa


def normalize_presentation(presentation: Presentation) -> Presentation:
    """Sort every entry into order cells, then layer each signature's measures.

    Entries must satisfy the diagonal condition; the result satisfies every
    condition and presents the same representation.
    """
    layered = {
        kappa: layer_normalize(measures)
        for kappa, measures in _sorted_measures(presentation).items()
    }
    return Presentation.from_layers(presentation.space, layered, base=presentation.base)


def direct_sum(p: Presentation, q: Presentation) -> Presentation:
    """Canonical-support presentation of the direct sum of two presentations."""
    if not p.space.same_points(q.space):
        msg = "Cannot form the direct sum of presentations over different spaces."
        raise ValueError(msg)
    left, right = _sorted_measures(p), _sorted_measures(q)
    layered = {
        kappa: multiplicity_layers(left.get(kappa, []) + right.get(kappa, []))
        for kappa in set(left) | set(right)
    }
    bases = [b for b in (p.base, q.base) if b is not None]
    base = bases[0] + bases[1] if len(bases) == 2 else (bases[0] if bases else None)
    return Presentation.from_layers(p.space, layered, base=base)


def result_summary(result: ClassificationResult) -> dict[str, Any]:
    return {
        "fixed_dim": result.fixed_dim,
        "signatures": len(result.canonical.signatures()),
        "entries": len(result.canonical.entries),
        "dimension": result.weights().total,
    }
