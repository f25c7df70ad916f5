from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Mapping, Sequence

from ..measures.algebra import ensure_compatible, lebesgue_decompose, weighted_sum
from ..model.measure import AtomicMeasure
from ..model.space import Atom, OrderedSpace


def layers_from_counts(
    space: OrderedSpace, arity: int, counts: Mapping[Atom, int]
) -> list[AtomicMeasure]:
    """Unit-weight layers: atom p sits in layer j iff counts[p] >= j."""
    depth = max(counts.values(), default=0)
    return [
        AtomicMeasure.uniform(
            space, (a for a, c in counts.items() if c >= j), arity=arity
        )
        for j in range(1, depth + 1)
    ]


def multiplicity_layers(measures: Sequence[AtomicMeasure]) -> list[AtomicMeasure]:
    """Layering by support multiplicity, padded with zero layers to the input length."""
    if not measures:
        return []
    head = measures[0]
    for m in measures[1:]:
        ensure_compatible(head, m)
    counts: Counter[Atom] = Counter()
    for m in measures:
        counts.update(m.support)
    layers = layers_from_counts(head.space, head.arity, counts)
    padding = [AtomicMeasure.zero(head.space, head.arity)] * (len(measures) - len(layers))
    return layers + padding


def layer_normalize(measures: Sequence[AtomicMeasure]) -> list[AtomicMeasure]:
    """Rearrange a list of measures into a chain layer_1 >> layer_2 >> ...

    Measure i is split against the chain built from measures 1..i-1: the part
    singular to the first layer stays there, the rest is split against the second
    layer, and so on. Layer j is then sum_{i >= j} 2^{-(i-j)} lambda^i_j, so the
    direct sum of sigma(kappa, .) is preserved up to equivalence.
    """
    if not measures:
        return []
    head = measures[0]
    for m in measures[1:]:
        ensure_compatible(head, m)

    # pieces[i][j] is lambda^{i+1}_{j+1}
    pieces: list[list[AtomicMeasure]] = []
    for i, measure in enumerate(measures):
        rest = measure
        parts: list[AtomicMeasure] = []
        for j in range(i):
            chain_j = _plain_sum([pieces[t][j] for t in range(j, i)])
            ac, sing = lebesgue_decompose(rest, chain_j)
            parts.append(sing)
            rest = ac
        parts.append(rest)
        pieces.append(parts)

    n = len(measures)
    result: list[AtomicMeasure] = []
    for j in range(n):
        terms = [pieces[i][j] for i in range(j, n)]
        coeffs = [Fraction(1, 2 ** (i - j)) for i in range(j, n)]
        result.append(weighted_sum(terms, coeffs))
    return result


def _plain_sum(measures: Sequence[AtomicMeasure]) -> AtomicMeasure:
    return weighted_sum(measures, [1] * len(measures))
