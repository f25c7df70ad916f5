from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Mapping

from ..errors import ConditionViolationError, DomainError
from ..measures.algebra import diagonal_witness, pushforward
from ..model.blocks import Block, Presentation, Signature, WeightMultiset, WeightVector
from ..model.space import Atom, OrderedSpace
from ..utils.logging_utils import get_logger
from ..utils.rationals import phase

logger = get_logger(__name__)

Phases = Mapping[str, Fraction]


def apply_block(block: Block, f: Phases) -> list[tuple[Atom, Fraction]]:
    """Diagonal action of U_f on the basis vector of each support atom.

    ``f`` gives the circle value at each point as a rational phase (fraction of a
    turn); the output phase is sum_i k_i f(x_i) mod 1.
    """
    kappa = block.signature.exponents
    result: list[tuple[Atom, Fraction]] = []
    for atom in block.measure.atoms:
        total = Fraction(0)
        for k, x in zip(kappa, atom):
            if x not in f:
                msg = f"Phase function is undefined at point {x!r}"
                raise DomainError(msg, witness={"point": x})
            total += k * Fraction(f[x])
        result.append((atom, phase(total)))
    return result


def atom_weight_vector(space: OrderedSpace, kappa: Signature, atom: Atom) -> WeightVector:
    vector = [0] * len(space)
    for k, x in zip(kappa.exponents, atom):
        vector[space.index(x)] += k
    return tuple(vector)


def _require_distinct(block: Block) -> None:
    bad = diagonal_witness(block.measure)
    if bad is not None:
        msg = f"Block {block.signature} charges the diagonal atom {bad}"
        raise ConditionViolationError(
            msg,
            witness={
                "condition": "A2",
                "kappa": list(block.signature.exponents),
                "atom": list(bad),
            },
        )


def block_weights(block: Block) -> WeightMultiset:
    """One weight vector per support atom; atom weights play no role."""
    _require_distinct(block)
    space = block.measure.space
    counts = Counter(
        atom_weight_vector(space, block.signature, atom) for atom in block.measure.atoms
    )
    return WeightMultiset(space=space, entries=counts)


def cell_permutation(space: OrderedSpace, kappa: Signature, atom: Atom) -> tuple[int, ...]:
    """rho in S_kappa with atom in X^rho: sorts each tie group by <_X."""
    rho = list(range(len(atom)))
    for positions in kappa.tie_groups():
        ranked = sorted(positions, key=lambda i: space.index(atom[i]))
        for slot, source in zip(positions, ranked):
            rho[slot] = source
    return tuple(rho)


def sort_block(block: Block) -> list[Block]:
    """Split over the order cells X^rho and move each cell onto X^id.

    The returned blocks satisfy (A2) and (A3); their weight multisets add up to
    ``block_weights(block)``.
    """
    _require_distinct(block)
    measure = block.measure
    space = measure.space
    kappa = block.signature

    cells: dict[tuple[int, ...], list[Atom]] = {}
    for atom in measure.atoms:
        cells.setdefault(cell_permutation(space, kappa, atom), []).append(atom)

    identity = tuple(range(measure.arity))
    if set(cells) <= {identity}:
        return [block]

    result: list[Block] = []
    for rho in sorted(cells, key=lambda r: (r != identity, r)):
        part = measure.restrict(cells[rho])
        moved = pushforward(
            part, lambda atom, rho=rho: tuple(atom[r] for r in rho), arity=measure.arity
        )
        result.append(Block(signature=kappa, measure=moved))
    logger.debug("Sorted block %s into %d cells", kappa, len(result))
    return result


def presentation_weights(presentation: Presentation) -> WeightMultiset:
    total = WeightMultiset(space=presentation.space)
    for (kappa, _layer), measure in presentation.entries.items():
        total = total + block_weights(Block(signature=kappa, measure=measure))
    return total
