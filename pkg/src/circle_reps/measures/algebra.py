from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from ..errors import SpaceMismatchError
from ..model.blocks import Signature
from ..model.measure import AtomicMeasure
from ..model.space import Atom

TupleMap = Callable[[Atom], Atom]


def ensure_compatible(a: AtomicMeasure, b: AtomicMeasure) -> None:
    if not a.space.same_points(b.space):
        msg = "Measures live on different spaces."
        raise SpaceMismatchError(msg)
    if a.arity != b.arity:
        msg = f"Measures have different arities: {a.arity} != {b.arity}"
        raise SpaceMismatchError(msg, witness={"arities": [a.arity, b.arity]})


def support_witness(a: AtomicMeasure, b: AtomicMeasure) -> Atom | None:
    """First atom (coordinatewise <_X order) charged by ``a`` but not by ``b``."""
    ensure_compatible(a, b)
    for atom in a.atoms:
        if atom not in b.atoms:
            return atom
    return None


def abs_continuous(a: AtomicMeasure, b: AtomicMeasure) -> bool:
    """a << b; for atomic measures this is support inclusion."""
    return support_witness(a, b) is None


def mutually_equivalent(a: AtomicMeasure, b: AtomicMeasure) -> bool:
    ensure_compatible(a, b)
    return a.support == b.support


def singular(a: AtomicMeasure, b: AtomicMeasure) -> bool:
    ensure_compatible(a, b)
    return a.support.isdisjoint(b.support)


def lebesgue_decompose(
    m: AtomicMeasure, ref: AtomicMeasure
) -> tuple[AtomicMeasure, AtomicMeasure]:
    """Split ``m`` into a part << ``ref`` and a part singular to ``ref``."""
    ensure_compatible(m, ref)
    ac = {a: w for a, w in m.atoms.items() if a in ref.atoms}
    sing = {a: w for a, w in m.atoms.items() if a not in ref.atoms}
    return (
        AtomicMeasure(space=m.space, arity=m.arity, atoms=ac),
        AtomicMeasure(space=m.space, arity=m.arity, atoms=sing),
    )


def pushforward(
    lam: AtomicMeasure, f: TupleMap, arity: int | None = None
) -> AtomicMeasure:
    """Image measure under a tuple map; atoms with equal image add their weights.

    ``arity`` is required only when ``lam`` is zero and the image arity differs.
    """
    image: dict[Atom, Fraction] = {}
    for atom, weight in lam.atoms.items():
        try:
            target = tuple(f(atom))
        except (KeyError, IndexError) as exc:
            msg = f"Map is undefined on support atom {atom}"
            raise SpaceMismatchError(msg, witness={"atom": list(atom)}) from exc
        image[target] = image.get(target, Fraction(0)) + weight
    if arity is None:
        arity = len(next(iter(image))) if image else lam.arity
    return AtomicMeasure(space=lam.space, arity=arity, atoms=image)


def marginal(lam: AtomicMeasure, i: int) -> AtomicMeasure:
    """(pi_i)_* lambda for a 1-based coordinate index ``i``."""
    if not 1 <= i <= lam.arity:
        msg = f"Coordinate index {i} out of range 1..{lam.arity}"
        raise SpaceMismatchError(msg)
    return pushforward(lam, lambda atom: (atom[i - 1],), arity=1)


def marginals(lam: AtomicMeasure) -> list[AtomicMeasure]:
    return [marginal(lam, i) for i in range(1, lam.arity + 1)]


def weighted_sum(
    measures: Sequence[AtomicMeasure], coeffs: Sequence[Fraction | int]
) -> AtomicMeasure:
    if len(measures) != len(coeffs):
        msg = f"Got {len(measures)} measures but {len(coeffs)} coefficients"
        raise SpaceMismatchError(msg)
    if not measures:
        msg = "weighted_sum needs at least one measure"
        raise SpaceMismatchError(msg)
    head = measures[0]
    total: dict[Atom, Fraction] = {}
    for measure, raw in zip(measures, coeffs):
        ensure_compatible(head, measure)
        coeff = Fraction(raw)
        if coeff <= 0:
            msg = f"Coefficients must be positive, got {coeff}"
            raise ValueError(msg)
        for atom, weight in measure.atoms.items():
            total[atom] = total.get(atom, Fraction(0)) + coeff * weight
    return AtomicMeasure(space=head.space, arity=head.arity, atoms=total)


def normalize(m: AtomicMeasure) -> AtomicMeasure:
    mass = m.total_mass
    if mass == 0:
        msg = "Cannot normalize the zero measure."
        raise ValueError(msg)
    return m.scale(1 / mass)


def diagonal_witness(lam: AtomicMeasure) -> Atom | None:
    for atom in lam.atoms:
        if len(set(atom)) != len(atom):
            return atom
    return None


def check_a2(lam: AtomicMeasure) -> bool:
    """No support atom has two equal coordinates."""
    return diagonal_witness(lam) is None


def order_witness(lam: AtomicMeasure, kappa: Signature) -> Atom | None:
    if lam.arity != len(kappa):
        msg = f"Arity {lam.arity} does not match |kappa| = {len(kappa)}"
        raise SpaceMismatchError(msg)
    space = lam.space
    ties = [
        (i, j)
        for i, j in combinations(range(lam.arity), 2)
        if kappa.exponents[i] == kappa.exponents[j]
    ]
    for atom in lam.atoms:
        for i, j in ties:
            if space.precedes(atom[j], atom[i]):
                return atom
    return None


def check_a3(lam: AtomicMeasure, kappa: Signature) -> bool:
    """Coordinates sharing an exponent appear in <_X order on every support atom."""
    return order_witness(lam, kappa) is None
