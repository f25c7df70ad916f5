from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

from .space import Atom, OrderedSpace

Weight = Fraction


@dataclass(frozen=True, eq=False)
class AtomicMeasure:
    """Finitely supported measure on ``space ** arity`` with exact positive weights.

    Zero weights are dropped on construction, so ``atoms`` is exactly the support.
    """

    space: OrderedSpace
    arity: int
    atoms: Mapping[Atom, Weight] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.arity < 1:
            msg = f"Arity must be a positive integer, got {self.arity}"
            raise ValueError(msg)
        cleaned: dict[Atom, Weight] = {}
        for raw_atom, raw_weight in self.atoms.items():
            atom = tuple(str(p) for p in raw_atom)
            weight = Fraction(raw_weight)
            if len(atom) != self.arity:
                msg = f"Atom {atom} has length {len(atom)}, expected {self.arity}"
                raise ValueError(msg)
            missing = [p for p in atom if p not in self.space]
            if missing:
                msg = f"Atom {atom} uses points outside the space: {missing}"
                raise ValueError(msg)
            if weight < 0:
                msg = f"Atom {atom} has negative weight {weight}"
                raise ValueError(msg)
            if weight == 0:
                continue
            cleaned[atom] = cleaned.get(atom, Fraction(0)) + weight
        ordered = {a: cleaned[a] for a in self.space.sort_atoms(cleaned)}
        object.__setattr__(self, "atoms", MappingProxyType(ordered))

    @classmethod
    def zero(cls, space: OrderedSpace, arity: int) -> AtomicMeasure:
        return cls(space=space, arity=arity)

    @classmethod
    def uniform(
        cls, space: OrderedSpace, atoms: Iterable[Atom], arity: int | None = None
    ) -> AtomicMeasure:
        """Unit weight on every listed atom."""
        atom_list = [tuple(a) for a in atoms]
        if arity is None:
            if not atom_list:
                msg = "Arity is required for an empty uniform measure"
                raise ValueError(msg)
            arity = len(atom_list[0])
        return cls(space=space, arity=arity, atoms={a: Fraction(1) for a in atom_list})

    @property
    def support(self) -> frozenset[Atom]:
        return frozenset(self.atoms)

    @property
    def total_mass(self) -> Fraction:
        return sum(self.atoms.values(), Fraction(0))

    def is_zero(self) -> bool:
        return not self.atoms

    def weight(self, atom: Atom) -> Fraction:
        return self.atoms.get(tuple(atom), Fraction(0))

    def restrict(self, atoms: Iterable[Atom]) -> AtomicMeasure:
        keep = {tuple(a) for a in atoms}
        return AtomicMeasure(
            space=self.space,
            arity=self.arity,
            atoms={a: w for a, w in self.atoms.items() if a in keep},
        )

    def scale(self, factor: Fraction | int) -> AtomicMeasure:
        factor = Fraction(factor)
        if factor < 0:
            msg = f"Scale factor must be non-negative, got {factor}"
            raise ValueError(msg)
        return AtomicMeasure(
            space=self.space,
            arity=self.arity,
            atoms={a: w * factor for a, w in self.atoms.items()},
        )

    def compatible_with(self, other: AtomicMeasure) -> bool:
        return self.arity == other.arity and self.space.same_points(other.space)

    def __add__(self, other: AtomicMeasure) -> AtomicMeasure:
        if not self.compatible_with(other):
            return NotImplemented
        merged = dict(self.atoms)
        for atom, weight in other.atoms.items():
            merged[atom] = merged.get(atom, Fraction(0)) + weight
        return AtomicMeasure(space=self.space, arity=self.arity, atoms=merged)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AtomicMeasure):
            return NotImplemented
        return self.compatible_with(other) and dict(self.atoms) == dict(other.atoms)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = ", ".join(f"{a}: {w}" for a, w in self.atoms.items())
        return f"AtomicMeasure(arity={self.arity}, {{{body}}})"
