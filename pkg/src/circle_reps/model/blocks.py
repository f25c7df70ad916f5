from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .measure import AtomicMeasure
from .space import OrderedSpace

WeightVector = tuple[int, ...]
EntryKey = tuple["Signature", int]


@dataclass(frozen=True)
class Signature:
    """kappa = (k_1 <= ... <= k_n), nonzero integers."""

    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        exponents = tuple(int(k) for k in self.exponents)
        if not exponents:
            msg = "Signature must be nonempty."
            raise ValueError(msg)
        if 0 in exponents:
            msg = f"Signature entries must be nonzero: {exponents}"
            raise ValueError(msg)
        if list(exponents) != sorted(exponents):
            msg = f"Signature must be sorted ascending: {exponents}"
            raise ValueError(msg)
        object.__setattr__(self, "exponents", exponents)

    def __len__(self) -> int:
        return len(self.exponents)

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.exponents), self.exponents)

    def tie_groups(self) -> list[list[int]]:
        """Positions sharing an exponent, in ascending position order."""
        groups: dict[int, list[int]] = {}
        for i, k in enumerate(self.exponents):
            groups.setdefault(k, []).append(i)
        return list(groups.values())

    def __str__(self) -> str:
        return "(" + ",".join(str(k) for k in self.exponents) + ")"


@dataclass(frozen=True)
class Block:
    """sigma(kappa, lambda): f acts on L2(lambda) by prod_i (f o pi_i)^{k_i}."""

    signature: Signature
    measure: AtomicMeasure

    def __post_init__(self) -> None:
        if self.measure.arity != len(self.signature):
            msg = (
                f"Measure arity {self.measure.arity} does not match "
                f"|kappa| = {len(self.signature)}"
            )
            raise ValueError(msg)


@dataclass(frozen=True, eq=False)
class Presentation:
    """Family {lambda_kappa^j}; absent entries are the zero measure."""

    space: OrderedSpace
    entries: Mapping[EntryKey, AtomicMeasure] = field(default_factory=dict)
    base: AtomicMeasure | None = None

    def __post_init__(self) -> None:
        if self.base is not None:
            if self.base.arity != 1:
                msg = f"Base measure must have arity 1, got {self.base.arity}"
                raise ValueError(msg)
            if not self.base.space.same_points(self.space):
                msg = "Base measure lives on a different space."
                raise ValueError(msg)
        cleaned: dict[EntryKey, AtomicMeasure] = {}
        for (kappa, layer), measure in self.entries.items():
            if layer < 1:
                msg = f"Layer index must be >= 1, got {layer} for {kappa}"
                raise ValueError(msg)
            if measure.arity != len(kappa):
                msg = f"Entry ({kappa}, {layer}) has arity {measure.arity}"
                raise ValueError(msg)
            if not measure.space.same_points(self.space):
                msg = f"Entry ({kappa}, {layer}) lives on a different space."
                raise ValueError(msg)
            if not measure.is_zero():
                cleaned[(kappa, layer)] = measure
        ordered = {k: cleaned[k] for k in sorted(cleaned, key=_entry_sort_key)}
        object.__setattr__(self, "entries", MappingProxyType(ordered))

    def signatures(self) -> list[Signature]:
        return sorted({kappa for kappa, _ in self.entries}, key=lambda s: s.sort_key)

    def depth(self, kappa: Signature) -> int:
        return max((j for s, j in self.entries if s == kappa), default=0)

    def entry(self, kappa: Signature, layer: int) -> AtomicMeasure:
        found = self.entries.get((kappa, layer))
        if found is None:
            return AtomicMeasure.zero(self.space, len(kappa))
        return found

    def layers(self, kappa: Signature) -> list[AtomicMeasure]:
        return [self.entry(kappa, j) for j in range(1, self.depth(kappa) + 1)]

    def with_base(self, base: AtomicMeasure | None) -> Presentation:
        return Presentation(space=self.space, entries=self.entries, base=base)

    @classmethod
    def from_layers(
        cls,
        space: OrderedSpace,
        layers: Mapping[Signature, Iterable[AtomicMeasure]],
        base: AtomicMeasure | None = None,
    ) -> Presentation:
        entries: dict[EntryKey, AtomicMeasure] = {}
        for kappa, measures in layers.items():
            for j, measure in enumerate(measures, start=1):
                entries[(kappa, j)] = measure
        return cls(space=space, entries=entries, base=base)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Presentation):
            return NotImplemented
        return (
            self.space.same_points(other.space)
            and dict(self.entries) == dict(other.entries)
            and self.base == other.base
        )

    __hash__ = None  # type: ignore[assignment]


def _entry_sort_key(key: EntryKey) -> tuple[int, tuple[int, ...], int]:
    kappa, layer = key
    return (*kappa.sort_key, layer)


@dataclass(frozen=True, eq=False)
class WeightMultiset:
    """Multiset of integer weight vectors, one coordinate per point of ``space``.

    The multiplicity of the zero vector is the dimension of the fixed subspace.
    """

    space: OrderedSpace
    entries: Mapping[WeightVector, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned: Counter[WeightVector] = Counter()
        for raw_vector, count in self.entries.items():
            vector = tuple(int(m) for m in raw_vector)
            if len(vector) != len(self.space):
                msg = (
                    f"Weight vector {vector} has {len(vector)} entries, "
                    f"expected {len(self.space)}"
                )
                raise ValueError(msg)
            if count < 0:
                msg = f"Multiplicity must be non-negative, got {count} for {vector}"
                raise ValueError(msg)
            if count:
                cleaned[vector] += int(count)
        ordered = {v: cleaned[v] for v in sorted(cleaned)}
        object.__setattr__(self, "entries", MappingProxyType(ordered))

    @classmethod
    def from_vectors(
        cls, space: OrderedSpace, vectors: Iterable[Iterable[int]]
    ) -> WeightMultiset:
        return cls(space=space, entries=Counter(tuple(v) for v in vectors))

    @classmethod
    def from_mappings(
        cls, space: OrderedSpace, rows: Iterable[tuple[Mapping[str, int], int]]
    ) -> WeightMultiset:
        """Build from ``(point -> exponent, multiplicity)`` pairs; absent points are 0."""
        counts: Counter[WeightVector] = Counter()
        for weights, count in rows:
            unknown = [p for p in weights if p not in space]
            if unknown:
                msg = f"Weights mention points outside the space: {unknown}"
                raise ValueError(msg)
            counts[tuple(int(weights.get(p, 0)) for p in space)] += count
        return cls(space=space, entries=counts)

    @property
    def zero_vector(self) -> WeightVector:
        return (0,) * len(self.space)

    @property
    def fixed_dim(self) -> int:
        return self.entries.get(self.zero_vector, 0)

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def nonzero(self) -> WeightMultiset:
        return WeightMultiset(
            space=self.space,
            entries={v: c for v, c in self.entries.items() if any(v)},
        )

    def with_fixed(self, count: int) -> WeightMultiset:
        merged = Counter(self.entries)
        merged[self.zero_vector] += count
        return WeightMultiset(space=self.space, entries=merged)

    def as_mapping(self, vector: WeightVector) -> dict[str, int]:
        return {p: m for p, m in zip(self.space, vector) if m}

    def items(self) -> Iterator[tuple[WeightVector, int]]:
        return iter(self.entries.items())

    def __add__(self, other: WeightMultiset) -> WeightMultiset:
        if not isinstance(other, WeightMultiset):
            return NotImplemented
        if not self.space.same_points(other.space):
            msg = "Cannot add weight multisets over different spaces."
            raise ValueError(msg)
        return WeightMultiset(
            space=self.space, entries=Counter(self.entries) + Counter(other.entries)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightMultiset):
            return NotImplemented
        return self.space.same_points(other.space) and dict(self.entries) == dict(
            other.entries
        )

    __hash__ = None  # type: ignore[assignment]
