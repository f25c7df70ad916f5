from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Sequence

Point = str
Atom = tuple[Point, ...]


@dataclass(frozen=True)
class OrderedSpace:
    """A finite set of point ids; the tuple order is the linear order <_X."""

    points: tuple[Point, ...]
    _rank: dict[Point, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        points = tuple(str(p) for p in self.points)
        rank = {p: i for i, p in enumerate(points)}
        if len(rank) != len(points):
            dupes = sorted(p for p, n in Counter(points).items() if n > 1)
            msg = f"Points must be pairwise distinct, duplicated: {dupes}"
            raise ValueError(msg)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "_rank", rank)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __contains__(self, point: object) -> bool:
        return point in self._rank

    def index(self, point: Point) -> int:
        try:
            return self._rank[point]
        except KeyError as exc:
            msg = f"Point {point!r} is not in the space"
            raise ValueError(msg) from exc

    def precedes(self, p: Point, q: Point) -> bool:
        """p <_X q."""
        return self.index(p) < self.index(q)

    def sort_points(self, points: Iterable[Point]) -> list[Point]:
        return sorted(points, key=self.index)

    def atom_key(self, atom: Sequence[Point]) -> tuple[int, ...]:
        return tuple(self.index(p) for p in atom)

    def sort_atoms(self, atoms: Iterable[Atom]) -> list[Atom]:
        return sorted(atoms, key=self.atom_key)

    def same_points(self, other: OrderedSpace) -> bool:
        return self.points == other.points


@dataclass(frozen=True)
class DyadicSpace(OrderedSpace):
    """All binary strings of length ``depth`` in lexicographic order.

    Models {0,1}^N at clopen resolution ``depth``; each string names a cylinder.
    """

    depth: int = 0

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.depth < 0:
            msg = f"Depth must be non-negative, got {self.depth}"
            raise ValueError(msg)
        if self.points != _binary_strings(self.depth):
            msg = f"Points must be all binary strings of length {self.depth} in lex order"
            raise ValueError(msg)

    @classmethod
    def of_depth(cls, depth: int) -> DyadicSpace:
        if depth < 0:
            msg = f"Depth must be non-negative, got {depth}"
            raise ValueError(msg)
        return cls(points=_binary_strings(depth), depth=depth)


def _binary_strings(depth: int) -> tuple[Point, ...]:
    return tuple("".join(bits) for bits in product("01", repeat=depth))
