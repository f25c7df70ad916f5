from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from types import MappingProxyType
from typing import Any, Mapping

from ..errors import DomainError, NonIntegralOperatorError, SpaceMismatchError
from ..model.blocks import WeightMultiset
from ..model.measure import AtomicMeasure
from ..model.space import OrderedSpace, Point
from ..utils.logging_utils import get_logger
from ..utils.rationals import format_rational

logger = get_logger(__name__)

Function = Mapping[Point, Fraction]


@dataclass(frozen=True, eq=False)
class KwapienTerm:
    """One summand g * (f o sigma); g defaults to 0 where unspecified."""

    g: Mapping[Point, Fraction]
    sigma: Mapping[Point, Point]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "g", MappingProxyType({y: Fraction(v) for y, v in self.g.items()})
        )
        object.__setattr__(self, "sigma", MappingProxyType(dict(self.sigma)))

    def coefficient(self, y: Point) -> Fraction:
        return self.g.get(y, Fraction(0))


@dataclass(frozen=True, eq=False)
class KwapienOperator:
    """T(f) = sum_n g_n * (f o sigma_n) from functions on X to functions on Y."""

    domain: OrderedSpace
    codomain: OrderedSpace
    terms: tuple[KwapienTerm, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(self.terms))
        for n, term in enumerate(self.terms):
            missing = [y for y in self.codomain if y not in term.sigma]
            if missing:
                msg = f"sigma_{n} is not total on Y, missing {missing}"
                raise ValueError(msg)
            outside = sorted({x for x in term.sigma.values() if x not in self.domain})
            if outside:
                msg = f"sigma_{n} maps outside X: {outside}"
                raise ValueError(msg)
            stray = [y for y in term.g if y not in self.codomain]
            if stray:
                msg = f"g_{n} is defined at points outside Y: {stray}"
                raise ValueError(msg)


@dataclass(frozen=True)
class IntegralityWitness:
    y: Point
    indicator: frozenset[Point]
    value: Fraction

    def to_dict(self) -> dict[str, Any]:
        return {
            "y": self.y,
            "indicator": sorted(self.indicator),
            "value": format_rational(self.value),
        }


@dataclass(frozen=True)
class IntegralityReport:
    integral: bool
    witness: IntegralityWitness | None = None

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"integral": self.integral}
        if self.witness is not None:
            data["witness"] = self.witness.to_dict()
        return data


@dataclass(frozen=True)
class HomomorphismMatrix:
    """Integer matrix K indexed Y x X; psi(z)_y = prod_x z_x^{K_yx}."""

    rows: OrderedSpace
    columns: OrderedSpace
    entries: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self) -> None:
        entries = tuple(tuple(int(v) for v in row) for row in self.entries)
        if len(entries) != len(self.rows):
            msg = f"Matrix has {len(entries)} rows, expected {len(self.rows)}"
            raise ValueError(msg)
        for y, row in zip(self.rows, entries):
            if len(row) != len(self.columns):
                msg = f"Row {y!r} has {len(row)} entries, expected {len(self.columns)}"
                raise ValueError(msg)
        object.__setattr__(self, "entries", entries)

    def row(self, y: Point) -> tuple[int, ...]:
        return self.entries[self.rows.index(y)]

    def psi(self, f: Function) -> dict[Point, Fraction]:
        """The induced homomorphism on rational phases."""
        values = _require_total(self.columns, f)
        return {
            y: sum((k * values[x] for k, x in zip(row, self.columns)), Fraction(0)) % 1
            for y, row in zip(self.rows, self.entries)
        }


def _require_total(space: OrderedSpace, f: Function) -> dict[Point, Fraction]:
    missing = [x for x in space if x not in f]
    if missing:
        msg = f"Function is undefined at {missing}"
        raise DomainError(msg, witness={"points": missing})
    return {x: Fraction(f[x]) for x in space}


def apply(operator: KwapienOperator, f: Function) -> dict[Point, Fraction]:
    values = _require_total(operator.domain, f)
    return {
        y: sum(
            (t.coefficient(y) * values[t.sigma[y]] for t in operator.terms),
            Fraction(0),
        )
        for y in operator.codomain
    }


def collapse(operator: KwapienOperator) -> dict[Point, dict[Point, Fraction]]:
    """Coefficient profile c_y(x) = sum of g_n(y) over terms with sigma_n(y) = x."""
    rows: dict[Point, dict[Point, Fraction]] = {}
    for y in operator.codomain:
        row: dict[Point, Fraction] = {}
        for term in operator.terms:
            x = term.sigma[y]
            row[x] = row.get(x, Fraction(0)) + term.coefficient(y)
        rows[y] = {x: row[x] for x in operator.domain.sort_points(row) if row[x] != 0}
    return rows


def integrality_check(operator: KwapienOperator) -> IntegralityReport:
    for y, row in collapse(operator).items():
        for x, c in row.items():
            if c.denominator != 1:
                return IntegralityReport(False, IntegralityWitness(y, frozenset({x}), c))
    return IntegralityReport(True)


def indicator_oracle(operator: KwapienOperator) -> IntegralityReport:
    """Exhaustive check: T maps every 0/1 indicator on X to an integer function."""
    points = list(operator.domain)
    for size in range(len(points) + 1):
        for subset in combinations(points, size):
            chosen = frozenset(subset)
            f = {x: Fraction(int(x in chosen)) for x in points}
            for y, value in apply(operator, f).items():
                if value.denominator != 1:
                    return IntegralityReport(
                        False, IntegralityWitness(y, chosen, value)
                    )
    return IntegralityReport(True)


def to_homomorphism(operator: KwapienOperator) -> HomomorphismMatrix:
    report = integrality_check(operator)
    if not report.integral:
        assert report.witness is not None
        msg = (
            f"Operator is not integral: indicator of {sorted(report.witness.indicator)} "
            f"gives {report.witness.value} at {report.witness.y!r}"
        )
        raise NonIntegralOperatorError(msg, witness=report.witness.to_dict())
    rows = collapse(operator)
    entries = [
        [int(rows[y].get(x, 0)) for x in operator.domain] for y in operator.codomain
    ]
    logger.debug("Collapsed operator to a %dx%d matrix", len(entries), len(operator.domain))
    return HomomorphismMatrix(
        rows=operator.codomain, columns=operator.domain, entries=tuple(map(tuple, entries))
    )


def induced_weights(matrix: HomomorphismMatrix, nu: AtomicMeasure) -> WeightMultiset:
    """Each support point y of nu contributes the row K_y as a weight vector."""
    if nu.arity != 1 or not nu.space.same_points(matrix.rows):
        msg = "nu must be an arity-1 measure on the row space Y."
        raise SpaceMismatchError(msg)
    return WeightMultiset.from_vectors(
        matrix.columns, (matrix.row(atom[0]) for atom in nu.atoms)
    )

