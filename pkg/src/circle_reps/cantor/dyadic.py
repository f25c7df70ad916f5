from __future__ import annotations

import math
from collections import Counter

from ..classification.classifier import ClassificationResult, classify
from ..classification.minimal import minimal_measure
from ..errors import ConditionViolationError, SpaceMismatchError
from ..model.blocks import Presentation, WeightMultiset, WeightVector
from ..model.group_types import GroupType
from ..model.measure import AtomicMeasure
from ..model.space import DyadicSpace, OrderedSpace, Point
from ..representation.validation import validate_presentation
from ..utils.logging_utils import get_logger

logger = get_logger(__name__)


def truncate(point: Point, depth: int) -> Point:
    """Clopen-cylinder projection: the length-``depth`` prefix."""
    if depth < 0 or depth > len(point):
        msg = f"Cannot truncate {point!r} (depth {len(point)}) to depth {depth}"
        raise SpaceMismatchError(msg)
    return point[:depth]


def as_dyadic(space: OrderedSpace) -> DyadicSpace:
    if isinstance(space, DyadicSpace):
        return space
    lengths = {len(p) for p in space}
    depth = lengths.pop() if len(lengths) == 1 else -1
    try:
        return DyadicSpace(points=space.points, depth=depth)
    except ValueError as exc:
        msg = "Weights do not live on a dyadic space."
        raise SpaceMismatchError(msg) from exc


def coarsen_weights(weights: WeightMultiset, depth: int) -> WeightMultiset:
    """Restrict to functions constant on depth-``depth`` cylinders.

    Exponents of points in the same cylinder add up; vectors that cancel to zero
    join the fixed part.
    """
    source = as_dyadic(weights.space)
    if depth > source.depth:
        msg = f"Cannot coarsen depth {source.depth} weights to depth {depth}"
        raise SpaceMismatchError(msg)
    target = DyadicSpace.of_depth(depth)
    columns = [target.index(truncate(p, depth)) for p in source]
    counts: Counter[WeightVector] = Counter()
    for vector, multiplicity in weights.items():
        merged = [0] * len(target)
        for col, m in zip(columns, vector):
            merged[col] += m
        counts[tuple(merged)] += multiplicity
    return WeightMultiset(space=target, entries=counts)


def classify_at_depth(weights: WeightMultiset) -> ClassificationResult:
    """Classification over {0,1}^depth, checked against B1-B3."""
    as_dyadic(weights.space)
    result = classify(weights)
    report = validate_presentation(result.canonical, GroupType.CONTINUOUS)
    if not report.ok:
        first = report.violations()[0]
        msg = f"Dyadic classification violates {first.condition}"
        raise ConditionViolationError(msg, witness=first.to_dict())
    return result


def minimal_measure_cantor(presentation: Presentation) -> AtomicMeasure:
    as_dyadic(presentation.space)
    return minimal_measure(presentation, GroupType.CONTINUOUS)


def lexicographic_embedding(space: OrderedSpace) -> tuple[DyadicSpace, dict[Point, Point]]:
    """Order embedding of a finite ordered space into {0,1}^d, d = ceil(log2 |X|)."""
    depth = math.ceil(math.log2(len(space))) if len(space) > 1 else 0
    target = DyadicSpace.of_depth(depth)
    mapping = {p: target.points[rank] for rank, p in enumerate(space)}
    return target, mapping


def embed_weights(weights: WeightMultiset) -> WeightMultiset:
    target, mapping = lexicographic_embedding(weights.space)
    columns = [target.index(mapping[p]) for p in weights.space]
    counts: Counter[WeightVector] = Counter()
    for vector, multiplicity in weights.items():
        moved = [0] * len(target)
        for col, m in zip(columns, vector):
            moved[col] = m
        counts[tuple(moved)] += multiplicity
    logger.debug("Embedded %d points at depth %d", len(weights.space), target.depth)
    return WeightMultiset(space=target, entries=counts)
