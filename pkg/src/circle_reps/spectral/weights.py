from __future__ import annotations

from collections import Counter

import numpy as np

from ..errors import WeightExtractionError
from ..model.blocks import WeightMultiset, WeightVector
from ..model.space import OrderedSpace
from .family import ToleranceConfig


def extract_weights(
    phases: np.ndarray,
    space: OrderedSpace,
    q: int,
    bound: int,
    cfg: ToleranceConfig,
) -> WeightMultiset:
    """Round q * phase to the integer weight in (-q/2, q/2] for every vector and point.

    A continuous character of the circle is z -> z^m; sampling it at the primitive
    q-th root determines m as long as |m| <= B and 2B < q.
    """
    if 2 * bound >= q:
        msg = f"Need 2B < q, got B={bound}, q={q}"
        raise WeightExtractionError(msg)
    phases = np.atleast_2d(np.asarray(phases, dtype=float))
    if phases.size and phases.shape[1] != len(space):
        msg = f"Phase table has {phases.shape[1]} columns for {len(space)} points"
        raise WeightExtractionError(msg)

    counts: Counter[WeightVector] = Counter()
    for v, row in enumerate(phases):
        vector: list[int] = []
        for point, theta in zip(space, row):
            scaled = q * float(theta)
            nearest = round(scaled)
            m = nearest % q
            if m > q // 2:
                m -= q
            if abs(m) > bound:
                msg = (
                    f"Weight {m} at point {point!r} (vector {v}) exceeds the bound "
                    f"B={bound}"
                )
                raise WeightExtractionError(
                    msg, witness={"vector": v, "point": point, "phase": float(theta)}
                )
            residual = abs(scaled - nearest)
            if residual > cfg.rounding_tol * q:
                msg = (
                    f"Phase {theta:.9f} at point {point!r} (vector {v}) is "
                    f"{residual:.3e} away from a multiple of 1/{q}"
                )
                raise WeightExtractionError(
                    msg, witness={"vector": v, "point": point, "phase": float(theta)}
                )
            vector.append(m)
        counts[tuple(vector)] += 1
    return WeightMultiset(space=space, entries=counts)
