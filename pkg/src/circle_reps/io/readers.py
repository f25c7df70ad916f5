from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import pandas as pd

from ..errors import InputFormatError
from ..model.blocks import WeightMultiset
from ..model.space import DyadicSpace, OrderedSpace
from .codecs import weights_from_dict

MULTIPLICITY_COLUMN = "multiplicity"


def read_json(path: str | Path) -> Any:
    p = Path(path)
    with p.open("r", encoding="utf-8") as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as exc:
            msg = f"{p} is not valid JSON: {exc}"
            raise InputFormatError(msg) from exc


def read_weights(
    path: str | Path, fmt: str | None = None, depth: int | None = None
) -> WeightMultiset:
    """Weight multiset from JSON, or from a CSV/Parquet table.

    Tables have one integer column per point (column order is <_X) and an
    optional ``multiplicity`` column.
    """
    p = Path(path)
    if fmt is None:
        fmt = p.suffix.lstrip(".").lower()

    if fmt == "json":
        return weights_from_dict(read_json(p))
    if fmt == "csv":
        df = pd.read_csv(p, dtype=str)
    elif fmt in {"parquet", "pq"}:
        df = pd.read_parquet(p)
    else:
        msg = f"Unsupported format: {fmt}"
        raise InputFormatError(msg)
    return weights_from_table(df, depth=depth)


def weights_from_table(df: pd.DataFrame, depth: int | None = None) -> WeightMultiset:
    point_columns = [str(c) for c in df.columns if str(c) != MULTIPLICITY_COLUMN]
    try:
        space: OrderedSpace = (
            DyadicSpace(points=tuple(point_columns), depth=depth)
            if depth is not None
            else OrderedSpace(points=tuple(point_columns))
        )
    except ValueError as exc:
        msg = f"Invalid weight table header: {exc}"
        raise InputFormatError(msg) from exc

    table = df.rename(columns=str)
    if MULTIPLICITY_COLUMN not in table.columns:
        table = table.assign(**{MULTIPLICITY_COLUMN: 1})
    try:
        numeric = table[point_columns + [MULTIPLICITY_COLUMN]].astype("int64")
    except (ValueError, TypeError) as exc:
        msg = f"Weight table must contain integers only: {exc}"
        raise InputFormatError(msg) from exc

    vectors: dict[tuple[int, ...], int] = {}
    for row in numeric.itertuples(index=False):
        *vector, count = (int(v) for v in row)
        if count < 0:
            msg = f"Negative multiplicity {count} in weight table"
            raise InputFormatError(msg)
        vectors[tuple(vector)] = vectors.get(tuple(vector), 0) + count
    return WeightMultiset(space=space, entries=vectors)
