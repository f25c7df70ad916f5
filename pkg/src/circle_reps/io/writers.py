from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any, TextIO

import pandas as pd

from ..model.blocks import WeightMultiset
from .readers import MULTIPLICITY_COLUMN


def write_report(
    doc: Any, path: str | Path | None = None, indent: int | None = 2, stream: TextIO | None = None
) -> None:
    """JSON report to ``path``, or to ``stream`` (stdout by default)."""
    text = json.dumps(doc, indent=indent, sort_keys=False)
    if path is None:
        out = stream if stream is not None else sys.stdout
        out.write(text + "\n")
        return
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(text + "\n", encoding="utf-8")


def write_table(df: pd.DataFrame, path: str | Path, fmt: str | None = None) -> None:
    p = Path(path)
    if fmt is None:
        fmt = p.suffix.lstrip(".").lower()

    p.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        df.to_csv(p, index=False)
    elif fmt in {"parquet", "pq"}:
        df.to_parquet(p, index=False)
    else:
        msg = f"Unsupported output format: {fmt}"
        raise ValueError(msg)


def weights_to_table(weights: WeightMultiset) -> pd.DataFrame:
    rows = [
        {**dict(zip(weights.space.points, vector)), MULTIPLICITY_COLUMN: count}
        for vector, count in weights.items()
    ]
    columns = list(weights.space.points) + [MULTIPLICITY_COLUMN]
    return pd.DataFrame(rows, columns=columns)
