from __future__ import annotations

import pandas as pd

from ..classification.classifier import ClassificationResult
from ..utils.rationals import format_rational


def layer_table(result: ClassificationResult) -> pd.DataFrame:
    """One row per (kappa, layer) of the canonical presentation."""
    rows = [
        {
            "kappa": ",".join(str(k) for k in kappa.exponents),
            "length": len(kappa),
            "layer": layer,
            "atoms": len(measure.atoms),
            "mass": format_rational(measure.total_mass),
        }
        for (kappa, layer), measure in result.canonical.entries.items()
    ]
    columns = ["kappa", "length", "layer", "atoms", "mass"]
    return pd.DataFrame(rows, columns=columns)

