from __future__ import annotations

from pathlib import Path
from typing import Any, Mapping

import yaml

DEFAULT_CONFIG_PATH = Path("config/default_config.yaml")

_DEFAULTS: dict[str, Any] = {
    "spectral": {
        "seed": 0,
        "sample_denominator": 64,
        "weight_bound": 16,
        "max_attempts": 5,
    },
    "tolerances": {
        "unitarity_tol": None,
        "commutation_tol": None,
        "cluster_tol": 1e-8,
        "rounding_tol": 1e-6,
    },
    "output": {"indent": 2},
    "visualization": {"enabled": False, "plot_dir": "outputs/plots"},
    "logging": {"config": "config/logging.yaml"},
}


def load_config(path: Path) -> Mapping[str, Any]:
    with path.open("r", encoding="utf-8") as f:
        data = yaml.safe_load(f)
    if not isinstance(data, dict):
        msg = "Configuration file must contain a mapping at top level."
        raise ValueError(msg)
    return data


def resolve_config(path: Path | None = None) -> dict[str, Any]:
    """Merge a YAML file (if any) over the built-in defaults, section by section."""
    merged: dict[str, Any] = {key: dict(value) for key, value in _DEFAULTS.items()}
    if path is None:
        if not DEFAULT_CONFIG_PATH.exists():
            return merged
        path = DEFAULT_CONFIG_PATH
    for section, values in load_config(path).items():
        if isinstance(values, Mapping) and section in merged:
            merged[section].update(values)
        else:
            merged[section] = values
    return merged
