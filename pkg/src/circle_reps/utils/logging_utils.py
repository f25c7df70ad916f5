from __future__ import annotations

import logging
import logging.config
from pathlib import Path
from typing import Any, Mapping

import yaml

_DEFAULT_FORMAT = "[%(asctime)s] %(levelname)s %(name)s - %(message)s"


def configure_logging(config_path: Path | None = None, level: str | None = None) -> None:
    if config_path is None or not config_path.exists():
        logging.basicConfig(
            level=getattr(logging, (level or "INFO").upper(), logging.INFO),
            format=_DEFAULT_FORMAT,
        )
        return

    with config_path.open("r", encoding="utf-8") as f:
        config: Mapping[str, Any] = yaml.safe_load(f)
    logging.config.dictConfig(config)
    if level is not None:
        pkg = logging.getLogger("circle_reps")
        pkg.setLevel(level.upper())
        for handler in pkg.handlers:
            handler.setLevel(level.upper())


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)
