from __future__ import annotations

from typing import Any, Iterable, Mapping

from ..errors import InputFormatError


def require_mapping(doc: Any, kind: str) -> Mapping[str, Any]:
    if not isinstance(doc, Mapping):
        msg = f"{kind} document must be a JSON object, got {type(doc).__name__}"
        raise InputFormatError(msg)
    return doc


def require_keys(doc: Mapping[str, Any], required: Iterable[str], kind: str) -> None:
    """Very lightweight structural validation."""
    missing = sorted(set(required) - set(doc))
    if missing:
        msg = f"{kind} document is missing required keys: {missing}"
        raise InputFormatError(msg)


def require_list(value: Any, what: str) -> list[Any]:
    if not isinstance(value, list):
        msg = f"{what} must be a JSON array, got {type(value).__name__}"
        raise InputFormatError(msg)
    return value


def require_int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        msg = f"{what} must be an integer, got {value!r}"
        raise InputFormatError(msg)
    return value
