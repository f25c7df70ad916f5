from __future__ import annotations

from fractions import Fraction
from typing import Any

from ..errors import InputFormatError


def parse_rational(value: Any) -> Fraction:
    """Parse an exact rational from ``int``, ``Fraction`` or a ``"p/q"`` string.

    Floats are rejected: weights must stay exact end to end.
    """
    if isinstance(value, bool):
        msg = f"Boolean is not a rational weight: {value!r}"
        raise InputFormatError(msg)
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        s = value.strip()
        if not s or "." in s or "e" in s.lower():
            msg = f"Expected a decimal-free 'p/q' string, got {value!r}"
            raise InputFormatError(msg)
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            msg = f"Cannot parse rational from {value!r}"
            raise InputFormatError(msg) from exc
    msg = f"Unsupported rational encoding: {value!r}"
    raise InputFormatError(msg)


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def phase(value: Fraction) -> Fraction:
    """Reduce a rational phase (fraction of a full turn) into [0, 1)."""
    return value % 1
