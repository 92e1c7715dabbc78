"""Exact rational parsing and rendering.

All probability values in this package are `fractions.Fraction`.  Input text
may use fraction notation ("1/10"), decimal point notation ("0.1") or the
decimal comma used in some European sources ("0,1"); all three parse to the
same exact fraction.
"""

from __future__ import annotations

import re
from fractions import Fraction

_FRACTION_RE = re.compile(r"^\s*(-?\d+)\s*/\s*(\d+)\s*$")
_DECIMAL_RE = re.compile(r"^\s*(-?\d+)(?:[.,](\d+))?\s*$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse a rational from text; accepts "p/q", "0.5" and "0,5" forms."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    m = _FRACTION_RE.match(text)
    if m:
        num, den = int(m.group(1)), int(m.group(2))
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(num, den)
    m = _DECIMAL_RE.match(text)
    if m:
        whole, frac = m.group(1), m.group(2)
        value = Fraction(int(whole))
        if frac:
            part = Fraction(int(frac), 10 ** len(frac))
            value = value - part if whole.startswith("-") else value + part
        return value
    raise ValueError(f"cannot parse rational from {text!r}")


def format_rational(value: Fraction, decimal: bool = False) -> str:
    """Render a rational as "num/den" (or a decimal approximation on request)."""
    if decimal:
        return f"{float(value):.6g}"
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
