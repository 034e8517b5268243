"""Exact scalar kernels for arithmetic on the unit circle.

Every scalar in this package is a ``fractions.Fraction``: canonical lowest
terms, positive denominator, structural equality.  No floating point is
used on any correctness path; decimal strings produced here are display
only and are never parsed back.

A point of the unit circle is a rational in [0, 1); the identification
1 == 0 is handled by the set algebra in ``circleset``, not here.

Wire format: rationals serialize as ``"num/den"`` in lowest terms with a
positive denominator, integers included (``5`` -> ``"5/1"``).  Parsing is
strict: an optionally signed integer, or two integers joined by ``/``.
Decimal notation is rejected so no approximation can sneak in.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

__all__ = [
    "frac",
    "dist_nearest_int",
    "orbit",
    "parse_rational",
    "format_rational",
    "decimal_string",
]

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/([1-9]\d*))?$")


def frac(x: Fraction) -> Fraction:
    """Fractional part of x: the unique value in [0, 1) with x - frac(x) integer."""
    return x - math.floor(x)


def dist_nearest_int(x: Fraction) -> Fraction:
    """Distance from x to the nearest integer; always in [0, 1/2]."""
    f = frac(x)
    return min(f, 1 - f)


def orbit(lam: Fraction, ratio: Fraction, n_max: int) -> list[Fraction]:
    """Fractional parts of lam * ratio**n for n = 0..n_max, computed exactly.

    The full product is carried between steps: for a non-integer ratio the
    next fractional part is not a function of the current one alone, so
    the integer part must never be dropped.  Digit growth is linear in n.
    """
    if lam <= 0:
        raise ValueError(f"orbit seed must be positive, got {lam}")
    if ratio <= 1:
        raise ValueError(f"orbit ratio must exceed 1, got {ratio}")
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    value = Fraction(lam)
    out = []
    for _ in range(n_max + 1):
        out.append(frac(value))
        value *= ratio
    return out


def parse_rational(text: str) -> Fraction:
    """Parse the strict wire format: "num" or "num/den" with den > 0."""
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not a rational in num/den form: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    """Serialize as "num/den" in lowest terms, denominator always explicit."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def decimal_string(x: Fraction, digits: int = 12) -> str:
    """Fixed-point decimal rendering, truncated toward zero.  Display only."""
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    y = -x if x < 0 else x
    whole, rest = divmod(y.numerator, y.denominator)
    decimals = rest * 10**digits // y.denominator
    return f"{sign}{whole}.{decimals:0{digits}d}"
