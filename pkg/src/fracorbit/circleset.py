"""Finite unions of closed intervals on the unit circle, with exact endpoints.

A ``CircleSet`` is an ordered tuple of closed components [lo, hi] with
rational endpoints in [0, 1].  After normalization no two components
overlap or touch, with one deliberate exception: a component ending at 1
may coexist with a component starting at 0.  Together they represent a
single arc crossing the origin; membership and measure treat 1 == 0, the
stored representation does not.

Zero-length components are legal (isolated points survive normalization)
and contribute nothing to the measure.  All sets are immutable; every
operation returns a new normalized set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .rationals import format_rational, frac, parse_rational

__all__ = ["CircleSet", "union"]

Interval = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class CircleSet:
    """Normalized finite union of closed intervals on [0, 1] with 1 == 0.

    Construct through ``from_intervals`` (which normalizes) rather than
    directly; the raw constructor trusts its input.
    """

    components: tuple[Interval, ...]

    @classmethod
    def from_intervals(cls, raw: Iterable[Sequence[Fraction]]) -> "CircleSet":
        """Normalize: validate endpoints, sort, merge overlapping or touching."""
        pieces = []
        for piece in raw:
            lo, hi = Fraction(piece[0]), Fraction(piece[1])
            if not (0 <= lo <= hi <= 1):
                raise ValueError(f"interval [{lo}, {hi}] not within [0, 1]")
            pieces.append((lo, hi))
        pieces.sort()
        merged: list[Interval] = []
        for lo, hi in pieces:
            if merged and lo <= merged[-1][1]:
                if hi > merged[-1][1]:
                    merged[-1] = (merged[-1][0], hi)
            else:
                merged.append((lo, hi))
        return cls(tuple(merged))

    @classmethod
    def empty(cls) -> "CircleSet":
        return cls(())

    @classmethod
    def full(cls) -> "CircleSet":
        return cls(((Fraction(0), Fraction(1)),))

    def is_empty(self) -> bool:
        return not self.components

    def is_full(self) -> bool:
        return self.components == ((Fraction(0), Fraction(1)),)

    @property
    def measure(self) -> Fraction:
        """Exact total length; the wrap pair counts once per piece."""
        return sum((hi - lo for lo, hi in self.components), Fraction(0))

    def contains(self, x: Fraction) -> bool:
        """Membership of the circle point frac(x), honoring 1 == 0.

        Inputs outside [0, 1) are reduced first, so callers may pass any
        rational; in particular contains(1) == contains(0).
        """
        y = frac(Fraction(x))
        for lo, hi in self.components:
            if lo > y:
                break
            if y <= hi:
                return True
        if y == 0:
            return any(hi == 1 for _, hi in self.components)
        return False

    def scale_mod1(self, c: Fraction) -> "CircleSet":
        """Image {frac(c * x) : x in self} for c > 0.

        A component whose scaled length reaches 1 wraps onto the whole
        circle, so the result short-circuits to full.  The measure never
        exceeds min(1, c * measure).
        """
        c = Fraction(c)
        if c <= 0:
            raise ValueError(f"scale factor must be positive, got {c}")
        out: list[Interval] = []
        for lo, hi in self.components:
            if c * (hi - lo) >= 1:
                return CircleSet.full()
            left = c * lo
            right = c * hi
            base = math.floor(left)
            left -= base
            right -= base
            if right <= 1:
                out.append((left, right))
            else:
                out.append((left, Fraction(1)))
                out.append((Fraction(0), right - 1))
        return CircleSet.from_intervals(out)

    def translate_mod1(self, t: Fraction) -> "CircleSet":
        """Rotate by t: {frac(x + t) : x in self}.  Measure is preserved."""
        shift = frac(Fraction(t))
        out: list[Interval] = []
        for lo, hi in self.components:
            left = lo + shift
            right = hi + shift
            if right <= 1:
                out.append((left, right))
            elif left >= 1:
                out.append((left - 1, right - 1))
            else:
                out.append((left, Fraction(1)))
                out.append((Fraction(0), right - 1))
        return CircleSet.from_intervals(out)

    def as_pairs(self) -> list[list[str]]:
        """Serialized form: ordered [lo, hi] pairs in num/den notation."""
        return [[format_rational(lo), format_rational(hi)] for lo, hi in self.components]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[str]]) -> "CircleSet":
        return cls.from_intervals(
            [(parse_rational(lo), parse_rational(hi)) for lo, hi in pairs]
        )


def union(sets: Iterable[CircleSet]) -> CircleSet:
    """Normalized union of several circle sets."""
    pieces: list[Interval] = []
    for s in sets:
        pieces.extend(s.components)
    return CircleSet.from_intervals(pieces)
