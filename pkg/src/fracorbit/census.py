"""Census of the reduced fractions p/q with p > q^2, in increasing order.

These ratios form an increasing sequence because only finitely many live
below any bound: p/q <= n forces q < n and p <= n^2.  Enumeration works
window by window, [n, n+1) at a time, by direct scan over denominators;
for n >= 2 the window count equals the totient summatory value
phi(1) + ... + phi(n), which the tests verify against the enumeration as
an independent code path.

The window formula fails at n = 1 (the window is empty, the sum is 1);
``window_report`` surfaces that mismatch rather than patching it.
Density columns compare the running count against n^3 / pi^2; the pi^2
constant is a fixed 18-digit rational used for reporting only, never in
exact results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "PI_SQUARED",
    "is_q1",
    "euler_phi",
    "phi_summatory",
    "enumerate_window",
    "WindowReport",
    "window_report",
    "count_upto",
    "DensityReport",
    "density_report",
    "nth_element",
    "first_elements",
]

# pi^2 truncated to 18 decimal digits; comparison-only.
PI_SQUARED = Fraction(9869604401089358618, 10**18)


def is_q1(x: Fraction) -> bool:
    """True iff the reduced numerator exceeds the squared reduced denominator."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError(f"census members are positive, got {x}")
    return x.numerator > x.denominator**2


def euler_phi(n: int) -> int:
    """Count of 1 <= j <= n coprime to n, via trial-division factorization."""
    if n < 1:
        raise ValueError(f"euler_phi needs n >= 1, got {n}")
    result = n
    rest = n
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            result -= result // d
            while rest % d == 0:
                rest //= d
        d += 1
    if rest > 1:
        result -= result // rest
    return result


def phi_summatory(n: int) -> int:
    """phi(1) + phi(2) + ... + phi(n)."""
    if n < 1:
        raise ValueError(f"phi_summatory needs n >= 1, got {n}")
    return sum(euler_phi(i) for i in range(1, n + 1))


def enumerate_window(n: int) -> list[Fraction]:
    """Census members in [n, n+1), sorted increasing.

    Brute force: q = 1..n and p in [n*q, (n+1)*q), keeping reduced pairs
    with p > q^2.  Endpoint n is included, n+1 is not.
    """
    if n < 1:
        raise ValueError(f"window index must be >= 1, got {n}")
    found = []
    for q in range(1, n + 1):
        for p in range(n * q, (n + 1) * q):
            if p > q * q and math.gcd(p, q) == 1:
                found.append(Fraction(p, q))
    found.sort()
    return found


@dataclass(frozen=True)
class WindowReport:
    """Window census next to the totient-sum prediction.

    ``matches`` is False exactly at n = 1, where the enumeration is empty
    but the formula gives phi(1) = 1.
    """

    n: int
    count: int
    phi_sum: int

    @property
    def matches(self) -> bool:
        return self.count == self.phi_sum


def window_report(n: int) -> WindowReport:
    return WindowReport(n=n, count=len(enumerate_window(n)), phi_sum=phi_summatory(n))


def count_upto(n: int) -> int:
    """Size of the census intersected with the closed interval [1, n].

    Integer endpoints belong to the window starting at them, so [1, n]
    is the windows 1..n-1 plus the integer n itself (a member once n >= 2).
    """
    if n < 1:
        raise ValueError(f"count_upto needs n >= 1, got {n}")
    total = sum(len(enumerate_window(w)) for w in range(1, n))
    return total + (1 if n >= 2 else 0)


@dataclass(frozen=True)
class DensityReport:
    """count_upto(n) against the n^3 cap and the 1/pi^2 density constant."""

    n: int
    count: int
    cube: int
    ratio: Fraction
    density_constant: Fraction
    gap: Fraction


def density_report(n: int) -> DensityReport:
    count = count_upto(n)
    cube = n**3
    ratio = Fraction(count, cube)
    constant = 1 / PI_SQUARED
    return DensityReport(
        n=n,
        count=count,
        cube=cube,
        ratio=ratio,
        density_constant=constant,
        gap=abs(ratio - constant),
    )


def first_elements(count: int) -> list[Fraction]:
    """The first ``count`` census members in increasing order."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    out: list[Fraction] = []
    window = 1
    while len(out) < count:
        out.extend(enumerate_window(window))
        window += 1
    return out[:count]


def nth_element(n: int) -> Fraction:
    """The n-th smallest census member (1-indexed).

    The growth claim value**3 / n -> pi^2 can be checked exactly on the
    cubes; see ``density_report`` for the matching count-side ratio.
    """
    return first_elements(n)[-1]
