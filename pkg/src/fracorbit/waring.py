"""Big-integer threshold checks on the powers of 3/2.

Everything reduces to the exact division 3**n = a * 2**n + b with
0 <= b < 2**n, so a is the integer part and b/2**n the fractional part of
(3/2)**n.  The two classical threshold conditions and the closed form
they gate are rewritten as pure integer inequalities (no rational
normalization in the scan loop):

* star:  b/2**n <= 1 - (a+3)/2**n      iff  a + b + 3 <= 2**n
* norm:  min(b, 2**n - b)/2**n > (3/4)**n  iff  min(b, 2**n - b) * 2**n > 3**n
* g(n) = 2**n + a - 2

The tests cross-check both inequalities against their rational forms.
``scan`` reports the failure sets over a range; it asserts nothing about
where failures stop, since no effective bound is known.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

__all__ = [
    "PowerDecomp",
    "decomp",
    "check_star",
    "check_norm",
    "g_formula",
    "ScanRow",
    "scan_rows",
    "ScanReport",
    "scan",
    "scan_parallel",
]


@dataclass(frozen=True)
class PowerDecomp:
    """The exact pair a = floor((3/2)**n), b = 3**n mod 2**n."""

    n: int
    a: int
    b: int


def decomp(n: int) -> PowerDecomp:
    """Exact division of 3**n by 2**n."""
    if n < 1:
        raise ValueError(f"decomp needs n >= 1, got {n}")
    a, b = divmod(3**n, 2**n)
    return PowerDecomp(n=n, a=a, b=b)


def _star(a: int, b: int, pow2: int) -> bool:
    return a + b + 3 <= pow2


def _norm(b: int, pow2: int, pow3: int) -> bool:
    return min(b, pow2 - b) * pow2 > pow3


def check_star(n: int) -> bool:
    """Integer form of: frac((3/2)**n) <= 1 - (1/2)**n * (floor((3/2)**n) + 3)."""
    d = decomp(n)
    return _star(d.a, d.b, 2**n)


def check_norm(n: int) -> bool:
    """Integer form of: the distance of (3/2)**n to the nearest integer exceeds (3/4)**n."""
    d = decomp(n)
    return _norm(d.b, 2**n, 3**n)


def g_formula(n: int) -> int:
    """2**n + floor((3/2)**n) - 2."""
    return 2**n + decomp(n).a - 2


@dataclass(frozen=True)
class ScanRow:
    n: int
    a: int
    b: int
    star: bool
    norm: bool
    g: int


def scan_rows(n_from: int, n_to: int) -> Iterator[ScanRow]:
    """Stream one row per n; powers are carried incrementally between steps."""
    if n_from < 1 or n_from > n_to:
        raise ValueError(f"need 1 <= n_from <= n_to, got {n_from}..{n_to}")
    pow3 = 3**n_from
    pow2 = 2**n_from
    for n in range(n_from, n_to + 1):
        a, b = divmod(pow3, pow2)
        yield ScanRow(
            n=n,
            a=a,
            b=b,
            star=_star(a, b, pow2),
            norm=_norm(b, pow2, pow3),
            g=pow2 + a - 2,
        )
        pow3 *= 3
        pow2 *= 2


@dataclass(frozen=True)
class ScanReport:
    n_from: int
    n_to: int
    star_failures: tuple[int, ...]
    norm_failures: tuple[int, ...]


def scan(n_from: int, n_to: int) -> ScanReport:
    """Collect the n in range where either condition fails, exactly."""
    star_failures = []
    norm_failures = []
    for row in scan_rows(n_from, n_to):
        if not row.star:
            star_failures.append(row.n)
        if not row.norm:
            norm_failures.append(row.n)
    return ScanReport(
        n_from=n_from,
        n_to=n_to,
        star_failures=tuple(star_failures),
        norm_failures=tuple(norm_failures),
    )


def _scan_range(bounds: tuple[int, int]) -> ScanReport:
    return scan(*bounds)


def scan_parallel(n_from: int, n_to: int, workers: int = 1) -> ScanReport:
    """Same report as ``scan``, partitioned over worker processes.

    Chunks are contiguous and merged in index order, so the result is
    identical for any worker count.
    """
    if workers <= 1 or n_to - n_from < workers:
        return scan(n_from, n_to)
    size = -(-(n_to - n_from + 1) // workers)
    bounds = [
        (lo, min(lo + size - 1, n_to)) for lo in range(n_from, n_to + 1, size)
    ]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_scan_range, bounds))
    return ScanReport(
        n_from=n_from,
        n_to=n_to,
        star_failures=tuple(n for part in parts for n in part.star_failures),
        norm_failures=tuple(n for part in parts for n in part.norm_failures),
    )
