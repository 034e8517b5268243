"""Small-measure circle covers for orbits of rational ratios p/q with p > q^2.

Fix a reduced ratio r = p/q with p > q^2 and a tolerance epsilon > 0.  The
quantity

    bound(k) = 2 * (1 + q + ... + q^(k-1)) / (r^k - 1)

tends to 0 in k, so there is a least k with bound(k) < epsilon.  Writing
s = r^k, the base band

    B = [0, 1/(s-1)] union [1 - 1/(s-1), 1]

is the arc of halfwidth 1/(s-1) around the origin of the circle.  For each
offset u in 0..k-1 the band spreads into

    S_u = union over d < p^u of ( (q^u / p^u) * B + d / p^u )  (mod 1),

a set of measure at most 2*q^u/(s-1), and the full cover is the union of
the S_u, of measure below epsilon.  Any positive lam whose multiples
lam * s^l all sit in the band (the survivor engine produces interval
families of such lam) has its entire r-orbit inside the cover: a step
index n splits as n = k*l - u, and r^(k*l-u) * p^u = s^l * q^u carries the
band constraint onto S_u.

Membership in the cover comes in two exchangeable forms: the explicit
materialized interval list (interval count grows like p^(k-1), so it is
budgeted) and the implicit predicate

    x in S_u  iff  frac(x * p^u) in (q^u * B mod 1),

which inverts the spread construction algebraically and needs no
materialization.  The two are cross-checked by the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .circleset import CircleSet
from .rationals import frac

__all__ = [
    "RatioConstraintError",
    "DegenerateBandError",
    "IntervalBudgetError",
    "RatioParam",
    "measure_bound",
    "minimal_k",
    "base_band",
    "CoverPlan",
    "plan_cover",
    "offset_cover",
    "Cover",
    "raw_interval_count",
    "build_cover",
    "member_implicit",
    "verify_orbit",
]

K_SEARCH_CAP = 10**6
DEFAULT_INTERVAL_BUDGET = 10**6


class RatioConstraintError(ValueError):
    """The reduced ratio p/q does not satisfy p > q^2."""


class DegenerateBandError(ValueError):
    """s <= 3 makes the band halfwidth reach 1/2 and the two arcs collide."""


class IntervalBudgetError(RuntimeError):
    """Materializing the cover would exceed the raw interval budget."""


@dataclass(frozen=True)
class RatioParam:
    """A reduced ratio p/q with p > q^2.

    Arbitrary positive integers are accepted and reduced; the constraint
    is checked on the reduced form.  Reduction also guarantees
    gcd(p^u, q^u) = 1, which the spread construction relies on.
    """

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 1 or self.q < 1:
            raise ValueError(f"p and q must be positive integers, got {self.p}/{self.q}")
        g = math.gcd(self.p, self.q)
        if g > 1:
            object.__setattr__(self, "p", self.p // g)
            object.__setattr__(self, "q", self.q // g)
        if self.p <= self.q * self.q:
            raise RatioConstraintError(
                f"need p > q^2 on the reduced ratio; {self.p}/{self.q} fails"
            )

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.p, self.q)


def measure_bound(params: RatioParam, k: int) -> Fraction:
    """The cover-measure bound 2*(1 + q + ... + q^(k-1))/(r^k - 1)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    geo = sum(params.q**i for i in range(k))
    return Fraction(2 * geo) / (params.ratio**k - 1)


def minimal_k(params: RatioParam, epsilon: Fraction) -> int:
    """Least k >= 1 with measure_bound(params, k) < epsilon (strictly).

    Existence is guaranteed by p > q^2: the bound decays geometrically
    like (q^2/p)^k.  The safety cap can only trip on corrupted params.
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    r = params.ratio
    geo = 0
    qpow = 1
    rpow = Fraction(1)
    for k in range(1, K_SEARCH_CAP + 1):
        geo += qpow
        qpow *= params.q
        rpow *= r
        if Fraction(2 * geo, 1) / (rpow - 1) < epsilon:
            return k
    raise RuntimeError(f"no k <= {K_SEARCH_CAP} reached the bound; params corrupted?")


def base_band(s: Fraction) -> CircleSet:
    """The arc of halfwidth 1/(s-1) around 0, stored as its two pieces.

    Requires s > 3 so the halfwidth stays below 1/2 and the pieces are
    disjoint; at s <= 3 the band degenerates to measure >= 1.
    """
    s = Fraction(s)
    if s <= 3:
        raise DegenerateBandError(f"band needs s > 3, got s = {s}")
    h = 1 / (s - 1)
    return CircleSet.from_intervals([(Fraction(0), h), (1 - h, Fraction(1))])


@dataclass(frozen=True)
class CoverPlan:
    """The data determining one cover: ratio, tolerance, power, band."""

    params: RatioParam
    epsilon: Fraction
    k: int
    s: Fraction
    band_halfwidth: Fraction
    base_band: CircleSet


def plan_cover(params: RatioParam, epsilon: Fraction) -> CoverPlan:
    """Build the plan with the minimal admissible k for this epsilon."""
    epsilon = Fraction(epsilon)
    k = minimal_k(params, epsilon)
    s = params.ratio**k
    return CoverPlan(
        params=params,
        epsilon=epsilon,
        k=k,
        s=s,
        band_halfwidth=1 / (s - 1),
        base_band=base_band(s),
    )


def offset_cover(plan: CoverPlan, u: int) -> CircleSet:
    """The normalized offset set S_u; S_0 is the base band itself.

    The raw construction shrinks the band by q^u/p^u and lays down one
    copy at each multiple of 1/p^u; adjacent copies may merge during
    normalization (and would merge to the full circle if a copy's length
    ever reached the spacing).
    """
    if not 0 <= u <= plan.k - 1:
        raise ValueError(f"offset u must be in 0..{plan.k - 1}, got {u}")
    return CircleSet.from_intervals(_offset_pieces(plan, u))


def _offset_pieces(plan: CoverPlan, u: int) -> list[tuple[Fraction, Fraction]]:
    p, q = plan.params.p, plan.params.q
    den = p**u
    scaled = plan.base_band.scale_mod1(Fraction(q**u, den)).components
    pieces = []
    for d in range(den):
        shift = Fraction(d, den)
        for lo, hi in scaled:
            left, right = lo + shift, hi + shift
            if right <= 1:
                pieces.append((left, right))
            elif left >= 1:
                pieces.append((left - 1, right - 1))
            else:
                pieces.append((left, Fraction(1)))
                pieces.append((Fraction(0), right - 1))
    return pieces


@dataclass(frozen=True)
class Cover:
    """A plan together with its materialization, when one was affordable.

    ``interval_count`` is the raw piece count sum(2 * p^u for u < k),
    recorded before any merging.
    """

    plan: CoverPlan
    explicit_set: CircleSet | None
    interval_count: int


def raw_interval_count(plan: CoverPlan) -> int:
    return sum(2 * plan.params.p**u for u in range(plan.k))


def build_cover(plan: CoverPlan, budget: int = DEFAULT_INTERVAL_BUDGET) -> Cover:
    """Materialize the union of all S_u, refusing if the raw count exceeds budget."""
    if budget <= 0:
        raise ValueError(f"budget must be positive, got {budget}")
    count = raw_interval_count(plan)
    if count > budget:
        raise IntervalBudgetError(
            f"{count} raw intervals exceed the budget of {budget}; "
            "use member_implicit instead"
        )
    pieces: list[tuple[Fraction, Fraction]] = []
    for u in range(plan.k):
        pieces.extend(_offset_pieces(plan, u))
    return Cover(plan=plan, explicit_set=CircleSet.from_intervals(pieces), interval_count=count)


@lru_cache(maxsize=64)
def _offset_membership_bands(plan: CoverPlan) -> tuple[tuple[CircleSet, int], ...]:
    # x in S_u  iff  frac(x * p^u) lands in the band blown up by q^u.
    out = []
    for u in range(plan.k):
        out.append((plan.base_band.scale_mod1(Fraction(plan.params.q**u)), plan.params.p**u))
    return tuple(out)


def member_implicit(plan: CoverPlan, x: Fraction) -> bool:
    """Cover membership without materialization; agrees with the explicit set."""
    x = Fraction(x)
    for band, ppow in _offset_membership_bands(plan):
        if band.contains(frac(x * ppow)):
            return True
    return False


def verify_orbit(lam: Fraction, plan: CoverPlan, n_max: int) -> int | None:
    """Check frac(lam * r^n) against the cover for n = 0..n_max.

    Returns None on success, otherwise the first violating n.
    """
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError(f"orbit seed must be positive, got {lam}")
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    r = plan.params.ratio
    value = lam
    for n in range(n_max + 1):
        if not member_implicit(plan, frac(value)):
            return n
        value *= r
    return None
