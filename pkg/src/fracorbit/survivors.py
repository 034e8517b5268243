"""Exact branch-and-prune over seed intervals for circle-orbit constraints.

The problem: which positive lam in a window keep frac(lam * ratio**n)
inside a fixed circle target set for every n up to a depth?  A node at
depth n tracks the closed interval J of admissible values of
lam * ratio**n.  Stepping multiplies J by the ratio and cuts the image
against the integer translates of the target: writing the target as
circular components (a wrap pair [0, x] + [y, 1] counts as the single arc
[y-1, x] crossing the origin), every nonempty

    (ratio * J) intersect (m + component)

becomes a child, tagged with its integer anchor m.  Because normalized
components neither touch nor overlap, translated components are pairwise
disjoint, so sibling children are disjoint and interval lengths sum to
exact survivor measures without any merging.

Child modes:

* ``all-children`` keeps every nonempty piece, including endpoint-only
  point intervals; nothing admissible is discarded.  Used for the
  conjecture probes, which are report-only.
* ``full-component-only`` keeps a child only when it is an entire
  translated component.  For a band target of halfwidth h = 1/(s-1) with
  s > 3 the image of a full band spans 2 + 2/(s-1), which always contains
  at least two whole bands, so every node branches at least twice and the
  tree has at least 2**d leaves at depth d.

A leaf yields a certificate: the seed interval J / ratio**depth, the
anchor path, and the interval midpoint as representative.  Certificates
carry an unconditional guarantee: ``search`` replays each candidate
representative through the independent exact-orbit kernel (constraints at
n = 0 through depth inclusive) and drops any that fail, so every returned
certificate replays true.  The n = 0 filter is not vacuous: tree
constraints start at n = 1 (the root is the whole window), so a window
that is not itself covered by target translates can produce leaf
midpoints that violate the zeroth step.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from itertools import repeat
from typing import Sequence

from .circleset import CircleSet
from .cover import RatioParam, base_band
from .rationals import frac, orbit

__all__ = [
    "MODE_ALL_CHILDREN",
    "MODE_FULL_COMPONENT",
    "NoSurvivorsError",
    "NodeBudgetError",
    "TargetSpec",
    "SurvivorNode",
    "Certificate",
    "children",
    "root_node",
    "search",
    "bitstring_family",
    "replay",
    "first_violation",
    "LevelStats",
    "leaves_per_depth",
    "preset_es",
    "preset_mahler_z",
    "preset_pollington",
    "preset_dubickas_gap",
    "GapStats",
    "gap_stats",
]

MODE_ALL_CHILDREN = "all-children"
MODE_FULL_COMPONENT = "full-component-only"

DEFAULT_NODE_BUDGET = 10**6


class NoSurvivorsError(RuntimeError):
    """No certificate survived to the requested depth."""


class NodeBudgetError(RuntimeError):
    """Tree expansion exceeded the configured node budget."""


@dataclass(frozen=True)
class TargetSpec:
    """One orbit-constraint problem: ratio, target set, seed window, depth, mode."""

    ratio: Fraction
    target: CircleSet
    window: tuple[Fraction, Fraction]
    depth: int
    mode: str = MODE_ALL_CHILDREN
    name: str = "custom"
    report_only: bool = False

    def __post_init__(self) -> None:
        if self.ratio <= 1:
            raise ValueError(f"ratio must exceed 1, got {self.ratio}")
        lo, hi = self.window
        if not 0 < lo <= hi:
            raise ValueError(f"window must satisfy 0 < lo <= hi, got [{lo}, {hi}]")
        if self.depth < 0:
            raise ValueError(f"depth must be >= 0, got {self.depth}")
        if self.mode not in (MODE_ALL_CHILDREN, MODE_FULL_COMPONENT):
            raise ValueError(f"unknown mode {self.mode!r}")

    def with_depth(self, depth: int) -> "TargetSpec":
        return replace(self, depth=depth)


@dataclass(frozen=True)
class SurvivorNode:
    """Depth index n, the admissible interval for lam * ratio**n, anchor path."""

    n: int
    lo: Fraction
    hi: Fraction
    path: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Certificate:
    """A replayable witness: seed interval, anchor path, midpoint representative."""

    spec: TargetSpec
    lambda_lo: Fraction
    lambda_hi: Fraction
    path: tuple[tuple[int, int], ...]
    representative: Fraction
    code: str | None = None


@lru_cache(maxsize=128)
def _circular_components(target: CircleSet) -> tuple[tuple[Fraction, Fraction], ...]:
    comps = target.components
    if len(comps) >= 2 and comps[0][0] == 0 and comps[-1][1] == 1:
        arc = (comps[-1][0] - 1, comps[0][1])
        return (arc,) + comps[1:-1]
    return comps


def root_node(spec: TargetSpec) -> SurvivorNode:
    return SurvivorNode(n=0, lo=spec.window[0], hi=spec.window[1], path=())


def children(node: SurvivorNode, spec: TargetSpec) -> list[SurvivorNode]:
    """Expand one node; an empty list means the branch is pruned.

    Children are sorted by lower endpoint.  Point intervals are genuine
    survivors and are kept.
    """
    img_lo = spec.ratio * node.lo
    img_hi = spec.ratio * node.hi
    full_only = spec.mode == MODE_FULL_COMPONENT
    kids = []
    for ci, (a, b) in enumerate(_circular_components(spec.target)):
        for m in range(math.ceil(img_lo - b), math.floor(img_hi - a) + 1):
            lo = max(img_lo, m + a)
            hi = min(img_hi, m + b)
            if lo > hi:
                continue
            if full_only and (lo != m + a or hi != m + b):
                continue
            kids.append(
                SurvivorNode(n=node.n + 1, lo=lo, hi=hi, path=node.path + ((m, ci),))
            )
    kids.sort(key=lambda k: (k.lo, k.hi))
    return kids


def first_violation(
    lam: Fraction, ratio: Fraction, target: CircleSet, n_max: int
) -> int | None:
    """First n <= n_max with frac(lam * ratio**n) outside the target, else None."""
    for n, point in enumerate(orbit(lam, ratio, n_max)):
        if not target.contains(point):
            return n
    return None


def replay(cert: Certificate) -> bool:
    """Recompute the representative's orbit from scratch and re-check every step."""
    return (
        first_violation(cert.representative, cert.spec.ratio, cert.spec.target, cert.spec.depth)
        is None
    )


def _certificate(spec: TargetSpec, leaf: SurvivorNode, code: str | None = None) -> Certificate | None:
    scale = spec.ratio**spec.depth
    lam_lo = leaf.lo / scale
    lam_hi = leaf.hi / scale
    cert = Certificate(
        spec=spec,
        lambda_lo=lam_lo,
        lambda_hi=lam_hi,
        path=leaf.path,
        representative=(lam_lo + lam_hi) / 2,
        code=code,
    )
    return cert if replay(cert) else None


def _validate_code(spec: TargetSpec, code: str) -> None:
    if not code or set(code) - {"0", "1"}:
        raise ValueError(f"bitstring code must be a nonempty 0/1 string, got {code!r}")
    if len(code) > spec.depth:
        raise ValueError(
            f"bitstring code of length {len(code)} exceeds search depth {spec.depth}"
        )


def _follow_code(spec: TargetSpec, code: str) -> Certificate | None:
    # Each bit picks among the first two children; exhausted bits continue leftmost.
    node = root_node(spec)
    for level in range(spec.depth):
        kids = children(node, spec)
        idx = int(code[level]) if level < len(code) else 0
        if idx >= len(kids):
            return None
        node = kids[idx]
    return _certificate(spec, node, code=code)


def search(
    spec: TargetSpec, strategy: str = "leftmost", max_leaves: int = 1
) -> list[Certificate]:
    """Depth-first search to spec.depth, returning up to max_leaves certificates.

    Strategies: "leftmost" and "rightmost" order the traversal; any 0/1
    string is a bitstring code mapping each bit to a choice among the
    first two children (distinct codes give disjoint seed intervals in
    full-component-only mode).  Results are sorted by seed interval.
    Raises NoSurvivorsError when nothing replayable reaches the depth.
    """
    if max_leaves < 1:
        raise ValueError(f"max_leaves must be >= 1, got {max_leaves}")
    certs: list[Certificate] = []
    if strategy in ("leftmost", "rightmost"):
        stack = [root_node(spec)]
        while stack and len(certs) < max_leaves:
            node = stack.pop()
            if node.n == spec.depth:
                cert = _certificate(spec, node)
                if cert is not None:
                    certs.append(cert)
                continue
            kids = children(node, spec)
            if strategy == "leftmost":
                kids.reverse()
            stack.extend(kids)
    else:
        if set(strategy) - {"0", "1"}:
            raise ValueError(
                f"strategy must be 'leftmost', 'rightmost' or a 0/1 bitstring, got {strategy!r}"
            )
        _validate_code(spec, strategy)
        cert = _follow_code(spec, strategy)
        if cert is not None:
            certs.append(cert)
    certs.sort(key=lambda c: (c.lambda_lo, c.lambda_hi))
    if not certs:
        raise NoSurvivorsError(
            f"no replayable survivors at depth {spec.depth} for preset {spec.name!r}"
        )
    return certs


def bitstring_family(
    spec: TargetSpec, codes: Sequence[str], workers: int = 1
) -> list[Certificate]:
    """One search per code, in code order; codes whose path dies are skipped.

    Worker processes only distribute the independent per-code searches;
    output is identical for any worker count.
    """
    for code in codes:
        _validate_code(spec, code)
    if workers > 1 and len(codes) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_follow_code, repeat(spec), codes))
    else:
        results = [_follow_code(spec, code) for code in codes]
    certs = [c for c in results if c is not None]
    if not certs:
        raise NoSurvivorsError(
            f"none of the {len(codes)} codes reached depth {spec.depth}"
        )
    return certs


@dataclass(frozen=True)
class LevelStats:
    """Survivor census for one depth: node count and exact seed-set measure."""

    depth: int
    count: int
    measure: Fraction


def _expand_chunk(spec: TargetSpec, nodes: list[SurvivorNode]) -> list[SurvivorNode]:
    out: list[SurvivorNode] = []
    for node in nodes:
        out.extend(children(node, spec))
    return out


def leaves_per_depth(
    spec: TargetSpec,
    node_budget: int = DEFAULT_NODE_BUDGET,
    workers: int = 1,
) -> list[LevelStats]:
    """Breadth-first census of the survivor tree, one row per depth.

    Measures are the exact total lengths of the depth-d seed intervals;
    they are checked non-increasing (survivor sets are nested).  The node
    budget bounds the total number of generated nodes; expansion is
    level-synchronized, so worker count changes neither the stats nor the
    budget semantics.
    """
    if node_budget < 1:
        raise ValueError(f"node budget must be positive, got {node_budget}")
    current = [root_node(spec)]
    stats = [LevelStats(depth=0, count=1, measure=spec.window[1] - spec.window[0])]
    generated = 1
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for depth in range(1, spec.depth + 1):
            if pool is not None and len(current) >= 4 * workers:
                size = -(-len(current) // workers)
                chunks = [current[i : i + size] for i in range(0, len(current), size)]
                parts = list(pool.map(_expand_chunk, repeat(spec), chunks))
                nxt = [node for part in parts for node in part]
            else:
                nxt = _expand_chunk(spec, current)
            generated += len(nxt)
            if generated > node_budget:
                raise NodeBudgetError(
                    f"{generated} nodes exceed the budget of {node_budget} at depth {depth}"
                )
            measure = sum((n.hi - n.lo for n in nxt), Fraction(0)) / spec.ratio**depth
            assert measure <= stats[-1].measure, "survivor nesting violated"
            stats.append(LevelStats(depth=depth, count=len(nxt), measure=measure))
            current = nxt
    finally:
        if pool is not None:
            pool.shutdown()
    return stats


def preset_es(
    params: RatioParam, k: int, band_index: int = 1, depth: int = 10
) -> TargetSpec:
    """Band-orbit family for s = (p/q)**k: keep every multiple within 1/(s-1)
    of an integer, starting from the band around ``band_index``.

    Requires s > 3; full-component-only mode, so the branching guarantee
    applies and leaf counts grow at least like 2**depth.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if band_index < 1:
        raise ValueError(f"band index must be >= 1, got {band_index}")
    s = params.ratio**k
    band = base_band(s)
    h = 1 / (s - 1)
    return TargetSpec(
        ratio=s,
        target=band,
        window=(band_index - h, band_index + h),
        depth=depth,
        mode=MODE_FULL_COMPONENT,
        name="es",
    )


def preset_mahler_z(depth: int = 10) -> TargetSpec:
    """Probe for seeds whose 3/2-orbit stays in [0, 1/2].

    The closed upper endpoint is a surrogate for the strict inequality of
    the underlying question; closing the target can only enlarge survivor
    sets, so the reported decay is an upper bound.  Report-only.
    """
    return TargetSpec(
        ratio=Fraction(3, 2),
        target=CircleSet.from_intervals([(Fraction(0), Fraction(1, 2))]),
        window=(Fraction(1), Fraction(2)),
        depth=depth,
        mode=MODE_ALL_CHILDREN,
        name="mahler-z",
        report_only=True,
    )


def preset_pollington(depth: int = 10) -> TargetSpec:
    """Probe for 3/2-orbits keeping distance > 4/65 from the integers
    (closed surrogate [4/65, 61/65]).  Report-only."""
    return TargetSpec(
        ratio=Fraction(3, 2),
        target=CircleSet.from_intervals([(Fraction(4, 65), Fraction(61, 65))]),
        window=(Fraction(1), Fraction(2)),
        depth=depth,
        mode=MODE_ALL_CHILDREN,
        name="pollington",
        report_only=True,
    )


def preset_dubickas_gap(depth: int = 10) -> TargetSpec:
    """Probe for 3/2-orbits avoiding the central interval
    (0.238117..., 0.761882...).

    The published endpoints are known only as decimal truncations, used
    here verbatim over 10**6; survivor decay illustrates the cited
    limit-point behavior and proves nothing.  Report-only.
    """
    lo = Fraction(238117, 10**6)
    hi = Fraction(761882, 10**6)
    return TargetSpec(
        ratio=Fraction(3, 2),
        target=CircleSet.from_intervals([(Fraction(0), lo), (hi, Fraction(1))]),
        window=(Fraction(1), Fraction(2)),
        depth=depth,
        mode=MODE_ALL_CHILDREN,
        name="dubickas-gap",
        report_only=True,
    )


@dataclass(frozen=True)
class GapStats:
    """Exact extremes of a finite orbit segment.  Report-only: no finite
    window decides an asymptotic spread bound."""

    minimum: Fraction
    maximum: Fraction
    spread: Fraction


def gap_stats(lam: Fraction, ratio: Fraction, n_from: int, n_to: int) -> GapStats:
    """Min, max and spread of frac(lam * ratio**n) over n_from..n_to."""
    if n_from < 0 or n_from > n_to:
        raise ValueError(f"need 0 <= n_from <= n_to, got {n_from}..{n_to}")
    points = orbit(lam, ratio, n_to)[n_from:]
    return GapStats(minimum=min(points), maximum=max(points), spread=max(points) - min(points))
