"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Every expected value is either asserted directly from an in-test
independent oracle (direct evaluation, brute-force enumeration, interval
propagation) or is a frozen constant computed by such an oracle ahead of
time.  Runtime ceilings are part of the criteria and are asserted.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import math
import time
from fractions import Fraction

from fracorbit.census import (
    count_upto,
    enumerate_window,
    first_elements,
    window_report,
)
from fracorbit.cli import main as cli_main
from fracorbit.cover import (
    RatioParam,
    build_cover,
    member_implicit,
    minimal_k,
    plan_cover,
    verify_orbit,
)
from fracorbit.survivors import (
    bitstring_family,
    leaves_per_depth,
    preset_dubickas_gap,
    preset_es,
    preset_mahler_z,
    preset_pollington,
    replay,
    search,
)
from fracorbit.waring import check_norm, check_star, g_formula, scan


def _report(num: int, ok: bool, detail: str) -> None:
    print(f"acceptance {num}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"acceptance {num}: {detail}"


def _bound_oracle(p: int, q: int, k: int) -> Fraction:
    # direct evaluation, independent of the library's incremental loop
    return Fraction(2 * sum(q**i for i in range(k))) / (Fraction(p, q) ** k - 1)


def test_acceptance_1_minimal_power():
    t0 = time.monotonic()
    params = RatioParam(5, 2)
    k = minimal_k(params, Fraction(1, 2))
    f6 = _bound_oracle(5, 2, 6)
    f7 = _bound_oracle(5, 2, 7)
    ok = (
        k == 7
        and f6 == Fraction(8064, 15561)
        and f7 == Fraction(32512, 77997)
        and f6 >= Fraction(1, 2)
        and f7 < Fraction(1, 2)
    )
    elapsed = time.monotonic() - t0
    ok = ok and elapsed < 1.0
    _report(1, ok, f"minimal k for (5,2) at 1/2 is {k}; bound(6)={f6}, bound(7)={f7}; {elapsed:.3f}s")


def test_acceptance_2_cover_measure_and_count():
    t0 = time.monotonic()
    ok = True
    details = []
    for p, q, eps in [(3, 1, Fraction(3, 10)), (5, 2, Fraction(1, 2))]:
        plan = plan_cover(RatioParam(p, q), eps)
        cover = build_cover(plan)
        expected_raw = sum(2 * p**u for u in range(plan.k))
        measure = cover.explicit_set.measure
        ok = ok and measure < eps and cover.interval_count == expected_raw
        details.append(f"({p},{q}): measure {measure} < {eps}, raw {cover.interval_count}")
    elapsed = time.monotonic() - t0
    ok = ok and elapsed < 10.0
    _report(2, ok, "; ".join(details) + f"; {elapsed:.2f}s")


def test_acceptance_3_explicit_implicit_agreement():
    t0 = time.monotonic()
    plan = plan_cover(RatioParam(3, 1), Fraction(3, 10))
    explicit = build_cover(plan).explicit_set
    mismatches = sum(
        1
        for i in range(1000)
        if explicit.contains(Fraction(i, 1009)) != member_implicit(plan, Fraction(i, 1009))
    )
    elapsed = time.monotonic() - t0
    ok = mismatches == 0 and elapsed < 5.0
    _report(3, ok, f"1000 probes i/1009: {mismatches} mismatches; {elapsed:.2f}s")


def test_acceptance_4_certified_orbits_end_to_end():
    t0 = time.monotonic()
    params = RatioParam(5, 2)
    plan = plan_cover(params, Fraction(1, 2))
    # depth 20 so the replayed pipeline covers n <= k * depth = 140
    spec = preset_es(params, k=plan.k, depth=20)
    codes = [format(i, "03b") for i in range(8)]
    certs = bitstring_family(spec, codes)
    disjoint = all(
        certs[i].lambda_hi < certs[j].lambda_lo or certs[j].lambda_hi < certs[i].lambda_lo
        for i in range(len(certs))
        for j in range(i + 1, len(certs))
    )
    violations = [verify_orbit(c.representative, plan, 140) for c in certs]
    elapsed = time.monotonic() - t0
    ok = (
        plan.k == 7
        and plan.s == Fraction(78125, 128)
        and len(certs) == 8
        and disjoint
        and all(v is None for v in violations)
        and elapsed < 120.0
    )
    _report(
        4,
        ok,
        f"8 disjoint 3-bit certificates, all orbits verified to n=140; {elapsed:.2f}s",
    )


def test_acceptance_5_leaf_doubling():
    t0 = time.monotonic()
    spec = preset_es(RatioParam(5, 2), k=2, depth=10)
    assert spec.ratio == Fraction(25, 4)
    stats = leaves_per_depth(spec)
    doubling = all(row.count >= 2**row.depth for row in stats)
    nonincreasing = all(a.measure >= b.measure for a, b in zip(stats, stats[1:]))
    elapsed = time.monotonic() - t0
    ok = doubling and nonincreasing and elapsed < 30.0
    _report(
        5,
        ok,
        f"counts {[r.count for r in stats]} >= powers of two, measures non-increasing; {elapsed:.2f}s",
    )


def test_acceptance_6_census():
    t0 = time.monotonic()
    listed = ["2", "5/2", "3", "10/3", "7/2", "11/3", "4", "17/4", "13/3", "9/2", "14/3", "19/4", "5"]
    first = first_elements(13)
    list_ok = [str(Fraction(t)) for t in listed] == [str(v) for v in first]

    def phi_by_definition(n):
        return sum(1 for j in range(1, n + 1) if math.gcd(j, n) == 1)

    windows_ok = True
    for n in range(2, 51):
        formula = sum(phi_by_definition(i) for i in range(1, n + 1))
        if len(enumerate_window(n)) != formula:
            windows_ok = False
            break
    bound_ok = all(count_upto(n) <= n**3 for n in range(1, 51))
    gap = window_report(1)
    gap_ok = gap.count == 0 and gap.phi_sum == 1 and not gap.matches
    elapsed = time.monotonic() - t0
    ok = list_ok and windows_ok and bound_ok and gap_ok and elapsed < 30.0
    _report(
        6,
        ok,
        "first 13 members match, window counts equal totient sums for n=2..50, "
        f"count <= n^3, window 1 reports 0 vs phi-sum 1; {elapsed:.2f}s",
    )


def test_acceptance_7_threshold_scan():
    t0 = time.monotonic()
    small = scan(1, 10)
    big = scan(4, 20000)
    g_ok = (g_formula(2), g_formula(4), g_formula(7)) == (4, 19, 143)
    elapsed = time.monotonic() - t0
    ok = (
        small.star_failures == (1, 2, 3)
        and big.star_failures == ()
        and check_norm(7) is False
        and check_norm(8) is True
        and g_ok
        and elapsed < 120.0
    )
    _report(
        7,
        ok,
        f"star failures 1..10 = {list(small.star_failures)}, none in 4..20000, "
        f"norm(7)/norm(8) = False/True, g(2),g(4),g(7) = 4,19,143; {elapsed:.2f}s",
    )


def test_acceptance_8_probe_harness():
    t0 = time.monotonic()
    spec = preset_mahler_z(depth=1)

    # independent hand oracle: propagate the window through one step and cut
    # against every translate of [0, 1/2] with plain max/min arithmetic
    ratio = Fraction(3, 2)
    img_lo, img_hi = ratio * 1, ratio * 2
    oracle = []
    for m in range(math.floor(img_lo) - 2, math.ceil(img_hi) + 3):
        lo, hi = max(img_lo, m + Fraction(0)), min(img_hi, m + Fraction(1, 2))
        if lo <= hi:
            oracle.append((lo / ratio, hi / ratio))
    oracle.sort()

    certs = search(spec, "leftmost", max_leaves=8)
    intervals = [(c.lambda_lo, c.lambda_hi) for c in certs]
    oracle_ok = intervals == oracle
    # the fat interval and the right endpoint survivor are both present
    named_ok = (Fraction(4, 3), Fraction(5, 3)) in intervals and (
        Fraction(2),
        Fraction(2),
    ) in intervals

    stats = leaves_per_depth(preset_mahler_z(depth=30))
    nonincreasing = all(a.measure >= b.measure for a, b in zip(stats, stats[1:]))

    emitted = list(certs)
    emitted += search(preset_es(RatioParam(5, 2), k=2, depth=8), "leftmost", max_leaves=4)
    emitted += search(preset_pollington(depth=5), "leftmost", max_leaves=4)
    emitted += search(preset_dubickas_gap(depth=4), "leftmost", max_leaves=4)
    replay_ok = all(replay(c) for c in emitted)

    elapsed = time.monotonic() - t0
    ok = oracle_ok and named_ok and nonincreasing and replay_ok and elapsed < 60.0
    _report(
        8,
        ok,
        f"depth-1 survivors {[(str(a), str(b)) for a, b in intervals]} match the hand oracle "
        f"(the boundary point seed 1 survives the closed target alongside [4/3,5/3] and 2); "
        f"measures non-increasing to depth 30; replay true for all {len(emitted)} certificates; "
        f"{elapsed:.2f}s",
    )


def test_acceptance_9_worker_determinism(tmp_path):
    configs = {
        "family": [
            "survivors", "--preset", "es", "--p", "5", "--q", "2", "--epsilon", "1/2",
            "--depth", "20", "--bits", "000,001,010,011,100,101,110,111",
            "--max-leaves", "0",
        ],
        "census": [
            "survivors", "--preset", "es", "--p", "5", "--q", "2", "--k", "2",
            "--depth", "10", "--max-leaves", "0", "--stats-depth", "10",
        ],
    }
    ok = True
    for name, argv in configs.items():
        one = tmp_path / f"{name}-w1.json"
        eight = tmp_path / f"{name}-w8.json"
        assert cli_main([*argv, "--workers", "1", "--out", str(one)]) == 0
        assert cli_main([*argv, "--workers", "8", "--out", str(eight)]) == 0
        ok = ok and one.read_bytes() == eight.read_bytes()
    _report(9, ok, "1-worker and 8-worker outputs byte-identical for both runs")
