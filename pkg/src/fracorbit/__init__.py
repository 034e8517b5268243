"""Exact rational arithmetic for fractional parts of geometric orbits.

Four capabilities, all floating-point free on correctness paths:

* ``cover``: for a reduced ratio p/q with p > q^2 and any epsilon > 0,
  build a finite union of closed circle intervals of measure < epsilon
  that traps entire multiplication orbits, with explicit and implicit
  membership cross-checked.
* ``survivors``: branch-and-prune over seed intervals for constraints
  frac(lam * ratio**n) in a target set, with replayable certificates,
  per-depth census, and ready-made presets.
* ``census``: enumerate the ratios p/q with p > q^2 in increasing order
  and check the totient-sum window counts and density trend.
* ``waring``: exact big-integer threshold checks on the powers of 3/2.
"""

from .circleset import CircleSet, union
from .cover import (
    Cover,
    CoverPlan,
    DegenerateBandError,
    IntervalBudgetError,
    RatioConstraintError,
    RatioParam,
    base_band,
    build_cover,
    measure_bound,
    member_implicit,
    minimal_k,
    offset_cover,
    plan_cover,
    raw_interval_count,
    verify_orbit,
)
from .census import (
    count_upto,
    density_report,
    enumerate_window,
    euler_phi,
    first_elements,
    is_q1,
    nth_element,
    phi_summatory,
    window_report,
)
from .rationals import (
    decimal_string,
    dist_nearest_int,
    format_rational,
    frac,
    orbit,
    parse_rational,
)
from .survivors import (
    MODE_ALL_CHILDREN,
    MODE_FULL_COMPONENT,
    Certificate,
    GapStats,
    LevelStats,
    NodeBudgetError,
    NoSurvivorsError,
    SurvivorNode,
    TargetSpec,
    bitstring_family,
    children,
    first_violation,
    gap_stats,
    leaves_per_depth,
    preset_dubickas_gap,
    preset_es,
    preset_mahler_z,
    preset_pollington,
    replay,
    root_node,
    search,
)
from .waring import (
    PowerDecomp,
    ScanReport,
    ScanRow,
    check_norm,
    check_star,
    decomp,
    g_formula,
    scan,
    scan_parallel,
    scan_rows,
)

__version__ = "0.1.0"
