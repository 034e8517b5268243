"""Deterministic command-line front end.

Subcommands
-----------
cover      build/inspect a small-measure orbit cover for p/q, p > q^2
survivors  branch-and-prune survivor search and per-depth census
verify     check an orbit seed against a cover, step by step
q1         census of reduced fractions p/q with p > q^2
waring     threshold scan on the powers of 3/2

All rational inputs and outputs use the exact "num/den" form; decimal
columns are 12-digit truncations for human eyes and are never read back.
Identical invocations produce byte-identical output, for any worker
count.

Exit codes: 0 success, 2 invalid ratio/band hypothesis, 3 budget
exceeded, 4 no survivors at the requested depth, 5 orbit violation,
64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import census, waring
from .circleset import CircleSet
from .cover import (
    DegenerateBandError,
    IntervalBudgetError,
    RatioConstraintError,
    RatioParam,
    build_cover,
    measure_bound,
    minimal_k,
    plan_cover,
    raw_interval_count,
    verify_orbit,
)
from .rationals import decimal_string, format_rational, parse_rational
from .survivors import (
    MODE_ALL_CHILDREN,
    MODE_FULL_COMPONENT,
    Certificate,
    NodeBudgetError,
    NoSurvivorsError,
    TargetSpec,
    bitstring_family,
    leaves_per_depth,
    preset_dubickas_gap,
    preset_es,
    preset_mahler_z,
    preset_pollington,
    search,
)

EXIT_OK = 0
EXIT_HYPOTHESIS = 2
EXIT_BUDGET = 3
EXIT_NO_SURVIVORS = 4
EXIT_VIOLATION = 5
EXIT_USAGE = 64

PRESETS = ("es", "mahler-z", "pollington", "dubickas-gap")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _json_doc(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _interval_json(lo: Fraction, hi: Fraction) -> list[str]:
    return [format_rational(lo), format_rational(hi)]


# ---------------------------------------------------------------------------
# cover / verify
# ---------------------------------------------------------------------------

def _cmd_cover(args: argparse.Namespace) -> int:
    params = RatioParam(args.p, args.q)
    plan = plan_cover(params, args.epsilon)
    doc = {
        "params": {"p": plan.params.p, "q": plan.params.q},
        "epsilon": format_rational(plan.epsilon),
        "k": plan.k,
        "s": format_rational(plan.s),
        "band_halfwidth": format_rational(plan.band_halfwidth),
        "raw_interval_count": raw_interval_count(plan),
        "measure_bound": format_rational(measure_bound(plan.params, plan.k)),
        "measure": None,
        "intervals": None,
    }
    if args.materialize:
        cover = build_cover(plan, budget=args.budget)
        assert cover.explicit_set is not None
        doc["measure"] = format_rational(cover.explicit_set.measure)
        doc["measure_decimal"] = decimal_string(cover.explicit_set.measure)
        doc["intervals"] = cover.explicit_set.as_pairs()
    _emit(_json_doc(doc), args.out)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    params = RatioParam(args.p, args.q)
    plan = plan_cover(params, args.epsilon)
    violation = verify_orbit(args.lam, plan, args.n_max)
    doc = {
        "lambda": format_rational(args.lam),
        "params": {"p": plan.params.p, "q": plan.params.q},
        "epsilon": format_rational(plan.epsilon),
        "k": plan.k,
        "n_max": args.n_max,
        "violation": violation,
    }
    _emit(_json_doc(doc), args.out)
    return EXIT_OK if violation is None else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# survivors
# ---------------------------------------------------------------------------

def _parse_target(text: str) -> CircleSet:
    pieces = []
    for chunk in text.split(";"):
        ends = chunk.split(",")
        if len(ends) != 2:
            raise ValueError(f"target interval must be 'lo,hi', got {chunk!r}")
        pieces.append((parse_rational(ends[0]), parse_rational(ends[1])))
    return CircleSet.from_intervals(pieces)


def _build_spec(args: argparse.Namespace) -> TargetSpec:
    if args.preset is None:
        if args.ratio is None or args.target is None or args.window is None:
            raise ValueError("explicit specs need --ratio, --target and --window")
        ends = args.window.split(",")
        if len(ends) != 2:
            raise ValueError(f"window must be 'lo,hi', got {args.window!r}")
        return TargetSpec(
            ratio=args.ratio,
            target=_parse_target(args.target),
            window=(parse_rational(ends[0]), parse_rational(ends[1])),
            depth=args.depth,
            mode=args.mode,
        )
    if args.preset == "es":
        if args.p is None or args.q is None:
            raise ValueError("the es preset needs --p and --q")
        params = RatioParam(args.p, args.q)
        if args.k is not None:
            k = args.k
        elif args.epsilon is not None:
            k = minimal_k(params, args.epsilon)
        else:
            raise ValueError("the es preset needs --k or --epsilon")
        return preset_es(params, k, band_index=args.band_index, depth=args.depth)
    if args.preset == "mahler-z":
        return preset_mahler_z(depth=args.depth)
    if args.preset == "pollington":
        return preset_pollington(depth=args.depth)
    if args.preset == "dubickas-gap":
        return preset_dubickas_gap(depth=args.depth)
    raise ValueError(f"unknown preset {args.preset!r}")


def _certificate_json(cert: Certificate) -> dict:
    doc = {
        "ratio": format_rational(cert.spec.ratio),
        "target": cert.spec.target.as_pairs(),
        "window": _interval_json(*cert.spec.window),
        "depth": cert.spec.depth,
        "path": [[m, ci] for m, ci in cert.path],
        "lambda_interval": _interval_json(cert.lambda_lo, cert.lambda_hi),
        "representative": format_rational(cert.representative),
    }
    if cert.code is not None:
        doc["code"] = cert.code
    return doc


def _cmd_survivors(args: argparse.Namespace) -> int:
    spec = _build_spec(args)
    certificates: list[Certificate] = []
    if args.bits is not None:
        codes = args.bits.split(",")
        certificates = bitstring_family(spec, codes, workers=args.workers)
    elif args.max_leaves > 0:
        certificates = search(spec, strategy=args.strategy, max_leaves=args.max_leaves)
    stats = None
    if args.stats_depth is not None:
        stats = leaves_per_depth(
            spec.with_depth(args.stats_depth),
            node_budget=args.budget,
            workers=args.workers,
        )
    doc = {
        "preset": spec.name,
        "report_only": spec.report_only,
        "mode": spec.mode,
        "ratio": format_rational(spec.ratio),
        "target": spec.target.as_pairs(),
        "window": _interval_json(*spec.window),
        "depth": spec.depth,
        "certificates": [_certificate_json(c) for c in certificates],
        "stats": None
        if stats is None
        else [
            {
                "depth": row.depth,
                "count": row.count,
                "measure": format_rational(row.measure),
                "measure_decimal": decimal_string(row.measure),
            }
            for row in stats
        ],
    }
    if args.format == "csv":
        if stats is None:
            raise ValueError("csv output for survivors needs --stats-depth")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["depth", "count", "measure", "measure_decimal"])
        for row in stats:
            writer.writerow(
                [row.depth, row.count, format_rational(row.measure), decimal_string(row.measure)]
            )
        _emit(buf.getvalue(), args.out)
    else:
        _emit(_json_doc(doc), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# q1
# ---------------------------------------------------------------------------

def _q1_rows(values: list[Fraction], start_index: int, window_of) -> list[list]:
    rows = []
    for i, value in enumerate(values, start=start_index):
        rows.append(
            [
                i,
                value.numerator,
                value.denominator,
                decimal_string(value),
                window_of(value),
            ]
        )
    return rows


def _cmd_q1(args: argparse.Namespace) -> int:
    header = ["index", "p", "q", "value_decimal", "window"]
    comments: list[str] = []
    if args.mode == "list":
        values = census.first_elements(args.n)
        rows = _q1_rows(values, 1, lambda v: v.numerator // v.denominator)
    elif args.mode == "window":
        report = census.window_report(args.n)
        values = census.enumerate_window(args.n)
        start = census.count_upto(args.n) - (1 if args.n >= 2 else 0) + 1
        rows = _q1_rows(values, start, lambda v: args.n)
        comments.append(
            f"# window={args.n} count={report.count} "
            f"phi_summatory={report.phi_sum} matches={report.matches}"
        )
    elif args.mode == "density":
        report = census.density_report(args.n)
        header = ["n", "count", "cube", "ratio", "ratio_decimal", "gap", "gap_decimal"]
        rows = [
            [
                report.n,
                report.count,
                report.cube,
                format_rational(report.ratio),
                decimal_string(report.ratio),
                format_rational(report.gap),
                decimal_string(report.gap),
            ]
        ]
        comments.append(
            f"# density_constant={format_rational(report.density_constant)} "
            f"({decimal_string(report.density_constant)})"
        )
    else:
        raise ValueError(f"unknown q1 mode {args.mode!r}")

    if args.format == "json":
        doc = {"mode": args.mode, "n": args.n, "columns": header, "rows": rows, "notes": comments}
        _emit(_json_doc(doc), args.out)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        for line in comments:
            buf.write(line + "\n")
        _emit(buf.getvalue(), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# waring
# ---------------------------------------------------------------------------

def _cmd_waring(args: argparse.Namespace) -> int:
    if args.n_from > args.n_to:
        raise ValueError(f"empty range {args.n_from}..{args.n_to}")
    report = waring.scan_parallel(args.n_from, args.n_to, workers=args.workers)
    if args.format == "json":
        doc = {
            "n_from": report.n_from,
            "n_to": report.n_to,
            "star_failures": list(report.star_failures),
            "norm_failures": list(report.norm_failures),
        }
        _emit(_json_doc(doc), args.out)
        return EXIT_OK
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "a", "b", "star", "norm", "g"])
    for row in waring.scan_rows(args.n_from, args.n_to):
        writer.writerow([row.n, row.a, row.b, row.star, row.norm, row.g])
    buf.write(f"# star_failures: {' '.join(map(str, report.star_failures))}\n")
    buf.write(f"# norm_failures: {' '.join(map(str, report.norm_failures))}\n")
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser wiring
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fracorbit", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_cover = sub.add_parser("cover", help="build a small-measure orbit cover")
    p_cover.add_argument("--p", type=_positive_int, required=True)
    p_cover.add_argument("--q", type=_positive_int, required=True)
    p_cover.add_argument("--epsilon", type=_rational, required=True)
    p_cover.add_argument("--budget", type=_positive_int, default=10**6)
    p_cover.add_argument("--materialize", action="store_true")
    p_cover.add_argument("--out", default=None)
    p_cover.set_defaults(handler=_cmd_cover)

    p_surv = sub.add_parser("survivors", help="branch-and-prune survivor search")
    p_surv.add_argument("--preset", choices=PRESETS, default=None)
    p_surv.add_argument("--p", type=_positive_int, default=None)
    p_surv.add_argument("--q", type=_positive_int, default=None)
    p_surv.add_argument("--k", type=_positive_int, default=None)
    p_surv.add_argument("--epsilon", type=_rational, default=None)
    p_surv.add_argument("--band-index", type=_positive_int, default=1)
    p_surv.add_argument("--ratio", type=_rational, default=None)
    p_surv.add_argument("--target", default=None, help="semicolon-separated lo,hi pairs")
    p_surv.add_argument("--window", default=None, help="lo,hi")
    p_surv.add_argument(
        "--mode",
        choices=(MODE_ALL_CHILDREN, MODE_FULL_COMPONENT),
        default=MODE_ALL_CHILDREN,
    )
    p_surv.add_argument("--depth", type=_nonneg_int, default=10)
    p_surv.add_argument("--strategy", default="leftmost")
    p_surv.add_argument("--bits", default=None, help="comma-separated 0/1 codes")
    p_surv.add_argument("--max-leaves", type=_nonneg_int, default=8)
    p_surv.add_argument("--stats-depth", type=_nonneg_int, default=None)
    p_surv.add_argument("--budget", type=_positive_int, default=10**6)
    p_surv.add_argument("--workers", type=_positive_int, default=1)
    p_surv.add_argument("--format", choices=("json", "csv"), default="json")
    p_surv.add_argument("--out", default=None)
    p_surv.set_defaults(handler=_cmd_survivors)

    p_verify = sub.add_parser("verify", help="check an orbit seed against a cover")
    p_verify.add_argument("--lambda", dest="lam", type=_rational, required=True)
    p_verify.add_argument("--p", type=_positive_int, required=True)
    p_verify.add_argument("--q", type=_positive_int, required=True)
    p_verify.add_argument("--epsilon", type=_rational, required=True)
    p_verify.add_argument("--n-max", type=_nonneg_int, required=True)
    p_verify.add_argument("--out", default=None)
    p_verify.set_defaults(handler=_cmd_verify)

    p_q1 = sub.add_parser("q1", help="census of p/q with p > q^2")
    p_q1.add_argument("mode", choices=("list", "window", "density"))
    p_q1.add_argument("--n", type=_positive_int, required=True)
    p_q1.add_argument("--format", choices=("json", "csv"), default="csv")
    p_q1.add_argument("--out", default=None)
    p_q1.set_defaults(handler=_cmd_q1)

    p_war = sub.add_parser("waring", help="threshold scan for powers of 3/2")
    p_war.add_argument("--from", dest="n_from", type=_positive_int, required=True)
    p_war.add_argument("--to", dest="n_to", type=_positive_int, required=True)
    p_war.add_argument("--workers", type=_positive_int, default=1)
    p_war.add_argument("--format", choices=("json", "csv"), default="csv")
    p_war.add_argument("--out", default=None)
    p_war.set_defaults(handler=_cmd_waring)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except (RatioConstraintError, DegenerateBandError) as exc:
        print(f"fracorbit: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (IntervalBudgetError, NodeBudgetError) as exc:
        print(f"fracorbit: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except NoSurvivorsError as exc:
        print(f"fracorbit: {exc}", file=sys.stderr)
        return EXIT_NO_SURVIVORS
    except ValueError as exc:
        print(f"fracorbit: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
