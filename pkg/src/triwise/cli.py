"""Command-line interface.

One subcommand per library operation, machine-readable output (json, csv, or
text), optional figure rendering alongside the delimited output, and
deterministic exit codes: 0 on success / all holds, 1 on any fails, 2 on
usage errors, 3 on inconclusive results.

Rational parameters are accepted only as exact "num/den" strings; floats are
rejected at the boundary so everything downstream stays exact.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Optional

from . import __version__
from .claims import (
    CLAIM_IDS,
    DEFAULT_T_MAX,
    p0,
    p0_exact,
    beta,
    run_all,
    t0,
)
from .families import (
    CapabilityError,
    DomainError,
    SetFamily,
    Subset,
    frontier_family,
    frontier_measure,
    is_r_wise_t_intersecting,
    p_measure,
    read_family,
    write_family,
)
from .intervals import DEFAULT_PRECISION, IntervalValue, PrecisionExhausted
from .search import SearchOptions, audit_lemmas, search_max_measure
from .shifting import ShiftStep, is_shifted, shift_once, shift_saturate
from .stability import compute_constants, stability_audit
from .walks import (
    alpha,
    classify,
    count_walks_ballot,
    f_closed,
    hits_line,
    min_witness_n,
    witness_walks,
)

CLI_PRECISION_CAP = 4096  # escalation doubles 128 -> ... -> 4096 by default

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


def parse_rational(text: str) -> Fraction:
    """Parse 'num/den' (or a plain integer) into an exact Fraction."""
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise argparse.ArgumentTypeError(
            f"only exact rationals like 2/7 are accepted, got {text!r}"
        )
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational {text!r}: {exc}")


def parse_rational_list(text: str) -> tuple[Fraction, ...]:
    return tuple(parse_rational(tok) for tok in text.split(",") if tok.strip())


def parse_elements(text: str) -> list[int]:
    if text.strip() == "-":
        return []
    return [int(tok) for tok in text.split(",") if tok.strip()]


def parse_t_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(":")
    return int(lo), int(hi or lo)


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def family_dict(fam: SetFamily) -> dict:
    return {
        "n": fam.n,
        "size": len(fam),
        "members": [list(s.elements()) for s in fam.subsets()],
    }


# -- output ----------------------------------------------------------------------


def emit(payload: dict, args, rows: Optional[list[dict]] = None) -> None:
    """Write the payload in the requested format to stdout or --output."""
    fmt = args.format
    if fmt == "json":
        text = json.dumps(payload, indent=2, default=str) + "\n"
    elif fmt == "csv":
        rows = rows if rows is not None else [_flatten(payload)]
        buf = io.StringIO()
        fields = sorted({k for row in rows for k in row})
        writer = csv.DictWriter(buf, fieldnames=fields)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        text = buf.getvalue()
    else:
        text = _render_text(payload) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _flatten(obj, prefix: str = "") -> dict:
    out = {}
    if isinstance(obj, dict):
        for k, v in obj.items():
            out.update(_flatten(v, f"{prefix}{k}." if prefix else f"{k}."))
        return {k.rstrip("."): v for k, v in out.items()} if out else {}
    key = prefix.rstrip(".")
    if isinstance(obj, (list, tuple)):
        return {key: json.dumps(obj, default=str)}
    return {key: obj}


def _render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(
            _render_text(v, indent) if isinstance(v, (dict, list)) else f"{pad}- {v}"
            for v in obj
        )
    return f"{pad}{obj}"


# -- subcommand handlers -----------------------------------------------------------


def cmd_measure(args) -> int:
    fam = read_family(args.family)
    value = p_measure(fam, args.p)
    emit(
        {
            "n": fam.n,
            "size": len(fam),
            "p": frac_str(args.p),
            "measure": frac_str(value),
            "measure_approx": float(value),
        },
        args,
    )
    return EXIT_OK


def cmd_frontier(args) -> int:
    value = frontier_measure(args.s, args.t, args.p, args.n)
    payload = {
        "s": args.s,
        "t": args.t,
        "n": args.n,
        "p": frac_str(args.p),
        "measure": frac_str(value),
        "measure_approx": float(value),
    }
    fam = frontier_family(args.s, args.t, args.n)
    payload["family_size"] = len(fam)
    if p_measure(fam, args.p) != value:
        raise ArithmeticError("closed form and enumeration disagree")
    if args.write_family:
        write_family(fam, args.write_family)
        payload["family_file"] = args.write_family
    emit(payload, args)
    return EXIT_OK


def cmd_intersecting_check(args) -> int:
    fam = read_family(args.family)
    ok, witness = is_r_wise_t_intersecting(fam, args.r, args.t)
    payload = {
        "n": fam.n,
        "r": args.r,
        "t": args.t,
        "intersecting": ok,
        "witness": None if witness is None else [list(w.elements()) for w in witness],
    }
    emit(payload, args)
    return EXIT_OK if ok else EXIT_FAILS


def cmd_shift(args) -> int:
    fam = read_family(args.family)
    before = fam.size_profile()
    if args.saturate:
        out = shift_saturate(fam)
        step = "saturate"
    else:
        if args.i is None or args.j is None:
            raise DomainError("either --saturate or both --i and --j are required")
        out = shift_once(fam, ShiftStep(args.i, args.j))
        step = f"({args.i},{args.j})"
    payload = {
        "step": step,
        "profile_preserved": out.size_profile() == before,
        "output_shifted": is_shifted(out),
        "family": family_dict(out),
    }
    if args.write_family:
        write_family(out, args.write_family)
        payload["family_file"] = args.write_family
    emit(payload, args)
    return EXIT_OK


def cmd_walk_classify(args) -> int:
    g = Subset.from_elements(args.n, parse_elements(args.set))
    cls = classify(g, args.t)
    payload = {
        "n": args.n,
        "t": args.t,
        "set": list(g.elements()),
        "class": cls.value,
        "hits": {
            str(c): [list(pt) for pt in hits_line(g, c).hit_points]
            for c in (args.t, args.t + 1, args.t + 2)
        },
    }
    if args.plot_dir:
        from .plots import walk_figure

        payload["figures"] = [walk_figure([g], args.t, args.plot_dir, name="walk_classify")]
    emit(payload, args)
    return EXIT_OK


def cmd_walk_count(args) -> int:
    brute = count_walks_ballot(args.s, args.t)
    closed = f_closed(args.s, args.t)
    payload = {"s": args.s, "t": args.t, "brute_force": brute, "closed_form": closed,
               "agree": brute == closed}
    emit(payload, args)
    return EXIT_OK if brute == closed else EXIT_FAILS


def cmd_witness_walks(args) -> int:
    n = args.n or min_witness_n(args.s, args.t, args.index)
    w, wp, e = witness_walks(args.s, args.t, args.index, n)
    payload = {
        "s": args.s,
        "t": args.t,
        "index": args.index,
        "n": n,
        "w": list(w.elements()),
        "w_prime": list(wp.elements()),
        "e": list(e.elements()),
        "triple_intersection_size": (w.bits & wp.bits & e.bits).bit_count(),
    }
    if args.plot_dir:
        from .plots import walk_figure

        payload["figures"] = [
            walk_figure([w, wp, e], args.t, args.plot_dir, name=f"witness_s{args.s}",
                        labels=["W", "W'", "E"])
        ]
    emit(payload, args)
    return EXIT_OK


def cmd_alpha(args) -> int:
    a = alpha(args.p, args.precision)
    q = 1 - args.p
    residual = a - (IntervalValue.exact(args.p, args.precision) + q * a**3)
    payload = {
        "p": frac_str(args.p),
        "alpha": a.to_dict(),
        "width": str(a.width()),
        "fixed_point_residual_contains_zero": residual.contains_zero(),
    }
    if args.plot_dir:
        from .plots import hitting_convergence_figure

        payload["figures"] = [
            hitting_convergence_figure(1, 24, args.p, a, args.plot_dir)
        ]
    emit(payload, args)
    return EXIT_OK


def cmd_p0(args) -> int:
    enclosure = p0(args.t, args.precision)
    exact = p0_exact(args.t)
    payload = {
        "t": args.t,
        "exact": None if exact is None else frac_str(exact),
        "p0": enclosure.to_dict(),
        "beta": beta(args.t, args.precision).to_dict(),
    }
    emit(payload, args)
    return EXIT_OK


def cmd_t0(args) -> int:
    value = t0(args.p)
    emit({"p": frac_str(args.p), "t0": frac_str(value), "t0_approx": float(value)}, args)
    return EXIT_OK


def cmd_verify_appendix(args) -> int:
    ids = args.claim or CLAIM_IDS
    reports = run_all(
        ids,
        precision=args.precision,
        precision_cap=args.precision_cap,
        grid=args.grid,
        t_range=args.t_range,
        workers=args.workers,
    )
    rows = []
    for rep in reports:
        counts = rep.counts()
        rows.append(
            {
                "claim_id": rep.claim_id,
                "verdict": rep.verdict,
                "holds": counts["holds"],
                "fails": counts["fails"],
                "inconclusive": counts["inconclusive"],
                "min_margin": None if rep.min_margin is None else float(rep.min_margin),
                "max_precision": rep.max_precision,
            }
        )
    payload = {
        "reports": [rep.to_dict(include_points=args.points) for rep in reports],
        "summary": {
            "claims": len(reports),
            "fails": sum(1 for r in reports if r.verdict == "fails"),
            "inconclusive": sum(1 for r in reports if r.verdict == "inconclusive"),
        },
    }
    if args.plot_dir:
        from .plots import claim_margins_figure

        payload["figures"] = [claim_margins_figure(reports, args.plot_dir)]
    emit(payload, args, rows=rows)
    if any(r.verdict == "fails" for r in reports):
        return EXIT_FAILS
    if any(r.verdict == "inconclusive" for r in reports):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_search(args) -> int:
    options = SearchOptions(
        restrict_to_shifted=args.shifted_only,
        use_isomorphism_pruning=args.iso_pruning,
        measure_upper_bound_pruning=not args.no_bound_pruning,
        p_list=args.p_list,
    )
    reports = search_max_measure(args.n, args.t, args.r, options)
    rows = []
    for rep in reports:
        d = rep.to_dict()
        rows.append(
            {
                "n": rep.n,
                "t": rep.t,
                "r": rep.r,
                "p": frac_str(rep.p),
                "max_measure": frac_str(rep.max_measure),
                "max_measure_approx": float(rep.max_measure),
                "agrees_with_reference": rep.agrees_with_reference,
                "status": rep.status,
                "families_examined": rep.families_examined,
                "wall_time": d["wall_time"],
            }
        )
    payload = {"reports": [rep.to_dict() for rep in reports]}
    if args.write_witness:
        from .families import up_closure

        write_family(up_closure(reports[0].witness), args.write_witness)
        payload["witness_family_file"] = args.write_witness
    if args.plot_dir:
        from .plots import search_sweep_figure

        payload["figures"] = [search_sweep_figure(reports, args.plot_dir)]
    emit(payload, args, rows=rows)
    return EXIT_OK


def cmd_audit_lemmas(args) -> int:
    fam = read_family(args.family)
    audit = audit_lemmas(fam, args.t)
    emit(audit.to_dict(), args)
    if not audit.preconditions_ok:
        return EXIT_FAILS
    checks = [audit.line_hitting_ok, audit.prefix_ok]
    if audit.frontier_index is not None:
        checks += [audit.frontier_containment_ok, audit.frontier_unique_ok]
    return EXIT_OK if all(checks) else EXIT_FAILS


def cmd_stability_constants(args) -> int:
    try:
        constants = compute_constants(args.t, args.p, args.precision, args.precision_cap)
    except PrecisionExhausted as exc:
        emit({"error": str(exc), "verdict": "inconclusive"}, args)
        return EXIT_INCONCLUSIVE
    payload = constants.to_dict()
    payload["note"] = "proof-derived constants; not claimed optimal"
    if args.plot_dir:
        from .plots import constants_figure

        payload["figures"] = [constants_figure(constants, args.plot_dir)]
    emit(payload, args)
    return EXIT_OK


def cmd_stability_audit(args) -> int:
    fam = read_family(args.family)
    audit = stability_audit(fam, args.t, args.p, args.precision)
    emit(audit.to_dict(), args)
    if audit.verdict == "bound-violated":
        return EXIT_FAILS
    if audit.verdict == "inconclusive":
        return EXIT_INCONCLUSIVE
    return EXIT_OK


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triwise",
        description="Exact and rigorously verified computations for 3-wise "
        "t-intersecting families under the p-biased measure.",
    )
    parser.add_argument("--version", action="version", version=f"triwise {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, precision: bool = False) -> None:
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--output", metavar="FILE", help="write the report here instead of stdout")
        p.add_argument("--plot-dir", metavar="DIR", help="render figures into this directory")
        if precision:
            p.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                           help="starting mantissa bits (default %(default)s)")
            p.add_argument("--precision-cap", type=int, default=CLI_PRECISION_CAP,
                           help="escalation cap in bits (default %(default)s)")

    p = sub.add_parser("measure", help="exact measure of a family file")
    p.add_argument("--family", required=True)
    p.add_argument("--p", type=parse_rational, required=True)
    common(p)
    p.set_defaults(handler=cmd_measure)

    p = sub.add_parser("frontier", help="frontier family measure (closed form, cross-checked)")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=parse_rational, required=True)
    p.add_argument("--write-family", metavar="FILE")
    common(p)
    p.set_defaults(handler=cmd_frontier)

    p = sub.add_parser("intersecting-check", help="r-wise t-intersecting test with witness")
    p.add_argument("--family", required=True)
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--t", type=int, required=True)
    common(p)
    p.set_defaults(handler=cmd_intersecting_check)

    p = sub.add_parser("shift", help="apply one compression step or saturate")
    p.add_argument("--family", required=True)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--saturate", action="store_true")
    p.add_argument("--write-family", metavar="FILE")
    common(p)
    p.set_defaults(handler=cmd_shift)

    p = sub.add_parser("walk-classify", help="hit records and partition class of one walk")
    p.add_argument("--set", required=True, help="comma-separated elements, '-' for empty")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    common(p)
    p.set_defaults(handler=cmd_walk_classify)

    p = sub.add_parser("walk-count", help="ballot walk count, brute force vs closed form")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    common(p)
    p.set_defaults(handler=cmd_walk_count)

    p = sub.add_parser("witness-walks", help="the witness triple (W, W', E) for s in {0,1,2}")
    p.add_argument("--s", type=int, required=True, choices=(0, 1, 2))
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--index", type=int, default=1, help="the shift index (ignored for s=2)")
    p.add_argument("--n", type=int, help="ground-set size (default: minimal valid)")
    common(p)
    p.set_defaults(handler=cmd_witness_walks)

    p = sub.add_parser("alpha", help="rigorous enclosure of the hitting rate")
    p.add_argument("--p", type=parse_rational, required=True)
    common(p, precision=True)
    p.set_defaults(handler=cmd_alpha)

    p = sub.add_parser("p0", help="crossing threshold: exact rational when possible, else enclosure")
    p.add_argument("--t", type=int, required=True)
    common(p, precision=True)
    p.set_defaults(handler=cmd_p0)

    p = sub.add_parser("t0", help="largest admissible t for a given p, exactly")
    p.add_argument("--p", type=parse_rational, required=True)
    common(p)
    p.set_defaults(handler=cmd_t0)

    p = sub.add_parser("verify-appendix", help="run the inequality-claim registry")
    p.add_argument("--claim", action="append", metavar="ID",
                   help=f"claim id (repeatable); known: {', '.join(CLAIM_IDS)}")
    p.add_argument("--t-range", type=parse_t_range, metavar="A:B",
                   help=f"override integer sweep range (default: per claim, up to {DEFAULT_T_MAX})")
    p.add_argument("--grid", type=int, default=512, help="points per p grid (default %(default)s)")
    p.add_argument("--points", action="store_true", help="include per-point results in JSON")
    p.add_argument("--workers", type=int,
                   default=int(os.environ.get("TRIWISE_WORKERS", "1")),
                   help="parallel claim evaluation (default TRIWISE_WORKERS or 1)")
    common(p, precision=True)
    p.set_defaults(handler=cmd_verify_appendix)

    p = sub.add_parser("search", help="exhaustive extremal search at small n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--p-list", type=parse_rational_list, required=True,
                   help="comma-separated rationals, e.g. 1/4,1/3,1/2")
    p.add_argument("--shifted-only", action="store_true")
    p.add_argument("--iso-pruning", action="store_true")
    p.add_argument("--no-bound-pruning", action="store_true")
    p.add_argument("--write-witness", metavar="FILE",
                   help="write the first report's maximizer (up-closed) as a family file")
    common(p)
    p.set_defaults(handler=cmd_search)

    p = sub.add_parser("audit-lemmas", help="structural audit of one family")
    p.add_argument("--family", required=True)
    p.add_argument("--t", type=int, required=True)
    common(p)
    p.set_defaults(handler=cmd_audit_lemmas)

    p = sub.add_parser("stability-constants", help="the full constant set at (t, p)")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--p", type=parse_rational, required=True)
    common(p, precision=True)
    p.set_defaults(handler=cmd_stability_constants)

    p = sub.add_parser("stability-audit", help="deficit-to-distance audit of one family")
    p.add_argument("--family", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--p", type=parse_rational, required=True)
    common(p, precision=True)
    p.set_defaults(handler=cmd_stability_audit)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (DomainError, CapabilityError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionExhausted as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
