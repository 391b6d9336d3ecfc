"""Command-line front end.

Subcommands: tau gl2|gl3 (tau tables), verify qsystem|gl3|zero-curvature|
orthogonality|mop (identity suites), opgen / mop / recurrence (polynomial
generation). Moments arrive as a file path or inline JSON; all arithmetic
is exact, all output deterministic.

Exit codes: 0 all checks pass / computation done; 1 at least one identity
violation; 2 usage or parse error; 3 degenerate input (a required tau is
zero). Errors are single-line JSON records on stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .errors import (DegenerateTauError, MomentParseError, ResourceBoundError,
                     SupportError, TauqError, UsageError)
from .factorization import verify_zero_curvature
from .moments import MomentSequence, build_moments
from .orthopoly import (monic_op, mop_type2, recurrence_coeffs,
                        verify_mop, verify_orthogonality)
from .report import VerificationReport
from .tau_gl2 import tau_det, verify_qsystem
from .tau_gl3 import SUMMAND_WORK_BOUND, tau3_value, verify_gl3_relations


class _Parser(argparse.ArgumentParser):
    """argparse that reports problems as UsageError (exit 2) instead of
    exiting on its own."""

    def error(self, message):
        raise UsageError(message)


def parse_range(text: str, name: str) -> tuple[int, int]:
    """Inclusive 'lo..hi' range; a bare integer means a one-point range."""
    s = text.strip()
    try:
        if ".." in s:
            lo_s, hi_s = s.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo = hi = int(s)
    except ValueError:
        raise UsageError(f"--{name}: expected INT or LO..HI, got {text!r}") from None
    if lo > hi:
        raise UsageError(f"--{name}: empty range {text!r}")
    return (lo, hi)


def single_value(text: str, name: str) -> int:
    lo, hi = parse_range(text, name)
    if lo != hi:
        raise UsageError(f"--{name}: expected a single integer, got {text!r}")
    return lo


def load_moments(text: str, flag: str) -> MomentSequence:
    """Parse a moments argument: inline JSON if it starts with '{',
    otherwise a path to a JSON file."""
    s = text.strip()
    if not s.startswith("{"):
        try:
            with open(s, encoding="utf-8") as fh:
                s = fh.read().strip()
        except OSError as exc:
            raise MomentParseError(flag, f"cannot read file {text!r}: {exc}") from None
    try:
        spec = json.loads(s)
    except json.JSONDecodeError as exc:
        raise MomentParseError(flag, f"invalid JSON: {exc}") from None
    return build_moments(spec)


# -- output rendering -------------------------------------------------------

def _print_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _csv_table(fieldnames: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def emit_entries(entries: list[dict], fields: list[str], fmt: str,
                 label: str) -> None:
    """Tau-table output; the only shape the csv format applies to."""
    if fmt == "json":
        _print_json({"entries": entries})
    elif fmt == "csv":
        print(_csv_table(fields, entries))
    else:
        for e in entries:
            coords = ", ".join(f"{f}={e[f]}" for f in fields if f != "value")
            print(f"{label}[{coords}] = {e['value']}")


def emit_report(report: VerificationReport, fmt: str) -> None:
    if fmt == "csv":
        raise UsageError("csv output applies to tau tables only, not reports")
    if fmt == "json":
        _print_json(report.to_dict())
        return
    print(report.summary_line())
    for c in report.failed_checks():
        print(f"  FAIL {c.instance}: lhs={c.lhs} rhs={c.rhs}")
    for s in report.skipped:
        print(f"  skip {s.instance}: {s.reason}")


def report_exit(report: VerificationReport) -> int:
    if report.failures:
        return 1
    if report.total == 0 and report.skipped:
        return 3
    return 0


def emit_polys(entries: list[dict], fmt: str, label: str) -> None:
    """Polynomial output (opgen/mop/recurrence); json or pretty only."""
    if fmt == "csv":
        raise UsageError("csv output applies to tau tables only, not polynomials")
    if fmt == "json":
        _print_json({"entries": entries})
        return
    for e in entries:
        sub = ",".join(str(e[f]) for f in ("k", "l") if f in e)
        print(f"{label}_{{{sub}}} = {e['text']}" if "," in sub
              else f"{label}_{sub} = {e['text']}")


def _poly_entry(p, **indices) -> dict:
    entry = dict(indices)
    entry["coefficients"] = [str(c) for c in p.coeffs]
    entry["text"] = str(p)
    return entry


# -- subcommand handlers ----------------------------------------------------

def _gl2_source(args) -> MomentSequence:
    if args.mode == "symbolic":
        if args.moments is not None:
            raise UsageError("--mode symbolic takes no --moments (formal symbols)")
        return MomentSequence.formal("c")
    if args.moments is None:
        raise UsageError("--moments is required in numeric mode")
    return load_moments(args.moments, "moments")


def _gl3_sources(args):
    if getattr(args, "mode", "numeric") == "symbolic":
        if args.moments_c or args.moments_d or args.moments_e:
            raise UsageError("--mode symbolic takes no moment flags (formal symbols)")
        return (MomentSequence.formal("c"), MomentSequence.formal("d"), None)
    if not args.moments_c or not args.moments_d:
        raise UsageError("--moments-c and --moments-d are required in numeric mode")
    C = load_moments(args.moments_c, "moments-c")
    D = load_moments(args.moments_d, "moments-d")
    E = load_moments(args.moments_e, "moments-e") if args.moments_e else None
    return (C, D, E)


def cmd_tau_gl2(args) -> int:
    m = _gl2_source(args)
    k_range = parse_range(args.k, "k")
    a_range = parse_range(args.alpha, "alpha")
    entries = [{"k": k, "alpha": a, "value": str(tau_det(k, a, m))}
               for k in range(k_range[0], k_range[1] + 1)
               for a in range(a_range[0], a_range[1] + 1)]
    emit_entries(entries, ["k", "alpha", "value"], args.format, "tau")
    return 0


def cmd_tau_gl3(args) -> int:
    C, D, E = _gl3_sources(args)
    k_range = parse_range(args.k, "k")
    l_range = parse_range(args.l, "l")
    a_range = parse_range(args.alpha, "alpha")
    b_range = parse_range(args.beta, "beta")
    bound = SUMMAND_WORK_BOUND if args.max_work is None else args.max_work
    entries = [{"k": k, "l": l, "alpha": a, "beta": b,
                "value": str(tau3_value(k, l, a, b, C, D, E, max_work=bound))}
               for k in range(k_range[0], k_range[1] + 1)
               for l in range(l_range[0], l_range[1] + 1)
               for a in range(a_range[0], a_range[1] + 1)
               for b in range(b_range[0], b_range[1] + 1)]
    emit_entries(entries, ["k", "l", "alpha", "beta", "value"],
                 args.format, "tau")
    return 0


def cmd_verify_qsystem(args) -> int:
    m = _gl2_source(args)
    report = verify_qsystem(m, parse_range(args.k, "k")[1],
                            parse_range(args.alpha, "alpha"))
    # the k range starts at the recurrence base regardless of the flag's lo
    emit_report(report, args.format)
    return report_exit(report)


def cmd_verify_gl3(args) -> int:
    C, D, E = _gl3_sources(args)
    report = verify_gl3_relations(C, D, E,
                                  parse_range(args.k, "k")[1],
                                  parse_range(args.l, "l")[1],
                                  parse_range(args.alpha, "alpha"),
                                  parse_range(args.beta, "beta"),
                                  max_work=args.max_work)
    emit_report(report, args.format)
    return report_exit(report)


def cmd_verify_zero_curvature(args) -> int:
    m = _gl2_source(args)
    report = verify_zero_curvature(m, parse_range(args.k, "k"),
                                   parse_range(args.alpha, "alpha"))
    emit_report(report, args.format)
    return report_exit(report)


def cmd_verify_orthogonality(args) -> int:
    m = load_moments(args.moments, "moments")
    a_range = parse_range(args.alpha, "alpha")
    report = VerificationReport("orthogonality")
    for a in range(a_range[0], a_range[1] + 1):
        try:
            report.extend(verify_orthogonality(m, a, args.count))
        except DegenerateTauError as exc:
            report.add_skip({"alpha": a, **exc.indices}, str(exc))
    emit_report(report, args.format)
    return report_exit(report)


def cmd_verify_mop(args) -> int:
    C, D, E = _gl3_sources(args)
    if E is not None:
        raise UsageError("mop verification applies to the two-family case; "
                         "drop --moments-e")
    k_range = parse_range(args.k, "k")
    l_range = parse_range(args.l, "l")
    a_range = parse_range(args.alpha, "alpha")
    b_range = parse_range(args.beta, "beta")
    report = VerificationReport("mop-orthogonality")
    for k in range(max(0, k_range[0]), k_range[1] + 1):
        for l in range(max(0, l_range[0]), min(k, l_range[1]) + 1):
            for a in range(a_range[0], a_range[1] + 1):
                for b in range(b_range[0], b_range[1] + 1):
                    try:
                        report.extend(verify_mop(k, l, a, b, C, D))
                    except DegenerateTauError as exc:
                        report.add_skip({"k": k, "l": l, "alpha": a, "beta": b},
                                        str(exc))
    emit_report(report, args.format)
    return report_exit(report)


def cmd_opgen(args) -> int:
    m = load_moments(args.moments, "moments")
    alpha = single_value(args.alpha, "alpha")
    entries = [_poly_entry(monic_op(k, alpha, m), k=k)
               for k in range(1, args.count + 1)]
    emit_polys(entries, args.format, "p")
    return 0


def cmd_mop(args) -> int:
    C, D, E = _gl3_sources(args)
    if E is not None:
        raise UsageError("type-II polynomials use two families; drop --moments-e")
    k_range = parse_range(args.k, "k")
    l_range = parse_range(args.l, "l")
    alpha = single_value(args.alpha, "alpha")
    beta = single_value(args.beta, "beta")
    entries = []
    for k in range(max(0, k_range[0]), k_range[1] + 1):
        for l in range(max(0, l_range[0]), min(k, l_range[1]) + 1):
            entries.append(_poly_entry(mop_type2(k, l, alpha, beta, C, D),
                                       k=k, l=l))
    emit_polys(entries, args.format, "p")
    return 0


def cmd_recurrence(args) -> int:
    m = load_moments(args.moments, "moments")
    alpha = single_value(args.alpha, "alpha")
    coeffs = recurrence_coeffs(m, alpha, args.count)
    entries = [{"k": k, "a": str(a), "b": str(b)}
               for k, (a, b) in enumerate(coeffs)]
    if args.format == "json":
        _print_json({"entries": entries})
    elif args.format == "csv":
        raise UsageError("csv output applies to tau tables only, not coefficients")
    else:
        for e in entries:
            print(f"k={e['k']}: a={e['a']}, b={e['b']}")
    return 0


# -- parser wiring ----------------------------------------------------------

def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "pretty"),
                   default="pretty", help="output format (default pretty)")


def _add_mode(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=("numeric", "symbolic"), default="numeric",
                   help="numeric evaluates moments; symbolic uses formal symbols")


def _add_gl2_moments(p: argparse.ArgumentParser, required: bool = False) -> None:
    p.add_argument("--moments", required=required, metavar="JSON|PATH",
                   help="moment sequence: inline JSON or a path to a JSON file")


def _add_gl3_moments(p: argparse.ArgumentParser) -> None:
    p.add_argument("--moments-c", metavar="JSON|PATH", help="c-family moments")
    p.add_argument("--moments-d", metavar="JSON|PATH", help="d-family moments")
    p.add_argument("--moments-e", metavar="JSON|PATH",
                   help="e-family moments (omit for the e=0 case)")


def _add_ranges(p: argparse.ArgumentParser, *names: str, **defaults) -> None:
    for name in names:
        p.add_argument(f"--{name}", default=defaults.get(name, "0"),
                       metavar="N|LO..HI", help=f"{name} range (inclusive)")


def build_parser() -> _Parser:
    parser = _Parser(prog="tauq",
                     description="Exact tau-function and orthogonal-polynomial "
                                 "toolkit for moment sequences.")
    sub = parser.add_subparsers(dest="command", required=True)

    tau = sub.add_parser("tau", help="tabulate tau values")
    tau_sub = tau.add_subparsers(dest="group", required=True)

    t2 = tau_sub.add_parser("gl2", help="Hankel tau table")
    _add_gl2_moments(t2)
    _add_ranges(t2, "k", "alpha", k="0..4", alpha="0")
    _add_format(t2)
    _add_mode(t2)
    t2.set_defaults(func=cmd_tau_gl2)

    t3 = tau_sub.add_parser("gl3", help="two-index tau table")
    _add_gl3_moments(t3)
    _add_ranges(t3, "k", "l", "alpha", "beta", k="0..3", l="0..2")
    t3.add_argument("--max-work", type=int, default=None, metavar="N",
                    help="per-summand residue work bound (default 5)")
    _add_format(t3)
    _add_mode(t3)
    t3.set_defaults(func=cmd_tau_gl3)

    verify = sub.add_parser("verify", help="identity verification suites")
    v_sub = verify.add_subparsers(dest="suite", required=True)

    vq = v_sub.add_parser("qsystem", help="bilinear tau recurrence")
    _add_gl2_moments(vq)
    _add_ranges(vq, "k", "alpha", k="0..4", alpha="0")
    _add_format(vq)
    _add_mode(vq)
    vq.set_defaults(func=cmd_verify_qsystem)

    vg = v_sub.add_parser("gl3", help="the four two-index difference relations")
    _add_gl3_moments(vg)
    _add_ranges(vg, "k", "l", "alpha", "beta", k="0..2", l="0..2")
    vg.add_argument("--max-work", type=int, default=None, metavar="N",
                    help="per-summand residue work bound "
                         "(default: derived from the ranges)")
    _add_format(vg)
    _add_mode(vg)
    vg.set_defaults(func=cmd_verify_gl3)

    vz = v_sub.add_parser("zero-curvature",
                          help="connection-matrix product identities")
    _add_gl2_moments(vz)
    _add_ranges(vz, "k", "alpha", k="0..3", alpha="0")
    _add_format(vz)
    _add_mode(vz)
    vz.set_defaults(func=cmd_verify_zero_curvature)

    vo = v_sub.add_parser("orthogonality",
                          help="monic polynomial orthogonality and norms")
    _add_gl2_moments(vo, required=True)
    _add_ranges(vo, "alpha", alpha="0")
    vo.add_argument("--count", type=int, default=6, metavar="K",
                    help="verify polynomials up to degree K (default 6)")
    _add_format(vo)
    vo.set_defaults(func=cmd_verify_orthogonality)

    vm = v_sub.add_parser("mop", help="type-II multiple orthogonality")
    _add_gl3_moments(vm)
    _add_ranges(vm, "k", "l", "alpha", "beta", k="0..4", l="0..4")
    _add_format(vm)
    vm.set_defaults(func=cmd_verify_mop)

    og = sub.add_parser("opgen", help="generate monic orthogonal polynomials")
    _add_gl2_moments(og, required=True)
    og.add_argument("--count", type=int, default=6, metavar="N",
                    help="generate p_1 .. p_N (default 6)")
    _add_ranges(og, "alpha")
    _add_format(og)
    og.set_defaults(func=cmd_opgen)

    mp = sub.add_parser("mop", help="generate type-II multiple orthogonal "
                                    "polynomials")
    _add_gl3_moments(mp)
    _add_ranges(mp, "k", "l", "alpha", "beta", k="0..3", l="0..3")
    _add_format(mp)
    mp.set_defaults(func=cmd_mop)

    rc = sub.add_parser("recurrence", help="three-term recurrence coefficients")
    _add_gl2_moments(rc, required=True)
    rc.add_argument("--count", type=int, default=6, metavar="K",
                    help="coefficients a_k, b_k for k < K (default 6)")
    _add_ranges(rc, "alpha")
    _add_format(rc)
    rc.set_defaults(func=cmd_recurrence)
    return parser


_VALUE_FLAGS = ("--k", "--l", "--alpha", "--beta", "--count", "--max-work")


def _attach_values(argv: list[str]) -> list[str]:
    """Join range flags with their values ('--k -1..3' to '--k=-1..3') so
    argparse does not mistake a leading minus for an option."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = build_parser().parse_args(_attach_values(list(argv)))
        return args.func(args)
    except DegenerateTauError as exc:
        print(json.dumps(exc.record()), file=sys.stderr)
        return 3
    except (UsageError, MomentParseError, SupportError,
            ResourceBoundError) as exc:
        print(json.dumps(exc.record()), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
