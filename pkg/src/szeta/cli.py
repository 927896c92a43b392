"""Command-line surface: zeros, s, pcf, check, report.

Every command writes byte-stable output: floats are rounded to 12
significant digits before serialization and dict keys are emitted in fixed
order, so identical inputs reproduce identical files.  Expected failures
print a one-line message and exit nonzero (1 usage, 2 validation/coverage);
stack traces are reserved for genuine bugs.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .errors import (AccuracyError, DomainError, MissedZerosError,
                     ZerosParseError)
from .kernels import CheckReport, check_identity
from .paircorr import lemma5_check, lemma6_eval, pcf_curve
from .primes import build_prime_table
from .s_of_t import SEvaluator, s_exact, s_explicit
from .theorem import full_report, lemma_8_9_10_eval
from .zeros import ZeroSet, export_zeros, find_zeros, import_zeros

_KERNEL_IDENTITIES = ("w_partition", "lemma3", "lemma4", "lemma7", "lemma11")
_PAIR_IDENTITIES = ("lemma5", "lemma6")
_COND_IDENTITIES = ("lemma8", "lemma9", "lemma10")


class _UsageError(Exception):
    pass


class _ValidationError(Exception):
    pass


def _round12(x: float) -> float:
    if isinstance(x, float):
        if math.isfinite(x):
            return float(f"{x:.12g}")
    return x


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return _round12(float(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, float):
        return _round12(obj)
    return obj


def _write_json(path: str, obj) -> None:
    text = json.dumps(_jsonable(obj), indent=2) + "\n"
    with open(path, "w", encoding="ascii") as fh:
        fh.write(text)


def _check_report_obj(rep: CheckReport) -> dict:
    return {
        "identity": rep.name,
        "params": rep.params,
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "discrepancy_abs": rep.discrepancy_abs,
        "discrepancy_rel": rep.discrepancy_rel,
        "tolerance": rep.tolerance,
        "passed": rep.passed,
        "assertable": rep.assertable,
        "error_scales": rep.error_scales,
        "notes": list(rep.notes),
        "detail": rep.detail,
    }


def _moment_report_obj(rep) -> dict:
    bd = rep.breakdown
    return {
        "T": rep.T,
        "x": rep.x,
        "beta": rep.beta,
        "lhs": rep.lhs_integral,
        "rhs_theorem": {
            "loglog": bd.loglog_term,
            "f_tail": bd.f_tail_term,
            "euler": bd.euler_term,
            "prime_sum": bd.prime_sum_term,
        },
        "rhs_goldston": bd.rhs_goldston,
        "f_tail_source": rep.f_tail_source,
        "discrepancy_abs": rep.discrepancy_abs,
        "discrepancy_rel": rep.discrepancy_rel,
        "notes": list(rep.notes),
    }


def _write_curve_csv(path: str, curve) -> None:
    lines = ["alpha,F"]
    for a, v in zip(curve.alpha_grid, curve.values):
        lines.append(f"{a:.12g},{v:.12g}")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _load_zeros(path: str) -> ZeroSet:
    try:
        with open(path, encoding="ascii") as fh:
            return import_zeros(fh.read())
    except FileNotFoundError:
        raise _UsageError(f"zeros file not found: {path}")
    except ZerosParseError as exc:
        raise _ValidationError(f"{path}: {exc}")


def _threads(args) -> int:
    env = os.environ.get("SZETA_THREADS")
    if env is not None:
        try:
            return max(1, int(env))
        except ValueError:
            raise _UsageError("SZETA_THREADS must be an integer")
    if args.threads is not None:
        return max(1, args.threads)
    return os.cpu_count() or 1


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def _cmd_zeros(args) -> int:
    if args.import_path:
        zs = _load_zeros(args.import_path)
        if args.validate and not zs.claimed_complete:
            raise _ValidationError(
                f"{args.import_path}: ordinate count fails the smooth-term "
                "cross-check (set incomplete?)")
        print(f"{len(zs)} ordinates up to {zs.t_max:.12g}"
              f" (complete={zs.claimed_complete})")
        if args.out:
            with open(args.out, "w", encoding="ascii", newline="\n") as fh:
                fh.write(export_zeros(zs))
        return 0
    if args.t_max is None:
        raise _UsageError("zeros needs --t-max or --import")
    zs = find_zeros(args.t_max, threads=_threads(args))
    text = export_zeros(zs)
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
        print(f"wrote {len(zs)} ordinates to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_s(args) -> int:
    zs = _load_zeros(args.zeros)
    table = build_prime_table(max(64, int(args.x) + 1))
    ev = SEvaluator(zeros=zs, prime_table=table)
    if args.t is not None:
        points = [args.t]
    else:
        if args.t_min is None or args.t_max is None:
            raise _UsageError("s needs --t or both --t-min/--t-max")
        n = int(math.floor((args.t_max - args.t_min) / args.step)) + 1
        points = [args.t_min + i * args.step for i in range(n)]
    sinh_table = make_sinh_table() if args.method == "explicit" else None
    rows = ["t,S"]
    for t in points:
        if args.method == "exact":
            val = s_exact(t, ev)
        else:
            val, _ = s_explicit(t, args.x, ev, table=sinh_table)
        rows.append(f"{t:.12g},{val:.12g}")
    text = "\n".join(rows) + "\n"
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_pcf(args) -> int:
    zs = _load_zeros(args.zeros)
    if zs.t_max < args.t:
        raise _ValidationError("zeros file does not cover --t")
    curve = pcf_curve(zs, args.t, args.alpha_max, args.step)
    _write_curve_csv(args.out, curve)
    print(f"wrote {len(curve.alpha_grid)} samples to {args.out}")
    return 0


def _parse_params(spec_text: str) -> dict:
    out = {}
    if not spec_text:
        return out
    for item in spec_text.split(","):
        if "=" not in item:
            raise _UsageError(f"bad --params entry {item!r}, need k=v")
        key, val = item.split("=", 1)
        try:
            out[key.strip()] = float(val)
        except ValueError:
            out[key.strip()] = val.strip()
    return out


def _cmd_check(args) -> int:
    name = args.identity
    params = _parse_params(args.params)
    if args.tol is not None:
        params.setdefault("tol", args.tol)
    if name in _KERNEL_IDENTITIES:
        rep = check_identity(name, params)
        reports = [rep]
    elif name in _PAIR_IDENTITIES:
        if not args.zeros:
            raise _UsageError(f"{name} needs --zeros")
        zs = _load_zeros(args.zeros)
        T = args.t if args.t is not None else min(200.0, zs.t_max)
        beta = args.beta
        if name == "lemma5":
            rep = lemma5_check(zs, T, beta,
                               tol=params.get("tol", 1e-4))
            reports = [rep]
        else:
            dec = lemma6_eval(zs, T, beta)
            term_sum = dec.term_main + dec.term_F_beta - dec.term_k2_integral
            d = abs(dec.r_total - term_sum)
            rel = d / max(abs(dec.r_total), abs(term_sum))
            tol = params.get("tol", 1e-6)
            rep = CheckReport(
                name="lemma6", params={"T": T, "beta": beta},
                lhs=dec.r_total, rhs=term_sum, discrepancy_abs=d,
                discrepancy_rel=rel, tolerance=tol, passed=rel <= tol,
                detail={"term_main": dec.term_main,
                        "term_F_beta": dec.term_F_beta,
                        "term_k2_integral": dec.term_k2_integral,
                        "r_total_direct": dec.r_total_direct})
            reports = [rep]
    elif name in _COND_IDENTITIES:
        zs = None
        if args.f_source == "empirical":
            if not args.zeros:
                raise _UsageError(
                    f"{name} with empirical F needs --zeros")
            zs = _load_zeros(args.zeros)
        T = args.t if args.t is not None else (zs.t_max if zs else 1000.0)
        all_reps = lemma_8_9_10_eval(zs, T, args.beta,
                                     f_source=args.f_source)
        if name not in all_reps:
            raise _UsageError(f"{name} requires --zeros (needs R)")
        reports = [all_reps[name]]
    else:
        raise _UsageError(
            f"unknown identity {name!r}; known: "
            + ", ".join(_KERNEL_IDENTITIES + _PAIR_IDENTITIES
                        + _COND_IDENTITIES))
    obj = _check_report_obj(reports[0]) if len(reports) == 1 \
        else [_check_report_obj(r) for r in reports]
    if args.out:
        _write_json(args.out, obj)
    print(json.dumps(_jsonable(obj), indent=2))
    failed = [r for r in reports if r.assertable and not r.passed]
    return 2 if failed else 0


def _cmd_report(args) -> int:
    zs = _load_zeros(args.zeros)
    if zs.t_max < args.t:
        raise _ValidationError(
            f"zeros cover only t <= {zs.t_max:.6g}, below --t {args.t:g}")
    rep = full_report(args.t, args.x, zs, alpha_max=args.alpha_max,
                      alpha_step=args.step, f_tail_source=args.f_tail,
                      tail_model=args.tail_model)
    _write_json(args.out, _moment_report_obj(rep))
    if args.pcf_out:
        _write_curve_csv(args.pcf_out, rep.curve)
    print(f"report written to {args.out}"
          + (f", curve to {args.pcf_out}" if args.pcf_out else ""))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="szeta",
        description="Desk-scale toolkit for the second moment of S(t): "
                    "zeta zeros, pair correlation, explicit-formula "
                    "identities and the assembled moment comparison.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--threads", type=int, default=None,
                   help="cap on worker threads (env SZETA_THREADS wins)")
    sub = p.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentDefaultsHelpFormatter

    z = sub.add_parser("zeros", formatter_class=fmt,
                       help="compute or import/validate zero ordinates")
    z.add_argument("--t-max", type=float, default=None,
                   help="compute all ordinates up to this height")
    z.add_argument("--import", dest="import_path", default=None,
                   help="read ordinates from a zeros text file")
    z.add_argument("--validate", action="store_true",
                   help="fail (exit 2) if the imported set looks incomplete")
    z.add_argument("--out", default=None, help="output zeros file")
    z.set_defaults(fn=_cmd_zeros)

    s = sub.add_parser("s", formatter_class=fmt,
                       help="evaluate S(t) to CSV 't,S'")
    s.add_argument("--zeros", required=True, help="zeros text file")
    s.add_argument("--t", type=float, default=None, help="single point")
    s.add_argument("--t-min", type=float, default=None, help="range start")
    s.add_argument("--t-max", type=float, default=None, help="range end")
    s.add_argument("--step", type=float, default=0.1, help="range step")
    s.add_argument("--method", choices=("exact", "explicit"),
                   default="exact", help="evaluation route")
    s.add_argument("--x", type=float, default=100.0,
                   help="prime cutoff for the explicit route")
    s.add_argument("--out", default=None, help="output CSV (default stdout)")
    s.set_defaults(fn=_cmd_s)

    c = sub.add_parser("pcf", formatter_class=fmt,
                       help="pair correlation curve to CSV 'alpha,F'")
    c.add_argument("--zeros", required=True, help="zeros text file")
    c.add_argument("--t", type=float, required=True, help="height T")
    c.add_argument("--alpha-max", type=float, default=4.0,
                   help="last grid alpha")
    c.add_argument("--step", type=float, default=0.02, help="grid step")
    c.add_argument("--out", default="pcf.csv", help="output CSV")
    c.set_defaults(fn=_cmd_pcf)

    k = sub.add_parser("check", formatter_class=fmt,
                       help="run a named identity check")
    k.add_argument("--identity", required=True,
                   help="one of: " + ", ".join(
                       _KERNEL_IDENTITIES + _PAIR_IDENTITIES
                       + _COND_IDENTITIES))
    k.add_argument("--tol", type=float, default=None,
                   help="override the identity's pass tolerance")
    k.add_argument("--params", default="",
                   help="extra parameters as k=v,k=v")
    k.add_argument("--zeros", default=None,
                   help="zeros file (pair-sum identities)")
    k.add_argument("--t", type=float, default=None, help="height T")
    k.add_argument("--beta", type=float, default=0.5,
                   help="beta = log x / log T")
    k.add_argument("--f-source", choices=("empirical", "model"),
                   default="empirical",
                   help="F source for the conditional identities")
    k.add_argument("--out", default=None, help="write JSON report here")
    k.set_defaults(fn=_cmd_check)

    r = sub.add_parser("report", formatter_class=fmt,
                       help="full second-moment report (JSON + curve CSV)")
    r.add_argument("--t", type=float, required=True, help="height T")
    r.add_argument("--x", type=float, required=True,
                   help="prime cutoff x = T^beta, beta < 1/2")
    r.add_argument("--zeros", required=True, help="zeros text file")
    r.add_argument("--alpha-max", type=float, default=4.0,
                   help="pair correlation grid end")
    r.add_argument("--step", type=float, default=0.025,
                   help="pair correlation grid step")
    r.add_argument("--f-tail", choices=("empirical", "model"),
                   default="empirical", help="F-tail source")
    r.add_argument("--tail-model", choices=("constant_one", "last_value"),
                   default="constant_one",
                   help="F beyond the curve for the tail integral")
    r.add_argument("--out", default="report.json", help="report JSON path")
    r.add_argument("--pcf-out", default=None,
                   help="also write the F curve CSV here")
    r.set_defaults(fn=_cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.fn(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (MissedZerosError, ZerosParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AccuracyError as exc:
        print(f"error: quadrature accuracy: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
