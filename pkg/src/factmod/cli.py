"""Command-line entry point: ``factmod <subcommand> [flags]``.

Exit codes: 0 success, 2 domain or usage error, 3 internal inconsistency
(an exact identity or an oracle comparison failed).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time

from factmod import __version__, boundbench, charspectrum, constructions, momentlab, refcheck, repcount
from factmod.errors import DomainError, InconsistencyError
from factmod.fieldcore import SequenceKind, Window, build_context, primes_in_range
from factmod.sweep import run_ordered


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers 'a,b', got {text!r}") from None
    return a, b


def _int_list(text: str) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _window(args, p: int) -> Window:
    H = args.H or 0
    N = args.N if args.N is not None else p - 1 - H
    return Window(H, N)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv_text(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


# --- subcommands: each returns the output text ---------------------------------


def cmd_ctx(args) -> str:
    ctx = build_context(args.p, args.kind)
    return _dump_json({**ctx.summary(), "factors_of_p_minus_1": list(ctx.factors)})


def cmd_spectrum(args) -> str:
    ctx = build_context(args.p, args.kind)
    w = _window(args, ctx.p)
    if args.which == "mult":
        values = charspectrum.spectrum_T(ctx, w, charspectrum.PhasePolynomial.parse(args.f))
    else:
        values = charspectrum.spectrum_S(ctx, w)
    if args.binary:
        charspectrum.write_spectrum_binary(args.binary, values)
    buf = io.StringIO()
    charspectrum.write_spectrum_csv(buf, ctx.p, values)
    return buf.getvalue()


def cmd_moments(args) -> str:
    ctx = build_context(args.p, args.kind)
    return _dump_json(momentlab.moment_report(ctx, _window(args, ctx.p), args.ell, args.which))


def cmd_counts(args) -> str:
    ctx = build_context(args.p, args.kind)
    which = args.which
    if which == "G":
        if args.sumN is None or args.a is None:
            raise DomainError("counts --which G needs --a and --sumN")
        value = repcount.count_G(ctx, args.a, args.sumN, args.ell, allow_large=args.allow_large)
        return _dump_json({"p": ctx.p, "a": args.a, "N": args.sumN, "ell": args.ell, "G": str(value)})
    w = _window(args, ctx.p)
    if which == "F":
        table = repcount.table_F(ctx, w, args.ell)
        if args.format == "csv":
            return _csv_text(repcount.table_csv_rows(table))
        return _dump_json({"p": ctx.p, "H": w.H, "N": w.N, "ell": args.ell,
                           "F": {str(a): str(table[a]) for a in range(1, ctx.p)}})
    if which == "V":
        return _dump_json({"p": ctx.p, "H": w.H, "N": w.N, "ell": args.ell,
                           "V": repcount.value_set_V(ctx, w, args.ell)})
    if which == "maxF":
        a, c = repcount.max_F1(ctx, w)
        return _dump_json({"p": ctx.p, "H": w.H, "N": w.N, "a": a, "count": c,
                           "bound": boundbench.eval_bound("F_max", N=w.N)})
    if which == "D":
        if args.a is None:
            raise DomainError("counts --which D needs --a")
        res = repcount.discrepancy_D(ctx, args.a, w, args.ell)
        return _dump_json(res.as_dict(ctx.p))
    raise DomainError(f"unknown count {which}")  # pragma: no cover


def cmd_repr(args) -> str:
    ctx = build_context(args.p)
    M = args.max_n if args.max_n is not None else ctx.p - 1
    tup = constructions.search_representation(ctx, args.a, args.ell, M)
    out = {"p": ctx.p, "a": args.a, "ell": args.ell, "max_n": M, "found": tup is not None,
           "tuple": list(tup) if tup else None, "max_n_over_p": M / ctx.p}
    return _dump_json(out)


def cmd_wilson(args) -> str:
    ctx = build_context(args.p)
    return _dump_json(constructions.wilson_representation(ctx, args.a).as_dict())


def cmd_spacings(args) -> str:
    ctx = build_context(args.p)
    rep = constructions.nonresidue_spacings(ctx, args.J)
    return _dump_json({"p": ctx.p, "J": rep.J, "n_J": rep.n_J, "d": list(rep.d),
                       "alt_sum": rep.alt_sum, "legendre_sum": rep.legendre_sum,
                       "identity_holds": rep.alt_sum == rep.legendre_sum})


def _primroot_row(p: int) -> dict:
    ctx = build_context(p)
    n = constructions.find_primroot_factorial(ctx)
    return {"p": p, "n": n, "n_over_sqrt_p": None if n is None else n / p**0.5}


def cmd_primroot(args) -> str:
    if args.range:
        lo, hi = args.range
        rows = run_ordered(_primroot_row, primes_in_range(lo, hi), args.jobs)
        if args.format == "csv":
            return _csv_text([["p", "n", "n_over_sqrt_p"]] + [[r["p"], r["n"], repr(r["n_over_sqrt_p"])] for r in rows])
        return "".join(json.dumps(r) + "\n" for r in rows)
    if args.p is None:
        raise DomainError("primroot needs --p or --range")
    ctx = build_context(args.p)
    H, N = args.window if args.window else (0, ctx.p - 1)
    if args.m and args.m > 1:
        w = Window(H, N)
        q = constructions.count_Qm(ctx, args.m, w)
        main = N * constructions.euler_phi_ratio(ctx) ** args.m
        return _dump_json({"p": ctx.p, "H": H, "N": N, "m": args.m, "Q": q, "main_term": main})
    w = Window(H, N)
    return _dump_json({**_primroot_row(ctx.p), "H": H, "N": N, "Q": constructions.count_Q(ctx, w),
                       "main_term": N * constructions.euler_phi_ratio(ctx)})


def cmd_power_classes(args) -> str:
    ctx = build_context(args.p)
    w = _window(args, ctx.p)
    count = constructions.classify_power_residues(ctx, args.R, w)
    return _dump_json({"p": ctx.p, "H": w.H, "N": w.N, "R": sorted(args.R), "Q": list(ctx.factors),
                       "count": count, "main_term": constructions.power_class_expectation(ctx, args.R, w.N)})


def cmd_scan_distinct(args) -> str:
    lo, hi = args.range
    records = constructions.distinct_factorial_scan(lo, hi, args.jobs)
    for r in records:
        if r.is_distinct and r.p >= 5 and not r.matches_prediction:
            raise InconsistencyError(f"distinct-factorial prime {r.p} contradicts the known constraints")
    if args.format == "csv":
        return _csv_text([["p", "is_distinct", "missing_residue", "matches_prediction"]]
                         + [[r.p, r.is_distinct, r.missing_residue, r.matches_prediction] for r in records])
    return "".join(json.dumps(r.as_dict()) + "\n" for r in records)


def cmd_bounds(args) -> str:
    lo, hi = args.range
    params = {"ell": args.ell, "r": args.r, "eps": args.eps, "J": args.J, "H": args.H, "N": args.N}
    reports = boundbench.ratio_sweep(args.kind, primes_in_range(lo, hi), params, args.jobs)
    if not args.quiet:
        sys.stderr.write(json.dumps(boundbench.summarize(reports)) + "\n")
    if args.format == "json":
        return "".join(json.dumps(dict(zip(boundbench.CSV_COLUMNS, r.row()))) + "\n" for r in reports)
    return _csv_text([list(boundbench.CSV_COLUMNS)] + [r.row() for r in reports])


def cmd_guy_f11(args) -> str:
    lo, hi = args.range
    rep = constructions.guy_f11_report(primes_in_range(lo, hi))
    if args.format == "csv":
        return _csv_text([["p", "V1", "ratio"]] + [[r["p"], r["V1"], repr(r["ratio"])] for r in rep["primes"]])
    return _dump_json(rep)


ORACLES = {
    "I": lambda ctx, w, ell, a: (momentlab.count_I(ctx, w, ell), refcheck.oracle_I(ctx, w, ell)),
    "J": lambda ctx, w, ell, a: (momentlab.count_J(ctx, w, ell), refcheck.oracle_J(ctx, w, ell)),
    "F": lambda ctx, w, ell, a: (
        list(repcount.table_F(ctx, w, ell).values[1:]),
        [refcheck.oracle_F(ctx, b, w, ell) for b in range(1, ctx.p)],
    ),
    "V": lambda ctx, w, ell, a: (repcount.value_set_V(ctx, w, ell), refcheck.oracle_V(ctx, w, ell)),
    "G": lambda ctx, w, ell, a: (
        list(repcount.table_G(ctx, w.N, ell, allow_large=True).values[1:]),
        [refcheck.oracle_G(ctx, b, w.N, ell) for b in range(1, ctx.p)],
    ),
    "D": lambda ctx, w, ell, a: (
        [repcount.discrepancy_D(ctx, b, w, ell).D for b in range(1, ctx.p)],
        [refcheck.oracle_D(ctx, b, w, ell) for b in range(1, ctx.p)],
    ),
}


def cmd_oracle_diff(args) -> str:
    ctx = build_context(args.p, args.kind)
    w = _window(args, ctx.p)
    names = list(ORACLES) if args.which == "all" else [args.which]
    lines, failed = [], False
    for name in names:
        fast, slow = ORACLES[name](ctx, w, args.ell, None)
        ok = fast == slow
        failed |= not ok
        lines.append(f"{'PASS' if ok else 'FAIL'} {name} p={ctx.p} H={w.H} N={w.N} ell={args.ell}")
    text = "\n".join(lines) + "\n"
    if failed:
        raise InconsistencyError(text)
    return text


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--jobs", type=int, default=1, metavar="K", help="worker processes for sweeps")
    common.add_argument("--quiet", action="store_true")
    common.add_argument("--manifest", metavar="PATH", help="write a run manifest (JSON) here")

    parser = argparse.ArgumentParser(prog="factmod", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=func)
        return sp

    def window_flags(sp):
        sp.add_argument("--H", type=int, default=0)
        sp.add_argument("--N", type=int, default=None, help="default: p-1-H")

    kinds = [k.value for k in SequenceKind]

    sp = add("ctx", cmd_ctx, "prime context summary")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--kind", choices=kinds, default="factorial")

    sp = add("spectrum", cmd_spectrum, "character-sum spectrum as CSV")
    sp.add_argument("--p", type=int, required=True)
    window_flags(sp)
    sp.add_argument("--f", default=None, help="phase polynomial coefficients c0,c1,...")
    sp.add_argument("--which", choices=("mult", "add"), default="mult")
    sp.add_argument("--kind", choices=kinds, default="factorial")
    sp.add_argument("--binary", metavar="PATH", help="also dump little-endian (re, im) doubles")

    sp = add("moments", cmd_moments, "moment counts and spectral moments")
    sp.add_argument("--p", type=int, required=True)
    window_flags(sp)
    sp.add_argument("--ell", type=int, default=1)
    sp.add_argument("--which", choices=("I", "J", "T", "S"), default="I")
    sp.add_argument("--kind", choices=kinds, default="factorial")

    sp = add("counts", cmd_counts, "representation counts and statistics")
    sp.add_argument("--p", type=int, required=True)
    window_flags(sp)
    sp.add_argument("--ell", type=int, default=1)
    sp.add_argument("--which", choices=("F", "V", "G", "D", "maxF"), required=True)
    sp.add_argument("--a", type=int, default=None)
    sp.add_argument("--sumN", type=int, default=None, help="target sum for G")
    sp.add_argument("--allow-large", action="store_true", help="lift N < p/ell for G")
    sp.add_argument("--kind", choices=kinds, default="factorial")

    sp = add("repr", cmd_repr, "search a product-of-factorials representation")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--max-n", type=int, default=None)

    sp = add("wilson", cmd_wilson, "Wilson-theorem representation of a residue")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)

    sp = add("spacings", cmd_spacings, "quadratic nonresidue spacings")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--J", type=int, required=True)

    sp = add("primroot", cmd_primroot, "factorials that are primitive roots")
    sp.add_argument("--p", type=int, default=None)
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--window", type=_pair, default=None, metavar="H,N")
    sp.add_argument("--range", type=_pair, default=None, metavar="LO,HI")

    sp = add("power-classes", cmd_power_classes, "count n by power-residue class of n!")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--R", type=_int_list, default=[], metavar="q1,q2,...")
    window_flags(sp)

    sp = add("scan-distinct", cmd_scan_distinct, "primes where 2!, ..., (p-1)! are distinct")
    sp.add_argument("--range", type=_pair, required=True, metavar="LO,HI")

    sp = add("bounds", cmd_bounds, "bound-ratio sweep over a prime range")
    sp.add_argument("--kind", choices=[k.value for k in boundbench.BoundKind], required=True)
    sp.add_argument("--range", type=_pair, required=True, metavar="LO,HI")
    sp.add_argument("--ell", type=int, default=None)
    sp.add_argument("--r", type=int, default=None)
    sp.add_argument("--eps", type=float, default=0.01)
    sp.add_argument("--J", type=int, default=None)
    sp.add_argument("--H", type=int, default=0)
    sp.add_argument("--N", type=int, default=None)

    sp = add("guy-f11", cmd_guy_f11, "value-set ratio V_1/p against 1 - 1/e")
    sp.add_argument("--range", type=_pair, required=True, metavar="LO,HI")

    sp = add("oracle-diff", cmd_oracle_diff, "compare fast paths with brute-force oracles")
    sp.add_argument("--p", type=int, required=True)
    window_flags(sp)
    sp.add_argument("--ell", type=int, default=1)
    sp.add_argument("--which", choices=list(ORACLES) + ["all"], default="all")
    sp.add_argument("--kind", choices=kinds, default="factorial")
    return parser


def _emit(text: str, args) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_manifest(args, text: str, elapsed: float, argv) -> None:
    params = {k: v for k, v in vars(args).items() if k not in ("func", "manifest")}
    manifest = {
        "command": args.command,
        "argv": list(argv),
        "parameters": json.loads(json.dumps(params, default=str)),
        "version": __version__,
        "wall_time_s": elapsed,
        "output_sha256": hashlib.sha256(text.encode("utf-8")).hexdigest(),
    }
    with open(args.manifest, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "csv" if args.command in ("bounds", "spectrum") else "json"
    t0 = time.perf_counter()
    try:
        text = args.func(args)
    except InconsistencyError as exc:
        sys.stderr.write(f"inconsistency: {exc}\n")
        return 3
    except DomainError as exc:
        sys.stderr.write(f"factmod {args.command}: {exc}\n")
        return 2
    _emit(text, args)
    if args.manifest:
        _write_manifest(args, text, time.perf_counter() - t0, argv)
    return 0


if __name__ == "__main__":
    sys.exit(main())
