"""Command-line front end: ``quasichoice {check,numbers,synth,verify,gen,bounds}``.

Exit codes: 0 success or verified, 1 property failure or counterexample,
2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
from pathlib import Path
import sys

from . import core
from .axioms import GAMMA_SEARCH_MAX_N, check_alpha, check_gamma, classify, Rationality
from .core import AlphaViolated, SizeExceeded, as_share
from .formats import (ParseError, format_ballots, format_qc, read_ballots, read_qc,
                      write_ballots, write_qc)
from .generators import (EXTRA_FIXTURES, FIXTURES, fixture, fixture_families, gen_cnk,
                         gen_cnk_democratic_family, gen_cnk_liberal_family, random_alpha)
from .represent import synth_majoritarian, verify
from .solvers import (DemLimits, bounds_report, dem_number, lib_number, oracle_dem,
                      oracle_lib, sperner_bound)

SCHEMA = "quasichoice-report/1"
THREADS_ENV = "QUASICHOICE_THREADS"


class UsageError(Exception):
    pass


def _num(v):
    return "∞" if isinstance(v, float) and math.isinf(v) else str(v)


def _json_num(v):
    return None if isinstance(v, float) and math.isinf(v) else v


def _witness_dict(grand, w):
    if w is None:
        return None
    return {"axiom": w.axiom, "menu_a": grand.format_menu(w.menu_a),
            "menu_b": grand.format_menu(w.menu_b), "item": grand.names[w.item],
            "text": w.describe(grand)}


def _emit(args, report: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps({"schema": SCHEMA, "command": args.command, **report}, indent=2,
                         ensure_ascii=False))
    else:
        print("\n".join(lines))


def _limits(args) -> DemLimits:
    return DemLimits(max_n=args.dem_max_n, timeout=args.dem_timeout, node_cap=args.dem_node_cap)


def cmd_check(args) -> int:
    c = read_qc(args.file)
    g = c.grand
    alpha = check_alpha(c)
    try:
        gamma = check_gamma(c)
        gamma_ok = gamma is None
        gamma_text = "OK" if gamma_ok else "FAILS"
    except core.GrandSetTooLarge:
        gamma, gamma_ok, gamma_text = None, None, f"skipped (n > {GAMMA_SEARCH_MAX_N})"
    cls = classify(c)
    rationalizable = cls.rationalizable
    verdict = "freely rationalizable" if rationalizable else "not rationalizable"
    lines = [f"alpha: {'OK' if alpha is None else 'FAILS'}, gamma: {gamma_text}, {verdict}"]
    if alpha is not None:
        lines.append(f"  alpha witness: {alpha.describe(g)}")
    if gamma is not None:
        lines.append(f"  gamma witness: {gamma.describe(g)}")
    if rationalizable:
        asym = cls.kind is Rationality.ASYMMETRICALLY
        lines.append(f"asymmetrically rationalizable: {'yes' if asym else 'no'}")
        edges = ", ".join(f"{g.names[q]}->{g.names[p]}" for q, p in cls.relation.edges())
        lines.append(f"rationalizing voter: {edges or '(empty relation)'}")
    lines.append(f"decisive: {'yes' if c.is_decisive() else 'no'}")
    report = {
        "n": g.n, "items": list(g.names),
        "alpha": {"ok": alpha is None, "witness": _witness_dict(g, alpha)},
        "gamma": {"ok": gamma_ok, "witness": _witness_dict(g, gamma)},
        "class": cls.kind.name.lower(),
        "relation": None if cls.relation is None else
        [[g.names[q], g.names[p]] for q, p in cls.relation.edges()],
        "decisive": c.is_decisive(),
    }
    _emit(args, report, lines)
    return 0 if alpha is None else 1


def cmd_numbers(args) -> int:
    c = read_qc(args.file)
    lib = lib_number(c)
    try:
        dem = dem_number(c, _limits(args))
    except core.GrandSetTooLarge as exc:
        dem = None
        dem_note = str(exc)
    status = 0
    if dem is None:
        dem_text = f"not searched ({dem_note})"
    elif dem.kind == "interval":
        dem_text = f"in [{dem.lo}, {dem.hi}] (search limit reached after {dem.explored} nodes; not exact)"
    else:
        dem_text = _num(dem.lo)
    lines = [f"lib = {_num(lib)}, dem = {dem_text}"]
    report = {"n": c.n, "lib": _json_num(lib), "lib_infinite": math.isinf(lib),
              "dem": None if dem is None else {
                  "kind": dem.kind, "lo": _json_num(dem.lo), "hi": _json_num(dem.hi),
                  "explored": dem.explored}}
    bound = sperner_bound(c.n)
    if not math.isinf(lib):
        lines.append(f"sperner bound: C({c.n - 1},{(c.n - 1) // 2}) = {bound}; "
                     f"lib within bound: {'yes' if lib <= bound else 'NO'}")
    report["sperner_bound"] = bound
    if dem is not None and dem.kind == "exact":
        d = dem.lo
        r1, r2 = d <= 2 * lib, lib <= 2 ** (d - 1)
        lines.append(f"relative bounds: dem <= 2 lib: {'ok' if r1 else 'VIOLATED'}; "
                     f"lib <= 2^(dem-1): {'ok' if r2 else 'VIOLATED'}")
        report["relative_bounds"] = {"dem_le_twice_lib": r1, "lib_le_pow_dem": r2}
    if args.oracle:
        if c.n > 3:
            lines.append("oracle: skipped (n > 3)")
            report["oracle"] = None
        else:
            olib = oracle_lib(c)
            kmax = 6 if math.isinf(lib) else max(1, 2 * lib)
            odem = oracle_dem(c, kmax)
            agree_lib = (olib is None and math.isinf(lib)) or olib == lib
            agree_dem = dem is not None and (
                (odem is None and dem.kind == "infinite") or (dem.exact and odem == dem.lo))
            agree = agree_lib and agree_dem
            lines.append(f"oracle: lib = {'∞' if olib is None else olib}, "
                         f"dem = {'∞' if odem is None else odem} "
                         f"({'agree' if agree else 'DISAGREE'})")
            report["oracle"] = {"lib": olib, "dem": odem, "agree": agree}
            if not agree:
                status = 1
    _emit(args, report, lines)
    return status


def cmd_synth(args) -> int:
    c = read_qc(args.file)
    s = as_share(args.share)
    g = c.grand
    try:
        family, trace = synth_majoritarian(c, s, size_ceiling=args.size_ceiling)
    except AlphaViolated as exc:
        lines = [f"cannot synthesize: Axiom alpha fails: {exc.witness.describe(g)}"]
        _emit(args, {"error": "alpha_violated", "witness": _witness_dict(g, exc.witness)}, lines)
        return 1
    except SizeExceeded as exc:
        lines = [f"cannot synthesize: {exc}"]
        _emit(args, {"error": "size_exceeded", "size": exc.size, "ceiling": exc.ceiling}, lines)
        return 1
    ok = bool(verify(c, family, s))
    summary = (f"share {s}: {len(family)} ballots (base {trace.base_size}, m = {trace.m}, "
               f"t = {trace.t}, replication {trace.replication_factor}, "
               f"neutral {trace.neutral_added}, hypercritical {trace.hypercritical_added})")
    text = format_ballots(family, comment=summary)
    if args.output:
        Path(args.output).write_text(text)
    elif not args.json:
        sys.stdout.write(text)
    lines = [summary, f"self-check: {'Verified' if ok else 'FAILED'}"]
    if args.output:
        lines.append(f"wrote {args.output}")
    report = {"share": str(s), "size": len(family), "verified": ok, "output": args.output,
              "trace": {"base_size": trace.base_size, "m": trace.m, "t": str(trace.t),
                        "neutral_added": trace.neutral_added,
                        "hypercritical_added": trace.hypercritical_added,
                        "replication_factor": trace.replication_factor}}
    if args.output or args.json:
        _emit(args, report, lines)
    else:
        print("\n".join(lines), file=sys.stderr)
    return 0 if ok else 1


def cmd_verify(args) -> int:
    c = read_qc(args.file)
    family = read_ballots(args.ballots)
    s = as_share(args.share)
    out = verify(c, family, s)
    g = c.grand
    if out:
        lines = [f"Verified: {len(family)} ballots represent the choice at share {s}"]
        report = {"verified": True, "share": str(s), "k": len(family)}
    else:
        want = "chosen" if out.direction == "should_be_chosen" else "rejected"
        lines = [f"counterexample: menu {g.format_menu(out.menu)}, item {g.names[out.item]}, "
                 f"count {out.count} of k = {out.k} at share {s} (should be {want})"]
        report = {"verified": False, "share": str(s), "menu": g.format_menu(out.menu),
                  "item": g.names[out.item], "count": out.count, "k": out.k,
                  "direction": out.direction}
    _emit(args, report, lines)
    return 0 if out else 1


def cmd_gen(args) -> int:
    families = {}
    if args.kind == "cnk":
        if args.n is None or args.k is None:
            raise UsageError("gen cnk needs --n and --k")
        c = gen_cnk(args.n, args.k)
        info = {"kind": "cnk", "n": args.n, "k": args.k, "grand_set_size": args.n + 1}
        if args.with_families:
            families = {"liberal": gen_cnk_liberal_family(args.n, args.k),
                        "democratic": gen_cnk_democratic_family(args.n, args.k)}
    elif args.kind == "fixture":
        if not args.name:
            raise UsageError("gen fixture needs a fixture name")
        c = fixture(args.name)
        info = {"kind": "fixture", "name": args.name}
        if args.with_families:
            families = fixture_families(args.name)
    else:
        if args.n is None:
            raise UsageError("gen random needs --n")
        c = random_alpha(args.n, args.seed, decisive=args.decisive)
        info = {"kind": "random", "n": args.n, "seed": args.seed, "decisive": args.decisive}
    if args.with_families and not args.output:
        raise UsageError("--with-families needs -o to name the companion files")
    written = []
    if args.output:
        write_qc(args.output, c)
        written.append(args.output)
        stem = Path(args.output)
        for name, fam in families.items():
            path = stem.with_name(stem.stem + f".{name}.ballots")
            write_ballots(path, fam)
            written.append(str(path))
        lines = [f"wrote {p}" for p in written]
        if args.kind == "cnk":
            lines.insert(0, f"c(n={args.n}, k={args.k}) on {args.n + 1} items")
        _emit(args, {**info, "written": written,
                     "family_sizes": {k: len(f) for k, f in families.items()}}, lines)
    elif args.json:
        _emit(args, {**info, "document": format_qc(c)}, [])
    else:
        sys.stdout.write(format_qc(c))
    return 0


def cmd_bounds(args) -> int:
    c = read_qc(args.file)
    fam = read_ballots(args.ballots) if args.ballots else None
    rep = bounds_report(c, _limits(args), dem_family=fam)
    lines = [f"n = {rep.n}", f"lib = {_num(rep.lib)}", f"dem = {rep.dem} ({rep.dem.kind})",
             f"sperner bound = {rep.sperner_bound}; lib within bound: "
             f"{'yes' if rep.lib_within_sperner else 'no'}"]
    def tri(v):
        return "n/a" if v is None else ("ok" if v else "VIOLATED")
    lines.append(f"dem <= 2 lib: {tri(rep.dem_le_twice_lib)}; "
                 f"lib <= 2^(dem-1): {tri(rep.lib_le_pow_dem)}")
    lines.append(f"bound / (2^n / sqrt n) = {rep.asymptotic_ratio:.6f}")
    lines += [f"note: {x}" for x in rep.notes]
    _emit(args, rep.as_dict(), lines)
    return 1 if False in (rep.dem_le_twice_lib, rep.lib_le_pow_dem) else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quasichoice", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--threads", type=int, default=None,
                   help=f"worker threads (default from ${THREADS_ENV}); never changes results")
    p.add_argument("--max-n", type=int, default=None, help="hard cap on the number of items")
    sub = p.add_subparsers(dest="command", required=True)

    def dem_flags(sp):
        sp.add_argument("--dem-timeout", type=float, default=None, help="seconds")
        sp.add_argument("--dem-node-cap", type=int, default=None)
        sp.add_argument("--dem-max-n", type=int, default=4)

    sp = sub.add_parser("check", help="test Axioms alpha and gamma")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("numbers", help="liberal and democratic numbers")
    sp.add_argument("file")
    dem_flags(sp)
    sp.add_argument("--oracle", action="store_true", help="cross-check by brute force (n <= 3)")
    sp.set_defaults(func=cmd_numbers)

    sp = sub.add_parser("synth", help="synthesize an s-majoritarian ballot family")
    sp.add_argument("file")
    sp.add_argument("--share", required=True)
    sp.add_argument("-o", "--output")
    sp.add_argument("--size-ceiling", type=int, default=10**6)
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("verify", help="verify a ballot family at a share")
    sp.add_argument("file")
    sp.add_argument("--ballots", required=True)
    sp.add_argument("--share", required=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gen", help="write a generated quasi-choice")
    sp.add_argument("kind", choices=("cnk", "fixture", "random"))
    sp.add_argument("name", nargs="?", choices=FIXTURES + EXTRA_FIXTURES,
                    help="fixture name (gen fixture)")
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--decisive", action="store_true")
    sp.add_argument("--with-families", action="store_true")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bounds", help="numbers with every applicable bound")
    sp.add_argument("file")
    sp.add_argument("--ballots", help="a democratic family to tighten the dem interval")
    dem_flags(sp)
    sp.set_defaults(func=cmd_bounds)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    threads = args.threads if args.threads is not None else os.environ.get(THREADS_ENV)
    try:
        if threads is not None and int(threads) < 1:
            raise UsageError("thread count must be positive")
        if args.max_n is not None:
            core.set_max_items(args.max_n)
        return args.func(args)
    except (ParseError, UsageError, OSError, ValueError) as exc:
        # ValueError covers QuasiChoiceError (bad share, bad parameters)
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
