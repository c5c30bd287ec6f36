"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 capacity failure,
64 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from . import oracle, pretenders, scheme, spectra
from .arith import RationalFunction, format_poly, poly_eval, poly_exact_div, poly_trim
from .config import load_config
from .errors import CapacityError, ConfigError
from .recurrence import Recurrence

EXIT_OK, EXIT_MISMATCH, EXIT_CAPACITY, EXIT_USAGE = 0, 1, 2, 64

DEFAULT_KMAX = 60


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


# ---------------------------------------------------------------------------
# Serialization and display
# ---------------------------------------------------------------------------

def genfun_to_json(rf: RationalFunction, states: int, seed) -> dict:
    return {
        "num": [str(c) for c in rf.num],
        "den": [str(c) for c in rf.den],
        "states": states,
        "seed": [int(x) for x in seed],
    }


def genfun_from_json(doc: dict) -> RationalFunction:
    return RationalFunction.normalize([int(c) for c in doc["num"]], [int(c) for c in doc["den"]])


def linear_factors(p) -> tuple[list[int], tuple]:
    """Split p = prod(1 - c t) * rest over the integers, c found from numeric roots.

    Every factor is verified exactly; anything unverified stays in ``rest``.
    """
    p = poly_trim(p)
    cs = []
    while len(p) > 1:
        big = max(abs(c) for c in p)
        roots = np.roots([float(Fraction(c, big)) for c in reversed(p)])
        found = None
        for z in sorted(roots, key=abs):
            if abs(z.imag) > 1e-9 * max(1.0, abs(z)) or z == 0:
                continue
            c = round(1 / z.real)
            if c and poly_eval(p, Fraction(1, c)) == 0:
                found = c
                break
        if found is None:
            break
        cs.append(found)
        p = poly_exact_div(p, (1, -found))
    return sorted(cs, key=lambda c: (abs(c), c)), p


def factored(rf: RationalFunction) -> str:
    cs, rest = linear_factors(rf.den)
    parts = [f"({format_poly((1, -c))})" for c in cs]
    if len(rest) > 1:
        parts.append(f"({format_poly(rest)})")
    if not parts:
        return f"{format_poly(rf.num)}"
    den = parts[0] if len(parts) == 1 else "(" + "*".join(parts) + ")"
    return f"({format_poly(rf.num)})/{den}"


def _emit(doc, as_json: bool, text: str):
    print(json.dumps(doc, indent=2) if as_json else text)


# ---------------------------------------------------------------------------
# Montgomery survey
# ---------------------------------------------------------------------------

def _montgomery_pair(args):
    m, n, k_max, cap = args
    try:
        return spectra.montgomery_check(m, n, k_max, cap=cap, strict=False)
    except CapacityError as exc:
        return exc


def montgomery_survey(max_n: int, k_max: int = DEFAULT_KMAX, cap: int = scheme.DEFAULT_CAP,
                      parallel: bool = False) -> list:
    """Reports (or CapacityError instances) for every 1 <= m < n <= max_n, in order."""
    if max_n < 2:
        raise ValueError("max_n must be at least 2")
    jobs = [(m, n, k_max, cap) for n in range(2, max_n + 1) for m in range(1, n)]
    jobs.sort()
    if parallel:
        with ProcessPoolExecutor() as pool:
            return list(pool.map(_montgomery_pair, jobs))
    return [_montgomery_pair(j) for j in jobs]


def render_montgomery_report(results: list, max_n: int, k_max: int) -> str:
    low = k_max < spectra.MONTGOMERY_MIN_KMAX
    label = "HEURISTIC, LOW-CONFIDENCE" if low else "HEURISTIC"
    passed = sum(1 for r in results if not isinstance(r, Exception) and r.passed)
    lines = [
        f"Mixed moments M_(m,n)(k) = CT[P_k(z)^m P_k(1/z)^n] for 1 <= m < n <= {max_n}, k <= {k_max}",
        "Claim checked: M_(m,n)(k) = o(2^((m+n)k/2)) for m != n.",
        f"All verdicts are {label}: finitely many terms cannot decide an asymptotic statement.",
    ]
    if low:
        lines.append(f"LOW-CONFIDENCE: kmax < {spectra.MONTGOMERY_MIN_KMAX}, the window rule is not meaningful.")
    lines.append(f"Summary: {passed} of {len(results)} pairs pass.")
    for r in results:
        lines.append("")
        if isinstance(r, CapacityError):
            lines.append(f"## pair skipped: {r}")
            continue
        lines.append(f"## (m, n) = ({r.m}, {r.n})")
        lines.append(f"states: {r.states}")
        lines.append(f"num = [{', '.join(map(str, r.genfun.num))}]")
        lines.append(f"den = [{', '.join(map(str, r.genfun.den))}]")
        lines.append(f"generating function: {factored(r.genfun)}")
        w = r.m + r.n
        step = max(1, r.k_max // 12)
        table = ", ".join(f"{k}:{r.ratio_float(k):.4g}" for k in range(0, r.k_max + 1, step))
        lines.append(f"|M(k)| / 2^({w}k/2) at k = {table}")
        late = max(r.ratio_float(k) for k in range(max(r.k_max - 10, 0), r.k_max + 1))
        early = max(r.ratio_float(k) for k in range(0, min(20, r.k_max) + 1))
        lines.append(
            f"window rule, max over k in [{max(r.k_max - 10, 0)},{r.k_max}] < max over k in [0,20]: "
            f"{'pass' if r.window_ok else 'fail'} ({late:.4g} vs {early:.4g})"
        )
        lines.append(
            f"smallest denominator root modulus {r.min_root:.6g} vs 2^(-{w}/2) = {2 ** (-w / 2):.6g}: "
            f"{'pass' if r.root_ok else 'fail'}"
        )
        lines.append(f"verdict: {'PASS' if r.passed else 'FAIL'} ({label})")
    return "\n".join(lines) + "\n"


def emit_montgomery_report(max_n: int, k_max: int = DEFAULT_KMAX, cap: int = scheme.DEFAULT_CAP,
                           parallel: bool = False) -> str:
    return render_montgomery_report(montgomery_survey(max_n, k_max, cap, parallel), max_n, k_max)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _seed(args) -> tuple:
    if getattr(args, "alpha", None):
        try:
            alpha = tuple(int(x) for x in args.alpha.split(","))
        except ValueError:
            raise UsageError("--alpha expects five comma-separated integers") from None
        if len(alpha) != 5 or min(alpha[1:]) < 0:
            raise UsageError("--alpha expects a0,a1,a2,a3,a4 with a1..a4 >= 0")
        return alpha
    if args.n is None:
        raise UsageError("--n is required unless --alpha is given")
    m = args.n if args.m is None else args.m
    if m < 0 or args.n < 0 or m == args.n == 0:
        raise UsageError("need m, n >= 0, not both zero")
    return (0, m, args.n, 0, 0)


def cmd_moments(args, rec: Recurrence) -> int:
    seed = _seed(args)
    ts = scheme.build_scheme(seed, rec, args.cap)
    seq = scheme.iterate_sequence(ts, args.k)
    brute = None
    if args.brute:
        brute = [oracle.ct_moment_brute(seed, k, rec, args.budget) for k in range(args.k + 1)]
    ok = brute is None or brute == seq
    doc = {"seed": list(seed), "states": ts.size, "values": [str(v) for v in seq]}
    if brute is not None:
        doc["brute"] = [str(v) for v in brute]
        doc["agree"] = ok
    lines = [f"seed {seed}: {ts.size} states"]
    for k, v in enumerate(seq):
        extra = "" if brute is None else ("  ok" if brute[k] == v else f"  MISMATCH brute={brute[k]}")
        lines.append(f"E({k}) = {v}{extra}")
    if brute is not None:
        lines.append("scheme and brute force agree" if ok else "MISMATCH between scheme and brute force")
    _emit(doc, args.json, "\n".join(lines))
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_genfun(args, rec: Recurrence) -> int:
    seed = _seed(args)
    ts = scheme.build_scheme(seed, rec, args.cap)
    rf = scheme.genfun(ts)
    text = "\n".join([
        f"seed {seed}: {ts.size} states",
        f"num = [{', '.join(map(str, rf.num))}]",
        f"den = [{', '.join(map(str, rf.den))}]",
        f"R(t) = {factored(rf)}",
    ])
    _emit(genfun_to_json(rf, ts.size, seed), args.json, text)
    return EXIT_OK


def cmd_saffari(args, rec: Recurrence) -> int:
    rep = spectra.saffari_residue(args.n, cap=args.cap)
    ok = rep.match and rep.dominant_root_ok
    doc = {
        "n": args.n, "residue": str(rep.residue), "expected": str(rep.expected),
        "match": rep.match, "dominant_root_ok": rep.dominant_root_ok,
        "num": [str(c) for c in rep.genfun.num], "den": [str(c) for c in rep.genfun.den],
    }
    text = "\n".join([
        f"R_{args.n}(t) = {factored(rep.genfun)}",
        f"pole at t = 1/{2 ** args.n}: constant {rep.residue}, expected 2^{args.n}/{args.n + 1} = {rep.expected}"
        f" -> {'match' if rep.match else 'MISMATCH'}",
        f"other poles farther from 0: {'yes' if rep.dominant_root_ok else 'NO'} (numeric check)",
    ])
    _emit(doc, args.json, text)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_prop3(args, rec: Recurrence) -> int:
    got = spectra.prop3_residue(args.n, args.m, args.cap)
    want = spectra.prop3_expected(args.n, args.m)
    doc = {"n": args.n, "m": args.m, "constant": str(got), "expected": str(want), "match": got == want}
    _emit(doc, args.json, f"n={args.n} m={args.m}: constant {got}, expected {want} -> "
          f"{'match' if got == want else 'MISMATCH'}")
    return EXIT_OK if got == want else EXIT_MISMATCH


def cmd_montgomery(args, rec: Recurrence) -> int:
    results = montgomery_survey(args.max, args.kmax, args.cap, args.parallel)
    if args.json:
        doc = []
        for r in results:
            if isinstance(r, CapacityError):
                doc.append({"error": str(r)})
                continue
            doc.append({
                "m": r.m, "n": r.n, "states": r.states,
                "num": [str(c) for c in r.genfun.num], "den": [str(c) for c in r.genfun.den],
                "window_ok": r.window_ok, "root_ok": r.root_ok, "min_root": r.min_root,
                "verdict": "PASS" if r.passed else "FAIL", "label": r.label,
                "low_confidence": r.low_confidence,
            })
        print(json.dumps(doc, indent=2))
    else:
        print(render_montgomery_report(results, args.max, args.kmax), end="")
    if any(isinstance(r, CapacityError) for r in results):
        return EXIT_CAPACITY
    return EXIT_OK if all(r.passed for r in results) else EXIT_MISMATCH


def _run_checks(fn, ns, parallel):
    if parallel:
        with ProcessPoolExecutor() as pool:
            return list(pool.map(fn, ns))
    return [fn(n) for n in ns]


def cmd_checkcp(args, rec: Recurrence) -> int:
    ns = list(range(1, args.max + 1))
    bad = [n for n, ok in zip(ns, _run_checks(spectra.check_charpoly, ns, args.parallel)) if not ok]
    print("all true" if not bad else f"false for n = {bad}")
    return EXIT_OK if not bad else EXIT_MISMATCH


def cmd_checkev(args, rec: Recurrence) -> int:
    ns = list(range(1, args.max + 1))
    bad = [n for n, ok in zip(ns, _run_checks(spectra.check_eigenvector, ns, args.parallel)) if not ok]
    print("all true" if not bad else f"false for n = {bad}")
    return EXIT_OK if not bad else EXIT_MISMATCH


def cmd_pretenders(args, rec: Recurrence) -> int:
    c = pretenders.census(args.n, args.cap)
    doc = {
        "n": c.n, "universe_size": c.universe_size, "important_count": c.important_count,
        "false_pretenders": [list(m) for m in c.false_pretenders],
        "canonical_pretenders": [list(m) for m in c.canonical_pretenders],
        "count": len(c.false_pretenders), "expected_count": c.expected_count, "match": c.match,
    }
    lines = [
        f"n = {c.n}: closure of the {c.n + 1} important monomials has {c.universe_size} canonical states",
        f"false pretenders (classes under z -> 1/z): {len(c.false_pretenders)}, expected {c.expected_count}"
        f" -> {'match' if c.match else 'MISMATCH'}",
        f"dihedral orbits containing pretenders: {len(c.canonical_pretenders)}",
    ]
    lines += [f"  {m}" for m in c.false_pretenders]
    _emit(doc, args.json, "\n".join(lines))
    return EXIT_OK if c.match else EXIT_MISMATCH


def cmd_identity(args, rec: Recurrence) -> int:
    bad = [k for k in range(args.kmax + 1) if not oracle.parseval_check(k, args.budget)]
    print("all true" if not bad else f"identity fails for k = {bad}")
    return EXIT_OK if not bad else EXIT_MISMATCH


GENERAL_COMMANDS = ("moments", "genfun")


def build_parser() -> _Parser:
    p = _Parser(prog="shapiro-ct", description="Constant-term moments of Rudin-Shapiro-type polynomials.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def common(sp, json_flag=True):
        sp.add_argument("--cap", type=int, default=scheme.DEFAULT_CAP, help="state cap for the scheme")
        if json_flag:
            sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("moments", help="exact moment sequence E[seed](0..K)")
    sp.add_argument("--n", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--brute", action="store_true", help="also compute by brute force and compare")
    sp.add_argument("--alpha", help="seed a0,a1,a2,a3,a4 (write --alpha=-1,... when a0 < 0)")
    sp.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    common(sp)
    sp.set_defaults(func=cmd_moments)

    sp = sub.add_parser("genfun", help="rational generating function")
    sp.add_argument("--n", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--alpha", help="seed a0,a1,a2,a3,a4 (write --alpha=-1,... when a0 < 0)")
    common(sp)
    sp.set_defaults(func=cmd_genfun)

    sp = sub.add_parser("saffari", help="leading constant of M_n(k)")
    sp.add_argument("--n", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_saffari)

    sp = sub.add_parser("prop3", help="leading constant of CT[(aA)^m (bB)^(n-m)]")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_prop3)

    sp = sub.add_parser("montgomery", help="mixed-moment survey report")
    sp.add_argument("--max", type=int, required=True)
    sp.add_argument("--kmax", type=int, default=DEFAULT_KMAX)
    sp.add_argument("--parallel", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_montgomery)

    for name, fn, hlp in (("checkcp", cmd_checkcp, "characteristic polynomial of K_n"),
                          ("checkev", cmd_checkev, "top eigenvector of K_n")):
        sp = sub.add_parser(name, help=hlp)
        sp.add_argument("--max", type=int, required=True)
        sp.add_argument("--parallel", action="store_true")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("pretenders", help="false-pretender census")
    sp.add_argument("--n", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_pretenders)

    sp = sub.add_parser("identity", help="P(z)P(1/z) + P(-z)P(-1/z) = 2^(k+1)")
    sp.add_argument("--kmax", type=int, required=True)
    sp.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    sp.set_defaults(func=cmd_identity)

    sp = sub.add_parser("general", help="run moments/genfun for a configured recurrence")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", help="configuration file (or a preset name)")
    src.add_argument("--preset", choices=["classic"])
    sp.add_argument("rest", nargs=argparse.REMAINDER)
    sp.set_defaults(func=None)
    return p


def run_command(argv: list[str], rec: Recurrence | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "general":
            if not args.rest or args.rest[0] not in GENERAL_COMMANDS:
                raise UsageError(f"general expects one of: {', '.join(GENERAL_COMMANDS)}")
            rec = load_config(args.preset or args.config)
            args = build_parser().parse_args(args.rest)
        return args.func(args, rec or Recurrence.classic())
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(str(exc) if str(exc).startswith("FAIL") else f"FAIL: {exc}")
        return EXIT_CAPACITY


def main(argv: list[str] | None = None) -> None:
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
