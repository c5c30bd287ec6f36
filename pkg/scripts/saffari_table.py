"""Generating functions R_n and their leading constants, n = 1..N."""
import argparse
import time

from shapiro_ct.cli import factored
from shapiro_ct.scheme import build_scheme, genfun
from shapiro_ct.spectra import saffari_residue


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=8)
    ap.add_argument("--show-genfun", action="store_true")
    args = ap.parse_args()
    print(f"{'n':>3} {'states':>7} {'den deg':>8} {'constant':>12} {'2^n/(n+1)':>12} {'ok':>4} {'secs':>7}")
    for n in range(1, args.max + 1):
        t0 = time.perf_counter()
        ts = build_scheme((0, n, n, 0, 0))
        rf = genfun(ts)
        rep = saffari_residue(n, rf)
        ok = rep.match and rep.dominant_root_ok
        print(f"{n:>3} {ts.size:>7} {len(rf.den) - 1:>8} {str(rep.residue):>12} "
              f"{str(rep.expected):>12} {'yes' if ok else 'NO':>4} {time.perf_counter() - t0:>7.2f}")
        if args.show_genfun:
            print(f"    R_{n}(t) = {factored(rf)}")


if __name__ == "__main__":
    main()
