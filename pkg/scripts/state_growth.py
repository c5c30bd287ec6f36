"""Size of the closed system for the n-th moment, and time to build it."""
import argparse
import time

from shapiro_ct.scheme import build_scheme


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=10)
    ap.add_argument("--cap", type=int, default=5000)
    args = ap.parse_args()
    for n in range(1, args.max + 1):
        t0 = time.perf_counter()
        ts = build_scheme((0, n, n, 0, 0), cap=args.cap)
        print(f"n={n:>3}  states={ts.size:>6}  {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
