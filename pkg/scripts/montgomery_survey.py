"""Write the mixed-moment survey report for 1 <= m < n <= N to stdout or a file."""
import argparse
import sys

from shapiro_ct.cli import emit_montgomery_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=5)
    ap.add_argument("--kmax", type=int, default=60)
    ap.add_argument("--parallel", action="store_true")
    ap.add_argument("-o", "--output")
    args = ap.parse_args()
    text = emit_montgomery_report(args.max, args.kmax, parallel=args.parallel)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
