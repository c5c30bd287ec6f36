"""False-pretender counts against (n/2)^2 - 1 (even n) and (n^2 - 1)/4 (odd n)."""
import argparse

from shapiro_ct.pretenders import census


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--min", type=int, default=2)
    ap.add_argument("--max", type=int, default=8)
    ap.add_argument("--list", action="store_true", help="print the pretender classes")
    args = ap.parse_args()
    print(f"{'n':>3} {'universe':>9} {'orbits':>7} {'classes':>8} {'expected':>9}")
    for n in range(args.min, args.max + 1):
        c = census(n)
        print(f"{n:>3} {c.universe_size:>9} {len(c.canonical_pretenders):>7} "
              f"{len(c.false_pretenders):>8} {c.expected_count:>9}{'' if c.match else '  MISMATCH'}")
        if args.list:
            for mono in c.false_pretenders:
                print(f"      {mono}")


if __name__ == "__main__":
    main()
