"""Print the H^0/H^1 chart of O(m) on a weighted projective line."""
import argparse

from ellbundles.wpl import WeightedLine, chart


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=4)
    ap.add_argument("--l", type=int, default=6)
    ap.add_argument("--lo", type=int, default=-22)
    ap.add_argument("--hi", type=int, default=12)
    args = ap.parse_args()
    print(chart(WeightedLine(args.k, args.l), args.lo, args.hi).to_ascii(), end="")


if __name__ == "__main__":
    main()
