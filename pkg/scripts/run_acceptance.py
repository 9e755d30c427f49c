"""Run the acceptance manifest and print one line per criterion."""
import argparse
import sys

from ellbundles.verify import run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--criterion", type=int, action="append")
    args = ap.parse_args()
    report = run_suite("paper", criteria=args.criterion)
    print(report.to_ascii(), end="")
    sys.exit(0 if report.passed else 1)


if __name__ == "__main__":
    main()
