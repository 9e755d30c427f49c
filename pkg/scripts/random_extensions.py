"""Normalize seeded random iterated extensions of line bundles and tally the
standard forms that appear."""
import argparse
from collections import Counter

from ellbundles.moduli3 import (EnumerateAll, normalize, random_extensions,
                                rank_h1_corollary_check)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-rank", type=int, default=8)
    args = ap.parse_args()
    kinds = Counter()
    branches = bad = 0
    for e in random_extensions(args.count, args.seed, args.max_rank):
        for b in normalize(e, EnumerateAll()).forms:
            branches += 1
            bad += (b.rank != e.rank) or not rank_h1_corollary_check(b)
            kinds.update(s.kind for s in b)
    print(f"{args.count} extensions, {branches} branches, {bad} property failures")
    for kind, n in sorted(kinds.items()):
        print(f"  {kind:8s} {n}")


if __name__ == "__main__":
    main()
