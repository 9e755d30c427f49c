"""Ext chart of the Weierstraß Hopf algebroid at p = 3, with the
Δ-stabilized groups in low degrees."""
import argparse
import time

from ellbundles.hopfext import ResourceLimitError, delta_stabilize, ext_chart, yoneda_product


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--smax", type=int, default=3)
    ap.add_argument("--nmax", type=int, default=20)
    ap.add_argument("--stable-nmax", type=int, default=6,
                    help="stabilize n <= this; needs the chart up to n + 24")
    args = ap.parse_args()
    t0 = time.perf_counter()
    chart = ext_chart(args.smax, max(args.nmax, args.stable_nmax + 24), 3, eager=False)
    for s in range(args.smax + 1):
        for n in range(args.nmax + 1):
            chart.data(s, n)
    print(chart.to_ascii(), end="")
    print(f"\ncomputed s <= {args.smax}, n <= {args.nmax} in {time.perf_counter() - t0:.1f}s")
    print("Δ-stabilized nonzero groups:")
    for s in range(1, args.smax + 1):
        for n in range(args.stable_nmax + 1):
            try:
                st = delta_stabilize(chart, s, n)
            except ResourceLimitError:
                print(f"  ({s},{n}): Δ shift beyond the basis cap")
                continue
            if not st.stabilized:
                print(f"  ({s},{n}): not stabilized, {st.reason}")
            elif not st.group.is_trivial():
                print(f"  ({s},{n}): {st.group}")
    a, b = chart.classes["α"], chart.classes["β"]
    print("α² = 0:", chart.is_zero(yoneda_product(chart, a, a)))
    if args.smax >= 3:
        print("βα ≠ 0:", not chart.is_zero(yoneda_product(chart, b, a)))


if __name__ == "__main__":
    main()
