"""Count class memberships over every integer matrix with entries in a range.

Small sizes only: n = 2 with entries in [-2, 2] is 625 matrices and takes
seconds, n = 3 with entries in [-1, 1] is 19683 and takes a while.
"""
import argparse
import itertools
from collections import Counter

from lcplab.classes import CLASS_NAMES, DETECTORS
from lcplab.rational import rmat


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--low", type=int, default=-2)
    ap.add_argument("--high", type=int, default=2)
    ap.add_argument("--classes", default=",".join(CLASS_NAMES))
    args = ap.parse_args()

    names = args.classes.split(",")
    unknown = set(names) - set(DETECTORS)
    if unknown:
        ap.error(f"unknown classes: {', '.join(sorted(unknown))}")
    values = range(args.low, args.high + 1)
    counts, total = Counter(), 0
    for entries in itertools.product(values, repeat=args.n * args.n):
        a = rmat([entries[i * args.n:(i + 1) * args.n] for i in range(args.n)])
        total += 1
        for name in names:
            counts[name] += DETECTORS[name](a).member
    for name in names:
        print(f"{name:16s} {counts[name]:7d} / {total}")


if __name__ == "__main__":
    main()
