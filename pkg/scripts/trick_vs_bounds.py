"""Per-degree comparison for T(n,n-1): construction genus against per-degree lower bounds."""

import argparse

from cp2genus import Torus, invariant_record
from cp2genus.bounds import cp2_upper_bounds, degree_row


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=8)
    args = ap.parse_args()

    print(f"{'n':>3} {'d':>3} {'tag':>10} {'genus':>5} {'lower':>5} {'gap':>4}")
    for n in range(2, args.max_n + 1):
        k = Torus(n, n - 1)
        rec = invariant_record(k)
        for c in cp2_upper_bounds(k):
            lower = degree_row(rec, c.degree).combined
            print(f"{n:>3} {c.degree:>3} {c.tag.value:>10} {c.genus:>5} {lower:>5} {c.genus - lower:>4}")


if __name__ == "__main__":
    main()
