"""Null-homologous lower bound for T(2,q) next to the known value (q-3)/2."""

import argparse

from cp2genus import Torus, invariant_record
from cp2genus.bounds import cp2_report, degree_row


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-q", type=int, default=21)
    args = ap.parse_args()

    print(f"{'q':>3} {'sigma':>5} {'d=0':>4} {'(q-3)/2':>7} {'lower':>5} {'upper':>5}")
    for q in range(3, args.max_q + 1, 2):
        k = Torus(2, q)
        rec = invariant_record(k)
        rep = cp2_report(k, record=rec)
        print(f"{q:>3} {rec.signature:>5} {degree_row(rec, 0).combined:>4} {(q - 3) // 2:>7} "
              f"{rep.smooth_lower:>5} {rep.smooth_upper:>5}")


if __name__ == "__main__":
    main()
