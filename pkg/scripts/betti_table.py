"""Betti numbers of h_m by rank next to the closed form, one row per (p, m)."""
import argparse

from resliep.cecoh import betti_closed_form, cohomology
from resliep.gfp import field_make
from resliep.liealg import heisenberg


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--primes", default="2,3,5")
    ap.add_argument("--max-m", type=int, default=3)
    args = ap.parse_args()
    for p in (int(s) for s in args.primes.split(",")):
        for m in range(1, args.max_m + 1):
            L = heisenberg(field_make(p), m)
            dims = [cohomology(L, q).dim_H for q in range(2 * m + 2)]
            closed = [betti_closed_form(m, p, q) for q in range(m + 1)]
            mark = "ok" if dims[: m + 1] == closed else "MISMATCH"
            print(f"p={p} m={m} H^*={dims} closed(n<=m)={closed} {mark}")


if __name__ == "__main__":
    main()
