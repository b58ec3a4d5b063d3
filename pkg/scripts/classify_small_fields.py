"""Orbit counts of h_m^lambda under isomorphism over small fields.

Also reports whether letting mu vary freely (instead of tying it to the
similitude multiplier of A) changes any verdict.
"""
import argparse
import time

from resliep.gfp import field_make
from resliep.heisclass import classify, mu_reading_discrepancies

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--m", type=int, default=1)
    ap.add_argument("--fields", default=",".join(f"{p}^{k}" for p, k in FIELDS), help="comma list of p^k")
    ap.add_argument("--free-mu", action="store_true", help="also run the free-multiplier comparison")
    args = ap.parse_args()
    for spec in args.fields.split(","):
        p, k = (int(x) for x in spec.split("^"))
        F = field_make(p, k)
        t0 = time.perf_counter()
        c = classify(F, args.m)
        reps = [[F.format(x) for x in r] for r in c.representatives]
        line = f"F_{F.q}: {c.count} orbits, sizes {[len(o) for o in c.orbits]}, reps {reps}, validated={c.transitive}"
        if args.free_mu:
            line += f", free-mu discrepancies={len(mu_reading_discrepancies(F, args.m))}"
        print(f"{line} ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
