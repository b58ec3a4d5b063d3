"""dim H^2_* of h_1^lambda for every lambda, compared with 2m^2+m = 3.

Prints the distribution of dimensions per prime and confirms that the
six-term sequence is exact for each lambda.
"""
import argparse
from collections import Counter

from resliep import linalg
from resliep.gfp import field_make
from resliep.pstruct import heisenberg_restricted
from resliep.rescoh import verify_sequences


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--primes", default="2,3,5")
    args = ap.parse_args()
    for p in (int(s) for s in args.primes.split(",")):
        F = field_make(p)
        dims = Counter()
        examples = {}
        all_exact = True
        for v in linalg.all_vectors(F, 3):
            lam = tuple(int(x) for x in v)
            R = heisenberg_restricted(F, 1, lam)
            seq = verify_sequences(R.algebra, R.pmap)
            all_exact &= seq.exact
            d = seq.dims["H2*"]
            dims[d] += 1
            examples.setdefault(d, lam)
        summary = ", ".join(f"dim {d}: {c} lambdas (e.g. {examples[d]})" for d, c in sorted(dims.items()))
        print(f"p={p}: {summary}; formula 3; six-term exact for all: {all_exact}")


if __name__ == "__main__":
    main()
