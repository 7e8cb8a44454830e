"""Compare the two braid bounds with the basket numbers of identified closures.

Walks all words of the form s_{n-1} ... s_1 W with |W| <= --length on 2..4
strands, converts each knot closure to a basket code and names it.
"""
import argparse
import itertools
from collections import defaultdict

from fpb.braid import BraidWord, bound_fhk, bound_kim, closed_components, fhk_code
from fpb.census import classify_code, fpbk_lookup
from fpb.invariants import BudgetExceeded
from fpb.reference import load_table


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--length", type=int, default=4)
    ap.add_argument("--max-strands", type=int, default=4)
    args = ap.parse_args()
    table = load_table()
    best = defaultdict(lambda: [None, None, 0])  # name -> [min fhk, min kim, samples]
    for strands in range(2, args.max_strands + 1):
        prefix = tuple(range(strands - 1, 0, -1))
        gens = [g * s for g in range(1, strands) for s in (1, -1)]
        for length in range(args.length + 1):
            for W in itertools.product(gens, repeat=length):
                b = BraidWord(strands, prefix + W)
                if closed_components(b) != 1:
                    continue
                try:
                    name = classify_code(fhk_code(b), table)
                except BudgetExceeded:
                    continue
                row = best[name]
                f, k = bound_fhk(b), bound_kim(b)
                row[0] = f if row[0] is None else min(row[0], f)
                row[1] = k if row[1] is None else min(row[1], k)
                row[2] += 1
    print(f"{'knot':<14}{'samples':>8}{'min fhk':>9}{'min kim':>9}  fpbk")
    for name, (f, k, s) in sorted(best.items(), key=lambda kv: -kv[1][2]):
        try:
            known = fpbk_lookup(name)
        except KeyError:
            known = "?"
        if isinstance(known, frozenset):
            known = " or ".join(map(str, sorted(known)))
        print(f"{name:<14}{s:>8}{f:>9}{k:>9}  {known}")


if __name__ == "__main__":
    main()
