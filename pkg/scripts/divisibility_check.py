"""Check that page relabellings split every six-band class into orbits of 12.

Cyclic page rotation and page reversal generate a dihedral group of order 12
on labels 1..6.  Neither changes the chord matching, so the surviving set is
closed under it; no nontrivial element fixes a word; rotation keeps the knot
and reversal mirrors it.  Hence every class count, named up to mirror image,
is a multiple of 12.  This script verifies each step on the actual census
data (a few minutes on one core).
"""
import itertools
import sys
from collections import Counter

from fpb.census import chunk_prefixes, matchings_with_prefix
from fpb.code import BasketCode, _components_of_matching, _has_short_band, canonical_word
from fpb.invariants import fingerprint
from fpb.reference import load_table

N = 6


def relabellings(n):
    rot = [tuple((k + r) % n + 1 for k in range(n)) for r in range(n)]  # label k+1 -> perm[k]
    return rot + [tuple(n + 1 - p[k] for k in range(n)) for p in rot]


def main():
    table = load_table()
    group = relabellings(N)
    assert len(set(group)) == 12
    counts, orbit_sizes, memo = Counter(), Counter(), {}
    for prefix in chunk_prefixes(N):
        for m in matchings_with_prefix(2 * N, prefix):
            if _components_of_matching(m) != 1 or _has_short_band(m):
                continue
            openers = [i for i in range(2 * N) if i < m[i]]
            seen = set()
            for labels in itertools.permutations(range(1, N + 1)):
                w = [0] * (2 * N)
                for i, lab in zip(openers, labels):
                    w[i] = w[m[i]] = lab
                w = tuple(w)
                if w in seen:
                    continue
                orbit = {tuple(g[x - 1] for x in w) for g in group}
                seen |= orbit
                orbit_sizes[len(orbit)] += 1
                key = canonical_word(w)
                if key not in memo:
                    memo[key] = table.lookup(fingerprint(BasketCode(key)))
                name = memo[key]
                # the orbit stays inside one class
                assert all(table.lookup(fingerprint(BasketCode(v))) == name for v in list(orbit)[:2])
                counts[name] += len(orbit)
    print("orbit sizes:", dict(orbit_sizes))
    print("surviving:", sum(counts.values()))
    bad = {k: v for k, v in counts.items() if v % 12}
    print("classes not divisible by 12:", bad or "none")
    return 1 if bad or set(orbit_sizes) != {12} else 0


if __name__ == "__main__":
    sys.exit(main())
