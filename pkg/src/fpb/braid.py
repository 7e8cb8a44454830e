"""Braid words, the braid-to-basket conversion and two upper bounds on the
number of bands.

Conversion recipe.  The first ``strands - 1`` letters (one per generator)
glue the Seifert disks of the closed braid into a single disk ``D``; every
later letter is a half-twisted band on ``D``.  A letter whose sign is
opposite to the prefix letter of its generator becomes one flat band; a
letter of the same sign becomes a flat band plus two flat annuli
``x y B x y`` wrapped around its foot on the lower Seifert disk.

Pages: generators whose prefix letter is positive sit below those whose
prefix letter is negative.  Inside the positive group bands are stacked by
height with a triple ordered ``B < y < x``; the negative group is the mirror
image (descending height, ``x < y < B``).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .code import BasketCode
from .diagram import ArcDiagram, braid_diagram


class BraidError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(g) for g in self.letters))
        if self.strands < 1:
            raise BraidError("a braid needs at least one strand")
        for g in self.letters:
            if g == 0 or abs(g) > self.strands - 1:
                raise BraidError(f"generator {g} out of range for {self.strands} strands")

    @property
    def m(self) -> int:
        return len(self.letters)

    def text(self) -> str:
        return " ".join(str(g) for g in self.letters)

    def diagram(self) -> ArcDiagram:
        return braid_diagram(self.strands, self.letters)


_TOKEN = re.compile(r"^(?:s|σ|sigma_?)?(-?\d+)('|\^-1|\^\{-1\})?$")


def parse_braid(text: str, strands: int) -> BraidWord:
    """Parse ``"s2 s1' s2'"`` (prime for the inverse) or ``"2 -1 -2"``."""
    letters = []
    for tok in text.replace(",", " ").split():
        m = _TOKEN.match(tok)
        if not m:
            raise BraidError(f"malformed braid token {tok!r}")
        g = int(m.group(1))
        if m.group(2):
            if g < 0:
                raise BraidError(f"doubly inverted token {tok!r}")
            g = -g
        letters.append(g)
    return BraidWord(strands, tuple(letters))


def closed_components(braid: BraidWord) -> int:
    """Number of cycles of the permutation underlying the braid."""
    perm = list(range(braid.strands))
    for g in braid.letters:
        i = abs(g) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    seen = [False] * braid.strands
    cycles = 0
    for s in range(braid.strands):
        if not seen[s]:
            cycles += 1
            while not seen[s]:
                seen[s] = True
                s = perm[s]
    return cycles


def _prefix_signs(braid: BraidWord) -> dict[int, int]:
    k = braid.strands - 1
    pre = braid.letters[:k]
    if sorted(abs(g) for g in pre) != list(range(1, k + 1)):
        raise BraidError(
            f"the first {k} letters must use every generator once, got {list(pre)}")
    return {abs(g): (1 if g > 0 else -1) for g in pre}


def _boundary_feet(braid: BraidWord) -> list[tuple[int, int]]:
    """Feet of the non-prefix bands in order along the boundary of the prefix disk.

    Seifert circle ``j`` is read at increasing heights; a prefix band moves
    the walk to the neighbouring circle.  Returns ``(band, circle)`` pairs.
    """
    k = braid.strands - 1
    L = len(braid.letters)
    feet = []
    circle, idx = 1, 0
    while True:
        g = abs(braid.letters[idx])
        if g in (circle - 1, circle):
            if idx < k:
                circle = circle + 1 if g == circle else circle - 1
            else:
                feet.append((idx - k, circle))
        idx = (idx + 1) % L
        if (circle, idx) == (1, 0):
            return feet


def fhk_code(braid: BraidWord) -> BasketCode:
    """Flat plumbing basket code whose boundary is the closure of ``braid``.

    Uses ``m + 2p`` bands where ``m`` counts letters after the prefix and ``p``
    those with the same sign as the prefix letter of their generator.
    """
    if braid.strands < 2:
        if braid.letters:
            raise BraidError("a one-strand braid has no generators")
        return BasketCode(())
    sign = _prefix_signs(braid)
    W = braid.letters[braid.strands - 1:]
    if not W:
        return BasketCode(())
    seq: list[tuple[str, int]] = []
    wrapped = set()
    for b, circle in _boundary_feet(braid):
        g = abs(W[b])
        same = (W[b] > 0) == (sign[g] > 0)
        if same and circle == g and b not in wrapped:
            wrapped.add(b)
            seq += [("x", b), ("y", b), ("B", b), ("x", b), ("y", b)]
        else:
            seq.append(("B", b))

    rank = {"B": 0, "y": 1, "x": 2}

    def page_key(el):
        kind, b = el
        if sign[abs(W[b])] > 0:
            return (0, b, rank[kind])
        return (1, -b, -rank[kind])

    pages = {el: i + 1 for i, el in enumerate(sorted(set(seq), key=page_key))}
    word = [pages[el] for el in seq]
    best = min(tuple(word[i:] + word[:i]) for i in range(len(word)))
    return BasketCode(best)


def same_sign_count(braid: BraidWord) -> int:
    sign = _prefix_signs(braid)
    return sum(1 for g in braid.letters[braid.strands - 1:] if (g > 0) == (sign[abs(g)] > 0))


def bound_fhk(braid: BraidWord) -> int:
    """``m + 2p`` for a word ``s_{n-1} ... s_1 W`` with ``m = |W|`` and ``p``
    positive letters in ``W``."""
    n = braid.strands
    normal = tuple(range(n - 1, 0, -1))
    if braid.letters[: n - 1] != normal:
        raise BraidError(f"word does not start with the normal-form prefix {list(normal)}")
    W = braid.letters[n - 1:]
    return len(W) + 2 * sum(1 for g in W if g > 0)


def power_sums(letters: Sequence[int], strands: int) -> dict[int, tuple[int, int]]:
    """``i -> (occurrences of s_i, occurrences of s_i^-1)``."""
    ps = {i: [0, 0] for i in range(1, strands)}
    for g in letters:
        ps[abs(g)][0 if g > 0 else 1] += 1
    return {i: (a, b) for i, (a, b) in ps.items()}


def kim_epsilon(pos: int, neg: int) -> int:
    # first branch wins ties
    if 1 <= pos <= neg or neg == 0:
        return 1
    return -1


def bound_kim(braid: BraidWord) -> int:
    """``m + n - 1 - 4 gamma + 2 sum_i ps(s_i^eps_i)`` evaluated as written."""
    ps = power_sums(braid.letters, braid.strands)
    gamma = sum(1 for a, b in ps.values() if a and b)
    total = 0
    for a, b in ps.values():
        total += a if kim_epsilon(a, b) > 0 else b
    return braid.m + braid.strands - 1 - 4 * gamma + 2 * total
