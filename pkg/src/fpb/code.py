"""Flat plumbing basket codes and the combinatorial surface model.

A code of ``n`` bands is a word of length ``2n`` in which every label
``1..n`` occurs twice.  Word positions are the feet of the bands along the
binding (read left to right along the top edge of the disk); the label of a
band is its page, and a band on a higher page lies in front of every band on
a lower page.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

MAX_ENUM_BANDS = 8


class CodeError(ValueError):
    """Malformed or invalid basket code."""


@dataclass(frozen=True)
class BasketCode:
    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(int(x) for x in self.word)
        object.__setattr__(self, "word", word)
        if len(word) % 2:
            raise CodeError(f"code of odd length {len(word)}")
        n = len(word) // 2
        counts = [0] * (n + 1)
        for x in word:
            if not 1 <= x <= n:
                raise CodeError(f"label {x} outside 1..{n}")
            counts[x] += 1
        bad = [k for k in range(1, n + 1) if counts[k] != 2]
        if bad:
            raise CodeError(f"labels {bad} do not occur exactly twice")

    @property
    def n(self) -> int:
        return len(self.word) // 2

    def feet(self, label: int) -> tuple[int, int]:
        """0-based positions (p, q), p < q, of the two feet of ``label``."""
        return _feet(self.word)[label - 1]

    def text(self) -> str:
        return format_code(self)

    def __str__(self) -> str:
        return self.text()

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True)
class SurfaceStats:
    n: int
    euler: int
    mu: int
    genus: int


@dataclass(frozen=True)
class SymmetryElement:
    """Element of the symmetry group acting on codes of ``n`` bands.

    Applied in the order: cyclic shift of the start, reversal of the reading
    direction, cyclic relabelling of pages, reversal of pages.
    """

    start_rotation: int = 0
    reading_reversed: bool = False
    page_rotation: int = 0
    page_reversed: bool = False


def parse_code(text: str) -> BasketCode:
    """Parse ``"123456123456"`` or ``"[1, 2, 10, ...]"`` / ``"1 2 1 2"``."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")") or s.startswith("[") and s.endswith("]"):
        s = s[1:-1].strip()
    if not s:
        return BasketCode(())
    if re.fullmatch(r"\d+", s):
        word = tuple(int(ch) for ch in s)
    elif re.fullmatch(r"\d+([\s,]+\d+)*", s):
        word = tuple(int(tok) for tok in re.split(r"[\s,]+", s))
    else:
        raise CodeError(f"cannot parse code {text!r}")
    return BasketCode(word)


def format_code(code: BasketCode) -> str:
    if code.n <= 9:
        return "".join(str(x) for x in code.word)
    return "[" + ",".join(str(x) for x in code.word) + "]"


def as_code(code) -> BasketCode:
    if isinstance(code, BasketCode):
        return code
    if isinstance(code, str):
        return parse_code(code)
    return BasketCode(tuple(code))


@lru_cache(maxsize=1 << 16)
def _feet(word: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    first: dict[int, int] = {}
    feet = [None] * (len(word) // 2)
    for i, x in enumerate(word):
        if x in first:
            feet[x - 1] = (first[x], i)
        else:
            first[x] = i
    return tuple(feet)


def partner_positions(word: Sequence[int]) -> tuple[int, ...]:
    """The chord diagram of a word: ``partner[i]`` is the other foot of i."""
    first: dict[int, int] = {}
    partner = [0] * len(word)
    for i, x in enumerate(word):
        j = first.pop(x, None)
        if j is None:
            first[x] = i
        else:
            partner[i], partner[j] = j, i
    return tuple(partner)


def _check_label(code: BasketCode, label: int) -> None:
    if not 1 <= label <= code.n:
        raise CodeError(f"label {label} outside 1..{code.n}")


def chords_cross(p1: int, q1: int, p2: int, q2: int) -> bool:
    """True iff chords with sorted ends (p1, q1), (p2, q2) alternate."""
    return (p1 < p2 < q1) != (p1 < q2 < q1)


def interleaved(code: BasketCode, a: int, b: int) -> bool:
    _check_label(code, a)
    _check_label(code, b)
    if a == b:
        raise CodeError("interleaving needs two distinct labels")
    p1, q1 = code.feet(a)
    p2, q2 = code.feet(b)
    return chords_cross(p1, q1, p2, q2)


def interleaved_pairs(code: BasketCode) -> list[tuple[int, int]]:
    """All label pairs (i, j), i < j, whose feet alternate."""
    feet = _feet(code.word)
    out = []
    for i in range(code.n):
        for j in range(i + 1, code.n):
            if chords_cross(*feet[i], *feet[j]):
                out.append((i + 1, j + 1))
    return out


# -- boundary of the surface ------------------------------------------------
#
# Each foot at position i has a left end (i, 0) and a right end (i, 1).
# Band with feet p < q: outer edge joins (p, 0)-(q, 1), inner edge joins
# (p, 1)-(q, 0).  The binding joins (i, 1)-(i+1, 0), and (2n-1, 1)-(0, 0)
# closes up around the bottom of the disk.


@lru_cache(maxsize=1 << 15)
def _components_of_matching(partner: tuple[int, ...]) -> int:
    m = len(partner)
    if m == 0:
        return 1
    seen = bytearray(2 * m)
    count = 0
    for start in range(2 * m):
        if seen[start]:
            continue
        count += 1
        node = start
        while not seen[node]:
            seen[node] = 1
            pos, side = divmod(node, 2)
            # band edge flips the side and jumps to the partner foot
            other = 2 * partner[pos] + (1 - side)
            seen[other] = 1
            opos, oside = divmod(other, 2)
            node = 2 * ((opos + 1) % m) if oside else 2 * ((opos - 1) % m) + 1
    return count


def boundary_components(code: BasketCode) -> list[list[tuple[int, int]]]:
    """Boundary components as cyclic lists of foot ends ``(position, side)``.

    Each component is listed in traversal order, starting from its smallest
    foot end and leaving it along the band edge.
    """
    m = len(code.word)
    partner = partner_positions(code.word)
    seen = set()
    comps = []
    for start in ((p, s) for p in range(m) for s in (0, 1)):
        if start in seen:
            continue
        comp = []
        node = start
        while node not in seen:
            pos, side = node
            other = (partner[pos], 1 - side)
            comp += [node, other]
            seen.update((node, other))
            opos, oside = other
            node = ((opos + 1) % m, 0) if oside else ((opos - 1) % m, 1)
        comps.append(comp)
    return comps


def component_count(code: BasketCode) -> int:
    return _components_of_matching(partner_positions(code.word))


def surface_stats(code: BasketCode) -> SurfaceStats:
    euler = 1 - code.n
    mu = component_count(code)
    twice_genus = 2 - euler - mu
    assert twice_genus % 2 == 0 and twice_genus >= 0
    return SurfaceStats(code.n, euler, mu, twice_genus // 2)


# -- enumeration --------------------------------------------------------------


def code_total(n: int) -> int:
    return math.factorial(2 * n) // 2**n


def _check_enum_range(n: int) -> None:
    if not 0 <= n <= MAX_ENUM_BANDS:
        raise CodeError(f"band count {n} outside 0..{MAX_ENUM_BANDS}")


def iter_words(n: int, prefix: Sequence[int] = ()) -> Iterator[tuple[int, ...]]:
    """All double-occurrence words on 1..n in lexicographic order.

    Only words starting with ``prefix`` are produced.
    """
    _check_enum_range(n)
    m = 2 * n
    left = [2] * (n + 1)
    for x in prefix:
        if not 1 <= x <= n or left[x] == 0:
            return
        left[x] -= 1
    word = list(prefix) + [0] * (m - len(prefix))

    def rec(i):
        if i == m:
            yield tuple(word)
            return
        for x in range(1, n + 1):
            if left[x]:
                left[x] -= 1
                word[i] = x
                yield from rec(i + 1)
                left[x] += 1

    yield from rec(len(prefix))


def enumerate_codes(n: int) -> Iterator[BasketCode]:
    for w in iter_words(n):
        yield BasketCode(w)


def iter_matchings(m: int) -> Iterator[tuple[int, ...]]:
    """Perfect matchings of ``range(m)`` as partner tuples, lexicographic."""
    partner = [0] * m

    def rec(free):
        if not free:
            yield tuple(partner)
            return
        a = free[0]
        for k in range(1, len(free)):
            b = free[k]
            partner[a], partner[b] = b, a
            yield from rec(free[1:k] + free[k + 1:])

    yield from rec(list(range(m)))


def matching_template(partner: Sequence[int]) -> tuple[int, ...]:
    """The word whose labels are assigned in order of first occurrence."""
    word = [0] * len(partner)
    nxt = 1
    for i, j in enumerate(partner):
        if i < j:
            word[i] = word[j] = nxt
            nxt += 1
    return tuple(word)


# -- symmetries ---------------------------------------------------------------


def symmetry_apply(code: BasketCode, g: SymmetryElement) -> BasketCode:
    return BasketCode(_apply_word(code.word, code.n, g))


def _apply_word(word, n, g: SymmetryElement):
    if not word:
        return word
    r = g.start_rotation % len(word)
    w = word[r:] + word[:r]
    if g.reading_reversed:
        w = w[::-1]
    s = g.page_rotation % n
    if s:
        w = tuple((x - 1 + s) % n + 1 for x in w)
    if g.page_reversed:
        w = tuple(n + 1 - x for x in w)
    return w


def group_elements(n: int) -> list[SymmetryElement]:
    if n == 0:
        return [SymmetryElement()]
    return [
        SymmetryElement(r, rev, s, flip)
        for r in range(2 * n)
        for rev in (False, True)
        for s in range(n)
        for flip in (False, True)
    ]


def group_order(n: int) -> int:
    return max(1, 8 * n * n)


def symmetry_orbit(code: BasketCode) -> set[BasketCode]:
    n = code.n
    return {BasketCode(_apply_word(code.word, n, g)) for g in group_elements(n)}


def orbit_words(word: tuple[int, ...]) -> set[tuple[int, ...]]:
    n = len(word) // 2
    return {_apply_word(word, n, g) for g in group_elements(n)}


def canonical_word(word: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically least word in the symmetry orbit of ``word``.

    Only the two page maps sending the first letter to 1 can produce the
    minimum for a given positional transform, so 8n candidates suffice.
    """
    m = len(word)
    if m == 0:
        return word
    n = m // 2
    best = None
    rev = word[::-1]
    for base in (word, rev):
        for r in range(m):
            w = base[r:] + base[:r]
            w0 = w[0]
            c1 = tuple((x - w0) % n + 1 for x in w)
            c2 = tuple((w0 - x) % n + 1 for x in w)
            if best is None or c1 < best:
                best = c1
            if c2 < best:
                best = c2
    return best


def canonical_form(code: BasketCode) -> BasketCode:
    return BasketCode(canonical_word(code.word))


# -- Type I moves ---------------------------------------------------------------


def find_type_one_moves(code: BasketCode) -> list[tuple[int, int]]:
    """Pairs ``(a, b)`` where band ``b`` has its feet on either side of one foot
    of band ``a`` and nothing else between them (cyclic factor ``b a b``).

    Removing both bands leaves the boundary link unchanged.  A move needs a
    third band, so two-band codes have none.
    """
    w = code.word
    m = len(w)
    moves = set()
    if m < 6:
        return []
    for i in range(m):
        b = w[i]
        if w[(i + 2) % m] == b:
            a = w[(i + 1) % m]
            if a != b:
                moves.add((a, b))
    return sorted(moves)


def has_type_one_move(code: BasketCode) -> bool:
    return _has_short_band(partner_positions(code.word))


@lru_cache(maxsize=1 << 15)
def _has_short_band(partner: tuple[int, ...]) -> bool:
    m = len(partner)
    if m < 6:
        return False
    return any(partner[i] == (i + 2) % m for i in range(m))


def delete_labels(word: Sequence[int], labels) -> tuple[int, ...]:
    """Remove ``labels`` from a word and compact the rest to 1..k keeping order."""
    drop = set(labels)
    keep = sorted({x for x in word} - drop)
    rank = {x: i + 1 for i, x in enumerate(keep)}
    return tuple(rank[x] for x in word if x not in drop)


def apply_type_one(code: BasketCode, pair: tuple[int, int]) -> BasketCode:
    pair = tuple(pair)
    if pair not in find_type_one_moves(code):
        raise CodeError(f"no Type I move on {pair} in {code}")
    return BasketCode(delete_labels(code.word, pair))


def reduce_type_one(code: BasketCode) -> BasketCode:
    while True:
        moves = find_type_one_moves(code)
        if not moves:
            return code
        code = apply_type_one(code, moves[0])


# -- Seifert matrix -------------------------------------------------------------


def seifert_matrix(code: BasketCode) -> list[list[int]]:
    """Seifert form on the band loops.

    Loop ``k`` runs over band ``k`` from its left foot to its right foot and
    back through the disk.  For interleaved bands ``i < j`` (``j`` in front)
    only ``V[j][i]`` is nonzero: ``-1`` when the left foot of ``i`` comes
    first, ``+1`` otherwise.
    """
    n = code.n
    V = [[0] * n for _ in range(n)]
    for i, j in interleaved_pairs(code):
        pi = code.feet(i)[0]
        pj = code.feet(j)[0]
        V[j - 1][i - 1] = -1 if pi < pj else 1
    return V
