"""Exact knot invariants and the mirror-canonical fingerprint.

The Kauffman bracket is contracted crossing by crossing in sweep order; the
state is a non-crossing pairing of the open edges, and every state carries a
polynomial in ``A`` packed into one Python integer (``2**bits`` per
coefficient), so the inner loop is integer shifts and additions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .code import BasketCode, as_code, component_count, seifert_matrix, surface_stats
from .diagram import ArcDiagram, build_arc_diagram, faces
from .poly import ONE, LaurentPoly

MAX_BRACKET_CROSSINGS = 64

# d = -A^2 - A^-2, the value of a closed loop
LOOP = LaurentPoly({2: -1, -2: -1})


class BudgetExceeded(RuntimeError):
    pass


class NotAKnot(ValueError):
    pass


# -- Kauffman bracket and Jones ------------------------------------------------------


def _contraction_order(diagram: ArcDiagram) -> list[int]:
    if diagram.x_order is not None:
        return list(diagram.x_order)
    xs = diagram.crossings
    by_edge: dict[int, list[int]] = {}
    for i, c in enumerate(xs):
        for e in c.pd:
            by_edge.setdefault(e, []).append(i)
    order, done, open_edges = [], set(), {}
    while len(order) < len(xs):
        best, score = None, None
        cands = {j for e in open_edges for j in by_edge[e] if j not in done} or \
            {min(set(range(len(xs))) - done)}
        for j in sorted(cands):
            s = sum(1 for e in xs[j].pd if e in open_edges)
            if score is None or s > score:
                best, score = j, s
        order.append(best)
        done.add(best)
        for e in xs[best].pd:
            open_edges[e] = open_edges.get(e, 0) + 1
            if open_edges[e] == 2:
                del open_edges[e]
    return order


def kauffman_bracket(diagram: ArcDiagram, max_crossings: int = MAX_BRACKET_CROSSINGS) -> LaurentPoly:
    """Bracket polynomial in ``A`` normalized so that a crossingless circle is 1."""
    c = diagram.crossing_count
    if c > max_crossings:
        raise BudgetExceeded(f"{c} crossings exceed the budget of {max_crossings}")
    if c == 0:
        return LOOP ** (diagram.free_loops - 1) if diagram.free_loops else ONE
    bits = 2 * c + 8
    offset = 3 * c + 4
    states: dict[tuple, int] = {(): 1 << (bits * offset)}
    for ci in _contraction_order(diagram):
        a, b, cc, d = diagram.crossings[ci].pd
        new: dict[tuple, int] = {}
        for key, val in states.items():
            for (p1, p2, p3, p4), up in (((a, b, cc, d), True), ((a, d, b, cc), False)):
                m = {}
                for x, y in key:
                    m[x] = y
                    m[y] = x
                loops = _join(m, p1, p2) + _join(m, p3, p4)
                v = val << bits if up else val >> bits
                for _ in range(loops):
                    v = -(v << 2 * bits) - (v >> 2 * bits)
                k2 = tuple(sorted((x, y) for x, y in m.items() if x < y))
                new[k2] = new.get(k2, 0) + v
        states = {k: v for k, v in new.items() if v}
    total = states.get((), 0)
    poly = _unpack(total, bits, offset)
    poly = poly.exact_div(LOOP)
    if diagram.free_loops:
        poly = poly * LOOP ** diagram.free_loops
    return poly


def _join(m: dict, x: int, y: int) -> int:
    if x == y:
        return 1
    px = m.pop(x, None)
    py = m.pop(y, None)
    if px is None and py is None:
        m[x] = y
        m[y] = x
    elif px is None:
        m[py] = x
        m[x] = py
    elif py is None:
        m[px] = y
        m[y] = px
    elif px == y:
        return 1
    else:
        m[px] = py
        m[py] = px
    return 0


def _unpack(v: int, bits: int, offset: int) -> LaurentPoly:
    base = 1 << bits
    half = base >> 1
    mask = base - 1
    terms = {}
    e = -offset
    while v:
        r = v & mask
        if r >= half:
            r -= base
        if r:
            terms[e] = r
        v = (v - r) >> bits
        e += 1
    return LaurentPoly(terms)


def jones(diagram: ArcDiagram) -> LaurentPoly:
    """Jones polynomial in ``q = t^(1/2)``: ``(-A^3)^(-w) <D>`` with ``A = q^(-1/2)``."""
    br = kauffman_bracket(diagram)
    w = diagram.writhe()
    f = br * LaurentPoly({-3 * w: (-1) ** (w % 2)})
    # A^k -> q^(-k/2)
    if any(e % 2 for e, _ in f.terms):
        raise ValueError("bracket has odd powers of A")
    return LaurentPoly((-e // 2, c) for e, c in f.terms)


def jones_in_t(jq: LaurentPoly) -> LaurentPoly:
    """Rewrite a knot's Jones polynomial from ``q`` to ``t = q^2``."""
    if any(e % 2 for e, _ in jq.terms):
        raise ValueError("Jones polynomial has half-integer powers of t")
    return LaurentPoly((e // 2, c) for e, c in jq.terms)


def mirror_canonical(p: LaurentPoly) -> LaurentPoly:
    """The smaller of ``p(x)`` and ``p(1/x)`` by ascending (exponent, coefficient) terms."""
    m = p.scale_exponents(-1)
    return min(p, m, key=lambda x: x.sort_key())


# -- exact linear algebra ----------------------------------------------------------


def int_det(M: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k]:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def _interpolate(points: list[tuple[int, int]]) -> LaurentPoly:
    """Integer polynomial through the given points (Newton form, exact)."""
    xs = [Fraction(x) for x, _ in points]
    coef = [Fraction(y) for _, y in points]
    n = len(points)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        new = [Fraction(0)] * n
        for k in range(n - 1):
            new[k + 1] += poly[k]
        for k in range(n):
            new[k] -= xs[i] * poly[k]
        new[0] += coef[i]
        poly = new
    if any(c.denominator != 1 for c in poly):
        raise ArithmeticError("interpolated polynomial is not integral")
    return LaurentPoly.from_coefficients(int(c) for c in poly)


def poly_matrix_det(build, degree_bound: int) -> LaurentPoly:
    """Determinant of a matrix polynomial in ``t`` of degree at most ``degree_bound``.

    ``build(t)`` returns the integer matrix at an integer point.
    """
    pts = [(t, int_det(build(t))) for t in range(2, degree_bound + 3)]
    return _interpolate(pts)


def normalize_alexander(p: LaurentPoly) -> LaurentPoly:
    """Symmetric representative with positive value at ``t = 1``."""
    if p.is_zero():
        return p
    span = p.span()
    if span % 2:
        raise ValueError(f"{p} has odd span; not a knot Alexander polynomial")
    q = p.shift(-p.min_exp - span // 2)
    if q(1) < 0:
        q = -q
    return q


# -- Seifert-matrix invariants ------------------------------------------------------------


def alexander(V: Sequence[Sequence[int]]) -> LaurentPoly:
    """``det(V - t V^T)`` normalized to the symmetric representative."""
    n = len(V)
    if n == 0:
        return ONE

    def at(t):
        return [[V[i][j] - t * V[j][i] for j in range(n)] for i in range(n)]

    raw = poly_matrix_det(at, n)
    if raw.is_zero():
        return raw
    # knots have even span; links may not, keep those as is
    span = raw.span()
    if span % 2:
        q = raw.shift(-raw.min_exp)
        return q if q.coefficient(0) > 0 else -q
    return normalize_alexander(raw)


def determinant_invariant(alex: LaurentPoly) -> int:
    return abs(alex(-1))


def smith_invariants(M: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors (absolute, nonzero entries of the Smith form, 0 for free rank)
    of an integer matrix.  Rows are relations, so the group is Z^cols / rowspace."""
    A = [list(r) for r in M]
    rows = len(A)
    cols = len(A[0]) if A else 0
    out = []
    r0 = 0
    for c0 in range(cols):
        if r0 >= rows:
            break
        while True:
            piv = min(((abs(A[i][j]), i, j) for i in range(r0, rows) for j in range(c0, cols) if A[i][j]),
                      default=None)
            if piv is None:
                return _finish_smith(out, cols)
            _, pi, pj = piv
            A[r0], A[pi] = A[pi], A[r0]
            for row in A:
                row[c0], row[pj] = row[pj], row[c0]
            p = A[r0][c0]
            done = True
            for i in range(r0 + 1, rows):
                q = A[i][c0] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[r0])]
                if A[i][c0]:
                    done = False
            for j in range(c0 + 1, cols):
                q = A[r0][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[c0]
                if A[r0][j]:
                    done = False
            if not done:
                continue
            bad = next(((i, j) for i in range(r0 + 1, rows) for j in range(c0 + 1, cols) if A[i][j] % p), None)
            if bad is None:
                break
            A[r0] = [x + y for x, y in zip(A[r0], A[bad[0]])]
        out.append(abs(A[r0][c0]))
        r0 += 1
    return _finish_smith(out, cols)


def _finish_smith(diag: list[int], cols: int) -> list[int]:
    return diag + [0] * (cols - len(diag))


def primary_parts(factors) -> tuple[int, ...]:
    """Prime-power decomposition of a finite abelian group given by invariant factors.

    Free summands (factor 0) are kept as 0 entries so they are not lost.
    """
    out = []
    for f in factors:
        if f == 0:
            out.append(0)
            continue
        p = 2
        while f > 1:
            if p * p > f:
                out.append(f)
                break
            if f % p == 0:
                q = 1
                while f % p == 0:
                    f //= p
                    q *= p
                out.append(q)
            p += 1
    return tuple(sorted(out))


def double_cover_homology(V: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """First homology of the double branched cover, presented by ``V + V^T``."""
    n = len(V)
    return primary_parts(smith_invariants([[V[i][j] + V[j][i] for j in range(n)] for i in range(n)]))


def signature(V: Sequence[Sequence[int]]) -> int:
    n = len(V)
    S = [[Fraction(V[i][j] + V[j][i]) for j in range(n)] for i in range(n)]
    return symmetric_signature(S)


def symmetric_signature(S: list[list[Fraction]]) -> int:
    """Signature of a symmetric rational matrix by congruence diagonalization."""
    S = [list(map(Fraction, r)) for r in S]
    n = len(S)
    sig = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if S[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and S[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace basis vector i by e_i + e_j
            for k in range(n):
                S[i][k] += S[j][k]
            for k in range(n):
                S[k][i] += S[k][j]
            piv = i
        p = S[piv][piv]
        sig += 1 if p > 0 else -1
        active.remove(piv)
        for i in active:
            f = S[i][piv] / p
            if f:
                for k in active:
                    S[i][k] -= f * S[piv][k]
        for i in active:
            S[i][piv] = S[piv][i] = Fraction(0)
    return sig


# -- diagram invariants (independent of the Seifert matrix) ---------------------------------


def _over_arcs(diagram: ArcDiagram) -> dict[int, int]:
    """Map every edge to its over-arc (maximal run of edges through over-crossings)."""
    parent: dict[int, int] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in diagram.crossings:
        for e in c.pd:
            find(e)
        ra, rb = find(c.pd[1]), find(c.pd[3])
        if ra != rb:
            parent[ra] = rb
    roots = sorted({find(e) for e in parent})
    idx = {r: i for i, r in enumerate(roots)}
    return {e: idx[find(e)] for e in parent}


def diagram_alexander(diagram: ArcDiagram) -> LaurentPoly:
    """Alexander polynomial of a knot diagram from Fox derivatives of the
    Wirtinger presentation."""
    if diagram.component_count != 1:
        raise NotAKnot("Alexander polynomial of a diagram needs a knot")
    c = diagram.crossing_count
    if c == 0:
        return ONE
    arc = _over_arcs(diagram)
    rows = []
    for x in diagram.crossings:
        a, b, cc, d = x.pd
        rows.append((arc[b], arc[a], arc[cc], x.sign))

    def at(t):
        M = [[0] * c for _ in range(c)]
        for r, (k, i, j, s) in enumerate(rows):
            M[r][k] += 1 - t
            if s > 0:
                M[r][i] += t
                M[r][j] -= 1
            else:
                M[r][i] -= 1
                M[r][j] += t
        return [row[1:] for row in M[1:]]

    raw = poly_matrix_det(at, c)
    return normalize_alexander(raw)


def diagram_double_cover_homology(diagram: ArcDiagram) -> tuple[int, ...]:
    """Homology of the double branched cover from the Wirtinger matrix at t = -1."""
    if diagram.component_count != 1:
        raise NotAKnot("double cover homology of a diagram needs a knot")
    c = diagram.crossing_count
    if c == 0:
        return ()
    arc = _over_arcs(diagram)
    M = [[0] * c for _ in range(c)]
    for r, x in enumerate(diagram.crossings):
        a, b, cc, d = x.pd
        # t = -1 makes the two signs agree up to an overall sign of the row
        M[r][arc[b]] += 2
        M[r][arc[a]] -= 1
        M[r][arc[cc]] -= 1
    return primary_parts(smith_invariants([row[1:] for row in M[1:]]))


def checkerboard(diagram: ArcDiagram):
    """Faces with a 2-colouring; returns (faces, colour list)."""
    fs = faces(diagram)
    corner_face = {}
    for fi, f in enumerate(fs):
        for corner in f:
            corner_face[corner] = fi
    colour = {0: 0}
    stack = [0]
    adj: dict[int, set] = {}
    for ci in range(diagram.crossing_count):
        for k in range(4):
            f1 = corner_face[(ci, k)]
            f2 = corner_face[(ci, (k + 1) % 4)]
            adj.setdefault(f1, set()).add(f2)
            adj.setdefault(f2, set()).add(f1)
    while stack:
        f = stack.pop()
        for g in adj.get(f, ()):
            if g not in colour:
                colour[g] = 1 - colour[f]
                stack.append(g)
            elif colour[g] == colour[f]:
                raise ValueError("diagram faces are not 2-colourable")
    return fs, corner_face, colour


def diagram_signature(diagram: ArcDiagram) -> int:
    """Knot signature from a diagram by the Gordon-Litherland formula.

    The spanning surface is the union of the colour-1 (black) faces and the
    Goeritz matrix is indexed by the colour-0 (white) faces.  At a crossing the
    incidence number is +1 when the white corners are the ones swept by the
    under-strand turning counterclockwise (corners 0 and 2), -1 otherwise.
    """
    c = diagram.crossing_count
    if c == 0:
        return 0
    fs, corner_face, colour = checkerboard(diagram)
    white = sorted(f for f in range(len(fs)) if colour[f] == 0)
    widx = {f: i for i, f in enumerate(white)}
    G = [[Fraction(0)] * len(white) for _ in white]
    mu = 0
    for ci, x in enumerate(diagram.crossings):
        f0 = corner_face[(ci, 0)]
        if colour[f0] == 0:
            wa, wb = f0, corner_face[(ci, 2)]
            eta = 1
        else:
            wa, wb = corner_face[(ci, 1)], corner_face[(ci, 3)]
            eta = -1
        if wa != wb:
            i, j = widx[wa], widx[wb]
            G[i][j] -= eta
            G[j][i] -= eta
            G[i][i] += eta
            G[j][j] += eta
        if _is_type_two(x, colour[f0] == 0):
            mu += eta
    reduced = [row[1:] for row in G[1:]]
    return symmetric_signature(reduced) - mu


def _is_type_two(x, white_at_corner0: bool) -> bool:
    # Corners: 0 between pd[0] (under in) and pd[1], and so on counterclockwise.
    # The oriented smoothing merges the two corners that lie between two
    # incoming or two outgoing ends.  A crossing is of type II for the black
    # surface when that smoothing merges the black corners, i.e. the white
    # corners sit between an incoming and an outgoing end.
    if x.sign > 0:
        between_in_out = {0, 2}  # (u_in, b=out), (u_out, d=in)
    else:
        between_in_out = {1, 3}  # (b=in, u_out), (d=out, u_in)
    white = {0, 2} if white_at_corner0 else {1, 3}
    return white == between_in_out


# -- fingerprint ------------------------------------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    """Mirror-invariant identification key.

    ``double_cover`` is the prime-power decomposition of the homology of the
    double branched cover; it separates e.g. 12n_462 from 4_1#4_1, which agree
    on the other four entries.
    """

    jones: LaurentPoly  # mirror-canonical, in q = t^(1/2)
    alexander: LaurentPoly  # symmetric, value 1 at t = 1
    determinant: int
    abs_signature: int
    double_cover: tuple = ()
    framed_signature: int = 0

    def key(self) -> tuple:
        return (self.jones.terms, self.alexander.terms, self.determinant, self.abs_signature,
                self.double_cover, self.framed_signature)

    def to_json(self) -> dict:
        return {
            "jones": self.jones.to_json(),
            "alexander": self.alexander.to_json(),
            "determinant": self.determinant,
            "abs_signature": self.abs_signature,
            "double_cover": list(self.double_cover),
            "framed_signature": self.framed_signature,
        }

    @classmethod
    def from_json(cls, d) -> "Fingerprint":
        return cls(
            LaurentPoly.from_json(d["jones"]),
            LaurentPoly.from_json(d["alexander"]),
            d["determinant"],
            d["abs_signature"],
            tuple(d.get("double_cover", ())),
            d.get("framed_signature", d["abs_signature"]),
        )

    def describe(self) -> str:
        cover = "+".join(f"Z{k}" if k else "Z" for k in self.double_cover) or "0"
        return (
            f"jones(t)={jones_in_t(self.jones).to_text('t')}  alexander={self.alexander.to_text('t')}  "
            f"det={self.determinant}  |sigma|={self.abs_signature}  H1(cover)={cover}"
        )


@dataclass(frozen=True)
class RawInvariants:
    """Chirality-bearing invariants of one knot; mirror image flips Jones and signature."""

    jones: LaurentPoly
    alexander: LaurentPoly
    signature: int
    double_cover: tuple = ()

    def fingerprint(self) -> Fingerprint:
        canon = mirror_canonical(self.jones)
        if canon == canon.scale_exponents(-1):
            framed = abs(self.signature)
        else:
            framed = self.signature if canon == self.jones else -self.signature
        return Fingerprint(
            canon,
            self.alexander,
            determinant_invariant(self.alexander),
            abs(self.signature),
            self.double_cover,
            framed,
        )

    def mirror(self) -> "RawInvariants":
        return RawInvariants(self.jones.scale_exponents(-1), self.alexander, -self.signature,
                             self.double_cover)

    def connect(self, other: "RawInvariants") -> "RawInvariants":
        return RawInvariants(self.jones * other.jones, self.alexander * other.alexander,
                             self.signature + other.signature,
                             tuple(sorted(self.double_cover + other.double_cover)))


def code_invariants(code) -> RawInvariants:
    code = as_code(code)
    if component_count(code) != 1:
        raise NotAKnot(f"{code} bounds a link with {component_count(code)} components")
    V = seifert_matrix(code)
    return RawInvariants(jones(build_arc_diagram(code)), alexander(V), signature(V),
                         double_cover_homology(V))


def diagram_invariants(diagram: ArcDiagram) -> RawInvariants:
    return RawInvariants(jones(diagram), diagram_alexander(diagram), diagram_signature(diagram),
                         diagram_double_cover_homology(diagram))


def fingerprint(code) -> Fingerprint:
    return code_invariants(code).fingerprint()


UNKNOT_FINGERPRINT = Fingerprint(ONE, ONE, 1, 0)
