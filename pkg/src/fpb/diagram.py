"""Boundary diagrams of basket surfaces, Gauss codes and DT codes.

Diagrams are stored as planar diagram codes: every crossing lists its four
edges counterclockwise starting from the incoming under-strand.  Crossing
signs follow the right-hand rule.

The boundary of a basket surface is drawn with the feet on a horizontal line
and every band as a pair of concentric semicircles above it; the band with
the larger label is in front wherever two bands cross.  Crossing positions
are computed exactly with rationals.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .code import BasketCode, boundary_components, chords_cross

# thin bands; with this width the default walk (start 0, forward) reproduces
# the published 24-entry trefoil DT string
FOOT_HALF_WIDTH = Fraction(1, 10)


def _half_width(pos: int) -> Fraction:
    # distinct per foot so that no three arcs meet in a point
    return FOOT_HALF_WIDTH + Fraction(pos * pos + 1, 8191)


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    id: int
    pd: tuple[int, int, int, int]
    sign: int
    over: object = None
    under: object = None

    @property
    def over_in(self) -> int:
        return self.pd[3] if self.sign > 0 else self.pd[1]

    @property
    def over_out(self) -> int:
        return self.pd[1] if self.sign > 0 else self.pd[3]


@dataclass(frozen=True)
class ArcDiagram:
    """Oriented link diagram.

    ``components`` lists, for each component with crossings, its visits in
    order as ``(crossing id, is_over)`` pairs; ``free_loops`` counts
    components without crossings.
    """

    crossings: tuple[Crossing, ...]
    components: tuple[tuple[tuple[int, bool], ...], ...]
    free_loops: int = 0
    x_order: tuple[int, ...] | None = field(default=None, compare=False)

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @property
    def component_count(self) -> int:
        return len(self.components) + self.free_loops

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def pd_code(self) -> list[tuple[int, int, int, int]]:
        return [c.pd for c in self.crossings]


@dataclass(frozen=True)
class GaussCode:
    """Visits ``(crossing id, is_over, crossing sign)`` along a knot."""

    visits: tuple[tuple[int, bool, int], ...]

    def __len__(self):
        return len(self.visits)

    def crossing_ids(self) -> list[int]:
        seen = []
        for cid, _, _ in self.visits:
            if cid not in seen:
                seen.append(cid)
        return seen

    def text(self) -> str:
        return ",".join(f"{'O' if o else 'U'}{c}{'+' if s > 0 else '-'}" for c, o, s in self.visits)

    @classmethod
    def parse(cls, text: str) -> "GaussCode":
        visits = []
        for tok in text.replace(" ", "").split(","):
            if not tok:
                continue
            if tok[0] not in "OU" or tok[-1] not in "+-":
                raise DiagramError(f"bad Gauss token {tok!r}")
            visits.append((int(tok[1:-1]), tok[0] == "O", 1 if tok[-1] == "+" else -1))
        g = cls(tuple(visits))
        validate_gauss(g)
        return g


@dataclass(frozen=True)
class DTCode:
    entries: tuple[int, ...]

    def __len__(self):
        return len(self.entries)

    def text(self) -> str:
        return " ".join(str(e) for e in self.entries)

    @classmethod
    def parse(cls, text: str) -> "DTCode":
        s = text.replace(",", " ").replace("[", " ").replace("]", " ")
        s = s.replace("(", " ").replace(")", " ")
        d = cls(tuple(int(t) for t in s.split()))
        validate_dt(d)
        return d


# -- basket boundary ------------------------------------------------------------


def _arc(code: BasketCode, label: int, kind: int) -> tuple[Fraction, Fraction]:
    """Left and right end of the outer (kind 0) or inner (kind 1) edge."""
    p, q = code.feet(label)
    hp, hq = _half_width(p), _half_width(q)
    return (p - hp, q + hq) if kind == 0 else (p + hp, q - hq)


def _meet_x(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]) -> Fraction:
    """x-coordinate of the crossing of two upper semicircles with given ends."""
    (l1, r1), (l2, r2) = a, b
    return (l2 * r2 - l1 * r1) / ((l2 + r2) - (l1 + r1))


def build_arc_diagram(code: BasketCode) -> ArcDiagram:
    n = code.n
    if n == 0:
        return ArcDiagram((), (), 1)
    arcs = {(k, s): _arc(code, k, s) for k in range(1, n + 1) for s in (0, 1)}
    # crossings along each arc, keyed by x
    on_arc: dict[tuple[int, int], list[tuple[Fraction, int]]] = {a: [] for a in arcs}
    cross_arcs = []  # crossing id -> (over arc, under arc, x)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if not chords_cross(*code.feet(i), *code.feet(j)):
                continue
            for si in (0, 1):
                for sj in (0, 1):
                    x = _meet_x(arcs[(i, si)], arcs[(j, sj)])
                    cid = len(cross_arcs)
                    cross_arcs.append(((j, sj), (i, si), x))
                    on_arc[(i, si)].append((x, cid))
                    on_arc[(j, sj)].append((x, cid))
    for a, lst in on_arc.items():
        lst.sort()
        xs = [x for x, _ in lst]
        if len(set(xs)) != len(xs):
            raise DiagramError(f"degenerate crossing positions on arc {a}")

    word = code.word
    comps = []
    visits_of: dict[int, list] = {}
    free = 0
    edge = 0
    for comp in boundary_components(code):
        seq = []
        for k in range(0, len(comp), 2):
            (p, s), (q, _) = comp[k], comp[k + 1]
            label = word[p]
            if p < q:
                kind, direction = (0 if s == 0 else 1), 1
            else:
                kind, direction = (0 if s == 1 else 1), -1
            lst = on_arc[(label, kind)]
            for _, cid in (lst if direction > 0 else reversed(lst)):
                seq.append((cid, (label, kind), direction))
        if not seq:
            free += 1
            continue
        L = len(seq)
        for t, (cid, arc, direction) in enumerate(seq):
            e_in = edge + (t - 1) % L
            e_out = edge + t
            visits_of.setdefault(cid, []).append((arc, direction, e_in, e_out))
        comps.append(tuple((cid, cross_arcs[cid][0] == arc) for cid, arc, _ in seq))
        edge += L

    crossings = []
    for cid, (over_arc, under_arc, x) in enumerate(cross_arcs):
        vs = {v[0]: v for v in visits_of[cid]}
        _, d_o, o_in, o_out = vs[over_arc]
        _, d_u, u_in, u_out = vs[under_arc]
        c_o = sum(arcs[over_arc]) / 2
        c_u = sum(arcs[under_arc]) / 2
        sign = 1 if (c_u - c_o) * d_o * d_u > 0 else -1
        b, d = (o_out, o_in) if sign > 0 else (o_in, o_out)
        crossings.append(Crossing(cid, (u_in, b, u_out, d), sign, over_arc[0], under_arc[0]))
    order = tuple(sorted(range(len(cross_arcs)), key=lambda c: cross_arcs[c][2]))
    return ArcDiagram(tuple(crossings), tuple(comps), free, order)


# -- Gauss and DT codes -----------------------------------------------------------


def gauss_code(diagram: ArcDiagram, start: int = 0, reverse: bool = False) -> GaussCode:
    """Gauss code of a knot diagram read from visit ``start``.

    ``reverse`` walks the knot against its orientation (which keeps every
    crossing sign).
    """
    if diagram.component_count != 1:
        raise DiagramError(f"Gauss code needs a knot, diagram has {diagram.component_count} components")
    if not diagram.components:
        return GaussCode(())
    signs = {c.id: c.sign for c in diagram.crossings}
    vis = [(cid, over, signs[cid]) for cid, over in diagram.components[0]]
    k = start % len(vis)
    if reverse:
        vis = vis[k::-1] + vis[:k:-1]
    else:
        vis = vis[k:] + vis[:k]
    return GaussCode(tuple(vis))


def validate_gauss(gauss: GaussCode) -> None:
    seen: dict[int, list] = {}
    for cid, over, sign in gauss.visits:
        seen.setdefault(cid, []).append((over, sign))
    for cid, lst in seen.items():
        if len(lst) != 2 or lst[0][0] == lst[1][0] or lst[0][1] != lst[1][1]:
            raise DiagramError(f"crossing {cid} is not visited once over and once under with one sign")


def dt_from_gauss(gauss: GaussCode) -> DTCode:
    validate_gauss(gauss)
    labels: dict[int, list[tuple[int, bool]]] = {}
    for k, (cid, over, _) in enumerate(gauss.visits, start=1):
        labels.setdefault(cid, []).append((k, over))
    pairs = {}
    for cid, ((a, oa), (b, ob)) in labels.items():
        if (a + b) % 2 == 0:
            raise DiagramError(f"crossing {cid} has labels {a}, {b} of equal parity")
        (odd, _), (even, even_over) = ((a, oa), (b, ob)) if a % 2 else ((b, ob), (a, oa))
        pairs[odd] = -even if even_over else even
    return DTCode(tuple(pairs[k] for k in sorted(pairs)))


def dt_from_pairing(pairs: Iterable[tuple[int, int]], even_over: Iterable[int] = ()) -> DTCode:
    """DT code from explicit (odd, even) crossing labels.

    ``even_over`` lists the even labels at which the walk crosses over.
    """
    over = set(even_over)
    d = dict(pairs)
    return DTCode(tuple(-d[k] if d[k] in over else d[k] for k in sorted(d)))


def validate_dt(dt: DTCode) -> None:
    evens = sorted(abs(e) for e in dt.entries)
    if evens != list(range(2, 2 * len(evens) + 1, 2)):
        raise DiagramError(f"DT entries {dt.entries} are not a signed permutation of 2..{2 * len(evens)}")


def gauss_from_dt(dt: DTCode) -> list[tuple[int, bool]]:
    """Unsigned Gauss sequence ``(crossing, is_over)`` of a DT code.

    Crossing ``k`` is the one labelled by the odd number ``2k + 1``.
    """
    validate_dt(dt)
    c = len(dt)
    seq: list = [None] * (2 * c)
    for k, e in enumerate(dt.entries):
        even = abs(e)
        even_over = e < 0
        seq[2 * k] = (k, not even_over)
        seq[even - 1] = (k, even_over)
    return seq


# -- diagrams from crossing data ---------------------------------------------------


def diagram_from_gauss(gauss: GaussCode) -> ArcDiagram:
    """Planar diagram of a signed Gauss code (one component)."""
    validate_gauss(gauss)
    vis = gauss.visits
    L = len(vis)
    if L == 0:
        return ArcDiagram((), (), 1)
    ids = gauss.crossing_ids()
    renum = {c: k for k, c in enumerate(ids)}
    slots: dict[int, dict] = {}
    for t, (cid, over, sign) in enumerate(vis):
        slots.setdefault(cid, {})["over" if over else "under"] = ((t - 1) % L, t)
        slots[cid]["sign"] = sign
    crossings = []
    for cid in ids:
        s = slots[cid]
        u_in, u_out = s["under"]
        o_in, o_out = s["over"]
        b, d = (o_out, o_in) if s["sign"] > 0 else (o_in, o_out)
        crossings.append(Crossing(renum[cid], (u_in, b, u_out, d), s["sign"]))
    comp = tuple((renum[cid], over) for cid, over, _ in vis)
    return ArcDiagram(tuple(crossings), (comp,), 0)


def diagram_from_pd(pd: Sequence[Sequence[int]], signs: Sequence[int] | None = None) -> ArcDiagram:
    """Diagram from PD tuples; signs are inferred from consecutive edge labels
    along components when not given (KnotTheory-style labelling)."""
    pd = [tuple(x) for x in pd]
    if signs is None:
        nedges = 2 * len(pd)
        signs = [1 if (b - d) % nedges == 1 else -1 for a, b, c, d in pd]
    crossings = tuple(Crossing(k, x, s) for k, (x, s) in enumerate(zip(pd, signs)))
    return ArcDiagram(crossings, _trace_components(crossings), 0)


def _trace_components(crossings: Sequence[Crossing]) -> tuple:
    """Visit sequences of the components, following edge orientations."""
    head: dict[int, tuple[int, bool]] = {}  # edge -> (crossing, arriving as over)
    out_edge: dict[tuple[int, bool], int] = {}
    for c in crossings:
        a, b, cc, d = c.pd
        head[a] = (c.id, False)
        out_edge[(c.id, False)] = cc
        head[c.over_in] = (c.id, True)
        out_edge[(c.id, True)] = c.over_out
    comps = []
    used = set()
    for e0 in sorted(head):
        if e0 in used:
            continue
        seq = []
        e = e0
        while e not in used:
            used.add(e)
            v = head[e]
            seq.append(v)
            e = out_edge[v]
        # rotate so that the visit entered by the smallest edge comes first
        comps.append(tuple(seq))
    return tuple(comps)


def braid_diagram(strands: int, letters: Sequence[int]) -> ArcDiagram:
    """Closure of a braid; strands run upward, ``+i`` is a positive crossing
    of positions ``i`` and ``i+1``."""
    cur = list(range(strands))
    nxt = strands
    raw = []
    for g in letters:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise DiagramError(f"generator {g} out of range for {strands} strands")
        in_l, in_r = cur[i], cur[i + 1]
        out_l, out_r = nxt, nxt + 1
        nxt += 2
        if g > 0:
            raw.append(((in_r, out_r, out_l, in_l), 1))
        else:
            raw.append(((in_l, in_r, out_r, out_l), -1))
        cur[i], cur[i + 1] = out_l, out_r
    # close up: top edge of each position is the bottom edge
    alias = {cur[k]: k for k in range(strands)}
    used = {e for x, _ in raw for e in x}
    free = sum(1 for k in range(strands) if k not in used)
    ren = {}
    for x, _ in raw:
        for e in x:
            e = alias.get(e, e)
            if e not in ren:
                ren[e] = len(ren)
    crossings = tuple(
        Crossing(k, tuple(ren[alias.get(e, e)] for e in x), s) for k, (x, s) in enumerate(raw)
    )
    return ArcDiagram(crossings, _trace_components(crossings), free)


def diagram_from_dt(dt: DTCode) -> ArcDiagram:
    """Realize a DT code as a planar diagram.

    The crossing handedness is searched for so that the diagram embeds in
    the sphere (face count ``c + 2``).  For a prime diagram the embedding is
    unique up to reflection; the first one found is used, which may be the
    mirror image.
    """
    seq = gauss_from_dt(dt)
    c = len(dt)
    if c == 0:
        return ArcDiagram((), (), 1)
    L = 2 * c
    where: dict[int, dict[bool, int]] = {}
    for t, (k, over) in enumerate(seq):
        where.setdefault(k, {})[over] = t
    for bits in _handedness_candidates(seq, c):
        visits = []
        for t, (k, over) in enumerate(seq):
            visits.append((k, over, bits[k]))
        g = GaussCode(tuple(visits))
        diag = diagram_from_gauss(g)
        if len(faces(diag)) == c + 2:
            return diag
    raise DiagramError(f"DT code {dt.text()} is not realizable")


def _handedness_candidates(seq, c):
    """Sign assignments with crossing 0 fixed to +1, found by depth-first search.

    Crossings are assigned in order of first visit.  A partial assignment is
    abandoned as soon as the ribbon graph induced on the assigned crossings
    has positive genus; an induced subgraph of a planar diagram is planar.
    """
    L = len(seq)
    slots: dict[int, dict[bool, int]] = {}
    for t, (k, over) in enumerate(seq):
        slots.setdefault(k, {})[over] = t
    order = []
    for k, _ in seq:
        if k not in order:
            order.append(k)

    def pd_of(k, sign):
        u, o = slots[k][False], slots[k][True]
        u_in, u_out, o_in, o_out = (u - 1) % L, u, (o - 1) % L, o
        b, d = (o_out, o_in) if sign > 0 else (o_in, o_out)
        return (u_in, b, u_out, d)

    def genus(pds):
        occ: dict[int, list] = {}
        for k, pd in pds.items():
            for j, e in enumerate(pd):
                occ.setdefault(e, []).append((k, j))
        present = {e for e, ends in occ.items() if len(ends) == 2}
        darts = {(k, j) for k, pd in pds.items() for j, e in enumerate(pd) if e in present}
        faces = 0
        seen = set()
        for start in darts:
            if start in seen:
                continue
            faces += 1
            cur = start
            while cur not in seen:
                seen.add(cur)
                k, j = cur
                pd = pds[k]
                nj = (j + 1) % 4
                while pd[nj] not in present:
                    nj = (nj + 1) % 4
                a, b = occ[pd[nj]]
                cur = b if a == (k, nj) else a
        # components by union-find over present edges
        parent = {k: k for k in pds}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in present:
            (a, _), (b, _) = occ[e]
            parent[find(a)] = find(b)
        roots = {find(k) for k in pds}
        # a component without edges still has one face
        faces += len(roots - {find(occ[e][0][0]) for e in present})
        return (2 * len(roots) - len(pds) + len(present) - faces) // 2

    signs = {}

    def rec(i):
        if i == len(order):
            yield tuple(signs[k] for k in range(c))
            return
        k = order[i]
        for s in ((1,) if i == 0 else (1, -1)):
            signs[k] = s
            pds = {j: pd_of(j, signs[j]) for j in order[: i + 1]}
            if genus(pds) == 0:
                yield from rec(i + 1)
            del signs[k]

    yield from rec(0)


# -- faces ---------------------------------------------------------------------------


def faces(diagram: ArcDiagram) -> list[list[tuple[int, int]]]:
    """Faces as lists of corners ``(crossing index, k)``; corner k lies between
    ``pd[k]`` and ``pd[k+1]`` counterclockwise."""
    xs = diagram.crossings
    occ: dict[int, list[tuple[int, int]]] = {}
    for ci, c in enumerate(xs):
        for k, e in enumerate(c.pd):
            occ.setdefault(e, []).append((ci, k))

    def other_end(ci, k):
        e = xs[ci].pd[k]
        a, b = occ[e]
        return b if a == (ci, k) else a

    seen = set()
    out = []
    for ci in range(len(xs)):
        for k in range(4):
            if (ci, k) in seen:
                continue
            face = []
            cur = (ci, k)
            while cur not in seen:
                seen.add(cur)
                face.append(cur)
                x, j = cur
                y, m = other_end(x, (j + 1) % 4)
                cur = (y, m)
            out.append(face)
    return out


# -- Reidemeister I/II on Gauss codes ---------------------------------------------------


def simplify_r_moves(gauss: GaussCode) -> GaussCode:
    """Remove R1 kinks and R2 bigons until none remain.

    An R2 pair is two crossings met consecutively twice with the same strand
    over at both; pairs are removed lowest crossing ids first.
    """
    validate_gauss(gauss)
    vis = list(gauss.visits)
    while True:
        L = len(vis)
        if L == 0:
            break
        r1 = [vis[t][0] for t in range(L) if vis[t][0] == vis[(t + 1) % L][0]]
        if r1:
            cid = min(r1)
            vis = [v for v in vis if v[0] != cid]
            continue
        pairs = {}
        for t in range(L):
            a, b = vis[t], vis[(t + 1) % L]
            if a[1] == b[1]:
                key = (min(a[0], b[0]), max(a[0], b[0]))
                pairs.setdefault(key, []).append(t)
        cands = sorted(k for k, ts in pairs.items() if len(ts) == 2 and _distinct_adjacencies(ts, L))
        cands = [k for k in cands if _opposite_signs(vis, k)]
        if not cands:
            break
        drop = set(cands[0])
        vis = [v for v in vis if v[0] not in drop]
    return GaussCode(tuple(vis))


def _distinct_adjacencies(ts, L):
    t1, t2 = ts
    return len({t1, (t1 + 1) % L, t2, (t2 + 1) % L}) == 4


def _opposite_signs(vis, key):
    s = {v[0]: v[2] for v in vis}
    return s[key[0]] == -s[key[1]]
