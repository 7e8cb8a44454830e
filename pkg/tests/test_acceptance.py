"""Acceptance checks for the basket census, one marker per criterion.

A pass/fail line per criterion is printed in the terminal summary.  Counts
are exact; nothing here carries a tolerance.
"""
import random
import time

import pytest

from fpb.braid import bound_fhk, bound_kim, fhk_code, parse_braid
from fpb.census import CensusOptions, classify_code, format_report, run_census
from fpb.code import (
    BasketCode,
    SymmetryElement,
    apply_type_one,
    component_count,
    find_type_one_moves,
    group_elements,
    parse_code,
    seifert_matrix,
    symmetry_apply,
)
from fpb.diagram import build_arc_diagram, dt_from_gauss, dt_from_pairing, gauss_code
from fpb.invariants import alexander, fingerprint, kauffman_bracket
from conftest import random_knot_code, random_word
from oracles import all_words, naive_bracket

criterion = pytest.mark.criterion

TABLE_ONE = {
    "3_1": 20274, "4_1": 32442, "5_1": 12, "5_2": 4176, "6_1": 17982, "6_2": 1368, "6_3": 1908,
    "7_6": 432, "7_7": 1404, "8_1": 576, "8_3": 288, "8_12": 576, "8_20": 1440, "8_21": 144,
    "9_42": 720, "9_44": 1152, "9_46": 1296, "9_48": 24, "10_132": 144, "10_136": 144,
    "10_137": 288, "10_140": 144, "11n_38": 144, "12n_462": 144, "13n_973": 144,
    "14n_17954": 36, "15n_45460": 216, "16n_246032": 72,
}
UNKNOT, COMPOSITE = 105162, 2268


def _check(record_property, got, want, what):
    record_property("detail", f"{what}: got {got}, expected {want}")
    assert got == want


# -- 1: enumeration -----------------------------------------------------------------------------


@criterion(1)
def test_enumeration_counts(census6, record_property):
    got = (census6.total, census6.link_codes, census6.knot_codes)
    _check(record_property, got, (7484400, 6415200, 1069200), "total, linkCodes, knotCodes")


@criterion(1)
def test_counting_stage_runtime(record_property):
    t0 = time.perf_counter()
    r = run_census(6, None, CensusOptions(classify=False))
    dt = time.perf_counter() - t0
    record_property("detail", f"counting stages {dt:.2f}s (limit 120s)")
    assert r.knot_codes == 1069200 and dt <= 120


# -- 2: Type I filter -------------------------------------------------------------------------------


@criterion(2)
def test_type_one_counts(census6, record_property):
    got = (census6.type_one_reducible, census6.surviving)
    _check(record_property, got, (874080, 195120), "typeOneReducible, surviving")


@criterion(2)
def test_type_one_preserves_fingerprint(record_property):
    rng = random.Random(2)
    done = 0
    while done < 1000:
        c = random_knot_code(rng, 6)
        moves = find_type_one_moves(c)
        if not moves:
            continue
        d = apply_type_one(c, rng.choice(moves))
        assert fingerprint(d) == fingerprint(c), c
        done += 1
    record_property("detail", f"{done} reducible codes, fingerprint preserved on all")


# -- 3: classification ------------------------------------------------------------------------------


@criterion(3)
@pytest.mark.parametrize("name", list(TABLE_ONE))
def test_prime_row(census6, record_property, name):
    _check(record_property, census6.class_counts.get(name, 0), TABLE_ONE[name], name)


@criterion(3)
def test_unknot_row(census6, record_property):
    _check(record_property, census6.class_counts.get("unknot", 0), UNKNOT, "unknot")


@criterion(3)
def test_composite_total(census6, record_property):
    _check(record_property, census6.composite_total(), COMPOSITE, "composite total")


@criterion(3)
def test_no_unknown(census6, record_property):
    _check(record_property, census6.class_counts.get("unknown", 0), 0, "unknown")


@criterion(3)
def test_classification_runtime(census6, record_property):
    record_property("detail", f"full census {census6.elapsed:.1f}s (limit 3600s)")
    assert census6.elapsed <= 3600


# -- 4: identities ----------------------------------------------------------------------------------


@criterion(4)
def test_published_identities():
    assert 6415200 + 1069200 == 7484400
    assert 874080 + 195120 == 1069200
    assert UNKNOT + COMPOSITE + sum(TABLE_ONE.values()) == 195120
    assert sum(TABLE_ONE.values()) == 87690


@criterion(4)
def test_report_identities(census6, record_property):
    ids = census6.identities()
    r = census6
    primes = sum(v for k, v in r.class_counts.items()
                 if k not in ("unknot", "unknown") and not k.startswith("composite:"))
    record_property("detail", f"{r.class_counts['unknot']} + {r.composite_total()} + {primes} = {r.surviving}")
    assert all(ids.values()), ids
    assert r.class_counts["unknot"] + r.composite_total() + primes == r.surviving


# -- 5: small-n oracles -----------------------------------------------------------------------------


@criterion(5)
def test_small_n(table):
    r0, r1, r2, r3, r4 = (run_census(n, table) for n in range(5))
    assert r0.class_counts == {"unknot": 1}
    assert r1.total == 1 and component_count(BasketCode((1, 1))) == 2 and r1.link_codes == 1
    assert set(r2.class_counts) == {"unknot"}
    assert r3.knot_codes == 0
    assert set(r4.class_counts) <= {"unknot", "3_1", "4_1"}
    assert r4.class_counts["3_1"] > 0 and r4.class_counts["4_1"] > 0


# -- 6: FHK conversion -------------------------------------------------------------------------------


@criterion(6)
def test_fhk_five_two(table, record_property):
    code = fhk_code(parse_braid("2 -1 -2 -2 -2 -1", 3))
    assert code.word == (1, 2, 3, 4, 5, 6, 4, 5, 1, 2, 3, 6)
    name = classify_code(code, table)
    _check(record_property, name, "5_2", "classify(fhk code)")


# -- 7: DT pipeline ---------------------------------------------------------------------------------


@criterion(7)
def test_dt_pipeline(table):
    pairs = [(1, 12), (3, 8), (5, 10), (7, 14), (9, 4), (11, 2), (13, 6)]
    assert dt_from_pairing(pairs).text() == "12 8 10 14 4 2 6"
    code = parse_code("12341234")
    assert build_arc_diagram(code).crossing_count == 24
    assert classify_code(code, table) == "3_1"


@criterion(7)
def test_dt_trefoil_stretch(record_property):
    want = "-32 -14 -44 -22 -40 2 28 10 -48 18 36 6 -24 -42 -12 30 -16 -46 -20 34 4 26 8 38"
    got = dt_from_gauss(gauss_code(build_arc_diagram(parse_code("12341234")))).text()
    record_property("detail", "stretch goal: 24-entry trefoil DT " + ("reproduced" if got == want else "differs"))
    assert got == want


# -- 8: divisibility ---------------------------------------------------------------------------------


@criterion(8)
def test_divisibility(census6, record_property):
    counts = census6.class_counts
    not6 = sorted(k for k, v in counts.items() if v % 6)
    not12 = sorted(k for k, v in counts.items() if v % 12 and k not in ("3_1", "4_1", "6_1"))
    record_property("detail", f"{len(counts)} classes; not divisible by 6: {not6 or 'none'}; "
                              f"by 12 outside the exceptions: {not12 or 'none'}")
    assert not not6 and not not12


# -- 9: property suites ------------------------------------------------------------------------------


@criterion(9)
def test_bracket_against_state_sum(record_property):
    rng = random.Random(9)
    seen = 0
    while seen < 500:
        c = BasketCode(random_word(rng, rng.randint(1, 6)))
        d = build_arc_diagram(c)
        if d.crossing_count > 10:
            continue
        assert kauffman_bracket(d) == naive_bracket(d), c
        seen += 1
    record_property("detail", f"{seen} diagrams with at most 10 crossings")


@criterion(9)
def test_alexander_exhaustive_small(record_property):
    count = 0
    for n in range(5):
        for w in all_words(n):
            c = BasketCode(w)
            if component_count(c) != 1:
                continue
            a = alexander(seifert_matrix(c))
            assert a == a.scale_exponents(-1) and a(1) == 1, c
            count += 1
    record_property("detail", f"{count} knot codes with n <= 4")


@criterion(9)
def test_fingerprint_symmetry_invariance(record_property):
    rng = random.Random(99)
    gens = [SymmetryElement(start_rotation=1), SymmetryElement(reading_reversed=True),
            SymmetryElement(page_rotation=1), SymmetryElement(page_reversed=True)]
    group = group_elements(6)
    for _ in range(1000):
        c = random_knot_code(rng, 6)
        fp = fingerprint(c)
        for g in gens + rng.sample(group, 2):
            assert fingerprint(symmetry_apply(c, g)) == fp, (c, g)
    # whole orbits on a few codes
    for _ in range(5):
        c = random_knot_code(rng, 6)
        fp = fingerprint(c)
        assert all(fingerprint(symmetry_apply(c, g)) == fp for g in group)
    record_property("detail", "1000 codes under the generators and 2 random elements, 5 full orbits")


@criterion(9)
def test_thread_determinism(table):
    for n in range(5):
        outs = {format_report(run_census(n, table, CensusOptions(threads=t)), "json") for t in (1, 4, 8)}
        assert len(outs) == 1


# -- 10: bounds --------------------------------------------------------------------------------------


@criterion(10)
@pytest.mark.parametrize("fn,word,strands,value", [
    (bound_fhk, "1 1 1", 2, 6),
    (bound_fhk, "2 1 1 -2", 3, 4),
    (bound_fhk, "2 1", 3, 0),
    (bound_kim, "1 1 1", 2, 10),
    (bound_kim, "1 2", 3, 8),
    (bound_kim, "1 -1", 2, 1),
])
def test_bound_examples(fn, word, strands, value):
    assert fn(parse_braid(word, strands)) == value
