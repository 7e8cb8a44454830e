import json
import math
import logging
from collections import Counter

import pytest

from fpb.census import (
    CensusOptions,
    CensusReport,
    ResumeError,
    chunk_prefixes,
    classify_code,
    emit_report,
    format_report,
    fpbk_lookup,
    matchings_with_prefix,
    name_key,
    read_resume,
    run_census,
)
from fpb.code import BasketCode, code_total, component_count, has_type_one_move, matching_template
from fpb.invariants import NotAKnot
from oracles import all_words

SMALL = {
    0: (1, 0, 1, 0, {"unknot": 1}),
    1: (1, 1, 0, 0, {}),
    2: (6, 4, 2, 0, {"unknot": 2}),
    3: (90, 90, 0, 0, {}),
    4: (2520, 2016, 504, 480, {"3_1": 8, "4_1": 16}),
    5: (113400, 113400, 0, 0, {}),
}


@pytest.mark.parametrize("n", sorted(SMALL))
def test_small_census(table, n):
    total, links, knots, reducible, classes = SMALL[n]
    r = run_census(n, table)
    assert (r.total, r.link_codes, r.knot_codes, r.type_one_reducible) == (total, links, knots, reducible)
    assert r.surviving == knots - reducible
    assert r.class_counts == classes
    assert all(r.identities().values())


@pytest.mark.parametrize("n", range(5))
def test_small_census_matches_brute_force(table, n):
    # independent pass over every word, classifying each by its own fingerprint
    counts, classes = Counter(), Counter()
    for w in all_words(n):
        c = BasketCode(w)
        if component_count(c) != 1:
            counts["links"] += 1
        elif has_type_one_move(c):
            counts["reducible"] += 1
        else:
            classes[classify_code(c, table)] += 1
    r = run_census(n, table)
    assert r.link_codes == counts["links"]
    assert r.type_one_reducible == counts["reducible"]
    assert r.class_counts == dict(classes)


def test_chunks_partition_matchings():
    for n in range(1, 6):
        seen = [m for p in chunk_prefixes(n) for m in matchings_with_prefix(2 * n, p)]
        assert len(seen) == len(set(seen))
        assert len(seen) * math.factorial(n) == code_total(n)
        for m in seen:
            assert all(m[m[i]] == i != m[i] for i in range(2 * n))
        # labelling in order of first occurrence gives the smallest word of each matching
        assert sorted(matching_template(m) for m in seen)[0] == tuple(
            k for k in range(1, n + 1) for _ in (0, 1))


@pytest.mark.parametrize("n", range(5))
def test_thread_count_independence(table, n):
    outs = [format_report(run_census(n, table, CensusOptions(threads=t)), "json") for t in (1, 4, 8)]
    assert outs[0] == outs[1] == outs[2]


def test_count_only_needs_no_table():
    r = run_census(4, None, CensusOptions(classify=False))
    assert (r.total, r.knot_codes, r.surviving) == (2520, 504, 24)
    assert r.class_counts == {}
    with pytest.raises(ValueError):
        run_census(2, None)


def test_recursive_type_one_flag(table):
    r = run_census(4, table, CensusOptions(recursive_type_one=True))
    assert r.class_counts == {"3_1": 8, "4_1": 16}
    assert sum(r.reduced_class_counts.values()) == r.type_one_reducible


def test_resume_equals_full_run(table, tmp_path):
    path = tmp_path / "progress.jsonl"
    full = run_census(5, table)
    partial = run_census(5, table, CensusOptions(resume_path=str(path)), stop_after=20)
    assert partial.chunks == 20 and partial.total < full.total
    assert len(path.read_text().splitlines()) == 20
    resumed = run_census(5, table, CensusOptions(resume_path=str(path)))
    assert resumed.to_json() == full.to_json()
    assert len(path.read_text().splitlines()) == len(chunk_prefixes(5))


def test_resume_discards_corrupt_trailing_line(table, tmp_path, caplog):
    path = tmp_path / "progress.jsonl"
    run_census(4, table, CensusOptions(resume_path=str(path)), stop_after=5)
    with open(path, "a") as fh:
        fh.write('{"n": 4, "chunk": 7, "cou')
    with caplog.at_level(logging.WARNING):
        r = run_census(4, table, CensusOptions(resume_path=str(path)))
    assert "corrupt trailing line" in caplog.text
    assert r.to_json() == run_census(4, table).to_json()
    for line in path.read_text().splitlines():
        json.loads(line)


def test_resume_rejects_corrupt_middle_line(table, tmp_path):
    path = tmp_path / "progress.jsonl"
    run_census(4, table, CensusOptions(resume_path=str(path)), stop_after=3)
    lines = path.read_text().splitlines()
    lines[1] = "garbage"
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(ResumeError, match="line 2"):
        read_resume(str(path), 4, table.source_hash)


def test_resume_rejects_other_census(table, tmp_path):
    path = tmp_path / "progress.jsonl"
    run_census(2, table, CensusOptions(resume_path=str(path)), stop_after=1)
    with pytest.raises(ResumeError):
        run_census(4, table, CensusOptions(resume_path=str(path)))


@pytest.mark.parametrize("code,name", [
    ("123124563456", "5_2"),
    ("135264135264", "14n_17954"),
    ("123124563564", "unknot"),
    ("123456451236", "5_2"),
])
def test_classify_examples(table, code, name):
    assert classify_code(code, table) == name


def test_classify_rejects_links(table):
    with pytest.raises(NotAKnot):
        classify_code("1122", table)


@pytest.mark.parametrize("name,value", [
    ("unknot", 0), ("3_1", 4), ("4_1", 4), ("5_1", 6), ("8_1", 6), ("9_44", 6), ("16n_246032", 6),
    ("7_2", 8), ("7_4", 8), ("9_45", 8), ("9_2", {8, 10}), ("9_35", {8, 10}), ("K9_5", {8, 10}),
])
def test_fpbk_lookup(name, value):
    assert fpbk_lookup(name) == value


@pytest.mark.parametrize("name", ["7_1", "3_1#3_1", "foo"])
def test_fpbk_unknown(name):
    with pytest.raises(KeyError):
        fpbk_lookup(name)


def test_name_order():
    names = ["unknown", "composite:3_1#4_1", "11n_38", "10_132", "4_1", "unknot", "3_1", "9_48"]
    assert sorted(names, key=name_key) == [
        "unknot", "3_1", "4_1", "9_48", "10_132", "11n_38", "composite:3_1#4_1", "unknown"]


def test_report_formats(table, tmp_path):
    r = run_census(0, table)
    assert format_report(r, "csv") == "name,count\nunknot,1\n"
    a = emit_report(r, "csv", tmp_path / "a.csv")
    b = emit_report(r, "csv", tmp_path / "b.csv")
    assert open(a, "rb").read() == open(b, "rb").read()
    r4 = run_census(4, table)
    assert format_report(r4, "csv").splitlines()[1:] == ["3_1,8", "4_1,16"]
    j = json.loads(format_report(r4, "json"))
    assert j["classCounts"] == {"3_1": 8, "4_1": 16} and j["surviving"] == 24
    with pytest.raises(ValueError):
        format_report(r4, "xml")


def test_report_identities_flag_inconsistency():
    r = CensusReport(2, total=6, link_codes=4, knot_codes=2, surviving=2, class_counts={"unknot": 1})
    assert not all(r.identities().values())
