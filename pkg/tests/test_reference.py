import json

import pytest

from fpb.invariants import fingerprint, jones_in_t
from fpb.reference import (
    REQUIRED_NAMES,
    UNKNOWN,
    ReferenceError,
    TableCollision,
    build_from_sources,
    cache_dir,
    compute_entry,
    load_reference,
    load_table,
    parse_reference_lines,
    synth_connected_sums,
    table_from_json,
    table_to_json,
)

SMALL = """# name\tsource\tgenus
unknot\tdt:\tgenus:0
3_1\tdt:4 6 2\tgenus:1
4_1\tdt:4 6 8 2\tgenus:1
"""


def test_parse_sources():
    src = parse_reference_lines(SMALL.splitlines())
    assert [s.name for s in src] == ["unknot", "3_1", "4_1"]
    assert src[1].kind == "dt" and src[1].genus == 1 and src[1].line == 3
    braid = parse_reference_lines(["3_1\tbraid:1 1 1@2\tgenus:>=1"])[0]
    assert braid.kind == "braid" and not braid.genus_exact


@pytest.mark.parametrize("text,line", [
    ("3_1\tdt:4 6 2\n3_1\tdt:4 6 2", 2),
    ("\n\nx\tfoo:1 2", 3),
    ("x\tdt:4 4", 1),
    ("x\tdt:4 6 2\tgenus:one", 1),
    ("x\tbraid:1 1 1", 1),
    ("lonely", 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ReferenceError, match=f"line {line}"):
        parse_reference_lines(text.splitlines())


def test_small_table_is_distinct():
    t = build_from_sources(parse_reference_lines(SMALL.splitlines()), genus_cap=0)
    assert len({e.fingerprint.key() for e in t.entries}) == 3
    assert t.lookup(fingerprint("12341234")) == "3_1"
    assert t.lookup(fingerprint("123456123456")) == UNKNOWN


def test_alias_collision():
    src = parse_reference_lines(["3_1\tdt:4 6 2", "trefoil\tbraid:1 1 1@2"])
    with pytest.raises(TableCollision, match="3_1 and trefoil"):
        build_from_sources(src, genus_cap=0)


def test_connected_sums():
    tref = compute_entry(parse_reference_lines(["3_1\tdt:4 6 2\tgenus:1"])[0])
    sums = synth_connected_sums([tref], 2)
    assert {e.name for e in sums} == {"3_1#3_1", "3_1#3_1*"}
    granny = next(e for e in sums if e.name == "3_1#3_1")
    assert granny.raw.jones == tref.raw.jones * tref.raw.jones
    assert all(e.composite and e.genus == 2 for e in sums)
    assert synth_connected_sums([], 3) == []
    assert synth_connected_sums([tref], 1) == []


def test_amphichiral_summand_kept_once():
    fig8 = compute_entry(parse_reference_lines(["4_1\tdt:4 6 8 2\tgenus:1"])[0])
    assert [e.name for e in synth_connected_sums([fig8], 2)] == ["4_1#4_1"]


def test_missing_required_names():
    with pytest.raises(ReferenceError, match="missing"):
        build_from_sources(parse_reference_lines(SMALL.splitlines()), require=REQUIRED_NAMES)


def test_default_table(table):
    names = set(table.names())
    assert set(REQUIRED_NAMES) <= names
    keys = [e.fingerprint.key() for e in table.entries]
    assert len(keys) == len(set(keys))
    for e in table.entries:
        if not e.composite and e.genus is not None:
            assert e.fingerprint.alexander.span() <= 2 * e.genus


@pytest.mark.parametrize("code,name", [
    ("123456123456", "5_1"),
    ("123124653465", "6_1"),
    ("123124563456", "5_2"),
    ("135264135264", "14n_17954"),
    ("12341234", "3_1"),
    ("12431243", "4_1"),
])
def test_lookup(table, code, name):
    assert table.lookup(fingerprint(code)) == name


def test_jones_of_reference_trefoil(table):
    e = next(e for e in table.entries if e.name == "3_1")
    assert jones_in_t(e.fingerprint.jones).to_text() in ("t^-4-t^-3-t^-1", "-t^-4+t^-3+t^-1")


def test_json_roundtrip(table):
    t2 = table_from_json(json.loads(json.dumps(table_to_json(table))))
    assert t2.index == table.index
    assert t2.names() == table.names()


def test_cache_is_keyed_by_source(tmp_path, monkeypatch):
    monkeypatch.setenv("FPB_CACHE_DIR", str(tmp_path / "cache"))
    src = tmp_path / "ref.tsv"
    src.write_text(SMALL)
    t1 = load_table(src)
    files = list(cache_dir().glob("table-*.json"))
    assert len(files) == 1
    assert load_table(src).index == t1.index
    src.write_text(SMALL.replace("4_1\tdt:4 6 8 2\tgenus:1\n", ""))
    t3 = load_table(src)
    assert len(list(cache_dir().glob("table-*.json"))) == 2
    assert "4_1" not in t3
    # a damaged cache file is rebuilt from the sources
    files[0].write_text("{not json")
    src.write_text(SMALL)
    assert load_table(src).index == t1.index


def test_load_reference_file(tmp_path):
    p = tmp_path / "r.tsv"
    p.write_text(SMALL)
    assert len(load_reference(p)) == 3
