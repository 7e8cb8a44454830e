"""Exhaustive census of basket codes with a fixed number of bands.

Words are grouped by their chord matching: the component count and the
Type I predicate depend only on the matching, so the counting stages cost one
check per matching.  Surviving knot words are then labelled one by one and
classified through a memo keyed by canonical form.

Work is split into chunks by the first two chords of the matching.  Chunk
results are plain counters, merged by addition, so the report does not depend
on scheduling or worker count.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import logging
import os
import re
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .code import (
    BasketCode,
    _check_enum_range,
    _components_of_matching,
    _has_short_band,
    as_code,
    canonical_form,
    canonical_word,
    code_total,
    component_count,
    matching_template,
    reduce_type_one,
)
from .invariants import NotAKnot, fingerprint
from .reference import UNKNOWN, ReferenceTable

log = logging.getLogger(__name__)

CHUNK_DEPTH = 2


class ResumeError(ValueError):
    pass


@dataclass(frozen=True)
class CensusOptions:
    threads: int = 1
    chunk_depth: int = CHUNK_DEPTH
    resume_path: str | None = None
    classify: bool = True
    recursive_type_one: bool = False  # exploration only


@dataclass
class CensusReport:
    n: int
    total: int = 0
    link_codes: int = 0
    knot_codes: int = 0
    type_one_reducible: int = 0
    surviving: int = 0
    class_counts: dict = field(default_factory=dict)
    reduced_class_counts: dict = field(default_factory=dict)
    chunks: int = 0
    elapsed: float = 0.0
    table_hash: str = ""

    def identities(self) -> dict[str, bool]:
        out = {
            "total = linkCodes + knotCodes": self.total == self.link_codes + self.knot_codes,
            "knotCodes = typeOneReducible + surviving":
                self.knot_codes == self.type_one_reducible + self.surviving,
        }
        if self.class_counts:
            out["sum classCounts = surviving"] = sum(self.class_counts.values()) == self.surviving
        return out

    def composite_total(self) -> int:
        return sum(v for k, v in self.class_counts.items() if k.startswith("composite:"))

    def to_json(self, timing: bool = False) -> dict:
        d = {
            "n": self.n,
            "total": self.total,
            "linkCodes": self.link_codes,
            "knotCodes": self.knot_codes,
            "typeOneReducible": self.type_one_reducible,
            "surviving": self.surviving,
            "classCounts": {k: self.class_counts[k] for k in sorted(self.class_counts, key=name_key)},
            "chunks": self.chunks,
            "tableHash": self.table_hash,
        }
        if self.reduced_class_counts:
            d["reducedClassCounts"] = {
                k: self.reduced_class_counts[k] for k in sorted(self.reduced_class_counts, key=name_key)}
        if timing:
            d["elapsed"] = round(self.elapsed, 3)
        return d


# -- knot name ordering ---------------------------------------------------------------------

_PRIME = re.compile(r"^(\d+)([an]?)_?(\d+)(\*?)$")


def _prime_key(name: str):
    m = _PRIME.match(name)
    if not m:
        return (10**6, 0, 0, name)
    return (int(m.group(1)), 1 if m.group(2) == "n" else 0, int(m.group(3)), name)


def name_key(name: str):
    """Natural order: unknot, primes by crossing number, composites, unknown."""
    if name == "unknot":
        return (0,)
    if name == UNKNOWN:
        return (3,)
    if name.startswith("composite:"):
        parts = name[len("composite:"):].split("#")
        return (2, tuple(_prime_key(p.rstrip("*")) for p in parts), name)
    return (1, _prime_key(name))


# -- chunking --------------------------------------------------------------------------------


def chunk_prefixes(n: int, depth: int = CHUNK_DEPTH) -> list[tuple[tuple[int, int], ...]]:
    """Partial matchings fixing the chords at the ``depth`` smallest free points."""
    m = 2 * n
    depth = min(depth, n)
    out = []

    def rec(free, pairs):
        if len(pairs) == depth:
            out.append(tuple(pairs))
            return
        a = free[0]
        for k in range(1, len(free)):
            rec(free[1:k] + free[k + 1:], pairs + [(a, free[k])])

    rec(list(range(m)), [])
    return out


def matchings_with_prefix(m: int, prefix: Sequence[tuple[int, int]]) -> Iterator[tuple[int, ...]]:
    partner = [0] * m
    used = set()
    for a, b in prefix:
        partner[a], partner[b] = b, a
        used.update((a, b))

    def rec(free):
        if not free:
            yield tuple(partner)
            return
        a = free[0]
        for k in range(1, len(free)):
            b = free[k]
            partner[a], partner[b] = b, a
            yield from rec(free[1:k] + free[k + 1:])

    yield from rec([i for i in range(m) if i not in used])


# -- worker ----------------------------------------------------------------------------------

_TABLE: ReferenceTable | None = None
_COMPOSITES: frozenset = frozenset()
_MEMO: dict = {}


def _init_worker(table):
    global _TABLE, _COMPOSITES, _MEMO
    _TABLE = table
    _COMPOSITES = frozenset(e.name for e in table.entries if e.composite) if table else frozenset()
    _MEMO = {}


def _classify_word(word: tuple[int, ...]) -> str:
    cw = canonical_word(word)
    name = _MEMO.get(cw)
    if name is None:
        fp = fingerprint(BasketCode(cw))
        name = _TABLE.lookup(fp)
        if name in _COMPOSITES:
            name = "composite:" + name
        _MEMO[cw] = name
    return name


def run_chunk(n: int, prefix, classify: bool = True, recursive: bool = False) -> dict:
    """Partial counts for all words whose matching extends ``prefix``."""
    m = 2 * n
    perms = list(itertools.permutations(range(1, n + 1))) if n else [()]
    nf = len(perms)
    total = links = knots = reducible = 0
    classes: Counter = Counter()
    reduced: Counter = Counter()
    for partner in matchings_with_prefix(m, prefix):
        total += nf
        if _components_of_matching(partner) != 1:
            links += nf
            continue
        knots += nf
        short = _has_short_band(partner)
        if short:
            reducible += nf
        if not classify or (short and not recursive):
            continue
        tmpl = matching_template(partner)
        for perm in perms:
            w = tuple(perm[x - 1] for x in tmpl)
            if short:
                r = reduce_type_one(BasketCode(w)).word
                reduced[_classify_word(r)] += 1
            else:
                classes[_classify_word(w)] += 1
    return {
        "total": total,
        "links": links,
        "knots": knots,
        "reducible": reducible,
        "classes": dict(classes),
        "reduced": dict(reduced),
    }


def _run_chunk_args(args):
    n, cid, prefix, classify, recursive = args
    return cid, run_chunk(n, prefix, classify, recursive)


# -- resume ----------------------------------------------------------------------------------


def read_resume(path: str, n: int, table_hash: str) -> dict[int, dict]:
    """Completed chunks from a resume file; a corrupt last line is dropped."""
    done: dict[int, dict] = {}
    if not path or not os.path.exists(path):
        return done
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    for i, line in enumerate(lines):
        try:
            rec = json.loads(line)
            cid, counts = int(rec["chunk"]), rec["counts"]
            if rec["n"] != n or rec.get("table", "") != table_hash:
                raise ResumeError(f"{path}: resume file belongs to a different census")
            for k in ("total", "links", "knots", "reducible", "classes"):
                counts[k]
        except ResumeError:
            raise
        except (ValueError, KeyError, TypeError):
            if i == len(lines) - 1:
                log.warning("%s: discarding corrupt trailing line %d", path, i + 1)
                _truncate_last_line(path, len(lines) - 1)
                break
            raise ResumeError(f"{path}: corrupt line {i + 1}") from None
        done[cid] = counts
    return done


def _truncate_last_line(path, keep):
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().split("\n")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("".join(l + "\n" for l in lines[:keep]))


def _append_resume(fh, n, cid, counts, table_hash):
    fh.write(json.dumps({"n": n, "chunk": cid, "table": table_hash, "counts": counts},
                        sort_keys=True) + "\n")
    fh.flush()


# -- driver ----------------------------------------------------------------------------------


def merge_counts(report: CensusReport, counts: dict) -> None:
    report.total += counts["total"]
    report.link_codes += counts["links"]
    report.knot_codes += counts["knots"]
    report.type_one_reducible += counts["reducible"]
    for name, c in counts["classes"].items():
        report.class_counts[name] = report.class_counts.get(name, 0) + c
    for name, c in counts.get("reduced", {}).items():
        report.reduced_class_counts[name] = report.reduced_class_counts.get(name, 0) + c


def run_census(n: int, table: ReferenceTable | None, options: CensusOptions = CensusOptions(),
               stop_after: int | None = None) -> CensusReport:
    """Enumerate all ``(2n)!/2^n`` words with ``n`` bands and classify the survivors.

    ``stop_after`` ends the run after that many new chunks (used to simulate
    interruption); the returned report is then partial.
    """
    _check_enum_range(n)
    if options.classify and table is None:
        raise ValueError("classification needs a reference table")
    t0 = time.perf_counter()
    thash = table.source_hash if table is not None else ""
    prefixes = chunk_prefixes(n, options.chunk_depth)
    done = read_resume(options.resume_path, n, thash) if options.resume_path else {}
    todo = [(n, cid, p, options.classify, options.recursive_type_one)
            for cid, p in enumerate(prefixes) if cid not in done]
    if stop_after is not None:
        todo = todo[:stop_after]
    sink = open(options.resume_path, "a", encoding="utf-8") if options.resume_path else None
    results = dict(done)
    try:
        if options.threads <= 1 or len(todo) <= 1:
            _init_worker(table)
            for args in todo:
                cid, counts = _run_chunk_args(args)
                results[cid] = counts
                if sink:
                    _append_resume(sink, n, cid, counts, thash)
        else:
            with ProcessPoolExecutor(options.threads, initializer=_init_worker,
                                     initargs=(table,)) as pool:
                for cid, counts in pool.map(_run_chunk_args, todo, chunksize=1):
                    results[cid] = counts
                    if sink:
                        _append_resume(sink, n, cid, counts, thash)
    finally:
        if sink:
            sink.close()
    report = CensusReport(n, table_hash=thash)
    for cid in sorted(results):
        merge_counts(report, results[cid])
    report.surviving = report.knot_codes - report.type_one_reducible
    report.chunks = len(results)
    report.elapsed = time.perf_counter() - t0
    if len(results) == len(prefixes):
        assert report.total == code_total(n), (report.total, code_total(n))
        if options.classify:
            assert all(report.identities().values()), report.identities()
    return report


def classify_code(code, table: ReferenceTable) -> str:
    """Knot name of a one-component code, or ``"unknown"``."""
    code = as_code(code)
    mu = component_count(code)
    if mu != 1:
        raise NotAKnot(f"{code} bounds a link with {mu} components")
    return table.lookup(fingerprint(canonical_form(code)))


# -- fpbk ------------------------------------------------------------------------------------

SIX_BAND_PRIMES = (
    "5_1", "5_2", "6_1", "6_2", "6_3", "7_6", "7_7", "8_1", "8_3", "8_12", "8_20", "8_21",
    "9_42", "9_44", "9_46", "9_48", "10_132", "10_136", "10_137", "10_140", "11n_38",
    "12n_462", "13n_973", "14n_17954", "15n_45460", "16n_246032",
)
_FPBK: dict[str, int | frozenset] = {"unknot": 0, "3_1": 4, "4_1": 4}
_FPBK.update({k: 6 for k in SIX_BAND_PRIMES})
_FPBK.update({k: 8 for k in ("7_2", "7_4", "9_45")})
_FPBK.update({k: frozenset({8, 10}) for k in ("9_2", "9_5", "9_35")})


def normalize_name(name: str) -> str:
    s = name.strip()
    if s.lower() in ("unknot", "0_1"):
        return "unknot"
    s = re.sub(r"^K", "", s)
    m = _PRIME.match(s)
    if m and not m.group(4):
        return f"{m.group(1)}{m.group(2)}_{m.group(3)}"
    return s


def fpbk_lookup(name: str):
    """Flat plumbing basket number from the classification results; an int or a set."""
    key = normalize_name(name)
    try:
        return _FPBK[key]
    except KeyError:
        raise KeyError(f"no flat plumbing basket number known for {name!r}") from None


# -- output ----------------------------------------------------------------------------------


def report_rows(report: CensusReport) -> list[tuple[str, int]]:
    return sorted(((k, v) for k, v in report.class_counts.items() if v),
                  key=lambda kv: (name_key(kv[0]), kv[1]))


def format_report(report: CensusReport, fmt: str = "csv") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "count"])
        for name, count in report_rows(report):
            w.writerow([name, count])
        return buf.getvalue()
    if fmt == "json":
        return json.dumps(report.to_json(), indent=2) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def emit_report(report: CensusReport, fmt: str, path) -> str:
    text = format_report(report, fmt)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return str(path)
