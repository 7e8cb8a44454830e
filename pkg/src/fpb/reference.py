"""Closed-world identification table: reference knots and their fingerprints.

Source file format, one knot per line (``#`` starts a comment)::

    name <TAB> dt:<signed even integers> [<TAB> genus:<g> | genus:>=<g>]
    name <TAB> braid:<word>@<strands>    [<TAB> genus:...]

Fingerprints are always computed here from the sources, never entered by hand.
"""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .braid import parse_braid
from .diagram import ArcDiagram, DTCode, diagram_from_dt
from .invariants import (
    MAX_BRACKET_CROSSINGS,
    Fingerprint,
    RawInvariants,
    diagram_invariants,
)
from .poly import LaurentPoly

UNKNOWN = "unknown"
CACHE_FORMAT = 2

# Knots of six-band fpbk together with the trefoil, figure-eight and unknot.
REQUIRED_NAMES = (
    "unknot", "3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "7_6", "7_7", "8_1", "8_3",
    "8_12", "8_20", "8_21", "9_42", "9_44", "9_46", "9_48", "10_132", "10_136", "10_137",
    "10_140", "11n_38", "12n_462", "13n_973", "14n_17954", "15n_45460", "16n_246032",
)
DEFAULT_GENUS_CAP = 3


class ReferenceError(ValueError):
    pass


class TableCollision(ReferenceError):
    def __init__(self, pairs):
        self.pairs = pairs
        msg = "; ".join(f"{a} and {b}" for a, b in pairs)
        super().__init__(f"fingerprint collision: {msg}")


@dataclass(frozen=True)
class ReferenceSource:
    name: str
    kind: str  # "dt" or "braid"
    data: str
    genus: int | None = None
    genus_exact: bool = True
    line: int = 0

    def text(self) -> str:
        return f"{self.kind}:{self.data}"


@dataclass(frozen=True)
class ReferenceEntry:
    name: str
    source: str
    fingerprint: Fingerprint
    composite: bool = False
    genus: int | None = None
    raw: RawInvariants | None = field(default=None, compare=False)


@dataclass
class ReferenceTable:
    entries: list[ReferenceEntry]
    index: dict = field(default_factory=dict)
    source_hash: str = ""

    def lookup(self, fp: Fingerprint) -> str:
        return self.index.get(fp.key(), UNKNOWN)

    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def __len__(self):
        return len(self.entries)

    def __contains__(self, name):
        return any(e.name == name for e in self.entries)


def lookup(table: ReferenceTable, fp: Fingerprint) -> str:
    return table.lookup(fp)


# -- loading ---------------------------------------------------------------------------


def parse_reference_lines(lines: Iterable[str]) -> list[ReferenceSource]:
    out: list[ReferenceSource] = []
    seen: dict[str, int] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        parts = [p.strip() for p in line.split("\t")]
        if len(parts) == 1:
            parts = line.split(None, 1)
        if len(parts) < 2:
            raise ReferenceError(f"line {lineno}: expected 'name<TAB>source', got {raw.strip()!r}")
        name, src = parts[0], parts[1]
        # allow 'name dt:1 2 3 genus:1' when tabs were lost
        extra = parts[2:]
        if "\t" not in line and " genus:" in src:
            src, g = src.rsplit(" genus:", 1)
            extra = ["genus:" + g]
        if name in seen:
            raise ReferenceError(f"line {lineno}: duplicate name {name!r} (first on line {seen[name]})")
        kind, sep, data = src.partition(":")
        if not sep or kind not in ("dt", "braid"):
            raise ReferenceError(f"line {lineno}: source must start with 'dt:' or 'braid:', got {src!r}")
        data = data.strip()
        try:
            if kind == "dt":
                DTCode.parse(data)
            else:
                word, at, strands = data.rpartition("@")
                if not at:
                    raise ReferenceError("braid source needs '@<strands>'")
                parse_braid(word, int(strands))
        except (ValueError, ReferenceError) as exc:
            raise ReferenceError(f"line {lineno}: {exc}") from None
        genus, exact = None, True
        for tok in extra:
            if not tok:
                continue
            if not tok.startswith("genus:"):
                raise ReferenceError(f"line {lineno}: unknown field {tok!r}")
            g = tok[len("genus:"):]
            if g.startswith(">="):
                exact, g = False, g[2:]
            try:
                genus = int(g)
            except ValueError:
                raise ReferenceError(f"line {lineno}: bad genus {tok!r}") from None
        seen[name] = lineno
        out.append(ReferenceSource(name, kind, data, genus, exact, lineno))
    return out


def load_reference(path) -> list[ReferenceSource]:
    """Parse a reference source file; errors carry line numbers."""
    with open(path, encoding="utf-8") as fh:
        return parse_reference_lines(fh)


def default_source_path() -> Path:
    return Path(str(resources.files("fpb") / "data" / "reference.tsv"))


# -- fingerprints ----------------------------------------------------------------------


def source_diagram(src: ReferenceSource) -> ArcDiagram:
    if src.kind == "dt":
        dt = DTCode.parse(src.data)
        if len(dt) == 0:
            return ArcDiagram((), (), 1)
        return diagram_from_dt(dt)
    word, _, strands = src.data.rpartition("@")
    return parse_braid(word, int(strands)).diagram()


def compute_entry(src: ReferenceSource) -> ReferenceEntry:
    d = source_diagram(src)
    if d.crossing_count > MAX_BRACKET_CROSSINGS:
        raise ReferenceError(f"{src.name}: {d.crossing_count} crossings exceed the budget")
    if d.component_count != 1:
        raise ReferenceError(f"{src.name}: source is a {d.component_count}-component link")
    raw = diagram_invariants(d)
    return ReferenceEntry(src.name, src.text(), raw.fingerprint(), False, src.genus, raw)


def synth_connected_sums(primes: Sequence[ReferenceEntry], genus_cap: int) -> list[ReferenceEntry]:
    """All ``K1 # K2`` and ``K1 # K2*`` with genus sum at most ``genus_cap``.

    Mirror pairings that give the same fingerprint (an amphichiral summand)
    are kept once under the plain name.
    """
    prim = [p for p in primes if not p.composite and p.name != "unknot"]
    out: list[ReferenceEntry] = []
    for i, a in enumerate(prim):
        for b in prim[i:]:
            if a.genus is None or b.genus is None or a.genus + b.genus > genus_cap:
                continue
            if a.raw is None or b.raw is None:
                raise ReferenceError("composites need the chiral invariants of both summands")
            same = a.raw.connect(b.raw)
            opp = a.raw.connect(b.raw.mirror())
            g = a.genus + b.genus
            src = f"{a.name} # {b.name}"
            fs, fo = same.fingerprint(), opp.fingerprint()
            out.append(ReferenceEntry(f"{a.name}#{b.name}", src, fs, True, g, same))
            if fo != fs:
                out.append(ReferenceEntry(f"{a.name}#{b.name}*", src + "*", fo, True, g, opp))
    return out


def build_table(entries: Sequence[ReferenceEntry], source_hash: str = "") -> ReferenceTable:
    """Index entries by fingerprint; any shared fingerprint aborts the build."""
    index: dict = {}
    owner: dict = {}
    pairs = []
    for e in entries:
        k = e.fingerprint.key()
        if k in index:
            pairs.append((owner[k], e.name))
            continue
        index[k] = e.name
        owner[k] = e.name
    if pairs:
        raise TableCollision(pairs)
    return ReferenceTable(list(entries), index, source_hash)


def check_genus(entry: ReferenceEntry) -> None:
    if entry.genus is not None and entry.fingerprint.alexander.span() > 2 * entry.genus:
        raise ReferenceError(
            f"{entry.name}: Alexander span {entry.fingerprint.alexander.span()} exceeds twice the genus {entry.genus}")


def build_from_sources(sources: Sequence[ReferenceSource], genus_cap: int = DEFAULT_GENUS_CAP,
                       source_hash: str = "", require: Sequence[str] = ()) -> ReferenceTable:
    primes = [compute_entry(s) for s in sources]
    for p in primes:
        check_genus(p)
    missing = [n for n in require if n not in {p.name for p in primes}]
    if missing:
        raise ReferenceError(f"reference set is missing {missing}")
    return build_table(primes + synth_connected_sums(primes, genus_cap), source_hash)


# -- persistence ---------------------------------------------------------------------------


def source_hash(text: str, genus_cap: int) -> str:
    h = hashlib.sha256()
    h.update(f"v{CACHE_FORMAT};cap={genus_cap};".encode())
    h.update(text.encode("utf-8"))
    return h.hexdigest()


def table_to_json(table: ReferenceTable) -> dict:
    return {
        "source_hash": table.source_hash,
        "entries": [
            {
                "name": e.name,
                "source": e.source,
                "composite": e.composite,
                "genus": e.genus,
                "fingerprint": e.fingerprint.to_json(),
                "signature": None if e.raw is None else e.raw.signature,
                "jones": None if e.raw is None else e.raw.jones.to_json(),
            }
            for e in table.entries
        ],
    }


def table_from_json(data: dict) -> ReferenceTable:
    entries = []
    for d in data["entries"]:
        fp = Fingerprint.from_json(d["fingerprint"])
        raw = None
        if d.get("jones") is not None:
            raw = RawInvariants(LaurentPoly.from_json(d["jones"]), fp.alexander, d["signature"],
                                fp.double_cover)
        entries.append(ReferenceEntry(d["name"], d["source"], fp, d["composite"], d["genus"], raw))
    # distinctness is rechecked on every load
    return build_table(entries, data.get("source_hash", ""))


def cache_dir() -> Path:
    base = os.environ.get("FPB_CACHE_DIR") or os.path.join(
        os.environ.get("XDG_CACHE_HOME") or os.path.join(Path.home(), ".cache"), "fpb")
    return Path(base)


def load_table(path=None, genus_cap: int = DEFAULT_GENUS_CAP, use_cache: bool = True) -> ReferenceTable:
    """Build (or fetch from the JSON cache) the table for a source file.

    The packaged source is used when ``path`` is None; it must contain every
    name in ``REQUIRED_NAMES``.
    """
    default = path is None
    p = default_source_path() if default else Path(path)
    if p.suffix == ".json":
        with open(p, encoding="utf-8") as fh:
            return table_from_json(json.load(fh))
    text = p.read_text(encoding="utf-8")
    digest = source_hash(text, genus_cap)
    cfile = cache_dir() / f"table-{digest[:16]}.json"
    if use_cache and cfile.exists():
        try:
            with open(cfile, encoding="utf-8") as fh:
                data = json.load(fh)
            if data.get("source_hash") == digest:
                return table_from_json(data)
        except (OSError, ValueError, KeyError):
            pass
    sources = parse_reference_lines(text.splitlines())
    table = build_from_sources(sources, genus_cap, digest, REQUIRED_NAMES if default else ())
    if use_cache:
        try:
            cfile.parent.mkdir(parents=True, exist_ok=True)
            tmp = cfile.with_suffix(".tmp")
            tmp.write_text(json.dumps(table_to_json(table), sort_keys=True), encoding="utf-8")
            tmp.replace(cfile)
        except OSError:
            pass
    return table
