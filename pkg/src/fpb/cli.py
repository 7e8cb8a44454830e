"""Command line interface: ``fpb <subcommand> ...``.

Exit codes: 0 ok, 1 usage, 2 data error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys

from .braid import BraidError, bound_fhk, bound_kim, closed_components, fhk_code, parse_braid
from .census import CensusOptions, ResumeError, classify_code, emit_report, fpbk_lookup, run_census
from .code import CodeError, code_total, component_count, iter_words, parse_code, format_code
from .diagram import DiagramError, build_arc_diagram, dt_from_gauss, gauss_code
from .draw import write_svg
from .invariants import BudgetExceeded, NotAKnot, code_invariants, jones_in_t
from .reference import ReferenceError, load_table

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_BUDGET = 0, 1, 2, 3
DATA_ERRORS = (CodeError, DiagramError, BraidError, ReferenceError, ResumeError, NotAKnot,
               KeyError, OSError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def default_threads() -> int:
    raw = os.environ.get("FPB_THREADS")
    if not raw:
        return 1
    try:
        t = int(raw)
    except ValueError:
        raise UsageError(f"FPB_THREADS must be a positive integer, got {raw!r}") from None
    if t < 1:
        raise UsageError(f"FPB_THREADS must be a positive integer, got {raw!r}")
    return t


def _table(args):
    return load_table(args.table, use_cache=not getattr(args, "no_cache", False))


# -- subcommands -----------------------------------------------------------------------


def cmd_enumerate(args):
    if not 0 <= args.n <= 8:
        raise UsageError("-n must lie in 0..8")
    if args.count_only:
        print(code_total(args.n))
        return
    out = sys.stdout
    for w in iter_words(args.n):
        out.write("".join(map(str, w)) if args.n <= 9 else ",".join(map(str, w)))
        out.write("\n")


def cmd_census(args):
    if not 0 <= args.n <= 8:
        raise UsageError("-n must lie in 0..8")
    threads = args.threads if args.threads is not None else default_threads()
    if threads < 1:
        raise UsageError("--threads must be positive")
    table = None if args.count_only else _table(args)
    opts = CensusOptions(threads=threads, resume_path=args.resume, classify=not args.count_only,
                         recursive_type_one=args.recursive_type_one)
    report = run_census(args.n, table, opts)
    if args.out:
        fmt = "json" if str(args.out).endswith(".json") else "csv"
        emit_report(report, fmt, args.out)
    print(f"total {report.total}")
    print(f"linkCodes {report.link_codes}")
    print(f"knotCodes {report.knot_codes}")
    print(f"typeOneReducible {report.type_one_reducible}")
    print(f"surviving {report.surviving}")
    if report.class_counts:
        print(f"composite {report.composite_total()}")
        print(f"unknown {report.class_counts.get('unknown', 0)}")
    print(f"elapsed {report.elapsed:.1f}s", file=sys.stderr)


def cmd_classify(args):
    print(classify_code(parse_code(args.code), _table(args)))


def cmd_invariants(args):
    code = parse_code(args.code)
    raw = code_invariants(code)
    fp = raw.fingerprint()
    show_all = args.all or not (args.alexander or args.jones)
    if args.alexander or show_all:
        print(f"alexander {fp.alexander.to_text('t')}")
    if args.jones or show_all:
        print(f"jones {jones_in_t(raw.jones).to_text('t')}")
    if show_all:
        print(f"determinant {fp.determinant}")
        print(f"signature {raw.signature}")
        cover = "+".join(f"Z{k}" if k else "Z" for k in fp.double_cover) or "0"
        print(f"double_cover {cover}")


def cmd_dt(args):
    code = parse_code(args.code)
    mu = component_count(code)
    if mu != 1:
        raise NotAKnot(f"{format_code(code)} bounds a link with {mu} components")
    g = gauss_code(build_arc_diagram(code), start=args.start, reverse=args.ccw)
    if args.gauss:
        print(g.text())
    print(dt_from_gauss(g).text())


def cmd_braid_to_code(args):
    braid = parse_braid(args.word, args.strands)
    code = fhk_code(braid)
    print(format_code(code))
    if args.verbose:
        print(f"bands {code.n}  components {closed_components(braid)}", file=sys.stderr)


def cmd_bounds(args):
    braid = parse_braid(args.word, args.strands)
    both = not (args.fhk or args.kim)
    if args.fhk:
        print(f"fhk {bound_fhk(braid)}")
    elif both:
        try:
            print(f"fhk {bound_fhk(braid)}")
        except BraidError as exc:
            print(f"fhk n/a ({exc})")
    if args.kim or both:
        print(f"kim {bound_kim(braid)}")


def cmd_fpbk(args):
    v = fpbk_lookup(args.name)
    if isinstance(v, int):
        print(v)
    else:
        print(" or ".join(str(x) for x in sorted(v)))


def cmd_draw(args):
    write_svg(parse_code(args.code), args.out)


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fpb", description="Flat plumbing basket codes and knot censuses.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("enumerate", help="list all codes with N bands")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--count-only", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("census", help="classify all codes with N bands")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--table", help="reference source (.tsv) or built table (.json)")
    s.add_argument("--out", help="report file, .csv or .json")
    s.add_argument("--threads", type=int)
    s.add_argument("--resume", help="append-only progress file")
    s.add_argument("--count-only", action="store_true", help="skip classification")
    s.add_argument("--recursive-type-one", action="store_true",
                   help="also classify fully reduced Type I reducible codes")
    s.add_argument("--no-cache", action="store_true")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("classify", help="name the knot bounded by a code")
    s.add_argument("code")
    s.add_argument("--table")
    s.add_argument("--no-cache", action="store_true")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("invariants", help="Alexander and Jones polynomials of a code")
    s.add_argument("code")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--alexander", action="store_true")
    g.add_argument("--jones", action="store_true")
    g.add_argument("--all", action="store_true")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("dt", help="DT code of the boundary diagram")
    s.add_argument("code")
    s.add_argument("--start", type=int, default=0, help="visit index to start from")
    s.add_argument("--ccw", action="store_true", help="walk against the default direction")
    s.add_argument("--gauss", action="store_true", help="also print the Gauss code")
    s.set_defaults(func=cmd_dt)

    s = sub.add_parser("braid-to-code", help="basket code of a closed braid")
    s.add_argument("word")
    s.add_argument("--strands", type=int, required=True)
    s.set_defaults(func=cmd_braid_to_code)

    s = sub.add_parser("bounds", help="upper bounds on the basket number of a closed braid")
    s.add_argument("word")
    s.add_argument("--strands", type=int, required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--fhk", action="store_true")
    g.add_argument("--kim", action="store_true")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("fpbk", help="known flat plumbing basket number of a knot")
    s.add_argument("name")
    s.set_defaults(func=cmd_fpbk)

    s = sub.add_parser("draw", help="SVG picture of a basket surface")
    s.add_argument("code")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_draw)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        args.func(args)
    except UsageError as exc:
        print(f"fpb: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"fpb: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DATA_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"fpb: error: {msg}", file=sys.stderr)
        return EXIT_DATA
    except BrokenPipeError:
        pass
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
