"""Run the six-band census and compare it against the expected class counts.

    python3 scripts/run_census6.py --threads 8 --out census6.csv
"""
import argparse
import os
import sys

from fpb.census import CensusOptions, emit_report, run_census
from fpb.reference import load_table

EXPECTED = {
    "unknot": 105162, "3_1": 20274, "4_1": 32442, "5_1": 12, "5_2": 4176, "6_1": 17982,
    "6_2": 1368, "6_3": 1908, "7_6": 432, "7_7": 1404, "8_1": 576, "8_3": 288, "8_12": 576,
    "8_20": 1440, "8_21": 144, "9_42": 720, "9_44": 1152, "9_46": 1296, "9_48": 24,
    "10_132": 144, "10_136": 144, "10_137": 288, "10_140": 144, "11n_38": 144,
    "12n_462": 144, "13n_973": 144, "14n_17954": 36, "15n_45460": 216, "16n_246032": 72,
}
EXPECTED_COMPOSITE = 2268


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--threads", type=int, default=int(os.environ.get("FPB_THREADS", "1")))
    ap.add_argument("--out", help="write the report (.csv or .json)")
    ap.add_argument("--resume")
    args = ap.parse_args()

    report = run_census(6, load_table(), CensusOptions(threads=args.threads, resume_path=args.resume))
    if args.out:
        emit_report(report, "json" if args.out.endswith(".json") else "csv", args.out)

    print(f"total {report.total}  links {report.link_codes}  knots {report.knot_codes}")
    print(f"typeOneReducible {report.type_one_reducible}  surviving {report.surviving}")
    print(f"elapsed {report.elapsed:.1f}s with {args.threads} worker(s)\n")
    print(f"{'class':<12}{'count':>9}{'expected':>10}  mod 12")
    mismatches = 0
    for name, want in EXPECTED.items():
        got = report.class_counts.get(name, 0)
        flag = "" if got == want else "  <-- differs"
        mismatches += got != want
        print(f"{name:<12}{got:>9}{want:>10}  {got % 12:>2} / {want % 12:>2}{flag}")
    comp = report.composite_total()
    mismatches += comp != EXPECTED_COMPOSITE
    print(f"{'composite':<12}{comp:>9}{EXPECTED_COMPOSITE:>10}")
    for name, count in sorted(report.class_counts.items()):
        if name.startswith("composite:"):
            print(f"  {name[len('composite:'):]:<14}{count:>7}")
    print(f"{'unknown':<12}{report.class_counts.get('unknown', 0):>9}{0:>10}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
