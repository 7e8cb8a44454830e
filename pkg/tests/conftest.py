import os
import random

import pytest
from hypothesis import settings

from fpb.code import BasketCode, component_count

settings.register_profile("default", max_examples=80, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def table(tmp_path_factory):
    # build from the sources into a private cache
    from fpb.reference import load_table
    os.environ["FPB_CACHE_DIR"] = str(tmp_path_factory.mktemp("fpb-cache"))
    return load_table()


@pytest.fixture(scope="session")
def census6(table):
    from fpb.census import CensusOptions, run_census
    return run_census(6, table, CensusOptions(threads=int(os.environ.get("FPB_THREADS", "1"))))


# -- acceptance summary -------------------------------------------------------------------

ACCEPTANCE: dict[int, list] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or not (rep.when == "call" or rep.failed):
        return
    details = [v for k, v in item.user_properties if k == "detail"]
    ACCEPTANCE.setdefault(mark.args[0], []).append((rep.passed, item.name, "; ".join(details)))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in range(1, 11):
        checks = ACCEPTANCE.get(k)
        if not checks:
            tr.write_line(f"criterion {k:2d}: NOT RUN")
            continue
        bad = [c for c in checks if not c[0]]
        status = "PASS" if not bad else "FAIL"
        line = f"criterion {k:2d}: {status}  {len(checks) - len(bad)}/{len(checks)} checks"
        if bad:
            line += "  failing: " + ", ".join(name for _, name, _ in bad)
        tr.write_line(line)
        for ok, name, detail in checks:
            if detail:
                tr.write_line(f"    {'ok ' if ok else 'BAD'} {name}: {detail}")


def random_word(rng, n):
    w = [k for k in range(1, n + 1) for _ in (0, 1)]
    rng.shuffle(w)
    return tuple(w)


def random_knot_code(rng, n):
    while True:
        c = BasketCode(random_word(rng, n))
        if component_count(c) == 1:
            return c


@pytest.fixture
def rng():
    return random.Random(20240611)
