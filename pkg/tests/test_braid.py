import pytest
from hypothesis import assume, given, settings, strategies as st

from fpb.braid import (
    BraidError,
    BraidWord,
    bound_fhk,
    bound_kim,
    closed_components,
    fhk_code,
    kim_epsilon,
    parse_braid,
    power_sums,
    same_sign_count,
)
from fpb.code import component_count
from fpb.diagram import braid_diagram
from fpb.invariants import BudgetExceeded, code_invariants, diagram_invariants

FIVE_TWO = "2 -1 -2 -2 -2 -1"


def test_parse_examples():
    b = parse_braid(FIVE_TWO, 3)
    assert b.letters == (2, -1, -2, -2, -2, -1)
    assert parse_braid("s2 s1' s2' s2' s2' s1'", 3) == b
    assert parse_braid("σ2 σ1^-1 σ2^-1 σ2^-1 σ2^-1 σ1^-1", 3) == b
    assert parse_braid("", 3).letters == ()
    with pytest.raises(BraidError):
        parse_braid("3", 3)
    with pytest.raises(BraidError):
        parse_braid("s1x", 3)


def test_closed_components_examples():
    assert closed_components(parse_braid("", 3)) == 3
    assert closed_components(parse_braid("1", 2)) == 1
    assert closed_components(parse_braid(FIVE_TWO, 3)) == 1


def test_fhk_examples():
    assert fhk_code(parse_braid(FIVE_TWO, 3)).word == (1, 2, 3, 4, 5, 6, 4, 5, 1, 2, 3, 6)
    assert fhk_code(parse_braid("2 1", 3)).word == ()
    with pytest.raises(BraidError):
        fhk_code(parse_braid("1 1 2", 3))  # prefix misses generator 2
    with pytest.raises(BraidError):
        BraidWord(1, (1,))


def test_fhk_trefoil_matches_closure():
    b = parse_braid("1 1 1", 2)
    raw = code_invariants(fhk_code(b))
    ref = diagram_invariants(braid_diagram(2, b.letters))
    assert (raw.jones, raw.signature) == (ref.jones, ref.signature)


def test_bound_fhk_examples():
    assert bound_fhk(parse_braid("1 1 1", 2)) == 6
    assert bound_fhk(parse_braid("2 1 1 -2", 3)) == 4
    assert bound_fhk(parse_braid("2 1", 3)) == 0
    with pytest.raises(BraidError):
        bound_fhk(parse_braid(FIVE_TWO, 3))


def test_bound_kim_examples():
    assert bound_kim(parse_braid("1 1 1", 2)) == 10
    assert bound_kim(parse_braid("1 2", 3)) == 8
    assert bound_kim(parse_braid("1 -1", 2)) == 1


def test_kim_epsilon_cases():
    assert kim_epsilon(3, 0) == 1
    assert kim_epsilon(1, 1) == 1
    assert kim_epsilon(2, 1) == -1
    assert kim_epsilon(0, 2) == -1
    assert power_sums((1, 1, -2), 3) == {1: (2, 0), 2: (0, 1)}


@st.composite
def prefixed_braids(draw, max_strands=4, max_extra=6):
    n = draw(st.integers(2, max_strands))
    gens = draw(st.permutations(list(range(1, n))))
    prefix = [g * draw(st.sampled_from([1, -1])) for g in gens]
    rest = draw(st.lists(st.integers(1, n - 1).flatmap(lambda g: st.sampled_from([g, -g])),
                         max_size=max_extra))
    return BraidWord(n, tuple(prefix + rest))


@given(prefixed_braids())
def test_fhk_band_count_and_components(b):
    code = fhk_code(b)
    W = b.letters[b.strands - 1:]
    assert code.n == len(W) + 2 * same_sign_count(b)
    if W:
        assert component_count(code) == closed_components(b)


@settings(max_examples=60, deadline=None)
@given(prefixed_braids(max_extra=5))
def test_fhk_surface_bounds_the_closure(b):
    assume(closed_components(b) == 1)
    code = fhk_code(b)
    try:
        raw = code_invariants(code)
    except BudgetExceeded:
        assume(False)
    ref = diagram_invariants(braid_diagram(b.strands, b.letters))
    # chirality included: Jones and signature are compared exactly
    assert raw.jones == ref.jones
    assert raw.signature == ref.signature
    assert raw.alexander == ref.alexander


def test_bounds_dominate_known_basket_numbers(table):
    import itertools
    from fpb.census import classify_code, fpbk_lookup
    checked = 0
    for strands in (2, 3, 4):
        prefix = tuple(range(strands - 1, 0, -1))
        gens = [g * s for g in range(1, strands) for s in (1, -1)]
        for length in range(5):
            for W in itertools.product(gens, repeat=length):
                b = BraidWord(strands, prefix + W)
                if closed_components(b) != 1:
                    continue
                try:
                    known = fpbk_lookup(classify_code(fhk_code(b), table))
                except (KeyError, BudgetExceeded):
                    continue
                low = min(known) if isinstance(known, frozenset) else known
                assert bound_fhk(b) >= low and bound_kim(b) >= low, b
                checked += 1
    assert checked > 800
