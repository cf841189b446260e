"""Set representations: membership, run search, affine maps, text format."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from banachsum.errors import (
    HorizonExceeded,
    NegativeResult,
    OverlapError,
    ParseError,
)
from banachsum.intset import (
    AffineImage,
    Congruence,
    ExplicitWindow,
    Full,
    PolyRuns,
    PowRuns,
    Run,
    RunList,
    Window,
    decimal_digits,
    nth_root_floor,
    parse_set,
    serialize_set,
)

# ---------------------------------------------------------------- strategies

runs = st.builds(
    Run,
    start=st.integers(min_value=1, max_value=400),
    length=st.integers(min_value=1, max_value=12),
)
run_lists = st.lists(runs, max_size=8).map(RunList)


@st.composite
def explicit_windows(draw, max_base=40, max_len=200):
    base = draw(st.integers(min_value=0, max_value=max_base))
    length = draw(st.integers(min_value=1, max_value=max_len))
    bits = draw(st.integers(min_value=0, max_value=(1 << length) - 1))
    if base == 0:
        bits &= ~1
    return ExplicitWindow(Window(base, length), bits)


generators = st.one_of(
    st.integers(2, 5).map(PowRuns),
    st.integers(2, 4).map(PolyRuns),
    st.tuples(st.integers(1, 9), st.integers(0, 8))
    .filter(lambda mr: mr[1] < mr[0])
    .map(lambda mr: Congruence(*mr)),
    st.just(Full()),
)

# ------------------------------------------------------------------- Run/Window


def test_run_interval_semantics():
    r = Run(9, 3)
    assert r.end == 11
    assert list(r) == [9, 10, 11]
    assert 9 in r and 11 in r and 12 not in r


def test_run_rejects_nonpositive():
    with pytest.raises(ValueError):
        Run(0, 1)
    with pytest.raises(ValueError):
        Run(5, 0)
    with pytest.raises(ValueError):
        Window(-1, 4)
    with pytest.raises(ValueError):
        Window(0, 0)


def test_nth_root_floor_small_cases():
    assert nth_root_floor(0, 3) == 0
    assert nth_root_floor(26, 3) == 2
    assert nth_root_floor(27, 3) == 3
    assert nth_root_floor(10**30, 2) == 10**15


@given(st.integers(0, 10**24), st.integers(2, 7))
def test_nth_root_floor_brackets(x, p):
    r = nth_root_floor(x, p)
    assert r**p <= x < (r + 1) ** p


# ------------------------------------------------------------------- membership


def test_membership_examples():
    assert Congruence(2, 1).member(7)
    assert PowRuns(4).member(65)  # third run is [64, 66]
    assert not PowRuns(4).member(63)
    assert not PowRuns(4).member(0)
    assert Full().member(1) and not Full().member(0)


def test_zero_is_never_a_member():
    for s in (Full(), Congruence(5, 0), PowRuns(2), PolyRuns(2), RunList([Run(1, 3)])):
        assert not s.member(0)
        assert not s.member(-4)


def test_congruence_rejects_bad_residue():
    with pytest.raises(ValueError):
        Congruence(4, 4)
    with pytest.raises(ValueError):
        Congruence(0, 0)
    with pytest.raises(ValueError):
        PowRuns(1)
    with pytest.raises(ValueError):
        PolyRuns(1)


# ------------------------------------------------------------------- materialize


def test_materialize_examples():
    full8 = Full().materialize(Window(0, 8))
    assert sorted(full8.elements()) == [1, 2, 3, 4, 5, 6, 7]
    pr = PowRuns(4).materialize(Window(0, 20))
    assert sorted(pr.elements()) == [4, 16, 17]
    empty = RunList([]).materialize(Window(0, 32))
    assert empty.count() == 0


@given(generators, st.integers(0, 60), st.integers(1, 120))
@settings(max_examples=60)
def test_materialize_agrees_with_membership(s, base, length):
    w = s.materialize(Window(base, length))
    for x in range(base, base + length):
        assert w.member(x) == s.member(x)


@given(run_lists, st.integers(0, 60), st.integers(1, 120))
@settings(max_examples=60)
def test_materialize_runlist_pointwise(s, base, length):
    w = s.materialize(Window(base, length))
    for x in range(base, base + length):
        assert w.member(x) == s.member(x)


# ------------------------------------------------------------------- translate / dilate


def test_translate_examples():
    s = RunList.from_elements([1, 3])
    assert sorted(s.translate(2).elements()) == [3, 5]
    assert s.translate(0) is s
    with pytest.raises(NegativeResult):
        s.translate(-1)


def test_translate_splits_recombine():
    # (B + t) + (C - t) keeps the pairwise sums unchanged
    w = Window(0, 64)
    b = RunList.from_elements([1, 2])
    c = RunList.from_elements([10])
    from banachsum.sumset import pairwise_sumset

    plain = pairwise_sumset(b.materialize(w), c.materialize(w), 63)
    shifted = pairwise_sumset(
        b.translate(3).materialize(w), c.translate(-3).materialize(w), 63
    )
    assert sorted(plain.elements()) == sorted(shifted.elements()) == [11, 12]


def test_dilate_examples():
    s = RunList.from_elements([1, 2, 3])
    assert s.dilate(1, 0) is s
    assert sorted(s.dilate(7, 3).elements()) == [10, 17, 24]
    assert RunList([]).dilate(5, 2).runs == ()


@given(run_lists, st.integers(-5, 30))
def test_translate_membership_identity(s, t):
    lo = s.min_element()
    if lo is not None and lo + t < 1:
        with pytest.raises(NegativeResult):
            s.translate(t)
        return
    shifted = s.translate(t)
    for x in range(1, 460):
        assert shifted.member(x) == s.member(x - t)


@given(run_lists, st.integers(1, 6), st.integers(0, 10))
def test_dilate_membership_identity(s, m, r):
    d = s.dilate(m, r)
    for y in range(0, 500):
        expect = y >= r and (y - r) % m == 0 and s.member((y - r) // m)
        assert d.member(y) == expect


@given(generators, st.integers(0, 20), st.integers(1, 5), st.integers(0, 8))
@settings(max_examples=40)
def test_generator_affine_membership(s, t, m, r):
    mapped = s.dilate(m, r).translate(t)
    for y in range(0, 300):
        back = y - t
        expect = back >= r and (back - r) % m == 0 and s.member((back - r) // m)
        assert mapped.member(y) == expect


def test_affine_image_composes_flat():
    s = PowRuns(4).dilate(3, 1).translate(2).dilate(2, 0)
    assert isinstance(s, AffineImage)
    assert isinstance(s.inner, PowRuns)  # nested maps collapse to one


def test_affine_image_rejects_nonpositive_image():
    with pytest.raises(NegativeResult):
        Full().translate(-1)


def test_explicit_window_rejects_zero_bit():
    with pytest.raises(ValueError):
        ExplicitWindow(Window(0, 4), 0b0001)
    with pytest.raises(ValueError):
        ExplicitWindow(Window(0, 4), 0b10000)  # bits beyond the window


# ------------------------------------------------------------------- next_run


def test_next_run_examples():
    assert PowRuns(4).next_run(3, 0) == Run(64, 3)
    assert Congruence(2, 1).next_run(2, 0) is None
    assert PolyRuns(2).next_run(3, 10) == Run(16, 3)
    assert Full().next_run(5, 17) == Run(17, 5)
    assert Congruence(3, 2).next_run(1, 10) == Run(11, 1)


def test_next_run_inside_longer_run():
    # a start may sit strictly inside a longer run of the set
    assert PolyRuns(2).next_run(2, 10) == Run(10, 2)  # inside [9, 11]


def test_next_run_finite_horizon():
    s = RunList([Run(5, 4)])
    assert s.next_run(3, 0) == Run(5, 3)
    assert s.next_run(3, 6) == Run(6, 3)
    with pytest.raises(HorizonExceeded):
        s.next_run(3, 7)
    with pytest.raises(HorizonExceeded):
        ExplicitWindow(Window(0, 8), 0b0110).next_run(3, 0)


def test_next_run_start_digit_estimates():
    # explicit representations give no estimate
    assert RunList([Run(5, 4)]).next_run_start_digits(3, 0) is None
    assert Full().next_run_start_digits(3, 0) is None
    run = PowRuns(4).next_run(3, 0)
    assert PowRuns(4).next_run_start_digits(3, 0) >= len(str(run.start))
    # lower bound falling inside a long run: the answer starts right there
    assert PowRuns(4).next_run_start_digits(2, 1025) >= len(str(1025))
    # a demand so long that the matching run index is astronomical
    assert PowRuns(2).next_run_start_digits(1 << 62, 1) > 10**9
    # a large but representable answer: estimate agrees with the real digits
    big = PowRuns(2).next_run(20000, 0)
    true_digits, x = 0, big.start
    while x:
        x //= 10
        true_digits += 1
    assert PowRuns(2).next_run_start_digits(20000, 0) >= true_digits


def test_decimal_digits_is_a_tight_upper_bound():
    for x in [1, 9, 10, 64, 99, 100, 1023, 1024, 10**6, 2**40, 10**12 - 1]:
        true = len(str(x))
        assert true <= decimal_digits(x) <= true + 1


@given(st.integers(2, 5), st.integers(1, 40), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_start_digit_estimate_bounds_the_poly_run(p, min_len, lb):
    a = PolyRuns(p)
    est = a.next_run_start_digits(min_len, lb)
    assert est >= len(str(a.next_run(min_len, lb).start))


def test_affine_start_digit_estimates():
    moved = AffineImage.of(PolyRuns(2), 1, 7)  # translation keeps runs intact
    assert moved.next_run_start_digits(3, 50) >= len(str(moved.next_run(3, 50).start))
    spread = AffineImage.of(PolyRuns(2), 3, 2)  # dilation shatters runs
    assert spread.next_run_start_digits(2, 0) is None
    single = spread.next_run(1, 100)
    est = spread.next_run_start_digits(1, 100)
    assert est is not None and est >= len(str(single.start))


@given(generators, st.integers(1, 6), st.integers(0, 120))
@settings(max_examples=80)
def test_next_run_is_minimal(s, min_len, lower_bound):
    found = s.next_run(min_len, lower_bound)
    if found is None:
        # provably absent: confirm over a generous scan range
        for b in range(max(lower_bound, 1), 300):
            assert any(not s.member(b + i) for i in range(min_len))
        return
    assert found.length == min_len
    assert found.start >= lower_bound
    assert all(s.member(x) for x in found)
    # no earlier start works (scan oracle, bounded to keep it cheap)
    scan_from = max(lower_bound, 1)
    if found.start - scan_from <= 3000:
        for b in range(scan_from, found.start):
            assert any(not s.member(b + i) for i in range(min_len))


@given(run_lists, st.integers(1, 5), st.integers(0, 200))
def test_next_run_minimal_on_run_lists(s, min_len, lower_bound):
    try:
        found = s.next_run(min_len, lower_bound)
    except HorizonExceeded:
        hi = (s.max_element() or 0) + min_len + 1
        for b in range(max(lower_bound, 1), hi):
            assert any(not s.member(b + i) for i in range(min_len))
        return
    assert found.start >= lower_bound
    assert all(s.member(x) for x in found)
    for b in range(max(lower_bound, 1), found.start):
        assert any(not s.member(b + i) for i in range(min_len))


def test_generator_runs_disjoint():
    assert PowRuns(4).runs_disjoint_upto(64)
    assert PowRuns(2).runs_disjoint_upto(64)
    assert PolyRuns(2).runs_disjoint_upto(64)
    assert PolyRuns(3).runs_disjoint_upto(64)


# ------------------------------------------------------------------- RunList shape


@given(st.lists(runs, max_size=10))
def test_runlist_normalization(run_items):
    rl = RunList(run_items)
    for a, b in zip(rl.runs, rl.runs[1:]):
        assert a.end + 1 < b.start  # sorted, disjoint, gap >= 1
    want = set()
    for r in run_items:
        want.update(r)
    assert set(rl.elements()) == want


def test_runlist_merges_adjacent_and_overlapping():
    rl = RunList([Run(4, 2), Run(6, 1), Run(5, 3)])
    assert rl.runs == (Run(4, 4),)


@given(explicit_windows())
def test_window_runs_reconstruct_elements(w):
    got = []
    for r in w.runs():
        got.extend(r)
    assert got == sorted(w.elements())
    assert w.to_run_list().runs == tuple(w.runs())


@given(explicit_windows(), st.integers(0, 250), st.integers(0, 250))
def test_first_gap_matches_scan(w, a, b):
    start, end = min(a, b), max(a, b)
    got = w.first_gap(start, end)
    want = next((x for x in range(start, end + 1) if not w.member(x)), None)
    assert got == want


@given(generators, st.integers(0, 200), st.integers(0, 200))
@settings(max_examples=60)
def test_first_gap_matches_scan_generators(s, a, b):
    start, end = min(a, b), max(a, b)
    got = s.first_gap(start, end)
    want = next((x for x in range(start, end + 1) if not s.member(x)), None)
    assert got == want


@given(explicit_windows(), st.integers(1, 40), st.integers(1, 12))
def test_contains_run_tristate(w, start, length):
    got = w.contains_run(start, length)
    inside = [x for x in range(start, start + length) if w.window.base <= x <= w.window.end]
    all_in_window = len(inside) == length
    if any(not w.member(x) for x in inside):
        assert got is False
    elif all_in_window:
        assert got is True
    else:
        assert got is None


# ------------------------------------------------------------------- text format


def test_parse_examples():
    assert parse_set("gen pow_runs 4") == PowRuns(4)
    rl = parse_set("run 9 3\nrun 16 4")
    assert rl == RunList([Run(9, 3), Run(16, 4)])
    with pytest.raises(OverlapError):
        parse_set("run 9 3\nrun 10 2")


def test_parse_comments_blank_lines_merge():
    rl = parse_set("# header\nrun 4 2\n\nelem 6  # trailing note\n")
    assert rl.runs == (Run(4, 3),)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as exc:
        parse_set("run 4 2\nfrob 1\n")
    assert exc.value.lineno == 2
    with pytest.raises(ParseError) as exc:
        parse_set("run 4\n")
    assert exc.value.lineno == 1
    with pytest.raises(ParseError):
        parse_set("gen pow_runs 4\nrun 1 1\n")
    with pytest.raises(ParseError):
        parse_set("gen congruence 4 9\n")
    with pytest.raises(ParseError):
        parse_set("run 0 2\n")


def test_serialize_round_trips():
    for s in (
        PowRuns(4),
        PolyRuns(3),
        Congruence(7, 3),
        Full(),
        RunList([Run(4, 2), Run(9, 1)]),
        RunList([]),
    ):
        assert parse_set(serialize_set(s)) == s


@given(run_lists)
def test_serialize_round_trips_random(rl):
    assert parse_set(serialize_set(rl)) == rl


def test_serialize_window_as_runs():
    w = ExplicitWindow(Window(3, 6), 0b011011)
    assert parse_set(serialize_set(w)) == w.to_run_list()


def test_serialize_rejects_affine_wrappers():
    with pytest.raises(ValueError):
        serialize_set(Full().translate(3))
