import math

import pytest
from hypothesis import given, strategies as st

from hecke_forge import (
    DomainError,
    GradingLocus,
    UnsupportedGradingError,
    classify_point,
    contains,
    grading_positions,
    make_domain,
    tile,
)
from hecke_forge.domains import describe, load_description

R5 = math.sqrt(5) / 3
R2 = math.sqrt(2) / 3


def test_make_domain_examples():
    d = make_domain("picard")
    assert (d.x_range, d.y_range) == ((0, 0.5), (0, 0.5))
    d = make_domain("vinberg", R2)
    assert d.x_range == (0, R2) and d.y_range == (0, 0.5)
    d = make_domain("gamma0-vinberg", R5)
    assert d.x_range == (-R5, R5)
    with pytest.raises(DomainError):
        make_domain("picard", 0.7)
    with pytest.raises(DomainError):
        make_domain("vinberg")
    with pytest.raises(DomainError):
        make_domain("escher", 1)


def test_contains_examples():
    assert contains(make_domain("picard"), (0.25, 0.25))
    assert not contains(make_domain("picard"), (0.6, 0.25))
    assert contains(make_domain("vinberg", R2), (R2, 0.5))


def test_grading_examples():
    pos = grading_positions(GradingLocus("simplex", "odd-half-multiples"), (-1, 1))
    assert pos == pytest.approx([-0.5, 0.5], abs=1e-9)
    pos = grading_positions(GradingLocus("complex", "all-multiples", R5), (-1, 1))
    assert pos == pytest.approx([-R5, 0, R5], abs=1e-9)
    for window in [(-2, 2), (-1.5, 1.5), (-10, 10)]:
        pos = grading_positions(GradingLocus("complex", "pair", R5), window)
        assert pos == pytest.approx([-2 * R5, 2 * R5], abs=1e-9)
    assert grading_positions(GradingLocus("complex", "pair", R5), (-1, 1)) == []


def test_tile_examples():
    tiles = tile(make_domain("picard"), 1, (0, 1.5))
    assert [t.x_range[0] for t in tiles] == pytest.approx([0, 0.5, 1.0])
    assert len(tile(make_domain("vinberg", R5), 1, (0, 2 * R5))) == 2
    assert tile(make_domain("picard"), 1, (1, 1)) == []
    with pytest.raises(UnsupportedGradingError):
        tile(make_domain("picard"), 2, (0, 1))


def test_tile_parallel_matches_serial():
    d = make_domain("gamma0-vinberg", R5)
    assert tile(d, 1, (-200, 300), parallel=True) == tile(d, 1, (-200, 300))


def test_classify_examples():
    simplex = GradingLocus("simplex", "odd-half-multiples")
    assert classify_point(make_domain("picard"), [simplex], (0.5, 0.2)) == "on-simplex"
    pair = GradingLocus("complex", "pair", R5)
    assert classify_point(make_domain("vinberg", R5), [pair], (2 * R5, 0.1)) == "on-complex"
    assert classify_point(make_domain("picard"), [simplex], (10, 10)) == "exterior"
    assert classify_point(make_domain("picard"), [simplex], (0.2, 0.2)) == "interior"


def test_description_round_trip():
    d = make_domain("gamma0-vinberg", R5)
    loci = [GradingLocus("complex", "pair", R5), GradingLocus("simplex", "odd-half-multiples", 1.0, "u")]
    import json

    d2, loci2 = load_description(json.dumps(describe(d, loci)))
    assert d2 == d and loci2 == loci


windows = st.tuples(st.floats(-20, 20), st.floats(0, 20)).map(lambda t: (t[0], t[0] + t[1]))
rules = st.sampled_from(["odd-half-multiples", "all-multiples", "pair"])
periods = st.floats(0.1, 3)


@given(rules, periods, windows)
def test_positions_in_window_and_sorted(rule, p, window):
    pos = grading_positions(GradingLocus("simplex", rule, p), window)
    lo, hi = window
    assert pos == sorted(pos)
    assert all(lo - 1e-9 <= x <= hi + 1e-9 for x in pos)


@given(rules, periods, st.floats(0, 20))
def test_positions_symmetric(rule, p, h):
    pos = grading_positions(GradingLocus("complex", rule, p), (-h, h))
    assert pos == pytest.approx([-x for x in reversed(pos)], abs=1e-9)


@given(st.sampled_from(["picard", "gamma0-picard", "vinberg", "gamma0-vinberg"]), windows)
def test_tiles_cover_window(label, window):
    d = make_domain(label, None if "picard" in label else R5)
    tiles = tile(d, 1, window)
    lo, hi = window
    if hi - lo < 1e-9:
        return
    assert tiles[0].x_range[0] <= lo + 1e-9 and tiles[-1].x_range[1] >= hi - 1e-9
    for a, b in zip(tiles, tiles[1:]):
        assert b.index == a.index + 1
        assert b.x_range[0] == pytest.approx(a.x_range[1])


@given(st.floats(-3, 3), st.floats(0, 0.5), st.sampled_from([1e-6, 1e-9, 1e-12]))
def test_classify_stable_in_tol(x, y, tol):
    d = make_domain("gamma0-picard")
    loci = [GradingLocus("simplex", "odd-half-multiples")]
    a = classify_point(d, loci, (x, y), tol)
    b = classify_point(d, loci, (x, y), tol / 10)
    if a != b:
        # only a point within tol of a locus may change class
        assert a == "on-simplex"
