import math
import random

import pytest
from hypothesis import given, strategies as st

from hecke_forge import (
    DomainError,
    ExpressionError,
    HalfPlanePoint,
    HeckeWord,
    MoebiusMap,
    ReductionError,
    discreteness_probe,
    moebius_compose,
    parse_word,
    reduce_point,
    word_apply,
    word_inverse,
    word_multiply,
    word_to_matrix,
)
from hecke_forge.hecke import in_fundamental_domain
from oracles import apply_moves, simulate_reduction


def W(q, text):
    return parse_word(text, q)


def test_multiply_examples():
    w = W(5, "T S^2 T S^3")
    assert word_multiply(w, word_inverse(w)).length == 0
    assert word_multiply(W(3, "T S"), W(3, "S^2 T")).length == 0
    w = word_multiply(W(5, "T S^2"), W(5, "T S"))
    assert str(w) == "T S^2 T S" and w.length == 4


def test_inverse_examples():
    assert word_inverse(HeckeWord.identity(4)).length == 0
    assert str(word_inverse(W(6, "T S^2"))) == "S^4 T"
    assert str(word_inverse(W(4, "T S T S^3"))) == "S T S^3 T"


def test_parse_normalizes_and_rejects():
    assert W(3, "S S T T S").length == 0  # S^3 = 1
    assert str(W(5, "S T T S")) == "S^2"
    assert str(W(4, "S^-1")) == "S^3"
    assert W(3, "").length == 0
    with pytest.raises(ExpressionError):
        W(3, "T X")


def test_matrix_examples():
    assert word_to_matrix(HeckeWord.identity(5)).is_identity()
    a, b, c, d = word_to_matrix(HeckeWord.S(3)).float_entries()
    assert (a, b, c, d) == (0, -1, 1, 1)
    for q in range(3, 9):
        assert word_to_matrix(HeckeWord.from_syllables(q, [1] * q)).is_identity()
        assert HeckeWord.from_syllables(q, [1] * q).length == 0


def test_U_word_is_translation():
    for q in range(3, 8):
        assert word_to_matrix(HeckeWord.U(q, 1)) == MoebiusMap.U(q)
        assert word_to_matrix(HeckeWord.U(q, -2)) == MoebiusMap.U(q, -2)


def test_reduce_examples():
    r = reduce_point(HalfPlanePoint(0, 1), 5)
    assert r.steps == 0 and r.word.length == 0 and (r.reduced.re, r.reduced.im) == (0, 1)
    r = reduce_point(HalfPlanePoint(2.7, 0.8), 3)
    assert r.reduced.re == pytest.approx(0.410958904, abs=1e-6)
    assert r.reduced.im == pytest.approx(1.095890411, abs=1e-6)
    ref, moves = simulate_reduction(2.7 + 0.8j, 3)
    assert moves == [("U", -3), ("T",)]
    assert r.word == word_multiply(HeckeWord.T(3), HeckeWord.U(3, -3))
    r = reduce_point(HalfPlanePoint(1, 1), 3)
    assert r.steps == 1 and r.reduced.z == pytest.approx(1j, abs=1e-12)


def test_reduce_budget():
    with pytest.raises(ReductionError):
        reduce_point(HalfPlanePoint(0.01, 1e-7), 7, max_steps=3)
    with pytest.raises(DomainError):
        reduce_point(HalfPlanePoint(0, 1), 2)


def test_reduction_agrees_with_simulator():
    rng = random.Random(7)
    for q in (3, 4, 5, 6, 7, 9):
        for _ in range(300):
            z = complex(rng.uniform(-6, 6), rng.uniform(0.05, 4))
            r = reduce_point(HalfPlanePoint(z.real, z.imag), q)
            ref, moves = simulate_reduction(z, q)
            assert r.steps == len(moves)
            assert abs(r.reduced.z - ref) < 1e-9
            assert abs(apply_moves(z, moves, q) - ref) < 1e-12


def test_exact_matrix_reproduces_reduction():
    rng = random.Random(3)
    for q in (3, 5, 8):
        for _ in range(40):
            z = HalfPlanePoint(rng.uniform(-3, 3), rng.uniform(0.05, 3))
            r = reduce_point(z, q)
            assert abs(word_to_matrix(r.word)(z).z - r.reduced.z) < 1e-9
            assert abs(word_apply(r.word, z).z - r.reduced.z) < 1e-9


@st.composite
def words(draw, q=None):
    q = draw(st.integers(3, 8)) if q is None else q
    syl = draw(st.lists(st.integers(0, q - 1), max_size=12))
    return HeckeWord.from_syllables(q, syl)


@st.composite
def word_triples(draw):
    q = draw(st.integers(3, 8))
    return tuple(draw(words(q)) for _ in range(3))


@given(word_triples())
def test_group_laws(t):
    a, b, c = t
    assert (a * b) * c == a * (b * c)
    assert (a * a.inverse()).length == 0
    assert (a.inverse() * a).length == 0
    assert (a * b).inverse() == b.inverse() * a.inverse()


@given(word_triples())
def test_homomorphism(t):
    a, b, _ = t
    assert word_to_matrix(a * b) == moebius_compose(word_to_matrix(a), word_to_matrix(b))


@given(words())
def test_normal_form_alternates(w):
    s = w.syllables
    assert all((x == 0) != (y == 0) for x, y in zip(s, s[1:]))
    assert all(0 <= x < w.q for x in s)
    assert parse_word(str(w), w.q) == w if w.length else True


@given(st.integers(3, 9), st.floats(-20, 20), st.floats(0.01, 20))
def test_reduced_point_in_domain(q, x, y):
    r = reduce_point(HalfPlanePoint(x, y), q)
    assert in_fundamental_domain(r.reduced, q, 1e-9)
    assert abs(word_apply(r.word, HalfPlanePoint(x, y)).z - r.reduced.z) < 1e-8


def test_probe_lambda3_small_eps():
    res = discreteness_probe(1.0, word_length=8, eps=1e-4)
    assert res.verdict == "discrete-consistent" and not res.truncated


def test_probe_lambda5():
    res = discreteness_probe(2 * math.cos(math.pi / 5), word_length=8)
    assert res.verdict == "discrete-consistent"


def test_probe_truncation_is_inconclusive():
    res = discreteness_probe(1.0, word_length=8, sample_count=100)
    assert res.truncated and res.verdict == "inconclusive"


def test_probe_lambda_at_least_two():
    assert discreteness_probe(2.0, word_length=5).verdict == "discrete-consistent"
    assert discreteness_probe(2.5, word_length=5).verdict == "discrete-consistent"


def test_probe_rejects_bad_args():
    with pytest.raises(DomainError):
        discreteness_probe(-1.0)
    with pytest.raises(DomainError):
        discreteness_probe(1.0, eps=0)
