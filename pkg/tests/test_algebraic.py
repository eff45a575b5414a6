import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from hecke_forge import (
    AlgebraicNumber,
    DomainError,
    FieldMismatchError,
    HalfPlanePoint,
    MoebiusMap,
    hyperbolic_distance,
    lambda_q,
    minimal_polynomial,
    moebius_apply,
    moebius_compose,
    real_embed,
)
from oracles import sympy_minpoly


@pytest.mark.parametrize("q", range(3, 31))
def test_minpoly_matches_sympy(q):
    assert minimal_polynomial(q) == sympy_minpoly(q)


@pytest.mark.parametrize(
    "q, value, minpoly",
    [(3, 1.0, (-1, 1)), (4, 1.41421356, (-2, 0, 1)), (5, 1.61803399, (-1, -1, 1))],
)
def test_lambda_q_examples(q, value, minpoly):
    lam, mp = lambda_q(q)
    assert mp == minpoly
    assert float(lam) == pytest.approx(value, abs=1e-8)


def test_lambda_q_rejects_small_q():
    with pytest.raises(DomainError):
        lambda_q(2)


def test_field_examples():
    l4, _ = lambda_q(4)
    l5, _ = lambda_q(5)
    assert (l5 + (-l5)).is_zero()
    assert l4 * l4 == AlgebraicNumber.from_rational(4, 2)
    assert l5.inverse() == l5 - 1
    with pytest.raises(ZeroDivisionError):
        AlgebraicNumber(5, ()).inverse()


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        lambda_q(4)[0] + lambda_q(5)[0]


def test_real_embed():
    assert real_embed(AlgebraicNumber(5, ())) == 0
    assert mpmath.nstr(real_embed(lambda_q(6)[0], 10), 11) == "1.7320508076"
    assert abs(real_embed(lambda_q(6)[0], 10) - mpmath.sqrt(3)) < mpmath.mpf(10) ** -10
    assert abs(real_embed(lambda_q(5)[0], 6) - 1.618034) < 1e-6


def test_moebius_examples():
    T, U = MoebiusMap.T(3), MoebiusMap.U(3)
    assert moebius_apply(T, HalfPlanePoint(0, 1)) == pytest.approx(HalfPlanePoint(0, 1))
    w = moebius_apply(T, HalfPlanePoint(0, 2))
    assert (w.re, w.im) == pytest.approx((0, 0.5))
    w = moebius_apply(U, HalfPlanePoint(0.3, 1.0))
    assert (w.re, w.im) == pytest.approx((1.3, 1.0))
    assert moebius_compose(T, T).is_identity()
    w = moebius_compose(T, U)(HalfPlanePoint(0, 1))
    assert w.z == pytest.approx((-1 + 1j) / 2)
    assert moebius_compose(U, U) == MoebiusMap.U(3, 2)


def test_moebius_det_checked():
    with pytest.raises(DomainError):
        MoebiusMap(1, 1, 1, 1, q=3)


def test_halfplane_rejects_lower():
    with pytest.raises(DomainError):
        HalfPlanePoint(0, 0)


def test_hyperbolic_distance_invariant():
    z, w = HalfPlanePoint(0.2, 0.7), HalfPlanePoint(-1.1, 2.5)
    g = moebius_compose(MoebiusMap.S(5), MoebiusMap.U(5, 2))
    assert hyperbolic_distance(g(z), g(w)) == pytest.approx(hyperbolic_distance(z, w), rel=1e-10)


qs = st.integers(3, 12)


@st.composite
def field_elements(draw, q=None):
    q = draw(qs) if q is None else q
    deg = len(minimal_polynomial(q)) - 1
    coeffs = draw(st.lists(st.fractions(max_denominator=9).map(lambda f: f.limit_denominator(9)), min_size=deg, max_size=deg))
    return AlgebraicNumber(q, coeffs)


@st.composite
def triples(draw):
    q = draw(qs)
    return tuple(draw(field_elements(q)) for _ in range(3))


@given(triples())
def test_ring_axioms(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == AlgebraicNumber(a.q, ())


@given(triples())
def test_inverse_and_embedding(t):
    a, b, _ = t
    if not a.is_zero():
        assert a * a.inverse() == AlgebraicNumber.from_rational(a.q, 1)
        assert (b / a) * a == b
    assert float(a * b) == pytest.approx(float(a) * float(b), rel=1e-9, abs=1e-9)
    assert float(a + b) == pytest.approx(float(a) + float(b), rel=1e-9, abs=1e-9)


@given(qs)
def test_generator_is_root(q):
    lam = AlgebraicNumber.generator(q)
    total = AlgebraicNumber(q, ())
    for i, c in enumerate(minimal_polynomial(q)):
        total = total + lam**i * c
    assert total.is_zero()
    assert float(lam) == pytest.approx(2 * math.cos(math.pi / q), abs=1e-15)
