"""Exact arithmetic in Z[lambda_q] and Moebius maps on the upper half-plane.

``lambda_q = 2 cos(pi/q)`` is an algebraic integer whose minimal polynomial is
obtained from the cyclotomic polynomial of order ``2q``.  Elements of
``Q(lambda_q)`` are stored as coefficient vectors in the power basis
``1, lambda, lambda^2, ...`` reduced modulo that minimal polynomial.

Polynomials are plain tuples of coefficients, lowest degree first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

import mpmath

from .errors import DomainError, FieldMismatchError

__all__ = [
    "AlgebraicNumber",
    "HalfPlanePoint",
    "MoebiusMap",
    "cyclotomic_polynomial",
    "lambda_q",
    "minimal_polynomial",
    "moebius_apply",
    "moebius_compose",
    "real_embed",
]


def _normalize(x):
    # keep integers as int so Z[lambda] arithmetic stays on the fast path
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    if isinstance(x, Rational):
        return _normalize(Fraction(x.numerator, x.denominator))
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _trim(p: Sequence) -> tuple:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = list(_trim(a))
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = b[-1]
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / lead if lead != 1 else a[-1]
        if isinstance(c, float):
            raise TypeError("float leaked into exact polynomial division")
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] -= c * y
        a = list(_trim(a))
    return q, a


def _reduce(p: Sequence, minpoly: Sequence) -> list:
    """Reduce ``p`` modulo a monic polynomial in place of full division."""
    p = list(p)
    n = len(minpoly) - 1
    for top in range(len(p) - 1, n - 1, -1):
        c = p[top]
        if c == 0:
            continue
        p[top] = 0
        base = top - n
        for i in range(n):
            if minpoly[i]:
                p[base + i] -= c * minpoly[i]
    return p[:n]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial."""
    if n < 1:
        raise DomainError("cyclotomic order must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not _trim(rem)
    return tuple(int(c) for c in num)


@lru_cache(maxsize=None)
def minimal_polynomial(q: int) -> tuple[int, ...]:
    """Minimal polynomial of 2cos(pi/q) over Q, monic with integer coefficients.

    With zeta = exp(i pi/q), the cyclotomic polynomial Phi_{2q} is palindromic
    of degree 2d, so zeta^{-d} Phi_{2q}(zeta) is a polynomial in
    y = zeta + 1/zeta.  The powers zeta^k + zeta^{-k} are Chebyshev-like
    polynomials C_k(y) with C_0 = 2, C_1 = y, C_{k+1} = y C_k - C_{k-1}.
    """
    if q < 3:
        raise DomainError(f"q must be >= 3, got {q}")
    phi = cyclotomic_polynomial(2 * q)
    d = (len(phi) - 1) // 2
    cheb = [(2,), (0, 1)]
    for _ in range(2, d + 1):
        nxt = [0] + list(cheb[-1])
        for i, c in enumerate(cheb[-2]):
            nxt[i] -= c
        cheb.append(tuple(nxt))
    out = [0] * (d + 1)
    out[0] = phi[d]
    for k in range(1, d + 1):
        for i, c in enumerate(cheb[k]):
            out[i] += phi[d + k] * c
    poly = _trim(out)
    root = 2 * math.cos(math.pi / q)
    if abs(sum(c * root**i for i, c in enumerate(poly))) > 1e-12 * sum(map(abs, poly)):
        raise AssertionError(f"2cos(pi/{q}) is not a root of {poly}")
    return poly


@lru_cache(maxsize=None)
def _lambda_float(q: int) -> float:
    # correctly rounded, so that e.g. lambda_3 is exactly 1.0
    with mpmath.workdps(40):
        return float(2 * mpmath.cos(mpmath.pi / q))


class AlgebraicNumber:
    """An element of Q(lambda_q), immutable.

    ``coeffs[i]`` is the coefficient of ``lambda_q**i``.  Integer
    coefficients stay Python ints, anything else becomes a ``Fraction``.
    """

    __slots__ = ("_q", "_coeffs", "_float")

    def __init__(self, q: int, coeffs: Iterable = ()):
        mp = minimal_polynomial(q)
        c = [_normalize(x) for x in coeffs]
        if len(c) >= len(mp):
            c = _reduce(c, mp)
        self._q = q
        self._coeffs = _trim(c)
        self._float = None

    @classmethod
    def from_rational(cls, q: int, value) -> "AlgebraicNumber":
        return cls(q, (value,))

    @classmethod
    def generator(cls, q: int) -> "AlgebraicNumber":
        return cls(q, (0, 1))

    @property
    def q(self) -> int:
        return self._q

    @property
    def coeffs(self) -> tuple:
        """Coefficients padded to the field degree."""
        n = self.degree
        return self._coeffs + (0,) * (n - len(self._coeffs))

    @property
    def minpoly(self) -> tuple[int, ...]:
        return minimal_polynomial(self._q)

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_rational(self) -> bool:
        return len(self._coeffs) <= 1

    def leading_coefficient(self):
        return self._coeffs[-1] if self._coeffs else 0

    def _coerce(self, other) -> "AlgebraicNumber":
        if isinstance(other, AlgebraicNumber):
            if other._q != self._q:
                raise FieldMismatchError(f"field tags differ: q={self._q} vs q={other._q}")
            return other
        if isinstance(other, Rational):
            return AlgebraicNumber(self._q, (other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._coeffs, other._coeffs
        n = max(len(a), len(b))
        return AlgebraicNumber(
            self._q,
            [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)],
        )

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(self._q, [-x for x in self._coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraicNumber(self._q, _poly_mul(self._coeffs, other._coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicNumber":
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Z[lambda_q]")
        # invariant: r_i = s_i * self (mod minpoly)
        r0, r1 = list(self.minpoly), [Fraction(x) for x in self._coeffs]
        s0, s1 = [], [Fraction(1)]
        while _trim(r1):
            quo, rem = _poly_divmod([Fraction(x) for x in r0], r1)
            r0, r1 = r1, rem
            prod = _poly_mul(quo, s1)
            n = max(len(s0), len(prod))
            s0, s1 = s1, [
                (s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)
                for i in range(n)
            ]
        g = _trim(r0)
        if len(g) != 1:
            raise ArithmeticError("minimal polynomial is not irreducible")
        return AlgebraicNumber(self._q, [x / g[0] for x in s0])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = AlgebraicNumber(self._q, (1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, AlgebraicNumber):
            return self._q == other._q and self._coeffs == other._coeffs
        if isinstance(other, Rational):
            return self._coeffs == _trim((_normalize(other),))
        return NotImplemented

    def __hash__(self):
        return hash((self._q, self._coeffs))

    def __float__(self):
        if self._float is None:
            lam = _lambda_float(self._q)
            acc = 0.0
            for c in reversed(self._coeffs):
                acc = acc * lam + float(c)
            self._float = acc
        return self._float

    def __repr__(self):
        return f"AlgebraicNumber(q={self._q}, coeffs={self.coeffs!r})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("L" if i == 1 else f"L^{i}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts).replace("+ -", "- ")


def lambda_q(q: int) -> tuple[AlgebraicNumber, tuple[int, ...]]:
    """Return ``(lambda_q, minpoly)`` for ``lambda_q = 2cos(pi/q)``."""
    if q < 3:
        raise DomainError(f"q must be >= 3, got {q}")
    return AlgebraicNumber.generator(q), minimal_polynomial(q)


def real_embed(a: AlgebraicNumber, precision: int = 15) -> mpmath.mpf:
    """Real value of ``a`` with absolute error below ``10**-precision``."""
    if precision < 1:
        raise DomainError("precision must be at least one digit")
    coeffs = a._coeffs
    bound = sum(abs(float(c)) for c in coeffs) + 1
    guard = 10 + int(math.log10(bound)) + len(coeffs)
    with mpmath.workdps(precision + guard):
        lam = 2 * mpmath.cos(mpmath.pi / a.q)
        acc = mpmath.mpf(0)
        for c in reversed(coeffs):
            c = Fraction(c)
            acc = acc * lam + mpmath.mpf(c.numerator) / c.denominator
        return +acc


@dataclass(frozen=True)
class HalfPlanePoint:
    re: float
    im: float

    def __post_init__(self):
        if not self.im > 0:
            raise DomainError(f"point is not in the upper half-plane: im={self.im}")

    @classmethod
    def from_complex(cls, z: complex) -> "HalfPlanePoint":
        return cls(z.real, z.imag)

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)


class MoebiusMap:
    """A unimodular 2x2 matrix over Z[lambda_q], identified up to sign."""

    __slots__ = ("a", "b", "c", "d", "q")

    def __init__(self, a, b, c, d, q: int | None = None):
        entries = [a, b, c, d]
        if q is None:
            qs = {e.q for e in entries if isinstance(e, AlgebraicNumber)}
            if len(qs) > 1:
                raise FieldMismatchError(f"entries from different fields: {sorted(qs)}")
            if not qs:
                raise DomainError("q is required when all entries are rational")
            q = qs.pop()
        entries = [e if isinstance(e, AlgebraicNumber) else AlgebraicNumber(q, (e,)) for e in entries]
        if any(e.q != q for e in entries):
            raise FieldMismatchError("entries from different fields")
        self.a, self.b, self.c, self.d = entries
        self.q = q
        det = self.a * self.d - self.b * self.c
        if det != 1:
            raise DomainError(f"determinant must be 1, got {det}")

    @classmethod
    def _unchecked(cls, q, a, b, c, d) -> "MoebiusMap":
        m = object.__new__(cls)
        m.a, m.b, m.c, m.d, m.q = a, b, c, d, q
        return m

    @classmethod
    def identity(cls, q: int) -> "MoebiusMap":
        one, zero = AlgebraicNumber(q, (1,)), AlgebraicNumber(q, ())
        return cls._unchecked(q, one, zero, zero, one)

    @classmethod
    def T(cls, q: int) -> "MoebiusMap":
        """z -> -1/z"""
        one, zero = AlgebraicNumber(q, (1,)), AlgebraicNumber(q, ())
        return cls._unchecked(q, zero, -one, one, zero)

    @classmethod
    def U(cls, q: int, k: int = 1) -> "MoebiusMap":
        """z -> z + k*lambda_q"""
        one, zero = AlgebraicNumber(q, (1,)), AlgebraicNumber(q, ())
        return cls._unchecked(q, one, AlgebraicNumber(q, (0, k)), zero, one)

    @classmethod
    def S(cls, q: int) -> "MoebiusMap":
        """z -> -1/(z + lambda_q), i.e. T composed with U."""
        one, zero = AlgebraicNumber(q, (1,)), AlgebraicNumber(q, ())
        return cls._unchecked(q, zero, -one, one, AlgebraicNumber.generator(q))

    @property
    def entries(self) -> tuple[AlgebraicNumber, ...]:
        return (self.a, self.b, self.c, self.d)

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap._unchecked(self.q, self.d, -self.b, -self.c, self.a)

    def negated(self) -> "MoebiusMap":
        return MoebiusMap._unchecked(self.q, -self.a, -self.b, -self.c, -self.d)

    def normalized(self) -> "MoebiusMap":
        """Sign representative whose first nonzero entry has a positive leading coefficient."""
        for e in self.entries:
            if not e.is_zero():
                return self if e.leading_coefficient() > 0 else self.negated()
        raise AssertionError("zero matrix cannot have determinant 1")

    def is_identity(self) -> bool:
        n = self.normalized()
        return n.a == 1 and n.d == 1 and n.b.is_zero() and n.c.is_zero()

    def float_entries(self) -> tuple[float, float, float, float]:
        return (float(self.a), float(self.b), float(self.c), float(self.d))

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return moebius_compose(self, other)

    def __call__(self, z: HalfPlanePoint) -> HalfPlanePoint:
        return moebius_apply(self, z)

    def __eq__(self, other):
        if not isinstance(other, MoebiusMap):
            return NotImplemented
        return self.q == other.q and self.normalized().entries == other.normalized().entries

    def __hash__(self):
        return hash((self.q, self.normalized().entries))

    def __repr__(self):
        a, b, c, d = (str(e) for e in self.entries)
        return f"MoebiusMap(q={self.q}, [[{a}, {b}], [{c}, {d}]])"


def moebius_compose(m1: MoebiusMap, m2: MoebiusMap) -> MoebiusMap:
    """Matrix product ``m1 @ m2``, acting as ``z -> m1(m2(z))``."""
    if m1.q != m2.q:
        raise FieldMismatchError(f"cannot compose maps over q={m1.q} and q={m2.q}")
    return MoebiusMap._unchecked(
        m1.q,
        m1.a * m2.a + m1.b * m2.c,
        m1.a * m2.b + m1.b * m2.d,
        m1.c * m2.a + m1.d * m2.c,
        m1.c * m2.b + m1.d * m2.d,
    )


def moebius_apply(m: MoebiusMap, z: HalfPlanePoint) -> HalfPlanePoint:
    if not z.im > 0:
        raise DomainError("point must lie strictly above the real axis")
    a, b, c, d = m.float_entries()
    w = complex(z.re, z.im)
    den = c * w + d
    if den == 0:
        raise DomainError("point maps to infinity")
    image = (a * w + b) / den
    # imaginary part via the isometry formula, immune to cancellation
    im = z.im / (den.real * den.real + den.imag * den.imag)
    return HalfPlanePoint(image.real, im)


def hyperbolic_distance(z: HalfPlanePoint, w: HalfPlanePoint) -> float:
    num = (z.re - w.re) ** 2 + (z.im - w.im) ** 2
    return math.acosh(1 + num / (2 * z.im * w.im))

