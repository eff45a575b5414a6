"""Sparse multivariate polynomials over Q and their text syntax.

Expression syntax: ``3*x1^2*x2 - 1/2*x3``.  A term is a product of an
optional rational coefficient and variable powers ``xN^k``; variables are
1-based.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ConsistencyError, DomainError, ExpressionError

__all__ = ["MultiPoly", "parse_poly", "parse_rational"]


def parse_rational(text: str) -> Fraction:
    """``"3"``, ``"-1/2"`` or a decimal such as ``"0.25"``."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ExpressionError(f"not a rational number: {text!r}") from exc


class MultiPoly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], object] | None = None):
        if nvars < 0:
            raise DomainError("number of variables must be nonnegative")
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise DomainError(f"exponent vector {exp} does not fit {nvars} variables")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
        self.nvars = nvars
        self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, j: int, power: int = 1) -> "MultiPoly":
        """The monomial x_j^power, j 1-based."""
        if not 1 <= j <= nvars:
            raise DomainError(f"variable x{j} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[j - 1] = power
        return cls(nvars, {tuple(exp): 1})

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "MultiPoly":
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = {e: c for e, c in terms.items() if c}
        p._hash = None
        return p

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, exp: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def _same(self, other: "MultiPoly") -> None:
        if self.nvars != other.nvars:
            raise DomainError(f"polynomials in {self.nvars} and {other.nvars} variables")

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.nvars, other)
        self._same(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, MultiPoly) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = Fraction(other)
            return MultiPoly._raw(self.nvars, {e: c * v for e, v in self.terms.items()})
        self._same(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = MultiPoly.constant(self.nvars, 1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # operators used by the Dunkl module
    def partial(self, j: int) -> "MultiPoly":
        if not 1 <= j <= self.nvars:
            raise DomainError(f"variable x{j} out of range")
        i = j - 1
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MultiPoly._raw(self.nvars, out)

    def swap(self, j: int, k: int) -> "MultiPoly":
        """Exchange x_j and x_k."""
        if not (1 <= j <= self.nvars and 1 <= k <= self.nvars):
            raise DomainError(f"transposition ({j} {k}) out of range for {self.nvars} variables")
        if j == k:
            return self
        a, b = j - 1, k - 1
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[a], ne[b] = ne[b], ne[a]
            out[tuple(ne)] = c
        return MultiPoly._raw(self.nvars, out)

    def divide_linear(self, j: int, k: int) -> "MultiPoly":
        """Exact quotient by (x_j - x_k); raises ConsistencyError on a remainder."""
        a, b = j - 1, k - 1
        rem = dict(self.terms)
        quo: dict = {}
        # peel off the highest power of x_j first: c x^e = c x^(e - e_j) (x_j - x_k) + c x^(e - e_j + e_k)
        while True:
            live = [e for e, c in rem.items() if c and e[a] > 0]
            if not live:
                break
            e = max(live, key=lambda t: (t[a], t))
            c = rem.pop(e)
            qe = list(e)
            qe[a] -= 1
            qe = tuple(qe)
            quo[qe] = quo.get(qe, 0) + c
            ne = list(qe)
            ne[b] += 1
            ne = tuple(ne)
            rem[ne] = rem.get(ne, 0) + c
        if any(rem.values()):
            raise ConsistencyError(f"{self} is not divisible by x{j} - x{k}")
        return MultiPoly._raw(self.nvars, quo)

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        order = sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e)))
        out = []
        for e in order:
            c = self.terms[e]
            mono = "*".join(
                f"x{i + 1}" if p == 1 else f"x{i + 1}^{p}" for i, p in enumerate(e) if p
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not out:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(out)


_TOKENS = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?(?:/\d+)?)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*^]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKENS.match(text, pos)
        if not m or m.end() == pos:
            raise ExpressionError(f"unexpected character at position {pos} in {text!r}")
        if m.group("num"):
            out.append(("num", m.group("num")))
        elif m.group("var"):
            out.append(("var", m.group("idx")))
        else:
            out.append(("op", m.group("op")))
        pos = m.end()
    return out


def parse_poly(text: str, nvars: int | None = None) -> MultiPoly:
    """Parse an expression; ``nvars`` defaults to the largest variable index used."""
    toks = _tokenize(text)
    if not toks:
        raise ExpressionError("empty polynomial expression")
    terms: list[tuple[Fraction, dict[int, int]]] = []
    i = 0
    sign = 1
    expect_term = True
    while i < len(toks):
        kind, val = toks[i]
        if kind == "op" and val in "+-":
            if not expect_term:
                expect_term = True
                sign = 1
            if val == "-":
                sign = -sign
            i += 1
            continue
        if not expect_term:
            raise ExpressionError(f"missing operator before {val!r}")
        coeff = Fraction(sign)
        powers: dict[int, int] = {}
        while True:
            if i >= len(toks):
                raise ExpressionError("expression ends inside a term")
            kind, val = toks[i]
            if kind == "num":
                coeff *= parse_rational(val)
                i += 1
            elif kind == "var":
                idx = int(val)
                if idx < 1:
                    raise ExpressionError("variables are numbered from x1")
                i += 1
                p = 1
                if i < len(toks) and toks[i] == ("op", "^"):
                    if i + 1 >= len(toks) or toks[i + 1][0] != "num" or not toks[i + 1][1].isdigit():
                        raise ExpressionError("exponent must be a nonnegative integer")
                    p = int(toks[i + 1][1])
                    i += 2
                powers[idx] = powers.get(idx, 0) + p
            else:
                raise ExpressionError(f"unexpected {val!r}")
            if i < len(toks) and toks[i] == ("op", "*"):
                i += 1
                continue
            break
        terms.append((coeff, powers))
        expect_term = False
        sign = 1
    if expect_term:
        raise ExpressionError("expression ends with an operator")
    used = max((k for _, pw in terms for k in pw), default=0)
    n = used if nvars is None else nvars
    if used > n:
        raise ExpressionError(f"x{used} used but only {n} variables declared")
    out: dict = {}
    for c, pw in terms:
        exp = [0] * n
        for k, p in pw.items():
            exp[k - 1] += p
        out[tuple(exp)] = out.get(tuple(exp), 0) + c
    return MultiPoly(n, out)
