"""Dunkl operators of type A, the alpha-deformed power-sum pairing and Jack polynomials.

Jack polynomials are computed in the ring of symmetric functions of degree n
(monomial basis ``m_mu``) by Gram-Schmidt against the pairing
``<p_lambda, p_mu>_alpha = alpha^len(lambda) z_lambda delta``, processing
partitions in increasing lexicographic order (a linear extension of
dominance).  Restriction to N variables drops every ``m_mu`` with
``len(mu) > N``.
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Iterator, Mapping

from .errors import DomainError, ExpressionError
from .polynomials import MultiPoly

__all__ = [
    "Partition",
    "dunkl_apply",
    "dunkl_commutator",
    "inner_product_alpha",
    "jack_expand",
    "jack_monomial_coefficients",
    "jack_polynomial",
    "jack_power_sums",
    "monomial_symmetric",
    "partitions",
    "power_sum_pairing",
    "transposition_action",
]

MAX_EXPAND_DEGREE = 12


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(not isinstance(p, int) or p <= 0 for p in parts):
            raise DomainError(f"partition parts must be positive integers: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise DomainError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """``"3,1,1"``"""
        text = text.strip()
        if not text:
            return cls(())
        try:
            parts = tuple(int(t) for t in text.split(","))
        except ValueError as exc:
            raise ExpressionError(f"bad partition {text!r}") from exc
        return cls(parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self.parts))

    @property
    def z(self) -> int:
        """prod_i i^{m_i} m_i!"""
        out = 1
        for i, m in Counter(self.parts).items():
            out *= i**m * factorial(m)
        return out

    def dominates(self, other: "Partition") -> bool:
        if self.size != other.size:
            return False
        a = b = 0
        for i in range(max(self.length, other.length)):
            a += self.parts[i] if i < self.length else 0
            b += other.parts[i] if i < other.length else 0
            if a < b:
                return False
        return True

    def padded(self, n: int) -> tuple[int, ...]:
        return self.parts + (0,) * (n - self.length)

    def __str__(self):
        return ",".join(map(str, self.parts))


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of n in decreasing lexicographic order."""
    if max_part is None:
        max_part = n

    def rec(rem: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rem == 0:
            yield ()
            return
        for first in range(min(rem, cap), 0, -1):
            for rest in rec(rem - first, first):
                yield (first,) + rest

    for parts in rec(n, max_part):
        yield Partition(parts)


def transposition_action(p: MultiPoly, j: int, k: int) -> MultiPoly:
    return p.swap(j, k)


def dunkl_apply(p: MultiPoly, j: int, beta) -> MultiPoly:
    """D_j p = dp/dx_j + beta * sum_{k != j} (p - s_jk p) / (x_j - x_k)."""
    n = p.nvars
    if not 1 <= j <= n:
        raise DomainError(f"Dunkl index {j} out of range for {n} variables")
    beta = Fraction(beta)
    out = p.partial(j)
    if beta:
        for k in range(1, n + 1):
            if k != j:
                diff = p - p.swap(j, k)
                if not diff.is_zero():
                    out = out + diff.divide_linear(j, k) * beta
    return out


def dunkl_commutator(j: int, k: int, beta, p: MultiPoly) -> MultiPoly:
    if j == k:
        raise DomainError("commutator needs distinct indices")
    return dunkl_apply(dunkl_apply(p, k, beta), j, beta) - dunkl_apply(dunkl_apply(p, j, beta), k, beta)


def inner_product_alpha(lam: Partition, mu: Partition, alpha) -> Fraction:
    alpha = Fraction(alpha)
    if alpha == 0:
        raise DomainError("alpha must be nonzero")
    if lam != mu:
        return Fraction(0)
    return alpha**lam.length * lam.z


def power_sum_pairing(f: Mapping[Partition, Fraction], g: Mapping[Partition, Fraction], alpha) -> Fraction:
    """Bilinear extension of ``inner_product_alpha`` to power-sum expansions."""
    return sum(
        (c * g[lam] * inner_product_alpha(lam, lam, alpha) for lam, c in f.items() if lam in g),
        Fraction(0),
    )


def _monomial_coefficient_of_power_sum(lam: Partition, mu: Partition) -> int:
    """Coefficient of x^mu in p_lam: ways to place the parts of lam into the rows of mu."""
    target = list(mu.parts)

    def rec(i: int) -> int:
        if i == lam.length:
            return 1 if not any(target) else 0
        part = lam.parts[i]
        total = 0
        for r in range(len(target)):
            if target[r] >= part:
                target[r] -= part
                total += rec(i + 1)
                target[r] += part
        return total

    return rec(0)


_lock = threading.Lock()
_tables: dict[int, tuple] = {}
_jacks: dict[tuple[int, Fraction], dict] = {}


def _basis_tables(n: int):
    """(partitions ascending, p->m matrix, m->p matrix) for degree n, cached."""
    with _lock:
        if n in _tables:
            return _tables[n]
    parts = sorted(partitions(n))
    idx = {lam: i for i, lam in enumerate(parts)}
    size = len(parts)
    p_to_m = [[Fraction(_monomial_coefficient_of_power_sum(lam, mu)) for mu in parts] for lam in parts]
    # invert by Gauss-Jordan; p_to_m is triangular with respect to dominance
    aug = [row[:] + [Fraction(int(i == j)) for j in range(size)] for i, row in enumerate(p_to_m)]
    for col in range(size):
        piv = next(r for r in range(col, size) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    # p = A m as vectors of basis elements, hence m_mu = sum_lam (A^-1)[mu][lam] p_lam
    m_to_p = [row[size:] for row in aug]
    table = (parts, idx, m_to_p)
    with _lock:
        _tables.setdefault(n, table)
        return _tables[n]


def jack_monomial_coefficients(lam: Partition, alpha) -> dict[Partition, Fraction]:
    """Coefficients c_mu with P_lam = sum_mu c_mu m_mu (all mu of size |lam|)."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise DomainError("alpha must be a positive rational")
    n = lam.size
    key = (n, alpha)
    with _lock:
        cached = _jacks.get(key)
    if cached is None:
        cached = _gram_schmidt(n, alpha)
        with _lock:
            cached = _jacks.setdefault(key, cached)
    return dict(cached[lam])


def _gram_schmidt(n: int, alpha: Fraction) -> dict[Partition, dict[Partition, Fraction]]:
    parts, idx, m_to_p = _basis_tables(n)
    size = len(parts)
    weight = [inner_product_alpha(rho, rho, alpha) for rho in parts]
    gram = [
        [sum((m_to_p[a][r] * m_to_p[b][r] * weight[r] for r in range(size)), Fraction(0)) for b in range(size)]
        for a in range(size)
    ]

    def pair(u: list, v: list) -> Fraction:
        return sum(
            (u[a] * v[b] * gram[a][b] for a in range(size) if u[a] for b in range(size) if v[b]),
            Fraction(0),
        )

    basis: list[list[Fraction]] = []
    norms: list[Fraction] = []
    for i in range(size):
        v = [Fraction(int(k == i)) for k in range(size)]
        for prev, nrm in zip(basis, norms):
            c = pair(v, prev) / nrm
            if c:
                v = [x - c * y for x, y in zip(v, prev)]
        basis.append(v)
        norms.append(pair(v, v))
    return {parts[i]: {parts[k]: c for k, c in enumerate(basis[i]) if c} for i in range(size)}


def jack_power_sums(lam: Partition, alpha) -> dict[Partition, Fraction]:
    """P_lam in the power-sum basis."""
    parts, idx, m_to_p = _basis_tables(lam.size)
    out: dict[Partition, Fraction] = {}
    for mu, c in jack_monomial_coefficients(lam, alpha).items():
        for r, rho in enumerate(parts):
            v = m_to_p[idx[mu]][r]
            if v:
                out[rho] = out.get(rho, 0) + c * v
    return {rho: c for rho, c in out.items() if c}


def monomial_symmetric(mu: Partition, N: int) -> MultiPoly:
    if mu.length > N:
        return MultiPoly.zero(N)
    return MultiPoly(N, {e: 1 for e in set(permutations(mu.padded(N)))})


def jack_polynomial(lam: Partition, alpha, N: int) -> MultiPoly:
    if lam.length > N:
        raise DomainError(f"partition {lam} has more than N={N} parts")
    out = MultiPoly.zero(N)
    for mu, c in jack_monomial_coefficients(lam, alpha).items():
        if mu.length <= N:
            out = out + monomial_symmetric(mu, N) * c
    return out


def is_symmetric(p: MultiPoly) -> bool:
    return all(p.swap(i, i + 1) == p for i in range(1, p.nvars))


def jack_expand(p: MultiPoly, alpha, N: int | None = None, max_degree: int = MAX_EXPAND_DEGREE) -> dict[Partition, Fraction]:
    """Coefficients c_lam with p = sum c_lam P_lam (partitions with at most N parts)."""
    N = p.nvars if N is None else N
    if N != p.nvars:
        raise DomainError(f"polynomial has {p.nvars} variables, expected {N}")
    if not is_symmetric(p):
        raise DomainError("polynomial is not symmetric")
    if p.degree() > max_degree:
        raise DomainError(f"degree {p.degree()} exceeds the expansion bound {max_degree}")
    # m_mu coefficient of a symmetric polynomial is the coefficient of x^mu
    rem: dict[Partition, Fraction] = {}
    for e, c in p.terms.items():
        if list(e) == sorted(e, reverse=True):
            rem[Partition(tuple(x for x in e if x))] = c
    out: dict[Partition, Fraction] = {}
    while rem:
        top = max(rem, key=lambda lam: (lam.size, lam))
        c = rem[top]
        out[top] = c
        for mu, v in jack_monomial_coefficients(top, alpha).items():
            if mu.length > N:
                continue
            new = rem.get(mu, 0) - c * v
            if new:
                rem[mu] = new
            else:
                rem.pop(mu, None)
    return dict(sorted(out.items(), key=lambda kv: (-kv[0].size, tuple(-x for x in kv[0].parts))))
