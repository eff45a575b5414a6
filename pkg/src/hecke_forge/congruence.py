"""Gamma_0(N) invariants and the genus of the modular curve X_0(N)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import ConsistencyError, DomainError

__all__ = [
    "Gamma0Data",
    "classify_genus",
    "coset_reps",
    "gamma0_invariants",
    "projective_line",
]


def _check_level(N: int) -> None:
    if not isinstance(N, int) or N < 1:
        raise DomainError(f"level N must be a positive integer, got {N!r}")


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def totient(n: int) -> int:
    result = n
    for p in prime_factors(n):
        result -= result // p
    return result


def index(N: int) -> int:
    """[SL2(Z) : Gamma_0(N)] = N * prod_{p | N} (1 + 1/p)."""
    _check_level(N)
    mu = Fraction(N)
    for p in prime_factors(N):
        mu *= 1 + Fraction(1, p)
    assert mu.denominator == 1
    return mu.numerator


@dataclass(frozen=True)
class Gamma0Data:
    N: int
    index: int
    nu2: int
    nu3: int
    cusps: int
    genus: int

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "index": self.index,
            "nu2": self.nu2,
            "nu3": self.nu3,
            "cusps": self.cusps,
            "genus": self.genus,
        }


def genus_formula(mu: int, nu2: int, nu3: int, cusps: int) -> Fraction:
    return 1 + Fraction(mu, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(cusps, 2)


@lru_cache(maxsize=4096)
def gamma0_invariants(N: int) -> Gamma0Data:
    _check_level(N)
    mu = index(N)
    # elliptic points by direct residue counts
    nu2 = sum(1 for a in range(N) if (a * a + 1) % N == 0)
    nu3 = sum(1 for a in range(N) if (a * a + a + 1) % N == 0)
    cusps = sum(totient(gcd(d, N // d)) for d in range(1, N + 1) if N % d == 0)
    g = genus_formula(mu, nu2, nu3, cusps)
    if g.denominator != 1 or g < 0:
        raise ConsistencyError(f"genus of X_0({N}) evaluated to {g}")
    return Gamma0Data(N, mu, nu2, nu3, cusps, int(g))


def projective_line(N: int) -> list[tuple[int, int]]:
    """Points (c:d) of P^1(Z/N), each as the lexicographically smallest representative."""
    _check_level(N)
    if N == 1:
        return [(0, 0)]
    units = [u for u in range(1, N) if gcd(u, N) == 1]
    seen = set()
    out = []
    for c in range(N):
        for d in range(N):
            if gcd(gcd(c, d), N) != 1 or (c, d) in seen:
                continue
            orbit = {((u * c) % N, (u * d) % N) for u in units}
            seen |= orbit
            out.append(min(orbit))
    return sorted(out)


def _complete(c: int, d: int, N: int) -> tuple[int, int]:
    """Find (a, b) with a*d - b*c == 1 mod N."""
    g = gcd(c, N)
    m = N // g
    for a in range(N):
        # solve b*c = a*d - 1 (mod N)
        r = (a * d - 1) % N
        if r % g == 0:
            b = (r // g) * pow((c // g) % m, -1, m) % m if m > 1 else 0
            return a, b
    raise ConsistencyError(f"({c}:{d}) has no completion mod {N}")


def coset_reps(N: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Right coset representatives of Gamma_0(N) in SL2(Z), as matrices mod N.

    Left multiplication by Gamma_0(N) scales the bottom row by a unit, so the
    cosets correspond to P^1(Z/N) through the bottom row (c, d).
    """
    reps = []
    for c, d in projective_line(N):
        a, b = _complete(c, d, N)
        reps.append(((a % N, b % N), (c, d)) if N > 1 else ((1, 0), (0, 1)))
    return reps


def classify_genus(N_max: int, target_g: int, parallel: bool = False) -> list[int]:
    if N_max < 1:
        raise DomainError("N_max must be at least 1")
    if target_g < 0:
        raise DomainError("genus must be nonnegative")
    levels = range(1, N_max + 1)
    if parallel:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor() as ex:
            data = list(ex.map(gamma0_invariants, levels, chunksize=32))
    else:
        data = [gamma0_invariants(N) for N in levels]
    return sorted(x.N for x in data if x.genus == target_g)
