"""Signed eta partial sums and Fock-kernel phase coefficients.

eta_+ = eta_0 + sum_i sigma_i and eta_- = eta_0 + sum_i (-1)^i sigma_i, truncated
at k terms.  Fock coefficients exp(i pi s n^2) are kept exactly as fourth
roots of unity, which is all that occurs when 2s is an integer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .errors import DomainError, ExpressionError

__all__ = [
    "EtaSeries",
    "FockCoefficients",
    "RootOfUnity",
    "eta_convergence",
    "eta_partial",
    "fock_coefficients",
    "parse_sigma_source",
    "spin_classification",
]


@dataclass(frozen=True)
class EtaSeries:
    eta0: object = 0
    sigmas: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "sigmas", tuple(self.sigmas))


def eta_partial(series: EtaSeries, k: int, sign: str = "+"):
    """Partial sum through sigma_k; sigma is 1-indexed."""
    if not 0 <= k <= len(series.sigmas):
        raise DomainError(f"k={k} outside 0..{len(series.sigmas)}")
    if sign not in ("+", "-"):
        raise DomainError("sign must be '+' or '-'")
    total = series.eta0
    for i, s in enumerate(series.sigmas[:k], start=1):
        total = total + (s if sign == "+" or i % 2 == 0 else -s)
    return total


def eta_convergence(sigmas: Iterable, tol: float, budget: int = 10_000) -> int | None:
    """Smallest k <= budget where sigma_k and the step of both partial sums fall below ``tol``.

    Returns ``None`` when the budget runs out first (divergence flag).  A
    finite source that runs dry before the test fires gives its length, since
    the sum is then exact.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    k = 0
    for k, s in enumerate(itertools.islice(sigmas, budget), start=1):
        # |eta_+(k) - eta_+(k-1)| = |eta_-(k) - eta_-(k-1)| = |sigma_k|
        if abs(s) < tol:
            return k
    else:
        if k < budget:
            return k
    return None


def _geometric(r: Fraction) -> Iterator[Fraction]:
    term = Fraction(1)
    while True:
        term *= r
        yield term


def parse_sigma_source(text: str) -> Callable[[], Iterator]:
    """Restartable sigma source from ``"1,1,-1"``, ``"geometric:1/2"`` or ``"constant:1"``."""
    text = text.strip()
    if ":" in text:
        name, _, arg = text.partition(":")
        try:
            val = Fraction(arg)
        except (ValueError, ZeroDivisionError) as exc:
            raise ExpressionError(f"bad generator argument {arg!r}") from exc
        if name == "geometric":
            return lambda: _geometric(val)
        if name == "constant":
            return lambda: itertools.repeat(val)
        raise ExpressionError(f"unknown sigma generator {name!r}")
    if not text:
        return lambda: iter(())
    try:
        values = tuple(Fraction(t) for t in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ExpressionError(f"bad sigma list {text!r}") from exc
    return lambda: iter(values)


@dataclass(frozen=True)
class RootOfUnity:
    """exp(2 pi i * k / 4); only quarter turns are needed for half-integer spin."""

    quarter: int

    def __post_init__(self):
        object.__setattr__(self, "quarter", self.quarter % 4)

    @property
    def pair(self) -> tuple[int, int]:
        return ((1, 0), (0, 1), (-1, 0), (0, -1))[self.quarter]

    def __complex__(self):
        re, im = self.pair
        return complex(re, im)

    def __abs__(self):
        return 1


def _check_spin(s) -> Fraction:
    s = Fraction(s)
    if (2 * s).denominator != 1:
        raise DomainError(f"spin must be an integer or half an integer, got {s}")
    return s


@dataclass(frozen=True)
class FockCoefficients:
    s: Fraction
    n_range: tuple[int, int]
    coeffs: tuple[RootOfUnity, ...]

    def __getitem__(self, n: int) -> RootOfUnity:
        lo, hi = self.n_range
        if not lo <= n <= hi:
            raise IndexError(n)
        return self.coeffs[n - lo]

    def pairs(self) -> list[tuple[int, int]]:
        return [c.pair for c in self.coeffs]


def fock_coefficients(s, n_min: int, n_max: int) -> FockCoefficients:
    """exp(i pi s n^2) for n_min <= n <= n_max."""
    s = _check_spin(s)
    if n_min > n_max:
        raise DomainError("empty n range")
    two_s = int(2 * s)
    # exp(i pi s n^2) = exp(2 pi i * (2s n^2) / 4)
    coeffs = tuple(RootOfUnity(two_s * n * n) for n in range(n_min, n_max + 1))
    return FockCoefficients(s, (n_min, n_max), coeffs)


def spin_classification(s) -> str:
    s = _check_spin(s)
    return "bosonic" if s.denominator == 1 else "fermionic"


def eta_table(series: EtaSeries, ks: Sequence[int]) -> list[dict]:
    return [{"k": k, "eta_plus": eta_partial(series, k, "+"), "eta_minus": eta_partial(series, k, "-")} for k in ks]
