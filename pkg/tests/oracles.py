"""Reference computations that share no code with the package.

Each oracle takes a different route to the same answer: sympy for algebraic
numbers and symbolic calculus, permutation orbits for Gamma_0(N), plain
complex arithmetic for reduction.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import sympy as sp


# -- algebraic numbers ---------------------------------------------------------

def sympy_minpoly(q: int) -> tuple[int, ...]:
    x = sp.Symbol("x")
    poly = sp.Poly(sp.minimal_polynomial(2 * sp.cos(sp.pi / q), x), x)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


# -- reduction -----------------------------------------------------------------

def simulate_reduction(z: complex, q: int, max_steps: int = 200):
    """Translate-then-invert loop with its own lambda and tolerance handling.

    Returns (reduced point, list of moves) where a move is ("U", k) or ("T",).
    """
    lam = 2 * math.cos(math.pi / q)
    moves = []
    for _ in range(max_steps):
        if abs(z.real) > lam / 2 + 1e-9:
            k = round(z.real / lam)
            z -= k * lam
            moves.append(("U", -k))
        elif abs(z) ** 2 < 1 - 1e-9:
            z = -1 / z
            moves.append(("T",))
        else:
            return z, moves
    raise RuntimeError("no convergence")


def apply_moves(z: complex, moves, q: int) -> complex:
    lam = 2 * math.cos(math.pi / q)
    for m in moves:
        z = z + m[1] * lam if m[0] == "U" else -1 / z
    return z


# -- Gamma_0(N) by permutation orbits -------------------------------------------

def _p1(N: int):
    units = [u for u in range(N) if math.gcd(u, N) == 1] or [0]
    seen, points = {}, []
    for c in range(N):
        for d in range(N):
            if math.gcd(math.gcd(c, d), N) != 1:
                continue
            key = min(((u * c) % N, (u * d) % N) for u in units)
            if key not in seen:
                seen[key] = len(points)
                points.append(key)
    canon = {}
    for c in range(N):
        for d in range(N):
            if math.gcd(math.gcd(c, d), N) == 1:
                canon[(c, d)] = seen[min(((u * c) % N, (u * d) % N) for u in units)]
    return points, canon


def gamma0_bruteforce(N: int) -> dict:
    """Right cosets Gamma_0(N) g <-> bottom rows (c:d) in P^1(Z/N).

    Elliptic points are fixed cosets of the order-2 and order-3 generators,
    cusps are orbits of the translation (c:d) -> (c:c+d).
    """
    if N == 1:
        return {"index": 1, "nu2": 1, "nu3": 1, "cusps": 1, "genus": 0}
    points, canon = _p1(N)

    def act(pt, m):
        (c, d), (a, b, e, f) = pt, m
        return canon[((c * a + d * e) % N, (c * b + d * f) % N)]

    S = (0, -1, 1, 0)
    R = (0, -1, 1, 1)
    U = (1, 1, 0, 1)
    nu2 = sum(1 for i, p in enumerate(points) if act(p, S) == i)
    nu3 = sum(1 for i, p in enumerate(points) if act(p, R) == i)
    orbit = [-1] * len(points)
    cusps = 0
    for i in range(len(points)):
        if orbit[i] < 0:
            j = i
            while orbit[j] < 0:
                orbit[j] = cusps
                j = act(points[j], U)
            cusps += 1
    mu = len(points)
    g = 1 + Fraction(mu, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(cusps, 2)
    return {"index": mu, "nu2": nu2, "nu3": nu3, "cusps": cusps, "genus": g}


def sl2_count(N: int) -> int:
    """|SL(2, Z/N)| by enumeration (small N only)."""
    r = range(N)
    return sum(1 for a in r for b in r for c in r for d in r if (a * d - b * c) % N == 1 % N)


def gamma0_mod_count(N: int) -> int:
    r = range(N)
    return sum(1 for a in r for b in r for d in r if (a * d) % N == 1 % N)


# -- symbolic calculus -----------------------------------------------------------

def symbols(n: int):
    return sp.symbols(f"x1:{n + 1}")


def to_sympy(p, xs):
    expr = sp.Integer(0)
    for exp, c in p.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for x, e in zip(xs, exp):
            term *= x**e
        expr += term
    return sp.expand(expr)


def dunkl_sympy(expr, xs, j: int, beta):
    """D_j by sympy differentiation and rational cancellation (j 1-based)."""
    xj = xs[j - 1]
    out = sp.diff(expr, xj)
    for k, xk in enumerate(xs, start=1):
        if k != j:
            swapped = expr.subs({xj: xk, xk: xj}, simultaneous=True)
            out += sp.Rational(beta) * sp.cancel((expr - swapped) / (xj - xk))
    return sp.expand(out)


def schur_jacobi_trudi(parts, xs):
    """s_lambda = det(h_{lambda_i - i + j}) in the given variables."""
    n = len(parts)

    def h(k):
        if k < 0:
            return sp.Integer(0)
        if k == 0:
            return sp.Integer(1)
        return sp.expand(sum(sp.prod(c) for c in _multisets(xs, k)))

    if n == 0:
        return sp.Integer(1)
    M = sp.Matrix(n, n, lambda i, j: h(parts[i] - i + j))
    return sp.expand(M.det())


def _multisets(xs, k):
    from itertools import combinations_with_replacement

    return combinations_with_replacement(xs, k)


def laplace_beltrami(expr, xs, alpha):
    """(alpha/2) sum x_i^2 d_i^2 + sum_{i != j} x_i^2/(x_i - x_j) d_i, which Jack polynomials diagonalize."""
    a = sp.Rational(alpha)
    out = sum(a / 2 * x**2 * sp.diff(expr, x, 2) for x in xs)
    n = len(xs)
    for i in range(n):
        for j in range(i + 1, n):
            xi, xj = xs[i], xs[j]
            num = xi**2 * sp.diff(expr, xi) - xj**2 * sp.diff(expr, xj)
            out += sp.cancel(num / (xi - xj))
    return sp.expand(out)


def jack_eigenvalue(parts, N: int, alpha):
    a = sp.Rational(alpha)
    return sum(a / 2 * l * (l - 1) + l * (N - i) for i, l in enumerate(parts, start=1))


def fock_direct(s: Fraction, n: int) -> complex:
    return cmath.exp(1j * math.pi * float(s) * n * n)
