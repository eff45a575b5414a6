"""Hecke group words, matrices, fundamental-domain reduction and a discreteness probe.

H(lambda_q) is the free product <T | T^2> * <S | S^q>, so every element has a
unique alternating normal form.  A word is stored as a tuple of ints where
``0`` stands for ``T`` and ``k`` in ``1..q-1`` stands for ``S^k``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .algebraic import AlgebraicNumber, HalfPlanePoint, MoebiusMap, _lambda_float
from .errors import DomainError, ExpressionError, FieldMismatchError, ReductionError

__all__ = [
    "HeckeWord",
    "ProbeResult",
    "ReductionResult",
    "discreteness_probe",
    "in_fundamental_domain",
    "parse_word",
    "reduce_point",
    "word_inverse",
    "word_multiply",
    "word_apply",
    "word_to_matrix",
]

T_SYL = 0
BOUNDARY_TOL = 1e-9

_TOKEN = re.compile(r"^(?:T|S(?:\^(-?\d+))?)$")


def _check_q(q: int) -> None:
    if not isinstance(q, int) or q < 3:
        raise DomainError(f"q must be an integer >= 3, got {q!r}")


def _append(out: list, syl: int, q: int) -> None:
    """Push one syllable onto a normal-form list, cancelling at the end."""
    if syl == T_SYL:
        if out and out[-1] == T_SYL:
            out.pop()
        else:
            out.append(T_SYL)
        return
    syl %= q
    if syl == 0:
        return
    if out and out[-1] != T_SYL:
        k = (out[-1] + syl) % q
        if k:
            out[-1] = k
        else:
            out.pop()
    else:
        out.append(syl)


@dataclass(frozen=True)
class HeckeWord:
    """Element of H(lambda_q) in Kurosh normal form."""

    q: int
    syllables: tuple[int, ...] = ()

    def __post_init__(self):
        _check_q(self.q)
        prev = None
        for s in self.syllables:
            if not isinstance(s, int) or not 0 <= s < self.q:
                raise DomainError(f"invalid syllable {s!r} for q={self.q}")
            if prev is not None and (prev == T_SYL) == (s == T_SYL):
                raise DomainError("adjacent syllables of the same kind; use HeckeWord.from_syllables")
            prev = s

    @classmethod
    def from_syllables(cls, q: int, syllables: Iterable[int]) -> "HeckeWord":
        """Build a word from arbitrary syllables, reducing to normal form."""
        _check_q(q)
        out: list[int] = []
        for s in syllables:
            _append(out, s, q)
        return cls(q, tuple(out))

    @classmethod
    def identity(cls, q: int) -> "HeckeWord":
        return cls(q)

    @classmethod
    def T(cls, q: int) -> "HeckeWord":
        return cls(q, (T_SYL,))

    @classmethod
    def S(cls, q: int, k: int = 1) -> "HeckeWord":
        return cls.from_syllables(q, (k,))

    @classmethod
    def U(cls, q: int, k: int = 1) -> "HeckeWord":
        """Translation z -> z + k*lambda_q, which equals (T S)^k."""
        if k >= 0:
            return cls.from_syllables(q, (T_SYL, 1) * k)
        return cls.from_syllables(q, (q - 1, T_SYL) * (-k))

    @classmethod
    def parse(cls, q: int, text: str) -> "HeckeWord":
        return parse_word(text, q)

    @property
    def length(self) -> int:
        return len(self.syllables)

    def __len__(self):
        return len(self.syllables)

    def __mul__(self, other: "HeckeWord") -> "HeckeWord":
        return word_multiply(self, other)

    def inverse(self) -> "HeckeWord":
        return word_inverse(self)

    def __str__(self):
        return " ".join("T" if s == T_SYL else ("S" if s == 1 else f"S^{s}") for s in self.syllables)


def parse_word(text: str, q: int) -> HeckeWord:
    """Parse ``"T S^2 T S"``.  Negative powers and non-reduced input are accepted."""
    _check_q(q)
    syls = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise ExpressionError(f"bad word token {tok!r}")
        if tok == "T":
            syls.append(T_SYL)
        else:
            syls.append(int(m.group(1)) if m.group(1) else 1)
    return HeckeWord.from_syllables(q, syls)


def word_multiply(w1: HeckeWord, w2: HeckeWord) -> HeckeWord:
    if w1.q != w2.q:
        raise FieldMismatchError(f"cannot multiply words over q={w1.q} and q={w2.q}")
    out = list(w1.syllables)
    rest = w2.syllables
    i = 0
    # only the junction can cancel; after the first surviving syllable the rest is already alternating
    while i < len(rest):
        before = len(out)
        last = out[-1] if out else None
        _append(out, rest[i], w1.q)
        i += 1
        if last is None or len(out) >= before:
            break
    out.extend(rest[i:])
    return HeckeWord(w1.q, tuple(out))


def word_inverse(w: HeckeWord) -> HeckeWord:
    q = w.q
    return HeckeWord(q, tuple(T_SYL if s == T_SYL else q - s for s in reversed(w.syllables)))


def word_to_matrix(w: HeckeWord) -> MoebiusMap:
    """Exact matrix of a word, with T = [[0,-1],[1,0]] and S = [[0,-1],[1,lambda_q]]."""
    q = w.q
    lam = AlgebraicNumber.generator(q)
    one, zero = AlgebraicNumber(q, (1,)), AlgebraicNumber(q, ())
    a, b, c, d = one, zero, zero, one
    for s in w.syllables:
        if s == T_SYL:
            a, b, c, d = b, -a, d, -c
        else:
            for _ in range(s):
                a, b, c, d = b, lam * b - a, d, lam * d - c
    return MoebiusMap._unchecked(q, a, b, c, d)


def word_apply(w: HeckeWord, z: HalfPlanePoint) -> HalfPlanePoint:
    """Floating-point image of ``z`` under the word; much cheaper than the exact matrix."""
    lam = _lambda_float(w.q)
    a, b, c, d = 1.0, 0.0, 0.0, 1.0
    for s in w.syllables:
        if s == T_SYL:
            a, b, c, d = b, -a, d, -c
        else:
            for _ in range(s):
                a, b, c, d = b, lam * b - a, d, lam * d - c
    w_ = complex(z.re, z.im)
    den = c * w_ + d
    img = (a * w_ + b) / den
    return HalfPlanePoint(img.real, z.im / abs(den) ** 2)


def in_fundamental_domain(z: HalfPlanePoint, q: int, tol: float = BOUNDARY_TOL) -> bool:
    """Closed domain {|re| <= lambda_q/2, |z| >= 1}; boundary points count as inside."""
    half = _lambda_float(q) / 2
    return abs(z.re) <= half + tol and z.re * z.re + z.im * z.im >= 1 - tol


@dataclass(frozen=True)
class ReductionResult:
    reduced: HalfPlanePoint
    word: HeckeWord
    steps: int


def reduce_point(z: HalfPlanePoint, q: int, max_steps: int = 200) -> ReductionResult:
    """Move ``z`` into the fundamental domain of H(lambda_q).

    Alternates a single translation by the nearest multiple of lambda_q with
    the inversion T.  The returned word ``g`` satisfies ``g(z) == reduced``.
    """
    _check_q(q)
    if not z.im > 0:
        raise DomainError("point must lie in the upper half-plane")
    if max_steps < 1:
        raise DomainError("max_steps must be positive")
    lam = _lambda_float(q)
    half = lam / 2
    x, y = z.re, z.im
    syls: list[int] = []  # normal form of g, accumulated by left multiplication
    steps = 0
    while True:
        if abs(x) > half + BOUNDARY_TOL:
            k = math.floor(x / lam + 0.5)
            x -= k * lam
            syls = list(word_multiply(HeckeWord.U(q, -k), HeckeWord(q, tuple(syls))).syllables)
        elif x * x + y * y < 1 - BOUNDARY_TOL:
            r = x * x + y * y
            x, y = -x / r, y / r
            syls = list(word_multiply(HeckeWord.T(q), HeckeWord(q, tuple(syls))).syllables)
        else:
            break
        steps += 1
        if steps > max_steps:
            raise ReductionError(
                f"reduction of {z.re}+{z.im}i did not terminate within {max_steps} steps"
            )
    return ReductionResult(HalfPlanePoint(x, y), HeckeWord(q, tuple(syls)), steps)


@dataclass(frozen=True)
class ProbeResult:
    verdict: str
    lam: float
    elements: int
    truncated: bool
    witness: tuple[str, str] | None = None
    distance: float | None = None


def _power_bound(lam: float, word_length: int) -> int:
    # S is elliptic for lam < 2 with rotation angle 2*acos(lam/2); its (approximate) order bounds the exponents
    if lam < 2:
        return max(1, math.ceil(math.pi / math.acos(lam / 2) - 1e-9))
    return max(1, word_length)


def discreteness_probe(
    lam: float,
    word_length: int = 10,
    sample_count: int = 500_000,
    eps: float = 1e-3,
    seed: int = 0,
) -> ProbeResult:
    """Empirical test for discreteness of H(lam) through the orbit of ``i``.

    Enumerates alternating words ``T S^k T S^k ...`` of up to ``word_length``
    syllables with ``1 <= k <= m``, where ``m`` is the (approximate) order of
    the elliptic generator S.  For lam = lambda_q these are exactly the
    normal forms.  Accumulation is reported when two elements g, h send ``i``
    within hyperbolic distance ``eps`` of each other although h differs from
    ``+-g`` and ``+-gT`` by more than ``eps`` entrywise (T fixes ``i``).

    If the enumeration exceeds ``sample_count`` elements, each further level
    is subsampled with a seeded generator and a negative outcome becomes
    ``inconclusive``.  The probe never proves discreteness.
    """
    if not lam > 0:
        raise DomainError("lambda must be positive")
    if not eps > 0:
        raise DomainError("eps must be positive")
    if word_length < 0 or sample_count < 1:
        raise DomainError("word_length must be >= 0 and sample_count >= 1")
    rng = np.random.default_rng(seed)
    m = _power_bound(lam, word_length)
    T = np.array([[0.0, -1.0], [1.0, 0.0]])
    S = np.array([[0.0, -1.0], [1.0, lam]])
    powers = np.array([np.linalg.matrix_power(S, k) for k in range(1, m + 1)])

    mats = [np.eye(2)[None]]
    parent = [np.array([-1])]
    syl = [np.array([-1])]  # -1 marks the root, 0 is T, k >= 1 is S^k
    ends_t = np.empty(0, dtype=np.int64)
    ends_s = np.empty(0, dtype=np.int64)
    offset = 1
    root_idx = np.array([0])
    truncated = False
    for level in range(1, word_length + 1):
        # extend words ending in S (or the root) by T, and words ending in T (or the root) by S^k
        t_src = np.concatenate([root_idx, ends_s]) if level == 1 else ends_s
        s_src = np.concatenate([root_idx, ends_t]) if level == 1 else ends_t
        all_mats = np.concatenate(mats)
        new_t = all_mats[t_src] @ T
        new_s = (all_mats[s_src][:, None] @ powers[None]).reshape(-1, 2, 2)
        par = np.concatenate([t_src, np.repeat(s_src, m)])
        lab = np.concatenate([np.zeros(len(t_src), dtype=np.int64), np.tile(np.arange(1, m + 1), len(s_src))])
        new = np.concatenate([new_t, new_s])
        if offset + len(new) > sample_count:
            truncated = True
            keep = np.sort(rng.choice(len(new), size=max(sample_count - offset, 0), replace=False))
            new, par, lab = new[keep], par[keep], lab[keep]
        idx = np.arange(offset, offset + len(new))
        mats.append(new)
        parent.append(par)
        syl.append(lab)
        ends_t, ends_s = idx[lab == 0], idx[lab != 0]
        offset += len(new)
        if truncated:
            break
    E = np.concatenate(mats)
    parent_arr = np.concatenate(parent)
    syl_arr = np.concatenate(syl)

    a, b, c, d = E[:, 0, 0], E[:, 0, 1], E[:, 1, 0], E[:, 1, 1]
    den = np.abs(c * 1j + d) ** 2
    x = (a * c + b * d) / den
    y = 1.0 / den
    pts = np.column_stack([x, y])
    # every point within hyperbolic distance eps of z lies in the Euclidean disk of radius y*(e^eps - 1)
    radii = y * math.expm1(eps) * (1 + 1e-9)
    tree = cKDTree(pts)
    neighbours = tree.query_ball_point(pts, r=radii)
    counts = np.fromiter((len(js) for js in neighbours), dtype=np.int64, count=len(neighbours))
    I = np.repeat(np.arange(len(E)), counts)
    J = np.fromiter((j for js in neighbours for j in js), dtype=np.int64, count=int(counts.sum()))
    keep = J > I
    I, J = I[keep], J[keep]
    dist = np.arccosh(1 + ((x[I] - x[J]) ** 2 + (y[I] - y[J]) ** 2) / (2 * y[I] * y[J]))
    close = dist < eps
    I, J, dist = I[close], J[close], dist[close]
    A, B = E[I], E[J]
    diff = np.min(
        [np.abs(B - sgn * (A @ X)).max(axis=(1, 2)) for X in (np.eye(2), T) for sgn in (1.0, -1.0)],
        axis=0,
    ) if len(I) else np.empty(0)
    hits = np.flatnonzero(diff > eps)
    if len(hits):
        h = hits[np.argmin(dist[hits])]
        dist, i, j = float(dist[h]), int(I[h]), int(J[h])
        witness = (_word_string(i, parent_arr, syl_arr), _word_string(j, parent_arr, syl_arr))
        return ProbeResult("accumulation-detected", lam, len(E), truncated, witness, dist)
    verdict = "inconclusive" if truncated else "discrete-consistent"
    return ProbeResult(verdict, lam, len(E), truncated)


def _word_string(idx: int, parent: np.ndarray, syl: np.ndarray) -> str:
    out = []
    while idx > 0:
        s = int(syl[idx])
        out.append("T" if s == 0 else ("S" if s == 1 else f"S^{s}"))
        idx = int(parent[idx])
    return " ".join(reversed(out))


def batch_reduce(points: Sequence[HalfPlanePoint], q: int, max_steps: int = 200) -> list[ReductionResult]:
    return [reduce_point(z, q, max_steps) for z in points]
