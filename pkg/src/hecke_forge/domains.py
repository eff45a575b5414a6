"""Desymmetrized box domains, their n=1 tilings and the simplex/complex grading loci.

All geometry is planar in (x, y).  Loci are vertical lines ``x = position``
spanning the y-range of the domain strip; the axis tag (x, u, v, ...) is
carried for labelling only.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

from .errors import DomainError, UnsupportedGradingError

__all__ = [
    "BoxDomain",
    "GradingLocus",
    "Tile",
    "classify_point",
    "contains",
    "grading_positions",
    "make_domain",
    "tile",
]

LABELS = ("picard", "vinberg", "gamma0-picard", "gamma0-vinberg")
SYMMETRIC_LABELS = ("gamma0-picard", "gamma0-vinberg")
PICARD_X_BETA = 0.5
RULES = ("odd-half-multiples", "all-multiples", "pair")
KINDS = ("simplex", "complex")
AXES = ("x", "y", "u", "v")

# relative slack for comparing computed float positions against window ends
_EDGE = 1e-12


@dataclass(frozen=True)
class BoxDomain:
    label: str
    x_beta: float
    x_range: tuple[float, float]
    y_range: tuple[float, float] = (0.0, 0.5)

    def __post_init__(self):
        if self.label not in LABELS:
            raise DomainError(f"unknown domain label {self.label!r}")
        if not self.x_beta > 0:
            raise DomainError("x_beta must be positive")
        if not (self.x_range[0] < self.x_range[1] and self.y_range[0] < self.y_range[1]):
            raise DomainError("domain ranges must be nonempty")

    @property
    def width(self) -> float:
        return self.x_range[1] - self.x_range[0]

    @property
    def height(self) -> float:
        return self.y_range[1] - self.y_range[0]

    @property
    def symmetric(self) -> bool:
        return self.x_range[0] < 0

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "x_beta": self.x_beta,
            "x_range": list(self.x_range),
            "y_range": list(self.y_range),
        }


def make_domain(label: str, x_beta: float | None = None) -> BoxDomain:
    """Box for one of the figure domains.

    ``picard``/``vinberg`` give the one-sided box ``[0, x_beta] x [0, 1/2]``;
    the ``gamma0-*`` labels give the symmetrized ``[-x_beta, x_beta] x [0, 1/2]``.
    Picard labels force ``x_beta = 1/2``.
    """
    if label not in LABELS:
        raise DomainError(f"unknown domain label {label!r}; expected one of {', '.join(LABELS)}")
    if label in ("picard", "gamma0-picard"):
        if x_beta is None:
            x_beta = PICARD_X_BETA
        if not math.isclose(x_beta, PICARD_X_BETA, rel_tol=0, abs_tol=1e-12):
            raise DomainError(f"{label} requires x_beta = 1/2, got {x_beta}")
        x_beta = PICARD_X_BETA
    elif x_beta is None:
        raise DomainError(f"{label} requires an explicit x_beta")
    x_beta = float(x_beta)
    if not x_beta > 0:
        raise DomainError("x_beta must be positive")
    x_range = (-x_beta, x_beta) if label in SYMMETRIC_LABELS else (0.0, x_beta)
    return BoxDomain(label, x_beta, x_range, (0.0, 0.5))


def contains(d: BoxDomain, point: Sequence[float], tol: float = 0.0) -> bool:
    if tol < 0:
        raise DomainError("tol must be nonnegative")
    x, y = point
    return (
        d.x_range[0] - tol <= x <= d.x_range[1] + tol
        and d.y_range[0] - tol <= y <= d.y_range[1] + tol
    )


@dataclass(frozen=True)
class GradingLocus:
    """A family of vertical loci.

    ``odd-half-multiples`` sits at ``(2m+1) * period / 2``, ``all-multiples``
    at ``m * period`` and ``pair`` at ``+-2 * period`` (period = x_beta).
    """

    kind: str
    rule: str
    period: float = 1.0
    axis: str = "x"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"locus kind must be one of {KINDS}, got {self.kind!r}")
        if self.rule not in RULES:
            raise DomainError(f"locus rule must be one of {RULES}, got {self.rule!r}")
        if not self.period > 0:
            raise DomainError("locus period must be positive")
        if self.axis not in AXES:
            raise DomainError(f"axis tag must be one of {AXES}")

    def to_dict(self) -> dict:
        return asdict(self)


def _window(window: Sequence[float]) -> tuple[float, float]:
    lo, hi = window
    return float(lo), float(hi)


def grading_positions(locus: GradingLocus, window: Sequence[float]) -> list[float]:
    lo, hi = _window(window)
    if lo > hi:
        return []
    p = locus.period
    slack = _EDGE * max(1.0, abs(lo), abs(hi))
    if locus.rule == "pair":
        cands = [-2 * p, 2 * p]
    elif locus.rule == "all-multiples":
        m0, m1 = math.ceil((lo - slack) / p), math.floor((hi + slack) / p)
        cands = [m * p for m in range(m0, m1 + 1)]
    else:
        # (2m+1) p/2 in [lo, hi]
        m0 = math.ceil(((lo - slack) / p * 2 - 1) / 2)
        m1 = math.floor(((hi + slack) / p * 2 - 1) / 2)
        cands = [(2 * m + 1) * p / 2 for m in range(m0, m1 + 1)]
    out = sorted({c for c in cands if lo - slack <= c <= hi + slack})
    return [0.0 if c == 0 else c for c in out]


@dataclass(frozen=True)
class Tile:
    index: int
    x_range: tuple[float, float]
    y_range: tuple[float, float]


def tile(d: BoxDomain, n: int, window: Sequence[float], parallel: bool = False) -> list[Tile]:
    """Translates of ``d`` by integer multiples of its width that overlap ``window``.

    Copies touching the window only at an endpoint are excluded, so adjacent
    tiles share boundaries and nothing more.
    """
    if n != 1:
        raise UnsupportedGradingError(f"only the n=1 grading is supported, got n={n}")
    lo, hi = _window(window)
    if not lo < hi:
        return []
    w = d.width
    x0 = d.x_range[0]
    slack = _EDGE * max(1.0, abs(lo), abs(hi))
    k0 = math.floor((lo - x0) / w) - 1
    k1 = math.ceil((hi - x0) / w) + 1
    ks = list(range(k0, k1 + 1))

    def one(k: int) -> Tile | None:
        a, b = x0 + k * w, x0 + (k + 1) * w
        if min(b, hi) - max(a, lo) > slack:
            return Tile(k, (a, b), d.y_range)
        return None

    if parallel and len(ks) > 64:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor() as ex:
            tiles = list(ex.map(one, ks))
    else:
        tiles = [one(k) for k in ks]
    return [t for t in tiles if t is not None]


def classify_point(
    d: BoxDomain,
    loci: Iterable[GradingLocus],
    point: Sequence[float],
    tol: float = 1e-9,
) -> str:
    """One of ``interior``, ``on-complex``, ``on-simplex``, ``exterior``.

    Loci extend over the whole tiled strip, so a point outside ``d`` can still
    sit on a locus.  Complexes take precedence over simplices.  Membership of
    the box itself is exact (closed), which keeps the result stable as ``tol``
    shrinks.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    x, y = point
    in_strip = d.y_range[0] <= y <= d.y_range[1]
    hits = set()
    if in_strip:
        for locus in loci:
            if any(abs(x - p) <= tol for p in grading_positions(locus, (x - tol, x + tol))):
                hits.add(locus.kind)
    if "complex" in hits:
        return "on-complex"
    if "simplex" in hits:
        return "on-simplex"
    return "interior" if contains(d, point) else "exterior"


def describe(d: BoxDomain, loci: Sequence[GradingLocus] = ()) -> dict:
    """JSON-ready description consumed by the renderer."""
    return {"domain": d.to_dict(), "loci": [loc.to_dict() for loc in loci]}


def load_description(text: str) -> tuple[BoxDomain, list[GradingLocus]]:
    doc = json.loads(text)
    dom = doc["domain"]
    d = make_domain(dom["label"], dom["x_beta"])
    loci = [GradingLocus(**loc) for loc in doc.get("loci", [])]
    return d, loci
