"""Figure-style drawings of box domains, their tilings and grading loci.

``render_domain_svg`` writes SVG by hand so that output is byte-stable and
structurally checkable (one ``rect`` per tile, one ``line`` per locus
position).  ``render_domain_figure`` produces the same picture through
matplotlib for reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .domains import BoxDomain, GradingLocus, grading_positions, tile
from .errors import DomainError

__all__ = ["RenderSpec", "render_domain_figure", "render_domain_svg"]

MARGIN = 20.0
SIMPLEX_DASH = "6,4"


@dataclass(frozen=True)
class RenderSpec:
    domain: BoxDomain
    loci: Sequence[GradingLocus] = ()
    window: tuple[float, float, float, float] | None = None  # x0, x1, y0, y1
    scale: float = 400.0
    axis_labels: bool = False
    locus_labels: bool = False

    def __post_init__(self):
        if not self.scale > 0:
            raise DomainError("scale must be positive")
        x0, x1, y0, y1 = self.resolved_window
        if not (x0 < x1 and y0 < y1):
            raise DomainError(f"degenerate window {self.resolved_window}")

    @property
    def resolved_window(self) -> tuple[float, float, float, float]:
        if self.window is None:
            d = self.domain
            return (d.x_range[0], d.x_range[1], d.y_range[0], d.y_range[1])
        return tuple(float(v) for v in self.window)


def _fmt(v: float) -> str:
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _tiles(spec: RenderSpec):
    x0, x1, _, _ = spec.resolved_window
    out = []
    for t in tile(spec.domain, 1, (x0, x1)):
        a, b = max(t.x_range[0], x0), min(t.x_range[1], x1)
        out.append((t.index, a, b, t.y_range[0], t.y_range[1]))
    return out


def _locus_lines(spec: RenderSpec):
    x0, x1, _, _ = spec.resolved_window
    ya, yb = spec.domain.y_range
    lines = []
    for locus in spec.loci:
        for p in grading_positions(locus, (x0, x1)):
            lines.append((locus, p, ya, yb))
    return lines


def render_domain_svg(spec: RenderSpec) -> str:
    x0, x1, y0, y1 = spec.resolved_window
    s = spec.scale
    width = (x1 - x0) * s + 2 * MARGIN
    height = (y1 - y0) * s + 2 * MARGIN

    def px(x: float) -> str:
        return _fmt(MARGIN + (x - x0) * s)

    def py(y: float) -> str:
        return _fmt(MARGIN + (y1 - y) * s)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<title>{spec.domain.label} x_beta={_fmt(spec.domain.x_beta)}</title>',
        '<g id="tiles" fill="#e8eef7" stroke="#1f3b6f" stroke-width="1">',
    ]
    for idx, a, b, ya, yb in _tiles(spec):
        out.append(
            f'<rect class="tile" data-index="{idx}" x="{px(a)}" y="{py(yb)}" '
            f'width="{_fmt((b - a) * s)}" height="{_fmt((yb - ya) * s)}"/>'
        )
    out.append("</g>")
    out.append('<g id="loci" stroke-width="1.5">')
    for locus, p, ya, yb in _locus_lines(spec):
        style = f'stroke="#b03030" stroke-dasharray="{SIMPLEX_DASH}"' if locus.kind == "simplex" else 'stroke="#207040"'
        out.append(
            f'<line class="locus {locus.kind}" data-rule="{locus.rule}" x1="{px(p)}" y1="{py(yb)}" '
            f'x2="{px(p)}" y2="{py(ya)}" {style}/>'
        )
        if spec.locus_labels:
            out.append(
                f'<text class="locus-label" x="{px(p)}" y="{_fmt(MARGIN - 4)}" font-size="10" '
                f'text-anchor="middle">{locus.axis}={_fmt(p)}</text>'
            )
    out.append("</g>")
    if spec.axis_labels:
        out.append(
            f'<text class="axis-label" x="{_fmt(width / 2)}" y="{_fmt(height - 4)}" font-size="11" '
            f'text-anchor="middle">x</text>'
        )
        out.append(
            f'<text class="axis-label" x="8" y="{_fmt(height / 2)}" font-size="11" '
            f'text-anchor="middle">y</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_domain_figure(spec: RenderSpec, path: str | Path, title: str | None = None) -> Path:
    """Draw the domain with matplotlib and save it; the format follows the suffix."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import Rectangle

    x0, x1, y0, y1 = spec.resolved_window
    aspect = (y1 - y0) / (x1 - x0)
    fig, ax = plt.subplots(figsize=(6, max(2.0, 6 * aspect)))
    for idx, a, b, ya, yb in _tiles(spec):
        ax.add_patch(Rectangle((a, ya), b - a, yb - ya, facecolor="#e8eef7", edgecolor="#1f3b6f", lw=1))
    seen = set()
    for locus, p, ya, yb in _locus_lines(spec):
        label = f"{locus.kind} ({locus.rule})" if (locus.kind, locus.rule) not in seen else None
        seen.add((locus.kind, locus.rule))
        if locus.kind == "simplex":
            ax.plot([p, p], [ya, yb], color="#b03030", ls="--", lw=1.5, label=label)
        else:
            ax.plot([p, p], [ya, yb], color="#207040", ls="-", lw=1.5, label=label)
    ax.set_xlim(x0, x1)
    ax.set_ylim(y0, y1)
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(title or f"{spec.domain.label}, $x_\\beta$ = {spec.domain.x_beta:.6g}")
    if seen:
        ax.legend(loc="upper right", fontsize=8)
    path = Path(path)
    fig.savefig(path, bbox_inches="tight", metadata={"Software": None} if path.suffix == ".png" else None)
    plt.close(fig)
    return path


def render_genus_figure(data: Sequence, path: str | Path) -> Path:
    """Genus of X_0(N) against N for a sweep of Gamma0Data records."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 3.5))
    ns = [d.N for d in data]
    gs = [d.genus for d in data]
    ax.scatter(ns, gs, s=10, color="#1f3b6f")
    zero = [d.N for d in data if d.genus == 0]
    ax.scatter(zero, [0] * len(zero), s=18, color="#b03030", label="genus 0")
    ax.set_xlabel("N")
    ax.set_ylabel("genus of $X_0(N)$")
    ax.legend(fontsize=8)
    path = Path(path)
    fig.savefig(path, bbox_inches="tight", metadata={"Software": None} if path.suffix == ".png" else None)
    plt.close(fig)
    return path
