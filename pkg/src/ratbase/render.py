"""Two-dimensional rendering of tile approximations.

A level-r box is a real interval of width alpha^(-r) times a product of
p-adic balls.  The ball factor is flattened onto a second real axis through
a digit expansion of its center (see fiber_coordinate), under which each
ball becomes an aligned dyadic-style interval.  The result is a list of
axis-parallel rectangles, one per box, suitable for SVG or CSV output.
Interiors of rectangles from a single tiling are pairwise disjoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .adelic import (AdeleContext, _check_budget, fiber_interval, in_z_alpha,
                     tile_corners)

_PALETTE = ("#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee",
            "#aa3377", "#bbbbbb", "#222255", "#225555", "#552255")


@dataclass(frozen=True)
class TileRect:
    translate: Fraction
    digit: int
    real_lo: Fraction
    real_hi: Fraction
    fiber_lo: Fraction
    fiber_hi: Fraction


def render_tiles(ctx: AdeleContext, r: int, translates: Iterable,
                 scheme: str = "alpha-digits") -> list[TileRect]:
    """Rectangles for every digit tile, shifted by each lattice translate.

    Translates must lie in Z[alpha] = Z[1/b] so the shifted boxes stay on
    the level-r corner grid.  Output order is deterministic: sorted by
    (translate, digit, real corner).
    """
    shifts = [Fraction(t) for t in translates]
    for t in shifts:
        if not in_z_alpha(ctx, t):
            raise ValueError(f"translate {t} is not in Z[alpha]")
    a = ctx.base.a
    _check_budget(max(len(shifts), 1) * a**r)
    width = ctx.alpha_pow(-r)
    rects = []
    for t in shifts:
        for d in range(a):
            for c in tile_corners(ctx, d, r):
                cc = c + t
                lo, hi = fiber_interval(ctx, cc, r, scheme)
                rects.append(TileRect(t, d, cc, cc + width, lo, hi))
    rects.sort(key=lambda R: (R.translate, R.digit, R.real_lo, R.fiber_lo))
    return rects


def tiles_csv(rects: Sequence[TileRect]) -> str:
    lines = ["translate,digit,real_lo,real_hi,fiber_lo,fiber_hi"]
    for R in rects:
        lines.append(f"{R.translate},{R.digit},{R.real_lo},{R.real_hi},"
                     f"{R.fiber_lo},{R.fiber_hi}")
    return "\n".join(lines) + "\n"


def tiles_svg(rects: Sequence[TileRect], px_per_unit: int = 160,
              fiber_px: int = 360, pad: int = 12) -> str:
    """Deterministic SVG: one rect per box, colored by digit class.

    The real axis runs left to right, the fiber axis bottom to top.  All
    coordinates are formatted to fixed precision so identical inputs yield
    byte-identical output.
    """
    if not rects:
        return ('<svg xmlns="http://www.w3.org/2000/svg" width="1" height="1" '
                'viewBox="0 0 1 1"></svg>\n')
    x0 = min(R.real_lo for R in rects)
    x1 = max(R.real_hi for R in rects)
    y0 = min(R.fiber_lo for R in rects)
    y1 = max(R.fiber_hi for R in rects)
    sx = Fraction(px_per_unit)
    sy = Fraction(fiber_px) / (y1 - y0) if y1 > y0 else Fraction(1)
    width = float((x1 - x0) * sx) + 2 * pad
    height = float((y1 - y0) * sy) + 2 * pad

    def fx(v: Fraction) -> str:
        return format(float((v - x0) * sx) + pad, ".3f")

    def fy(v: Fraction) -> str:
        # flip: larger fiber values sit higher on the canvas
        return format(float((y1 - v) * sy) + pad, ".3f")

    digits = sorted({R.digit for R in rects})
    style = "".join(
        f".d{d}{{fill:{_PALETTE[d % len(_PALETTE)]};stroke:none}}" for d in digits)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.3f}" '
        f'height="{height:.3f}" viewBox="0 0 {width:.3f} {height:.3f}">',
        f"<style>{style}</style>",
    ]
    for R in rects:
        w = format(float((R.real_hi - R.real_lo) * sx), ".3f")
        h = format(float((R.fiber_hi - R.fiber_lo) * sy), ".3f")
        out.append(f'<rect class="d{R.digit}" x="{fx(R.real_lo)}" '
                   f'y="{fy(R.fiber_hi)}" width="{w}" height="{h}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
