"""Vector scenes: polylines on a page, clipping, SVG output, rasterization.

Page coordinates are abstract units (read as millimetres when written to
SVG), origin at the top-left, y pointing down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .measures import SymbolGrid

DEFAULT_STROKE_WIDTH = 0.5
_EPS = 1e-12


@dataclass(frozen=True)
class Rect:
    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self):
        vals = (self.x0, self.y0, self.x1, self.y1)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("rectangle coordinates must be finite")
        if self.x1 <= self.x0 or self.y1 <= self.y0:
            raise ValueError(f"degenerate rectangle {vals}")

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0

    def contains(self, x: float, y: float, tol: float = 1e-9) -> bool:
        return (self.x0 - tol <= x <= self.x1 + tol) and (self.y0 - tol <= y <= self.y1 + tol)

    def inset(self, margin: float) -> "Rect":
        return Rect(self.x0 + margin, self.y0 + margin, self.x1 - margin, self.y1 - margin)


@dataclass(frozen=True)
class Polyline:
    points: tuple
    closed: bool = False

    def __post_init__(self):
        pts = tuple((float(x), float(y)) for x, y in self.points)
        if len(pts) < 2:
            raise ValueError("a polyline needs at least two points")
        if not all(math.isfinite(c) for p in pts for c in p):
            raise ValueError("polyline coordinates must be finite")
        object.__setattr__(self, "points", pts)

    def emitted_points(self) -> tuple:
        """Points as drawn: a closed polyline repeats its first point at the end."""
        return self.points + (self.points[0],) if self.closed else self.points

    def segments(self):
        pts = self.emitted_points()
        return list(zip(pts[:-1], pts[1:]))


@dataclass(frozen=True)
class VectorScene:
    width: float
    height: float
    strokes: tuple = ()
    stroke_width: float = DEFAULT_STROKE_WIDTH

    def __post_init__(self):
        if not (self.width > 0 and self.height > 0):
            raise ValueError("page dimensions must be positive")
        if not self.stroke_width > 0:
            raise ValueError("stroke_width must be positive")
        object.__setattr__(self, "strokes", tuple(self.strokes))

    @property
    def page(self) -> Rect:
        return Rect(0.0, 0.0, self.width, self.height)

    def clipped(self) -> "VectorScene":
        out = []
        for s in self.strokes:
            out.extend(clip_polyline(s, self.page))
        return replace(self, strokes=tuple(out))

    def to_svg(self) -> str:
        return scene_to_svg(self)


def clip_segment(p, q, rect: Rect):
    """Liang-Barsky. Returns the clipped (p, q) or None when fully outside."""
    (x0, y0), (x1, y1) = p, q
    dx, dy = x1 - x0, y1 - y0
    t0, t1 = 0.0, 1.0
    for den, num in ((-dx, x0 - rect.x0), (dx, rect.x1 - x0), (-dy, y0 - rect.y0), (dy, rect.y1 - y0)):
        if den == 0:
            if num < 0:
                return None
            continue
        t = num / den
        if den < 0:
            if t > t1:
                return None
            t0 = max(t0, t)
        else:
            if t < t0:
                return None
            t1 = min(t1, t)
    # endpoints already inside are kept bit-exact; computed ones are clamped
    a = p if rect.contains(*p, tol=0.0) else (_clamp(x0 + t0 * dx, rect.x0, rect.x1), _clamp(y0 + t0 * dy, rect.y0, rect.y1))
    b = q if rect.contains(*q, tol=0.0) else (_clamp(x0 + t1 * dx, rect.x0, rect.x1), _clamp(y0 + t1 * dy, rect.y0, rect.y1))
    return a, b


def _clamp(v, lo, hi):
    return lo if v < lo else hi if v > hi else v


def clip_polyline(line: Polyline, rect: Rect) -> list[Polyline]:
    """Clip to ``rect``; a polyline leaving and re-entering splits into pieces."""
    if all(rect.contains(x, y, tol=0.0) for x, y in line.points):
        return [line]
    pieces, current = [], []
    for p, q in line.segments():
        seg = clip_segment(p, q, rect)
        if seg is None:
            if len(current) >= 2:
                pieces.append(current)
            current = []
            continue
        a, b = seg
        if current and math.dist(current[-1], a) <= _EPS:
            current.append(b)
        else:
            if len(current) >= 2:
                pieces.append(current)
            current = [a, b]
        if b != q:
            pieces.append(current)
            current = []
    if len(current) >= 2:
        pieces.append(current)
    return [Polyline(tuple(pc)) for pc in pieces]


def crop(scene: VectorScene, rect: Rect) -> VectorScene:
    """Editorial crop: drop strokes outside ``rect``, clip the rest, move ``rect`` to the origin."""
    kept = []
    for s in scene.strokes:
        for piece in clip_polyline(s, rect):
            kept.append(Polyline(tuple((x - rect.x0, y - rect.y0) for x, y in piece.points), piece.closed))
    return VectorScene(rect.width, rect.height, tuple(kept), scene.stroke_width)


def fmt(v: float) -> str:
    s = f"{v:.4f}"
    return "0.0000" if s == "-0.0000" else s


def scene_to_svg(scene: VectorScene) -> str:
    w, h = fmt(scene.width), fmt(scene.height)
    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{w}mm" height="{h}mm" viewBox="0 0 {w} {h}">',
        f'<g fill="none" stroke="black" stroke-width="{fmt(scene.stroke_width)}" '
        'stroke-linecap="round" stroke-linejoin="round">',
    ]
    for s in scene.strokes:
        pts = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in s.emitted_points())
        lines.append(f'<polyline points="{pts}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def rasterize(scene: VectorScene, nx: int, ny: int) -> SymbolGrid:
    """Binary ink raster: cell (row, col) is 1 when a stroke crosses it.

    Each segment is sampled at spacing well under one cell, so thin strokes
    never skip a cell they pass through by more than a hair.
    """
    ink = np.zeros((ny, nx), dtype=np.uint8)
    sx, sy = nx / scene.width, ny / scene.height
    for stroke in scene.strokes:
        for (x0, y0), (x1, y1) in stroke.segments():
            cx0, cy0, cx1, cy1 = x0 * sx, y0 * sy, x1 * sx, y1 * sy
            steps = int(math.ceil(4 * max(abs(cx1 - cx0), abs(cy1 - cy0)))) + 1
            t = np.linspace(0.0, 1.0, steps + 1)
            cols = np.clip(np.floor(cx0 + t * (cx1 - cx0)).astype(int), 0, nx - 1)
            rows = np.clip(np.floor(cy0 + t * (cy1 - cy0)).astype(int), 0, ny - 1)
            ink[rows, cols] = 1
    return SymbolGrid.from_array(ink, alphabet_size=2)
