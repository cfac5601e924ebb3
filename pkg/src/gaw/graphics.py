"""Stochastic plotter-graphics generators.

These are readings of early computer graphics known only from titles and
prose descriptions, so each rule below is an interpretation:

* n-corner: ``n`` vertices drawn uniformly in a frame and joined in draw
  order into a closed, usually self-intersecting, polygon.
* motif grid: one independently drawn motif per grid cell, row-major.
* density field: short horizontal, vertical or oblique segments placed by
  rejection sampling against a density map over the unit square.
* hommage: a two-level process. A lattice of shared vertices is jittered
  into an irregular quadrilateral mesh, then every cell gets a visual
  state (hatching direction or empty) and is filled accordingly.

Every generator consumes its ``Rng`` in a fixed order, so a scene is a
pure function of (rule, parameters, seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .measures import validate_distribution
from .rng import Rng
from .scene import Polyline, Rect, VectorScene

ORIENTATIONS = ("horizontal", "vertical", "oblique")
CELL_STATES = ("h-hatch", "v-hatch", "empty", "diagonal")


class InvalidOrderError(ValueError):
    pass


class UnknownRuleError(KeyError):
    pass


class InvalidParamsError(ValueError):
    pass


def gen_ncorner(n: int, frame: Rect, rng: Rng) -> Polyline:
    if n < 3:
        raise InvalidOrderError(f"an n-corner needs n >= 3, got {n}")
    pts = []
    for _ in range(n):
        x = rng.uniform(frame.x0, frame.x1)
        y = rng.uniform(frame.y0, frame.y1)
        pts.append((x, y))
    return Polyline(tuple(pts), closed=True)


def _motif_ncorner(frame: Rect, rng: Rng, n: int = 8) -> list[Polyline]:
    return [gen_ncorner(int(n), frame, rng)]


def _motif_segment(frame: Rect, rng: Rng, orientations: Sequence[str] = ORIENTATIONS) -> list[Polyline]:
    cx, cy = (frame.x0 + frame.x1) / 2, (frame.y0 + frame.y1) / 2
    half = min(frame.width, frame.height) / 2
    ux, uy = _direction(_pick_orientation(orientations, rng), rng)
    return [Polyline(((cx - ux * half, cy - uy * half), (cx + ux * half, cy + uy * half)))]


MOTIF_RULES: dict[str, Callable[..., list[Polyline]]] = {
    "ncorner": _motif_ncorner,
    "segment": _motif_segment,
}


def gen_motif_grid(
    rows: int,
    cols: int,
    cell_rule: tuple[str, Mapping] = ("ncorner", {"n": 23}),
    margin: float = 1.0,
    rng: Rng | None = None,
    cell_size: float = 10.0,
    stroke_width: float = 0.5,
) -> VectorScene:
    """``rows x cols`` cells of side ``cell_size``, each holding one motif inset by ``margin``."""
    if rows < 1 or cols < 1:
        raise InvalidParamsError("rows and cols must be >= 1")
    rule_id, params = cell_rule
    if rule_id not in MOTIF_RULES:
        raise UnknownRuleError(f"unknown cell rule {rule_id!r}; known: {sorted(MOTIF_RULES)}")
    if not 0 <= 2 * margin < cell_size:
        raise InvalidParamsError("margin must leave a non-empty cell interior")
    rng = rng if rng is not None else Rng(0)
    motif = MOTIF_RULES[rule_id]
    strokes = []
    for r in range(rows):
        for c in range(cols):
            cell = Rect(c * cell_size, r * cell_size, (c + 1) * cell_size, (r + 1) * cell_size)
            strokes.extend(motif(cell.inset(margin), rng, **dict(params)))
    return VectorScene(cols * cell_size, rows * cell_size, tuple(strokes), stroke_width).clipped()


DENSITY_MAPS: dict[str, Callable[[float, float], float]] = {
    "constant": lambda u, v: 1.0,
    "ramp-x": lambda u, v: u,
    "ramp-y": lambda u, v: v,
    "radial": lambda u, v: max(0.0, 1.0 - 2.0 * math.hypot(u - 0.5, v - 0.5)),
    "band": lambda u, v: math.exp(-(((v - 0.5) / 0.15) ** 2)),
}


def _pick_orientation(orientations: Sequence[str], rng: Rng) -> str:
    return orientations[rng.next_int(0, len(orientations) - 1)]


def _direction(orientation: str, rng: Rng) -> tuple[float, float]:
    if orientation == "horizontal":
        return 1.0, 0.0
    if orientation == "vertical":
        return 0.0, 1.0
    u = rng.next_unit()
    while u == 0.0:
        u = rng.next_unit()
    theta = u * (math.pi / 2)
    return math.cos(theta), -math.sin(theta)


def _check_orientations(orientations: Sequence[str]) -> tuple[str, ...]:
    orientations = tuple(orientations)
    if not orientations:
        raise InvalidParamsError("orientation set is empty")
    bad = [o for o in orientations if o not in ORIENTATIONS]
    if bad:
        raise InvalidParamsError(f"unknown orientations {bad}; allowed: {ORIENTATIONS}")
    # duplicates would bias the uniform draw
    return tuple(dict.fromkeys(orientations))


@dataclass(frozen=True)
class DensityField:
    scene: VectorScene
    midpoints: tuple
    attempts: int


def density_segments(
    frame: Rect,
    count: int,
    orientations: Sequence[str],
    density_map: str,
    rng: Rng,
    length: float | None = None,
) -> DensityField:
    """Rejection sampling of up to ``count`` segments; keeps the accepted midpoints.

    Per attempt the draws are: x, y, acceptance; then, if accepted, the
    orientation and (for oblique) the angle in (0, 90) degrees.
    """
    if count < 0:
        raise InvalidParamsError("count must be >= 0")
    orientations = _check_orientations(orientations)
    if density_map not in DENSITY_MAPS:
        raise UnknownRuleError(f"unknown density map {density_map!r}; known: {sorted(DENSITY_MAPS)}")
    dens = DENSITY_MAPS[density_map]
    if length is None:
        length = min(frame.width, frame.height) / 30
    half = length / 2
    strokes, mids = [], []
    for _ in range(count):
        u, v = rng.next_unit(), rng.next_unit()
        if rng.next_unit() >= dens(u, v):
            continue
        x, y = frame.x0 + u * frame.width, frame.y0 + v * frame.height
        dx, dy = _direction(_pick_orientation(orientations, rng), rng)
        strokes.append(Polyline(((x - dx * half, y - dy * half), (x + dx * half, y + dy * half))))
        mids.append((x, y))
    page = VectorScene(frame.x1 + frame.x0, frame.y1 + frame.y0, tuple(strokes))
    return DensityField(page.clipped(), tuple(mids), count)


def gen_density_field(
    frame: Rect,
    count: int,
    orientations: Sequence[str],
    density_map: str,
    rng: Rng,
    length: float | None = None,
) -> VectorScene:
    """Segments thinned by ``density_map`` inside ``frame``.

    The page extends the frame by its own offset on the far sides, so a
    frame at (m, m) gets an even margin m all round.
    """
    return density_segments(frame, count, orientations, density_map, rng, length).scene


@dataclass(frozen=True)
class HommageMesh:
    rows: int
    cols: int
    cell_w: float
    cell_h: float
    vertices: tuple  # (rows+1) tuples of (cols+1) points

    @property
    def width(self) -> float:
        return self.cols * self.cell_w

    @property
    def height(self) -> float:
        return self.rows * self.cell_h

    def quad(self, r: int, c: int):
        """Cell corners (top-left, top-right, bottom-right, bottom-left)."""
        v = self.vertices
        return v[r][c], v[r][c + 1], v[r + 1][c + 1], v[r + 1][c]

    def strokes(self) -> list[Polyline]:
        """One polyline per lattice row, then one per lattice column."""
        out = [Polyline(tuple(row)) for row in self.vertices]
        out += [Polyline(tuple(self.vertices[r][c] for r in range(self.rows + 1))) for c in range(self.cols + 1)]
        return out


def hommage_mesh(rows: int, cols: int, jitter: float, rng: Rng, cell_w: float = 10.0, cell_h: float | None = None) -> HommageMesh:
    """Level one: shared-vertex lattice, each vertex offset by up to ``jitter`` cells.

    Border vertices slide only along their border and the four corners stay
    put, so the mesh always fills the page exactly. Draws are row-major,
    x offset then y offset, two per vertex whether or not a vertex uses them.
    """
    if rows < 1 or cols < 1:
        raise InvalidParamsError("rows and cols must be >= 1")
    if not 0 <= jitter < 0.5:
        raise InvalidParamsError(f"jitter must lie in [0, 0.5), got {jitter}")
    cell_h = cell_w if cell_h is None else cell_h
    verts = []
    for r in range(rows + 1):
        row = []
        for c in range(cols + 1):
            ox = (2 * rng.next_unit() - 1) * jitter * cell_w
            oy = (2 * rng.next_unit() - 1) * jitter * cell_h
            if c in (0, cols):
                ox = 0.0
            if r in (0, rows):
                oy = 0.0
            row.append((c * cell_w + ox, r * cell_h + oy))
        verts.append(tuple(row))
    return HommageMesh(rows, cols, cell_w, cell_h, tuple(verts))


def _lerp(p, q, t):
    return (p[0] + (q[0] - p[0]) * t, p[1] + (q[1] - p[1]) * t)


def _bilinear(quad, u, v):
    tl, tr, br, bl = quad
    return _lerp(_lerp(tl, tr, u), _lerp(bl, br, u), v)


def fill_cell(quad, state: str, n: int) -> list[Polyline]:
    """``n`` chords interpolated across the quad for a hatched state."""
    if state == "empty" or n <= 0:
        return []
    tl, tr, br, bl = quad
    chords = []
    for k in range(1, n + 1):
        t = k / (n + 1)
        if state == "v-hatch":
            chords.append((_lerp(tl, tr, t), _lerp(bl, br, t)))
        elif state == "h-hatch":
            chords.append((_lerp(tl, bl, t), _lerp(tr, br, t)))
        elif state == "diagonal":
            s = 2 * t
            a = (max(0.0, s - 1.0), min(1.0, s))
            b = (min(1.0, s), max(0.0, s - 1.0))
            chords.append((_bilinear(quad, *a), _bilinear(quad, *b)))
        else:
            raise InvalidParamsError(f"unknown cell state {state!r}")
    return [Polyline(c) for c in chords]


def _check_states(cell_states: Mapping[str, float]) -> tuple[tuple[str, ...], list[float]]:
    names = tuple(cell_states)
    bad = [s for s in names if s not in CELL_STATES]
    if bad:
        raise InvalidParamsError(f"unknown cell states {bad}; allowed: {CELL_STATES}")
    probs = validate_distribution([cell_states[s] for s in names]).tolist()
    return names, probs


def sample_state(names, probs, rng: Rng) -> str:
    u = rng.next_unit()
    acc = 0.0
    for name, p in zip(names, probs):
        acc += p
        if u < acc:
            return name
    # rounding left the cumulative sum just under 1
    return next(n for n, p in zip(reversed(names), reversed(probs)) if p > 0)


@dataclass(frozen=True)
class Hommage:
    mesh: HommageMesh
    states: tuple  # row-major, one per cell
    chord_counts: tuple
    scene: VectorScene


def build_hommage(
    rows: int,
    cols: int,
    jitter: float,
    cell_states: Mapping[str, float],
    hatch_density_range: tuple[int, int],
    rng: Rng,
    cell_size: float = 10.0,
    stroke_width: float = 0.5,
) -> Hommage:
    """Both levels with their intermediate results kept for inspection."""
    names, probs = _check_states(cell_states)
    lo, hi = hatch_density_range
    if not 1 <= lo <= hi:
        raise InvalidParamsError(f"hatch density range must satisfy 1 <= min <= max, got {hatch_density_range}")
    mesh = hommage_mesh(rows, cols, jitter, rng, cell_size)
    states, counts, fills = [], [], []
    for r in range(rows):
        for c in range(cols):
            state = sample_state(names, probs, rng)
            n = 0 if state == "empty" else rng.next_int(lo, hi)
            states.append(state)
            counts.append(n)
            fills.extend(fill_cell(mesh.quad(r, c), state, n))
    scene = VectorScene(mesh.width, mesh.height, tuple(mesh.strokes() + fills), stroke_width).clipped()
    return Hommage(mesh, tuple(states), tuple(counts), scene)


def gen_hommage_klee(
    rows: int,
    cols: int,
    jitter: float,
    cell_states: Mapping[str, float],
    hatch_density_range: tuple[int, int],
    rng: Rng,
    cell_size: float = 10.0,
    stroke_width: float = 0.5,
) -> VectorScene:
    return build_hommage(rows, cols, jitter, cell_states, hatch_density_range, rng, cell_size, stroke_width).scene


def gen_iid_strokes(width: float, height: float, count: int, rng: Rng, stroke_width: float = 0.5) -> VectorScene:
    """Reference disorder: ``count`` segments with independent uniform endpoints."""
    strokes = []
    for _ in range(count):
        p = (rng.uniform(0, width), rng.uniform(0, height))
        q = (rng.uniform(0, width), rng.uniform(0, height))
        strokes.append(Polyline((p, q)))
    return VectorScene(width, height, tuple(strokes), stroke_width)
