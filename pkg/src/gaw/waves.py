"""Random-phase sea-surface synthesis from a directional wave spectrum.

One linear wave per spectral bin ``(f_i, theta_j)`` with S > 0:

    a     = sqrt(2 * S * df * dtheta)
    omega = 2 * pi * f
    k     = omega**2 / g            (deep water)
    phi   ~ U[0, 2*pi)

    eta(x, y, t) = sum a * cos(k * (x cos(theta) + y sin(theta)) - omega * t + phi)

Only the phase is random, so the expected field variance equals the
zeroth moment ``m0 = sum S * df * dtheta``. Drawing random amplitudes
(Rayleigh-distributed a) is the common alternative; it is not used here.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .rng import Rng

G = 9.81
TWO_PI = 2.0 * math.pi
SPECTRUM_HEADER = ("f_hz", "df_hz", "theta_rad", "dtheta_rad", "s_m2_per_hz_rad")


class SpectrumError(ValueError):
    """Malformed or invalid spectrum; ``row``/``column`` locate the culprit when known."""

    def __init__(self, message: str, row: int | None = None, column: str | None = None):
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.row = row
        self.column = column


class DegenerateGridError(ValueError):
    pass


@dataclass(frozen=True)
class DirectionalSpectrum:
    freqs: np.ndarray
    dirs: np.ndarray
    values: np.ndarray  # shape (len(freqs), len(dirs)), m^2 / (Hz rad)
    df: np.ndarray
    dtheta: np.ndarray

    def __post_init__(self):
        arrs = {}
        for name in ("freqs", "dirs", "values", "df", "dtheta"):
            a = np.array(getattr(self, name), dtype=float)
            a.setflags(write=False)
            arrs[name] = a
            object.__setattr__(self, name, a)
        f, d, s = arrs["freqs"], arrs["dirs"], arrs["values"]
        if f.ndim != 1 or d.ndim != 1 or f.size == 0 or d.size == 0:
            raise SpectrumError("freqs and dirs must be non-empty 1-D arrays")
        if s.shape != (f.size, d.size):
            raise SpectrumError(f"values shape {s.shape} does not match {f.size} freqs x {d.size} dirs")
        if arrs["df"].shape != f.shape or arrs["dtheta"].shape != d.shape:
            raise SpectrumError("bin width arrays must match freqs and dirs")
        for name, a in arrs.items():
            if not np.all(np.isfinite(a)):
                raise SpectrumError(f"{name} contains non-finite values")
        if np.any(f <= 0) or np.any(np.diff(f) <= 0):
            raise SpectrumError("frequencies must be positive and strictly increasing")
        if np.any(d < 0) or np.any(d >= TWO_PI) or np.any(np.diff(d) <= 0):
            raise SpectrumError("directions must be strictly increasing within [0, 2*pi)")
        if np.any(arrs["df"] <= 0) or np.any(arrs["dtheta"] <= 0):
            raise SpectrumError("bin widths must be positive")
        if np.any(s < 0):
            i, j = np.argwhere(s < 0)[0]
            raise SpectrumError(f"negative energy density {s[i, j]} at f={f[i]}, theta={d[j]}")

    def scaled(self, c: float) -> "DirectionalSpectrum":
        return DirectionalSpectrum(self.freqs, self.dirs, self.values * c, self.df, self.dtheta)


def _midpoint_widths(centers: np.ndarray, periodic: bool = False) -> np.ndarray:
    """Bin widths from center spacing: half the distance to each neighbour, summed."""
    n = centers.size
    if n == 1:
        return np.array([TWO_PI]) if periodic else np.array([np.nan])
    if periodic:
        ext = np.concatenate([[centers[-1] - TWO_PI], centers, [centers[0] + TWO_PI]])
    else:
        ext = np.concatenate([[2 * centers[0] - centers[1]], centers, [2 * centers[-1] - centers[-2]]])
    return (ext[2:] - ext[:-2]) / 2.0


def _parse_float(cell: str, row: int, column: str, allow_blank: bool = False):
    cell = cell.strip()
    if not cell:
        if allow_blank:
            return None
        raise SpectrumError("empty value", row, column)
    try:
        v = float(cell)
    except ValueError:
        raise SpectrumError(f"{cell!r} is not a number", row, column) from None
    if not math.isfinite(v):
        raise SpectrumError(f"non-finite value {cell!r}", row, column)
    return v


def load_spectrum(source) -> DirectionalSpectrum:
    """Read the bin-per-row CSV format.

    ``source`` is CSV text or a text stream. Rows run frequency-major:
    frequencies strictly increase from one block to the next, and every
    block lists the same directions in the same order. Blank ``df_hz`` or
    ``dtheta_rad`` cells are filled from midpoint spacing of the centers
    (directions wrap around 2*pi). Row numbers in errors count the header
    as row 1.
    """
    text = source if isinstance(source, str) else source.read()
    rows = list(csv.reader(io.StringIO(text)))
    rows = [(n, r) for n, r in enumerate(rows, start=1) if r and any(c.strip() for c in r)]
    if not rows:
        raise SpectrumError("empty spectrum file")
    hdr_row, header = rows[0]
    header = tuple(h.strip() for h in header)
    if header != SPECTRUM_HEADER:
        raise SpectrumError(f"header must be {','.join(SPECTRUM_HEADER)}; got {','.join(header)}", hdr_row)
    if len(rows) == 1:
        raise SpectrumError("spectrum file has no bins")

    blocks: list[tuple[float, list]] = []  # (f, [(row, df, theta, dtheta, s)])
    for n, r in rows[1:]:
        if len(r) != len(SPECTRUM_HEADER):
            raise SpectrumError(f"expected {len(SPECTRUM_HEADER)} fields, got {len(r)}", n)
        f = _parse_float(r[0], n, "f_hz")
        df = _parse_float(r[1], n, "df_hz", allow_blank=True)
        th = _parse_float(r[2], n, "theta_rad")
        dth = _parse_float(r[3], n, "dtheta_rad", allow_blank=True)
        s = _parse_float(r[4], n, "s_m2_per_hz_rad")
        if s < 0:
            raise SpectrumError(f"negative energy density {s}", n, "s_m2_per_hz_rad")
        if f <= 0:
            raise SpectrumError(f"frequency must be positive, got {f}", n, "f_hz")
        if df is not None and df <= 0:
            raise SpectrumError(f"bin width must be positive, got {df}", n, "df_hz")
        if dth is not None and dth <= 0:
            raise SpectrumError(f"bin width must be positive, got {dth}", n, "dtheta_rad")
        if not 0 <= th < TWO_PI:
            raise SpectrumError(f"direction {th} outside [0, 2*pi)", n, "theta_rad")
        if blocks and f == blocks[-1][0]:
            blocks[-1][1].append((n, df, th, dth, s))
        elif blocks and f < blocks[-1][0]:
            raise SpectrumError(f"frequency {f} after {blocks[-1][0]}: rows must be frequency-major and increasing", n, "f_hz")
        else:
            blocks.append((f, [(n, df, th, dth, s)]))

    first = blocks[0][1]
    dirs = [b[2] for b in first]
    for i in range(1, len(dirs)):
        if dirs[i] <= dirs[i - 1]:
            raise SpectrumError("directions must increase within a frequency block", first[i][0], "theta_rad")
    dth_given = [b[3] for b in first]
    for f, block in blocks[1:]:
        if len(block) != len(dirs):
            raise SpectrumError(f"frequency {f} has {len(block)} direction rows, expected {len(dirs)}", block[0][0])
        for (n, _, th, dth, _), th0, dth0 in zip(block, dirs, dth_given):
            if th != th0:
                raise SpectrumError(f"direction {th} does not match {th0} of the first block", n, "theta_rad")
            if dth != dth0:
                raise SpectrumError("dtheta_rad differs from the first block", n, "dtheta_rad")
    df_given = []
    for f, block in blocks:
        widths = {b[1] for b in block}
        if len(widths) != 1:
            raise SpectrumError(f"df_hz not constant within frequency {f}", block[0][0], "df_hz")
        df_given.append(widths.pop())

    freqs = np.array([b[0] for b in blocks])
    dirs_a = np.array(dirs)
    df_mid = _midpoint_widths(freqs)
    dth_mid = _midpoint_widths(dirs_a, periodic=True)
    df_arr = np.array([g if g is not None else m for g, m in zip(df_given, df_mid)])
    dth_arr = np.array([g if g is not None else m for g, m in zip(dth_given, dth_mid)])
    if np.any(np.isnan(df_arr)):
        raise SpectrumError("df_hz is blank and cannot be inferred from a single frequency", blocks[0][1][0][0], "df_hz")
    values = np.array([[b[4] for b in block] for _, block in blocks])
    return DirectionalSpectrum(freqs, dirs_a, values, df_arr, dth_arr)


def spectrum_to_csv(s: DirectionalSpectrum) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SPECTRUM_HEADER)
    for i, f in enumerate(s.freqs):
        for j, th in enumerate(s.dirs):
            w.writerow([repr(float(f)), repr(float(s.df[i])), repr(float(th)), repr(float(s.dtheta[j])), repr(float(s.values[i, j]))])
    return buf.getvalue()


def spectral_m0(s: DirectionalSpectrum) -> float:
    return math.fsum((s.values * np.outer(s.df, s.dtheta)).ravel().tolist())


def significant_wave_height(s: DirectionalSpectrum) -> float:
    return 4.0 * math.sqrt(spectral_m0(s))


@dataclass(frozen=True)
class WaveComponent:
    amplitude: float
    wavenumber: float
    direction: float
    omega: float
    phase: float


def draw_components(s: DirectionalSpectrum, rng: Rng, g: float = G) -> list[WaveComponent]:
    """One component per positive bin, frequency-major; one phase draw per emitted component."""
    comps = []
    for i, f in enumerate(s.freqs.tolist()):
        omega = TWO_PI * f
        k = omega * omega / g
        for j, theta in enumerate(s.dirs.tolist()):
            e = float(s.values[i, j])
            if e <= 0.0:
                continue
            a = math.sqrt(2.0 * e * float(s.df[i]) * float(s.dtheta[j]))
            comps.append(WaveComponent(a, k, theta, omega, TWO_PI * rng.next_unit()))
    return comps


@dataclass(frozen=True)
class WaveField:
    nx: int
    ny: int
    dx: float
    dy: float
    t: float
    heights: np.ndarray  # shape (nx, ny): heights[i, j] at (x0 + i*dx, y0 + j*dy)
    components: tuple
    origin: tuple = (0.0, 0.0)
    manifest: object = field(default=None, compare=False)


def synthesize_field(
    components: Iterable[WaveComponent],
    nx: int,
    ny: int,
    dx: float,
    dy: float,
    t: float = 0.0,
    origin: tuple[float, float] = (0.0, 0.0),
    manifest=None,
) -> WaveField:
    """Sum the components on the grid nodes, one component at a time in list order."""
    if nx < 1 or ny < 1:
        raise DegenerateGridError("nx and ny must be >= 1")
    if not (dx > 0 and dy > 0):
        raise DegenerateGridError("dx and dy must be positive")
    comps = tuple(components)
    x = origin[0] + dx * np.arange(nx, dtype=float)
    y = origin[1] + dy * np.arange(ny, dtype=float)
    X, Y = np.meshgrid(x, y, indexing="ij")
    eta = np.zeros((nx, ny))
    for c in comps:
        eta += c.amplitude * np.cos(
            c.wavenumber * (X * math.cos(c.direction) + Y * math.sin(c.direction)) - c.omega * t + c.phase
        )
    eta.setflags(write=False)
    return WaveField(nx, ny, dx, dy, t, eta, comps, (float(origin[0]), float(origin[1])), manifest)


def synthesize_from_spectrum(
    s: DirectionalSpectrum,
    seed: int,
    nx: int,
    ny: int,
    dx: float,
    dy: float,
    t: float = 0.0,
    origin: tuple[float, float] = (0.0, 0.0),
    g: float = G,
    manifest=None,
) -> WaveField:
    comps = draw_components(s, Rng(seed), g)
    return synthesize_field(comps, nx, ny, dx, dy, t, origin, manifest)


def field_variance(wf: WaveField) -> float:
    """Population variance of the heights over all grid nodes."""
    if wf.nx * wf.ny < 2:
        raise DegenerateGridError("variance needs at least two grid nodes")
    return float(np.var(wf.heights))


def field_to_csv(wf: WaveField) -> str:
    """Heights in metres, one line per y index, x increasing along the line."""
    lines = [",".join(repr(float(v)) for v in row) for row in wf.heights.T.tolist()]
    return "\n".join(lines) + "\n"


def field_to_gray(wf: WaveField, maxval: int = 255):
    """Gray levels (rows = y) with the (min, max) heights that map to 0 and maxval."""
    from .raster import normalize_to_gray

    return normalize_to_gray(wf.heights.T, maxval)


def spectrum_heatmap(s: DirectionalSpectrum, maxval: int = 255) -> np.ndarray:
    """Gray levels of S scaled from zero: one row per frequency (lowest first), one column per direction."""
    vmax = float(s.values.max())
    if vmax <= 0:
        return np.zeros(s.values.shape, dtype=int)
    return np.rint(s.values / vmax * maxval).astype(int)
