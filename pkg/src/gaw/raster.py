"""PGM (P2/P5) and CSV symbol-grid reading and writing."""

from __future__ import annotations

import csv
import io

import numpy as np

from .measures import SymbolGrid, ValidationError


class RasterFormatError(ValueError):
    pass


def _pnm_tokens(data: bytes):
    """Yield (token, end_offset) for the header, skipping '#' comments."""
    i, n = 0, len(data)
    while i < n:
        c = data[i:i + 1]
        if c == b"#":
            while i < n and data[i:i + 1] not in (b"\n", b"\r"):
                i += 1
        elif c.isspace():
            i += 1
        else:
            j = i
            while j < n and not data[j:j + 1].isspace() and data[j:j + 1] != b"#":
                j += 1
            yield data[i:j], j
            i = j


def read_pgm(data: bytes) -> tuple[np.ndarray, int]:
    """Parse a P2 or P5 graymap. Returns (rows x cols int array, maxval)."""
    tokens = _pnm_tokens(data)
    try:
        magic, _ = next(tokens)
        if magic not in (b"P2", b"P5"):
            raise RasterFormatError(f"unsupported magic {magic!r}; expected P2 or P5")
        width = int(next(tokens)[0])
        height = int(next(tokens)[0])
        maxval_tok, end = next(tokens)
        maxval = int(maxval_tok)
    except StopIteration:
        raise RasterFormatError("truncated PGM header") from None
    except ValueError as exc:
        if isinstance(exc, RasterFormatError):
            raise
        raise RasterFormatError(f"bad PGM header: {exc}") from None
    if width < 1 or height < 1 or not 0 < maxval < 65536:
        raise RasterFormatError(f"bad PGM geometry {width}x{height} maxval={maxval}")
    count = width * height
    if magic == b"P5":
        body = data[end + 1:]
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        need = count * dtype.itemsize
        if len(body) < need:
            raise RasterFormatError(f"P5 body holds {len(body)} bytes, expected {need}")
        values = np.frombuffer(body[:need], dtype=dtype).astype(int)
    else:
        try:
            values = np.array([int(t) for t, _ in tokens], dtype=int)
        except ValueError:
            raise RasterFormatError("non-integer sample in P2 body") from None
        if values.size < count:
            raise RasterFormatError(f"P2 body holds {values.size} samples, expected {count}")
        values = values[:count]
    if values.max(initial=0) > maxval:
        raise RasterFormatError("sample exceeds maxval")
    return values.reshape(height, width), maxval


def write_pgm(values: np.ndarray, maxval: int = 255, comments=()) -> bytes:
    """Plain (P2) graymap, one raster row per line."""
    a = np.asarray(values, dtype=int)
    if a.ndim != 2:
        raise ValueError("expected a 2-D array")
    if a.min(initial=0) < 0 or a.max(initial=0) > maxval:
        raise ValueError("samples outside [0, maxval]")
    lines = ["P2"]
    lines += [f"# {c}" for c in comments]
    lines.append(f"{a.shape[1]} {a.shape[0]}")
    lines.append(str(maxval))
    lines += [" ".join(str(v) for v in row) for row in a.tolist()]
    return ("\n".join(lines) + "\n").encode("ascii")


def normalize_to_gray(values: np.ndarray, maxval: int = 255) -> tuple[np.ndarray, float, float]:
    """Linearly map to [0, maxval]; returns (gray, vmin, vmax). A flat input maps to 0."""
    a = np.asarray(values, dtype=float)
    vmin, vmax = float(a.min()), float(a.max())
    if vmax > vmin:
        gray = np.rint((a - vmin) / (vmax - vmin) * maxval).astype(int)
    else:
        gray = np.zeros(a.shape, dtype=int)
    return gray, vmin, vmax


def quantize(values: np.ndarray, maxval: int, k: int = 8) -> np.ndarray:
    """Uniform bins: sample v lands in bin floor(v * k / (maxval + 1))."""
    if k < 1:
        raise ValueError("k must be >= 1")
    a = np.asarray(values, dtype=int)
    return np.minimum(a * k // (maxval + 1), k - 1)


def pgm_to_grid(data: bytes, k: int = 8) -> SymbolGrid:
    values, maxval = read_pgm(data)
    return SymbolGrid.from_array(quantize(values, maxval, k), alphabet_size=k)


def read_csv_grid(text: str, k: int | None = None) -> SymbolGrid:
    """Comma-separated integer rows. Alphabet defaults to max(2, max symbol + 1)."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        raise ValidationError("empty grid file")
    width = len(rows[0])
    cells = []
    for y, row in enumerate(rows, start=1):
        if len(row) != width:
            raise ValidationError(f"row {y} has {len(row)} cells, expected {width}")
        for x, cell in enumerate(row, start=1):
            try:
                cells.append(int(cell))
            except ValueError:
                raise ValidationError(f"row {y}, column {x}: {cell!r} is not an integer") from None
    if min(cells) < 0:
        raise ValidationError("symbols must be non-negative")
    if k is None:
        k = max(2, max(cells) + 1)
    return SymbolGrid(width, len(rows), tuple(cells), k)
