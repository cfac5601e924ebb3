"""Information measures over distributions and symbol grids.

Entropy is in bits, with 0 * log2(0) taken as 0. Redundancy
``R = 1 - H / log2(k)`` reads as order: 0 for a uniform distribution,
1 for a certain one.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

SUM_TOL = 1e-9
MAX_SEMANTIC_PROPERTIES = 20


class ValidationError(ValueError):
    pass


class UndefinedRedundancyError(ValueError):
    pass


class TilingError(ValueError):
    pass


class EnumerationTooLargeError(ValueError):
    pass


def validate_distribution(probs: Sequence[float]) -> np.ndarray:
    p = np.asarray(probs, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise ValidationError("distribution must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(p)):
        raise ValidationError("distribution contains non-finite values")
    if np.any(p < 0):
        i = int(np.argmax(p < 0))
        raise ValidationError(f"negative probability at index {i}: {p[i]}")
    total = math.fsum(p.tolist())
    if abs(total - 1.0) > SUM_TOL:
        raise ValidationError(f"probabilities sum to {total!r}, expected 1")
    return p


def entropy(probs: Sequence[float]) -> float:
    p = validate_distribution(probs)
    # fsum over sorted terms: result independent of the input ordering
    terms = sorted(-x * math.log2(x) for x in p.tolist() if x > 0)
    h = math.fsum(terms)
    return max(h, 0.0)


def max_entropy(n: int) -> float:
    return math.log2(n)


def redundancy(probs: Sequence[float]) -> float:
    p = validate_distribution(probs)
    if p.size < 2:
        raise UndefinedRedundancyError("redundancy needs at least two symbols")
    r = 1.0 - entropy(p) / math.log2(p.size)
    return min(max(r, 0.0), 1.0)


@dataclass(frozen=True)
class SymbolGrid:
    """Row-major raster of small integer symbols in ``[0, alphabet_size)``."""

    width: int
    height: int
    cells: tuple
    alphabet_size: int

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(int(c) for c in self.cells))
        if self.width < 0 or self.height < 0:
            raise ValidationError("grid dimensions must be non-negative")
        if self.alphabet_size < 1:
            raise ValidationError("alphabet_size must be >= 1")
        if len(self.cells) != self.width * self.height:
            raise ValidationError(
                f"{len(self.cells)} cells for a {self.width}x{self.height} grid"
            )
        for i, c in enumerate(self.cells):
            if not 0 <= c < self.alphabet_size:
                raise ValidationError(
                    f"cell {i} (x={i % max(self.width, 1)}, y={i // max(self.width, 1)}) "
                    f"holds {c}, outside [0, {self.alphabet_size})"
                )

    @classmethod
    def from_array(cls, arr, alphabet_size: int | None = None) -> "SymbolGrid":
        a = np.asarray(arr, dtype=int)
        if a.ndim != 2:
            raise ValidationError("expected a 2-D array")
        k = alphabet_size if alphabet_size is not None else int(a.max()) + 1 if a.size else 1
        return cls(a.shape[1], a.shape[0], tuple(a.ravel().tolist()), k)

    def to_array(self) -> np.ndarray:
        return np.array(self.cells, dtype=int).reshape(self.height, self.width)


def grid_symbol_distribution(grid: SymbolGrid) -> list[float]:
    n = grid.width * grid.height
    if n == 0:
        raise ValidationError("empty grid has no symbol distribution")
    counts = Counter(grid.cells)
    return [counts.get(s, 0) / n for s in range(grid.alphabet_size)]


def block_entropy(grid: SymbolGrid, block_w: int, block_h: int) -> float:
    """Entropy over the contents of non-overlapping ``block_w x block_h`` tiles."""
    if block_w < 1 or block_h < 1:
        raise TilingError("block dimensions must be positive")
    if grid.width == 0 or grid.height == 0:
        raise ValidationError("empty grid")
    if grid.width % block_w or grid.height % block_h:
        raise TilingError(
            f"{block_w}x{block_h} blocks do not tile a {grid.width}x{grid.height} grid"
        )
    a = grid.to_array()
    by, bx = grid.height // block_h, grid.width // block_w
    tiles = a.reshape(by, block_h, bx, block_w).swapaxes(1, 2).reshape(by * bx, -1)
    counts = Counter(t.tobytes() for t in tiles)
    total = by * bx
    return entropy([c / total for c in counts.values()])


@dataclass(frozen=True)
class SemanticSpace:
    """All state descriptions over binary properties.

    Each state is a tuple holding one literal per property: the term for
    bit 0 and the antonym for bit 1, first property most significant.
    """

    properties: tuple
    states: tuple = field(repr=False)

    @property
    def q(self) -> int:
        return len(self.states)


def enumerate_semantic_space(properties: Sequence[tuple[str, str]]) -> SemanticSpace:
    props = tuple((str(t), str(a)) for t, a in properties)
    if len(props) > MAX_SEMANTIC_PROPERTIES:
        raise EnumerationTooLargeError(
            f"{len(props)} properties exceed the enumeration bound of {MAX_SEMANTIC_PROPERTIES}"
        )
    states = tuple(
        tuple(pair[bit] for pair, bit in zip(props, bits))
        for bits in itertools.product((0, 1), repeat=len(props))
    )
    return SemanticSpace(props, states)
