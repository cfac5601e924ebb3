import math
import time

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gaw.measures import (
    EnumerationTooLargeError,
    SymbolGrid,
    TilingError,
    UndefinedRedundancyError,
    ValidationError,
    block_entropy,
    entropy,
    enumerate_semantic_space,
    grid_symbol_distribution,
    redundancy,
)


def distributions(min_size=1, max_size=12):
    return st.lists(st.floats(0, 1, allow_nan=False), min_size=min_size, max_size=max_size).filter(
        lambda w: sum(w) > 1e-6
    ).map(lambda w: [x / math.fsum(w) for x in w]).filter(lambda p: abs(math.fsum(p) - 1) <= 1e-12)


# -- entropy ------------------------------------------------------------------

def test_entropy_examples():
    assert entropy([0.5, 0.5]) == 1.0
    assert entropy([1.0]) == 0.0
    # -(0.5 log2 0.5 + 2 * 0.25 log2 0.25) = 0.5 + 1.0
    assert entropy([0.5, 0.25, 0.25]) == pytest.approx(1.5, abs=1e-15)


def test_zero_probability_contributes_nothing():
    assert entropy([0.5, 0.0, 0.5, 0.0]) == 1.0


@pytest.mark.parametrize("k", [2, 3, 4, 7, 8, 100, 1000])
def test_uniform_entropy_is_log2_k(k):
    assert abs(entropy([1 / k] * k) - math.log2(k)) <= 1e-12


@pytest.mark.parametrize("bad", [[], [0.5, 0.6], [1.2, -0.2], [float("nan"), 1.0], [0.3, 0.3]])
def test_invalid_distribution(bad):
    with pytest.raises(ValidationError):
        entropy(bad)


@settings(max_examples=300, deadline=None)
@given(distributions())
def test_entropy_bounds(p):
    h = entropy(p)
    assert 0.0 <= h <= math.log2(len(p)) + 1e-12


@settings(max_examples=300, deadline=None)
@given(distributions(min_size=2), st.randoms(use_true_random=False))
def test_permutation_invariance(p, rnd):
    q = list(p)
    rnd.shuffle(q)
    assert entropy(q) == entropy(p)
    assert redundancy(q) == redundancy(p)


# -- redundancy ---------------------------------------------------------------

def test_redundancy_examples():
    assert redundancy([0.25] * 4) == 0.0
    assert redundancy([1, 0, 0, 0]) == 1.0
    assert redundancy([0.5, 0.25, 0.25]) == pytest.approx(0.053605369642813816, abs=1e-15)


def test_redundancy_needs_two_symbols():
    with pytest.raises(UndefinedRedundancyError):
        redundancy([1.0])


@settings(max_examples=200, deadline=None)
@given(distributions(min_size=2))
def test_redundancy_in_unit_interval(p):
    assert 0.0 <= redundancy(p) <= 1.0


# -- grids --------------------------------------------------------------------

def test_grid_distribution_examples():
    assert grid_symbol_distribution(SymbolGrid(2, 2, [0, 0, 1, 1], 2)) == [0.5, 0.5]
    assert grid_symbol_distribution(SymbolGrid(3, 1, [2, 2, 2], 3)) == [0, 0, 1]


def test_grid_distribution_histogram_oracle():
    cells = [0] * 8 + [1] * 4 + [2] * 4
    np.random.default_rng(3).shuffle(cells)
    g = SymbolGrid(4, 4, cells, 3)
    expected = (np.bincount(cells, minlength=3) / 16).tolist()
    assert expected == [0.5, 0.25, 0.25]
    assert grid_symbol_distribution(g) == expected


def test_grid_validation():
    with pytest.raises(ValidationError):
        SymbolGrid(2, 2, [0, 1, 2], 3)
    with pytest.raises(ValidationError):
        SymbolGrid(2, 1, [0, 3], 3)
    with pytest.raises(ValidationError):
        grid_symbol_distribution(SymbolGrid(0, 0, [], 2))


def test_block_entropy_examples():
    assert block_entropy(SymbolGrid(4, 4, [0] * 16, 2), 2, 2) == 0.0
    checker = [(x + y) % 2 for y in range(4) for x in range(4)]
    assert block_entropy(SymbolGrid(4, 4, checker, 2), 2, 2) == 0.0
    assert block_entropy(SymbolGrid(2, 2, [0, 1, 2, 3], 4), 1, 1) == 2.0


def test_block_entropy_by_enumeration():
    rng = np.random.default_rng(11)
    a = rng.integers(0, 2, size=(6, 8))
    g = SymbolGrid.from_array(a, 2)
    # enumerate 2x3 tiles by explicit loops
    tiles = {}
    for by in range(0, 6, 3):
        for bx in range(0, 8, 2):
            key = tuple(a[by:by + 3, bx:bx + 2].ravel())
            tiles[key] = tiles.get(key, 0) + 1
    n = sum(tiles.values())
    expected = -sum(c / n * math.log2(c / n) for c in tiles.values())
    assert block_entropy(g, 2, 3) == pytest.approx(expected, abs=1e-12)


def test_block_entropy_tiling_error():
    with pytest.raises(TilingError):
        block_entropy(SymbolGrid(4, 4, [0] * 16, 2), 3, 2)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 8), st.integers(1, 8), st.integers(1, 5), st.data())
def test_grid_entropy_shuffle_invariant_and_matches_unit_blocks(w, h, k, data):
    cells = data.draw(st.lists(st.integers(0, k - 1), min_size=w * h, max_size=w * h))
    g = SymbolGrid(w, h, cells, k)
    h0 = entropy(grid_symbol_distribution(g))
    shuffled = data.draw(st.permutations(cells))
    assert entropy(grid_symbol_distribution(SymbolGrid(w, h, shuffled, k))) == h0
    assert block_entropy(g, 1, 1) == h0


# -- semantic space -----------------------------------------------------------

CARNAP = [("red", "blue"), ("sweet", "bitter"), ("attainable", "unattainable")]


def test_carnap_three_properties():
    space = enumerate_semantic_space(CARNAP)
    assert space.q == 8
    assert space.states[0] == ("red", "sweet", "attainable")
    assert space.states[-1] == ("blue", "bitter", "unattainable")
    assert space.states[1] == ("red", "sweet", "unattainable")


def test_empty_space_has_one_state():
    space = enumerate_semantic_space([])
    assert space.q == 1 and space.states == ((),)


def test_four_properties_bruteforce():
    props = [(f"p{i}", f"not-p{i}") for i in range(4)]
    space = enumerate_semantic_space(props)
    brute = set()
    for mask in range(16):
        brute.add(tuple(props[i][(mask >> (3 - i)) & 1] for i in range(4)))
    assert space.q == 16 == len(set(space.states))
    assert set(space.states) == brute
    assert list(space.states) == sorted(space.states, key=lambda s: [props[i].index(s[i]) for i in range(4)])


@pytest.mark.parametrize("n", range(0, 9))
def test_semantic_space_invariants(n):
    props = [(f"t{i}", f"a{i}") for i in range(n)]
    space = enumerate_semantic_space(props)
    assert space.q == 2 ** n == len(set(space.states))
    for state in space.states:
        assert len(state) == n
        assert all(lit in props[i] for i, lit in enumerate(state))


def test_enumeration_bound():
    enumerate_semantic_space([(f"t{i}", f"a{i}") for i in range(20)])
    with pytest.raises(EnumerationTooLargeError):
        enumerate_semantic_space([(f"t{i}", f"a{i}") for i in range(21)])


def test_carnap_is_fast():
    t0 = time.perf_counter()
    enumerate_semantic_space(CARNAP)
    assert time.perf_counter() - t0 < 1e-3

