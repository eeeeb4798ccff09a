import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from regseed.generators import monochromatic
from regseed.graph import (ColoredGraph, Complex, GraphError, PartitionwiseMap, TotalColor,
                           WorkCapExceeded, count_maps, enumerate_maps, random_partitionwise_map,
                           total_color, validate_complex, validate_graph)

from conftest import B, W


def test_monochromatic_k22_is_valid():
    validate_graph(monochromatic([2, 2]))


def test_palette_overflow_is_located():
    g = ColoredGraph([2, 2], [[0, 0], [0, 0]], {(0, 1): [[0, 2], [0, 0]]}, [1, 1], {(0, 1): 2}, (1, 2))
    with pytest.raises(GraphError, match=r"pair \(0, 1\) entry \[0, 1\]: color 2 overflows"):
        validate_graph(g)


def test_missing_pair_for_r3():
    edges = {(0, 1): np.zeros((1, 1)), (0, 2): np.zeros((1, 1))}
    g = ColoredGraph([1, 1, 1], [[0]] * 3, edges, [1] * 3, {k: 1 for k in edges}, (1, 1))
    with pytest.raises(GraphError, match=r"missing pair \(1, 2\)"):
        validate_graph(g)


def test_palette_above_b_rejected():
    g = ColoredGraph([1, 1], [[0], [0]], {(0, 1): [[0]]}, [1, 1], {(0, 1): 3}, (1, 2))
    with pytest.raises(GraphError, match="b2=2"):
        validate_graph(g)


def test_graph_arrays_are_read_only(four):
    with pytest.raises(ValueError):
        four.edge_colors[(0, 1)][0, 0] = 1


def test_total_color_vertex():
    g = ColoredGraph([2, 1], [[0, 1], [0]], {(0, 1): [[0], [0]]}, [2, 1], {(0, 1): 1}, (2, 1))
    assert total_color(g, (0, 1)) == TotalColor((0,), 1)


def test_total_color_edge_and_reversal(four):
    tc = total_color(four, ((0, 0), (1, 0)))
    assert tc == TotalColor((0, 1), B, (0, 0))
    assert total_color(four, ((1, 0), (0, 0))) == tc
    assert total_color(four, ((0, 1), (1, 1))).color == W


def test_total_color_rejects_same_part(four):
    with pytest.raises(GraphError):
        total_color(four, ((0, 0), (0, 1)))


def test_random_map_empty_and_reproducible():
    assert random_partitionwise_map([2, 2], [0, 0], np.random.default_rng(0)) == PartitionwiseMap.empty(2)
    a = random_partitionwise_map([2, 2], [1, 1], np.random.default_rng(5))
    b = random_partitionwise_map([2, 2], [1, 1], np.random.default_rng(5))
    assert a == b and a.counts == (1, 1)


def test_random_map_is_uniform():
    phi = random_partitionwise_map([4], [10 ** 5], np.random.default_rng(3))
    freq = np.bincount(phi.slots[0], minlength=4) / 10 ** 5
    assert np.all(np.abs(freq - 0.25) <= 0.01)


@pytest.mark.parametrize("sizes,counts,n", [((2, 2), (1, 1), 4), ((3, 3), (2, 2), 81), ((3, 4), (0, 0), 1)])
def test_enumerate_maps_counts(sizes, counts, n):
    maps = list(enumerate_maps(sizes, counts, 10 ** 6))
    assert len(maps) == n == count_maps(sizes, counts)
    assert len(set(maps)) == n


def test_enumerate_maps_work_cap():
    with pytest.raises(WorkCapExceeded):
        list(enumerate_maps((5, 5), (4, 4), 1000))


def test_count_maps_cap_short_circuit():
    assert count_maps((10, 10), (10 ** 15, 10 ** 15), cap=100) == 101


def test_complex_closure_and_colors(four):
    with pytest.raises(GraphError, match="closure"):
        validate_complex(Complex.build(2, 1, {(0, 0): 0}, {(0, 0, 1, 0): B}), four)
    validate_complex(Complex.build(2, 2), four)
    with pytest.raises(GraphError, match="unknown color 5"):
        validate_complex(Complex.build(2, 1, {(0, 0): 0, (1, 0): 0}, {(0, 0, 1, 0): 5}), four)


def test_complex_wrong_row_length(four):
    with pytest.raises(GraphError, match="exactly h"):
        validate_complex(Complex(2, 2, [[0, 0], [0]], {}), four)


def test_complex_edge_key_normalized():
    s = Complex.build(2, 1, {(0, 0): 0, (1, 0): 0}, {(1, 0, 0, 0): 1})
    assert list(s.edges) == [(0, 0, 1, 0)]
    assert s.edge_total_color((0, 0, 1, 0)) == TotalColor((0, 1), 1, (0, 0))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=2, max_size=4), st.integers(1, 3), st.integers(1, 3),
       st.integers(0, 2 ** 32 - 1))
def test_random_graphs_validate(sizes, b1, b2, seed):
    from regseed.generators import uniform_random
    g = uniform_random(sizes, b1, b2, seed)
    validate_graph(g)
    assert len(g.edge_colors) == len(sizes) * (len(sizes) - 1) // 2
