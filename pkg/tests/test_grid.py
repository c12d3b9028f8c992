import numpy as np
import pytest

from spherenets.grid import Grid, fill_by_hexahedra, hexahedron_vertices, quad_vertices, shift, unshift


def test_lexicographic_order_first_direction_fastest():
    g = Grid((3, 2))
    assert list(g.indices()) == [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)]
    h = Grid.from_flat((3, 2), list(range(6)))
    assert h[2, 0] == 2 and h[0, 1] == 3
    assert h.values() == list(range(6))


def test_from_flat_size_mismatch():
    with pytest.raises(ValueError):
        Grid.from_flat((2, 2), [1, 2, 3])


def test_bad_extents():
    with pytest.raises(ValueError):
        Grid((2, 0))


def test_absent_cells_and_map():
    g = Grid((2, 2))
    g[0, 0] = 1.0
    assert not g.is_complete()
    assert g.missing() == [(1, 0), (0, 1), (1, 1)]
    m = g.map(lambda v: 2 * v)
    assert m[0, 0] == 2.0 and m[1, 1] is None


def test_array_cells():
    g = Grid((2,))
    g[(0,)] = np.arange(3.0)
    assert isinstance(g[(0,)], np.ndarray) and g[(0,)].shape == (3,)
    assert g.copy() == g


def test_edges_and_quads():
    g = Grid((3, 2, 2))
    assert len(list(g.edges(0))) == 2 * 2 * 2
    assert len(list(g.quads(0, 1))) == 2 * 1 * 2
    assert quad_vertices((0, 0, 0), 0, 2) == ((0, 0, 0), (1, 0, 0), (1, 0, 1), (0, 0, 1))


def test_shift_helpers():
    assert shift((0, 0, 0), 0, 2) == (1, 0, 1)
    assert unshift((1, 1, 1), 1) == (1, 0, 1)
    assert hexahedron_vertices((0, 0, 0), 0, 1, 2)[-1] == (0, 1, 1)


def test_fill_by_hexahedra_counts_corners():
    g = Grid((3, 3, 2))
    for u in g.indices():
        if sum(1 for a in u if a) <= 2:
            g[u] = 0
    # value = 1 + max of the seven: the depth of the cell beyond the axis planes
    filled = fill_by_hexahedra(g, lambda *seven: 1 + max(seven))
    assert set(filled) == {u for u in g.indices() if all(u)}
    for u in filled:
        assert g[u] == sum(u) - 2


def test_fill_by_hexahedra_unreachable():
    g = Grid((2, 2, 2))
    g[0, 0, 0] = 0
    with pytest.raises(ValueError, match="not determined"):
        fill_by_hexahedra(g, lambda *seven: 0)


def test_fill_by_hexahedra_reports_cell():
    g = Grid((2, 2, 2), fill=0)
    g[1, 1, 1] = None

    def fail(*seven):
        raise ValueError("boom")

    with pytest.raises(ValueError, match=r"cell \(1, 1, 1\): boom"):
        fill_by_hexahedra(g, fail)
