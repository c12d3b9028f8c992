"""Dense storage of values on a box of the lattice Z^m.

Cells hold arbitrary Python objects; ``None`` marks an absent cell.  Iteration
is lexicographic with the first lattice direction varying fastest.
"""
from __future__ import annotations

import itertools
from typing import Any, Callable, Iterator, Sequence

import numpy as np


class Grid:
    __slots__ = ("_cells",)

    def __init__(self, extents: Sequence[int], fill: Any = None):
        extents = tuple(int(n) for n in extents)
        if not extents or any(n < 1 for n in extents):
            raise ValueError(f"extents must be positive integers, got {extents}")
        self._cells = np.empty(extents, dtype=object)
        self._cells.fill(fill)

    @classmethod
    def from_flat(cls, extents: Sequence[int], values: Sequence) -> "Grid":
        g = cls(extents)
        values = list(values)
        if len(values) != g.size:
            raise ValueError(f"{len(values)} values for {g.size} cells")
        for u, val in zip(g.indices(), values):
            g[u] = val
        return g

    @property
    def extents(self) -> tuple[int, ...]:
        return self._cells.shape

    @property
    def dims(self) -> int:
        return self._cells.ndim

    @property
    def size(self) -> int:
        return self._cells.size

    def __getitem__(self, u):
        return self._cells[tuple(u)]

    def __setitem__(self, u, value):
        self._cells[tuple(u)] = value

    def in_range(self, u) -> bool:
        return all(0 <= a < n for a, n in zip(u, self.extents))

    def get(self, u, default=None):
        return self[u] if self.in_range(u) else default

    def indices(self) -> Iterator[tuple[int, ...]]:
        for rev in itertools.product(*(range(n) for n in reversed(self.extents))):
            yield rev[::-1]

    def values(self) -> list:
        return [self[u] for u in self.indices()]

    def items(self):
        for u in self.indices():
            yield u, self[u]

    def is_complete(self) -> bool:
        return all(v is not None for v in self._cells.flat)

    def missing(self) -> list[tuple[int, ...]]:
        return [u for u in self.indices() if self[u] is None]

    def map(self, fn: Callable) -> "Grid":
        out = Grid(self.extents)
        for u, val in self.items():
            out[u] = None if val is None else fn(val)
        return out

    def copy(self) -> "Grid":
        return self.map(lambda v: v)

    def edges(self, i: int) -> Iterator[tuple[int, ...]]:
        """Base vertices ``u`` of the edges ``(u, u + e_i)``."""
        for u in self.indices():
            if u[i] + 1 < self.extents[i]:
                yield u

    def quads(self, i: int, j: int) -> Iterator[tuple[int, ...]]:
        """Base vertices ``u`` of the elementary quads spanned by directions ``i`` and ``j``."""
        for u in self.indices():
            if u[i] + 1 < self.extents[i] and u[j] + 1 < self.extents[j]:
                yield u

    def quad(self, u, i: int, j: int) -> tuple:
        """Values at ``(u, u+e_i, u+e_i+e_j, u+e_j)``."""
        return tuple(self[w] for w in quad_vertices(u, i, j))

    def __eq__(self, other):
        return isinstance(other, Grid) and self.extents == other.extents and all(
            _cell_eq(a, b) for a, b in zip(self.values(), other.values())
        )

    def __repr__(self):
        return f"Grid(extents={self.extents})"


def _cell_eq(a, b) -> bool:
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def shift(u, *dirs: int) -> tuple[int, ...]:
    w = list(u)
    for k in dirs:
        w[k] += 1
    return tuple(w)


def unshift(u, *dirs: int) -> tuple[int, ...]:
    w = list(u)
    for k in dirs:
        w[k] -= 1
    return tuple(w)


def quad_vertices(u, i: int, j: int) -> tuple[tuple[int, ...], ...]:
    return (tuple(u), shift(u, i), shift(u, i, j), shift(u, j))


def hexahedron_vertices(u, i: int, j: int, k: int) -> tuple[tuple[int, ...], ...]:
    """``(u, u_i, u_j, u_k, u_ij, u_ik, u_jk)``: the seven vertices that determine ``u_ijk``."""
    return (
        tuple(u), shift(u, i), shift(u, j), shift(u, k),
        shift(u, i, j), shift(u, i, k), shift(u, j, k),
    )


def fill_by_hexahedra(grid: Grid, complete: Callable) -> list[tuple[int, ...]]:
    """Fill absent cells from their three-dimensional neighbourhoods.

    A cell ``w`` is computed as ``complete(*seven)`` from a cube ``u .. u+e_i+e_j+e_k = w``
    whose other seven vertices are known.  Cells are visited by increasing
    coordinate sum so that axis-first initial data propagates to the whole box.
    Returns the filled indices in the order they were computed; raises
    ``ValueError`` if some cell cannot be reached.
    """
    todo = sorted(grid.missing(), key=lambda u: (sum(u), u[::-1]))
    filled = []
    for w in todo:
        done = False
        for i, j, k in itertools.combinations(range(grid.dims), 3):
            if min(w[i], w[j], w[k]) < 1:
                continue
            u = unshift(w, i, j, k)
            seven = [grid[v] for v in hexahedron_vertices(u, i, j, k)]
            if any(v is None for v in seven):
                continue
            try:
                grid[w] = complete(*seven)
            except ValueError as exc:
                raise type(exc)(f"cell {w}: {exc}") from exc
            filled.append(w)
            done = True
            break
        if not done:
            raise ValueError(f"cell {w} is not determined by the known cells")
    return filled
