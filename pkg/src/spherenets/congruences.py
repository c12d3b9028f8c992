"""Discrete line congruences: lattice maps to lines with intersecting neighbours."""
from __future__ import annotations

import itertools

import numpy as np

from .exceptions import DegenerateConfigurationError, IncidenceError
from .grid import Grid, fill_by_hexahedra, shift
from .pseudo_euclid import (
    DEFAULT_TOL,
    ProjectiveLine,
    Subspace,
    euclidean_space,
    intersect_subspaces,
    principal_sines,
    top_basis,
)
from .qnets import (
    ConsistencyResult,
    _hyperplane_normal,
    _intersect_hyperplanes,
    axis_indices,
    cube_candidates,
    max_pairwise,
    two_layer,
)


def meet_residual(l1: Subspace, l2: Subspace) -> float:
    """Sine of the smallest principal angle between two lines (zero when they meet)."""
    return float(principal_sines(l1.basis, l2.basis)[-1])


def lines_intersect(l1: Subspace, l2: Subspace, tol: float = DEFAULT_TOL):
    """``(True, point)`` when the lines meet, ``(False, None)`` when they are skew.

    Raises :class:`DegenerateConfigurationError` for coincident lines.
    """
    if l1.space.dim != l2.space.dim:
        raise ValueError("lines live in different spaces")
    a, b = l1.basis, l2.basis
    r = b - (b @ a.T) @ a
    u, s, _ = np.linalg.svd(r, full_matrices=False)
    if s[0] <= tol:
        raise DegenerateConfigurationError("coincident lines have no single intersection point")
    if s[1] > tol:
        return False, None
    # direction of l2 closest to l1, averaged with its projection onto l1
    p2 = u[:, 1] @ b
    p1 = (p2 @ a.T) @ a
    return True, (p1 + p2) / 2.0


def _line_in_space(vectors, like: Subspace, tol: float) -> ProjectiveLine:
    return ProjectiveLine.span(vectors, like.space, tol)


def complete_congruence_hexahedron(l, l1, l2, l3, l12, l13, l23, tol: float = DEFAULT_TOL) -> ProjectiveLine:
    """Unique line ``l123`` meeting ``l12``, ``l13`` and ``l23``.

    It is the intersection of the three 3-spaces ``span(l_i, l_ij, l_ik)``
    inside the 4-space spanned by ``l, l1, l2, l3``.
    """
    lines = (l, l1, l2, l3, l12, l13, l23)
    pairs = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (1, 5), (3, 5), (2, 6), (3, 6)]
    for a, b in pairs:
        r = meet_residual(lines[a], lines[b])
        if r > tol:
            raise IncidenceError(f"input lines {a} and {b} do not intersect (residual {r:.3g})")
    common = intersect_subspaces(intersect_subspaces(l12, l13, tol), l23, tol)
    if common.dim:
        raise DegenerateConfigurationError("l12, l13, l23 share a point: every line through it meets all three")
    V, s = top_basis(np.vstack([x.basis for x in lines[:4]]), 5)
    if s.size < 5 or s[4] <= tol * s[0]:
        raise DegenerateConfigurationError("l, l1, l2, l3 do not span a projective 4-space")
    X = [x.basis @ V.T for x in lines]
    normals = [
        _hyperplane_normal(np.vstack([X[1], X[4], X[5]]), 4, tol, "span(l1, l12, l13)"),
        _hyperplane_normal(np.vstack([X[2], X[4], X[6]]), 4, tol, "span(l2, l12, l23)"),
        _hyperplane_normal(np.vstack([X[3], X[5], X[6]]), 4, tol, "span(l3, l13, l23)"),
    ]
    y = _intersect_hyperplanes(normals, 2, tol, "congruence completion")
    return _line_in_space(y @ V, l, tol)


def check_congruence_consistency(initial: dict, m: int, tol: float = DEFAULT_TOL) -> ConsistencyResult:
    """Complete a congruence m-cube along every route; deviation is the max
    pairwise line distance between the candidates for the top vertex."""
    cands = cube_candidates(initial, m, lambda *x: complete_congruence_hexahedron(*x, tol=tol))
    top = cands[tuple(range(m))]
    return ConsistencyResult(top, max_pairwise(top, lambda a, b: a.distance(b)))


def random_congruence_cube(m: int, rng: np.random.Generator, ambient: int = 6) -> dict:
    """Generic congruence initial data on the m-cube in R^ambient.

    Each ``l_i`` passes through a random point of ``l`` and each ``l_ij``
    joins random points of ``l_i`` and ``l_j``.
    """
    space = euclidean_space(ambient)

    def point_on(line):
        a, b = rng.normal(size=2)
        return a * line.basis[0] + b * line.basis[1]

    data = {(): ProjectiveLine.span(rng.normal(size=(2, ambient)), space)}
    for i in range(m):
        data[(i,)] = ProjectiveLine.through(point_on(data[()]), rng.normal(size=ambient), space)
    for i, j in itertools.combinations(range(m), 2):
        data[(i, j)] = ProjectiveLine.through(point_on(data[(i,)]), point_on(data[(j,)]), space)
    return data


def random_congruence_grid(extents, rng: np.random.Generator, ambient: int = 6,
                           tol: float = DEFAULT_TOL) -> Grid:
    """Generic congruence on a 3D box, completed from random axis-plane data."""
    if len(extents) != 3:
        raise ValueError("random congruence grids are three-dimensional")
    space = euclidean_space(ambient)
    g = Grid(extents)

    def point_on(line):
        a, b = rng.normal(size=2)
        return a * line.basis[0] + b * line.basis[1]

    for u in sorted(g.indices(), key=sum):
        if sum(1 for a in u if a) > 2:
            continue
        nz = [k for k in range(3) if u[k]]
        if not nz:
            g[u] = ProjectiveLine.span(rng.normal(size=(2, ambient)), space)
        elif len(nz) == 1:
            prev = list(u)
            prev[nz[0]] -= 1
            g[u] = ProjectiveLine.through(point_on(g[prev]), rng.normal(size=ambient), space)
        else:
            i, j = nz
            a = list(u)
            a[i] -= 1
            b = list(u)
            b[j] -= 1
            g[u] = ProjectiveLine.through(point_on(g[a]), point_on(g[b]), space)
    fill_by_hexahedra(g, lambda *x: complete_congruence_hexahedron(*x, tol=tol))
    return g


def complete_congruence(grid: Grid, tol: float = DEFAULT_TOL) -> Grid:
    out = grid.copy()
    fill_by_hexahedra(out, lambda *x: complete_congruence_hexahedron(*x, tol=tol))
    return out


def focal_net(c: Grid, i: int, tol: float = DEFAULT_TOL) -> Grid:
    """Intersection points ``l(u) ∩ l(u + e_i)`` on the box shortened in direction ``i``."""
    ext = list(c.extents)
    ext[i] -= 1
    if ext[i] < 1:
        raise ValueError("grid too short in the focal direction")
    out = Grid(ext)
    for u in out.indices():
        meets, p = lines_intersect(c[u], c[shift(u, i)], tol)
        if not meets:
            raise IncidenceError(f"lines at {u} and {shift(u, i)} do not intersect")
        out[u] = p
    return out


def congruence_f_transform(c: Grid, seed: Grid, tol: float = DEFAULT_TOL) -> Grid:
    """F-transform of a line congruence from its values along the coordinate axes."""
    if not c.is_complete():
        raise ValueError("base congruence has absent cells")
    start = Grid(c.extents)
    for u in axis_indices(c.extents):
        if seed[u] is None:
            raise ValueError(f"seed missing at axis vertex {u}")
        meets, _ = lines_intersect(c[u], seed[u], tol)
        if not meets:
            raise IncidenceError(f"seed line at {u} does not meet the base line")
        start[u] = seed[u]
    layered = two_layer(c, start)
    fill_by_hexahedra(layered, lambda *x: complete_congruence_hexahedron(*x, tol=tol))
    out = Grid(c.extents)
    for u in out.indices():
        out[u] = layered[u + (1,)]
    return out


def central_collineation(center, covector, scale: float = 1.0) -> np.ndarray:
    """Projective map ``I + scale * center covector^T`` fixing the hyperplane ``covector`` pointwise
    and every line through ``center``; each point and its image are collinear with ``center``."""
    center = np.asarray(center, dtype=float)
    covector = np.asarray(covector, dtype=float)
    return np.eye(center.size) + scale * np.outer(center, covector)


def map_line(H: np.ndarray, line: Subspace, tol: float = DEFAULT_TOL) -> ProjectiveLine:
    return ProjectiveLine.span(line.basis @ H.T, line.space, tol)
