"""Q-nets: lattice maps into projective space with planar elementary quads.

Points are homogeneous coordinate vectors of any length; ``homogenize``
turns affine points into representatives with last coordinate one.
"""
from __future__ import annotations

import itertools
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .exceptions import DegenerateConfigurationError, NonPlanarError, NotIsotropicError
from .grid import Grid, fill_by_hexahedra, shift
from .pseudo_euclid import DEFAULT_TOL, normalize_rows, projective_distance, rank_defect, top_basis


def homogenize(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return np.concatenate([x, np.ones(x.shape[:-1] + (1,))], axis=-1)


def dehomogenize(y, tol: float = DEFAULT_TOL) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if abs(y[-1]) <= tol * np.max(np.abs(y)):
        raise DegenerateConfigurationError("point at infinity has no affine coordinates")
    return y[:-1] / y[-1]


class QuadCoefficients(NamedTuple):
    """``f_ij = c_ij f_j + c_ji f_i + rho_ij f`` for the given representatives."""

    c_ij: float
    c_ji: float
    rho_ij: float


def planarity_residual(f, fi, fij, fj) -> float:
    return rank_defect([f, fi, fij, fj], 3)


def quad_planarity(f, fi, fij, fj, tol: float = DEFAULT_TOL):
    """Planarity of a quad of homogeneous points.

    Returns ``(planar, coefficients)``; coefficients are ``None`` when the quad
    is not planar or when ``f, fi, fj`` are collinear (not unique).
    """
    planar = planarity_residual(f, fi, fij, fj) <= tol
    if not planar:
        return False, None
    B = np.array([fj, fi, f], dtype=float).T
    if rank_defect(B.T, 2) <= tol:
        return True, None
    coef, *_ = np.linalg.lstsq(B, np.asarray(fij, dtype=float), rcond=None)
    return True, QuadCoefficients(*(float(c) for c in coef))


def _hyperplane_normal(coords: np.ndarray, rank: int, tol: float, what: str) -> np.ndarray:
    """Normal covector of the span of ``coords`` (rows), which must have the given rank
    inside a space of dimension ``rank + 1``."""
    m = normalize_rows(coords)
    _, s, vt = np.linalg.svd(m)
    if s.size < rank or s[rank - 1] <= tol * s[0]:
        raise DegenerateConfigurationError(f"{what} is degenerate")
    return vt[rank]


def _intersect_hyperplanes(normals: Sequence[np.ndarray], dim: int, tol: float, what: str) -> np.ndarray:
    N = np.array(normals)
    _, s, vt = np.linalg.svd(N)
    k = N.shape[1] - dim
    if s.size < k or s[k - 1] <= tol * s[0]:
        raise DegenerateConfigurationError(f"{what}: the subspaces do not meet generically")
    return vt[k:]


def _check_planar(quads, tol):
    for quad in quads:
        res = planarity_residual(*quad)
        if res > tol:
            raise NonPlanarError(f"input quad is not planar (residual {res:.3g})")


def complete_hexahedron(f, f1, f2, f3, f12, f13, f23, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Eighth vertex ``f123`` of a hexahedron with planar faces.

    It is the common point of the planes through ``(f1, f12, f13)``,
    ``(f2, f12, f23)`` and ``(f3, f13, f23)``, computed in the 3-space spanned
    by ``f, f1, f2, f3``.
    """
    pts = np.array([f, f1, f2, f3, f12, f13, f23], dtype=float)
    _check_planar([(f, f1, f12, f2), (f, f1, f13, f3), (f, f2, f23, f3)], tol)
    V, s = top_basis(pts[:4], 4)
    if s.size < 4 or s[3] <= tol * s[0]:
        raise DegenerateConfigurationError("f, f1, f2, f3 do not span a projective 3-space")
    X = pts @ V.T
    normals = [
        _hyperplane_normal(X[[1, 4, 5]], 3, tol, "plane (f1, f12, f13)"),
        _hyperplane_normal(X[[2, 4, 6]], 3, tol, "plane (f2, f12, f23)"),
        _hyperplane_normal(X[[3, 5, 6]], 3, tol, "plane (f3, f13, f23)"),
    ]
    y = _intersect_hyperplanes(normals, 1, tol, "hexahedron completion")[0]
    out = y @ V
    # fix the sign against the known vertices for reproducible representatives
    ref = np.sum(normalize_rows(pts[[4, 5, 6]]), axis=0)
    return -out if out @ ref < 0 else out


# ---------------------------------------------------------------------------
# multidimensional consistency

Vertex = tuple[int, ...]


def cube_candidates(initial: dict, m: int, complete: Callable) -> dict[Vertex, list]:
    """All completion routes on the m-cube from data at vertices of weight <= 2.

    ``initial`` maps sorted index tuples (``()``, ``(i,)``, ``(i, j)``) to values.
    For every vertex ``K`` with ``|K| >= 3`` and every triple ``{a, b, c}`` in
    ``K`` the value at ``K`` is completed from the cube based at ``K - {a,b,c}``.
    Lower vertices feed their first candidate forward.
    """
    values: dict[Vertex, object] = {}
    for size in range(3):
        for K in itertools.combinations(range(m), size):
            if K not in initial:
                raise ValueError(f"initial data missing at vertex {K}")
            values[K] = initial[K]
    candidates: dict[Vertex, list] = {}
    for size in range(3, m + 1):
        for K in itertools.combinations(range(m), size):
            cands = []
            for a, b, c in itertools.combinations(K, 3):
                base = tuple(t for t in K if t not in (a, b, c))

                def at(*extra):
                    return values[tuple(sorted(base + extra))]

                cands.append(complete(at(), at(a), at(b), at(c), at(a, b), at(a, c), at(b, c)))
            candidates[K] = cands
            values[K] = cands[0]
    return candidates


def max_pairwise(items: Sequence, dist: Callable) -> float:
    return max((dist(a, b) for a, b in itertools.combinations(items, 2)), default=0.0)


class ConsistencyResult(NamedTuple):
    candidates: list
    deviation: float


def check_consistency(initial: dict, m: int, tol: float = DEFAULT_TOL) -> ConsistencyResult:
    """Complete a Q-net m-cube along every route; deviation is the max pairwise
    projective distance between the candidates for the top vertex."""
    for (i, j) in itertools.combinations(range(m), 2):
        quad = (initial[()], initial[(i,)], initial[(i, j)], initial[(j,)])
        _check_planar([quad], tol)
    cands = cube_candidates(initial, m, lambda *p: complete_hexahedron(*p, tol=tol))
    top = cands[tuple(range(m))]
    return ConsistencyResult(top, max_pairwise(top, projective_distance))


def check_4d_consistency(initial: dict, tol: float = DEFAULT_TOL) -> ConsistencyResult:
    return check_consistency(initial, 4, tol)


def random_qnet_cube(m: int, rng: np.random.Generator, ambient: int = 3, margin: float = 0.2) -> dict:
    """Generic initial data ``f, f_i, f_ij`` (homogeneous) of a Q-net on the m-cube.

    ``f`` and ``f_i`` are uniform in ``[-1, 1]^ambient``; each ``f_ij`` is
    ``f + a (f_i - f) + b (f_j - f)`` with ``a, b`` in ``[-2, 2]`` kept away
    from the degenerate values 0 and ``a + b = 1``.
    """
    def coeff():
        while True:
            a, b = rng.uniform(-2, 2, size=2)
            if min(abs(a), abs(b), abs(a + b - 1)) > margin:
                return a, b

    data = {(): rng.uniform(-1, 1, ambient)}
    for i in range(m):
        data[(i,)] = rng.uniform(-1, 1, ambient)
    for i, j in itertools.combinations(range(m), 2):
        a, b = coeff()
        f = data[()]
        data[(i, j)] = f + a * (data[(i,)] - f) + b * (data[(j,)] - f)
    return {k: homogenize(v) for k, v in data.items()}


# ---------------------------------------------------------------------------
# Q-nets in quadrics

def quadric_residual(Q, y) -> float:
    """``|Q(y)| / (|Q| |y|^2)``: scale-free distance of ``y`` from the quadric."""
    Q = np.asarray(Q, dtype=float)
    y = np.asarray(y, dtype=float)
    return abs(float(y @ Q @ y)) / (np.linalg.norm(Q, 2) * float(y @ y))


def second_intersection(Q, p, w) -> np.ndarray:
    """Second point of the quadric on the line through ``p`` (on the quadric) and ``w``."""
    Q = np.asarray(Q, dtype=float)
    return float(w @ Q @ w) * np.asarray(p, dtype=float) - 2.0 * float(p @ Q @ w) * np.asarray(w, dtype=float)


class QuadricCompletion(NamedTuple):
    point: np.ndarray
    residual: float


def complete_hexahedron_in_quadric(Q, f, f1, f2, f3, f12, f13, f23, tol: float = DEFAULT_TOL,
                                   quadric_tol: float = 1e-8) -> QuadricCompletion:
    """Hexahedron completion for seven points of the quadric ``Q``.

    The eighth point lies on ``Q`` automatically; its residual is verified,
    never corrected.  Raises :class:`NotIsotropicError` if an input or the
    output is off the quadric by more than ``quadric_tol``.
    """
    pts = (f, f1, f2, f3, f12, f13, f23)
    for k, p in enumerate(pts):
        res = quadric_residual(Q, p)
        if res > quadric_tol:
            raise NotIsotropicError(f"input point {k} is not on the quadric (residual {res:.3g})")
    out = complete_hexahedron(*pts, tol=tol)
    res = quadric_residual(Q, out)
    if res > quadric_tol:
        raise NotIsotropicError(f"completed point is off the quadric (residual {res:.3g}): inconsistent input")
    return QuadricCompletion(out, res)


def random_quadric_hexahedron(Q, sample: Callable[[np.random.Generator], np.ndarray],
                              rng: np.random.Generator) -> tuple:
    """Seven points of a quadric with the three coordinate quads planar.

    ``f, f1, f2, f3`` come from ``sample``; each ``f_ij`` is a random further
    point of the conic cut from the quadric by the plane ``(f, f_i, f_j)``.
    """
    f, f1, f2, f3 = (sample(rng) for _ in range(4))

    def fourth(fi, fj):
        while True:
            a, b = rng.uniform(-1, 1, size=2)
            if min(abs(a), abs(b)) > 0.2:
                p = second_intersection(Q, f, a * fi / np.linalg.norm(fi) + b * fj / np.linalg.norm(fj))
                return p / np.linalg.norm(p)

    return f, f1, f2, f3, fourth(f1, f2), fourth(f1, f3), fourth(f2, f3)


# ---------------------------------------------------------------------------
# grids and F-transformations

def complete_qnet(grid: Grid, tol: float = DEFAULT_TOL) -> Grid:
    """Fill the absent cells of a Q-net grid (dims >= 3) by hexahedron completion."""
    out = grid.copy()
    fill_by_hexahedra(out, lambda *p: complete_hexahedron(*p, tol=tol))
    return out


def two_layer(base: Grid, seed: Grid) -> Grid:
    """Stack ``base`` and ``seed`` as layers 0 and 1 of an extra lattice direction."""
    if base.extents != seed.extents:
        raise ValueError("base and seed grids must have equal extents")
    g = Grid(base.extents + (2,))
    for u, val in base.items():
        g[u + (0,)] = val
        g[u + (1,)] = seed[u]
    return g


def axis_indices(extents) -> list[tuple[int, ...]]:
    """Vertices with at most one nonzero coordinate."""
    return [u for u in Grid(extents).indices() if sum(1 for a in u if a) <= 1]


def qnet_f_transform(f: Grid, seed: Grid, tol: float = DEFAULT_TOL) -> Grid:
    """F-transform ``f+`` of a Q-net from its values along the coordinate axes.

    Other cells of ``seed`` are ignored.  Mixed quads ``(f, f_i, f+_i, f+)``
    along the axes must be planar.
    """
    if not f.is_complete():
        raise ValueError("base net has absent cells")
    start = Grid(f.extents)
    for u in axis_indices(f.extents):
        if seed[u] is None:
            raise ValueError(f"seed missing at axis vertex {u}")
        start[u] = seed[u]
    for u in axis_indices(f.extents):
        for i in range(f.dims):
            w = shift(u, i)
            if sum(1 for a in w if a) <= 1 and f.in_range(w):
                res = planarity_residual(f[u], f[w], start[w], start[u])
                if res > tol:
                    raise NonPlanarError(f"seed quad at {u} direction {i} is not planar (residual {res:.3g})")
    layered = two_layer(f, start)
    fill_by_hexahedra(layered, lambda *p: complete_hexahedron(*p, tol=tol))
    out = Grid(f.extents)
    for u in out.indices():
        out[u] = layered[u + (1,)]
    return out
