"""Signature-aware linear algebra over homogeneous coordinates.

Vectors are plain ``numpy`` arrays of coordinates in a fixed basis; the
metric lives on a :class:`Space`.  The Lie, Moebius and Laguerre spaces use
the basis ``(e1, e2, e3, e0, einf[, e6])`` with ``<e0, einf> = -1/2``;
``e6`` is the second time-like direction of the Lie space.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from .exceptions import DegenerateConfigurationError, UnsupportedSpaceError

DEFAULT_TOL = 1e-9


class Signature(NamedTuple):
    plus: int
    minus: int
    degenerate: int = 0


def _eig_signature(gram: np.ndarray, tol: float) -> Signature:
    if gram.size == 0:
        return Signature(0, 0, 0)
    lam = np.linalg.eigvalsh((gram + gram.T) / 2)
    # subspace bases are orthonormal, so Gram entries are O(1): never shrink the scale below one
    scale = max(float(np.max(np.abs(lam))), 1.0)
    zero = np.abs(lam) < tol * scale
    return Signature(int(np.sum((lam > 0) & ~zero)), int(np.sum((lam < 0) & ~zero)), int(np.sum(zero)))


@dataclass(frozen=True, eq=False)
class Space:
    """A real vector space with a symmetric bilinear form in a fixed basis."""

    name: str
    gram: np.ndarray
    labels: tuple[str, ...]
    _index: dict = field(init=False, repr=False)

    def __post_init__(self):
        g = np.asarray(self.gram, dtype=float)
        g.setflags(write=False)
        object.__setattr__(self, "gram", g)
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def signature(self) -> Signature:
        return _eig_signature(self.gram, 1e-12)

    @property
    def is_degenerate(self) -> bool:
        return self.signature.degenerate > 0

    def index(self, label: str) -> int:
        return self._index[label]

    def e(self, label: str) -> np.ndarray:
        v = np.zeros(self.dim)
        v[self._index[label]] = 1.0
        return v

    def inner(self, u, v) -> float:
        return inner(u, v, self)

    def quad(self, u) -> float:
        u = np.asarray(u, dtype=float)
        return float(u @ self.gram @ u)

    def __repr__(self):
        return f"Space({self.name})"


def _metric(n_space: int, n_time: int, null_pair: bool) -> np.ndarray:
    n = n_space + n_time + (2 if null_pair else 0)
    g = np.zeros((n, n))
    g[:n_space, :n_space] = np.eye(n_space)
    if null_pair:
        g[n_space, n_space + 1] = g[n_space + 1, n_space] = -0.5
    for k in range(n_time):
        idx = n_space + (2 if null_pair else 0) + k
        g[idx, idx] = -1.0
    return g


#: Lie sphere space R^{4,2}: (e1, e2, e3, e0, einf, e6).
LIE = Space("R^{4,2}", _metric(3, 1, True), ("e1", "e2", "e3", "e0", "einf", "e6"))
#: Moebius space R^{4,1}: (e1, e2, e3, e0, einf).
MOEBIUS = Space("R^{4,1}", _metric(3, 0, True), ("e1", "e2", "e3", "e0", "einf"))
#: Blaschke cylinder space R^{3,1,1}: (e1, e2, e3, e6, einf); einf is null and orthogonal to all.
BLASCHKE = Space("R^{3,1,1}", np.diag([1.0, 1.0, 1.0, -1.0, 0.0]), ("e1", "e2", "e3", "e6", "einf"))
#: Dual Laguerre space (R^{3,1,1})^*: (e1, e2, e3, e6, e0).
LAGUERRE_DUAL = Space("(R^{3,1,1})*", np.diag([1.0, 1.0, 1.0, -1.0, 0.0]), ("e1", "e2", "e3", "e6", "e0"))
#: Minkowski space R^{3,1} of the cyclographic model: (e1, e2, e3, e6).
MINKOWSKI = Space("R^{3,1}", np.diag([1.0, 1.0, 1.0, -1.0]), ("e1", "e2", "e3", "e6"))


@lru_cache(maxsize=None)
def euclidean_space(n: int) -> Space:
    """Homogeneous coordinate space R^n with the standard Euclidean form."""
    return Space(f"R^{n}", np.eye(n), tuple(f"x{i}" for i in range(n)))


def inner(u, v, space: Space) -> float:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != (space.dim,) or v.shape != (space.dim,):
        raise ValueError(f"vectors of shape {u.shape}, {v.shape} do not live in {space.name}")
    return float(u @ space.gram @ v)


# ---------------------------------------------------------------------------
# rank utilities

def normalize_rows(rows) -> np.ndarray:
    """Scale each nonzero row to unit Euclidean length; zero rows are dropped."""
    m = np.atleast_2d(np.asarray(rows, dtype=float))
    norms = np.linalg.norm(m, axis=1)
    keep = norms > 0
    return m[keep] / norms[keep, None]


def singular_values(rows) -> np.ndarray:
    m = normalize_rows(rows)
    if m.size == 0:
        return np.zeros(0)
    return np.linalg.svd(m, compute_uv=False)


def numerical_rank(rows, tol: float = DEFAULT_TOL) -> int:
    s = singular_values(rows)
    if s.size == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def rank_defect(rows, rank: int) -> float:
    """Relative size of the ``rank+1``-st singular value of the normalised rows.

    Zero (within rounding) exactly when the rows span at most ``rank``
    dimensions; this is the residual used by every planarity predicate.
    """
    s = singular_values(rows)
    if s.size <= rank:
        return 0.0
    return float(s[rank] / s[0])


def orthonormal_basis(rows, tol: float = DEFAULT_TOL) -> np.ndarray:
    m = normalize_rows(rows)
    if m.size == 0:
        return np.zeros((0, np.asarray(rows).shape[-1]))
    _, s, vt = np.linalg.svd(m)
    r = int(np.sum(s > tol * s[0]))
    return vt[:r]


def top_basis(rows, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Best ``k``-dimensional orthonormal basis of the row span, with singular values."""
    m = normalize_rows(rows)
    _, s, vt = np.linalg.svd(m)
    return vt[:k], s


def nullspace(matrix, dim: int) -> tuple[np.ndarray, np.ndarray]:
    """The ``dim`` least-squares null directions of ``matrix`` (rows) and all singular values."""
    m = np.atleast_2d(np.asarray(matrix, dtype=float))
    n = m.shape[1]
    if m.shape[0] < n:
        m = np.vstack([m, np.zeros((n - m.shape[0], n))])
    _, s, vt = np.linalg.svd(m)
    return vt[n - dim:], s


def projective_distance(u, v) -> float:
    """Sine of the angle between the 1-dimensional spans of ``u`` and ``v``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0 or nv == 0:
        raise ValueError("zero vector has no projective class")
    u, v = u / nu, v / nv
    return float(min(1.0, np.linalg.norm(u - (u @ v) * v)))


def same_point(u, v, tol: float = DEFAULT_TOL) -> bool:
    return projective_distance(u, v) <= tol


def principal_sines(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Sines of the principal angles between two spans, in descending order.

    ``a`` and ``b`` are orthonormal row bases; the sines are the singular
    values of the part of ``b`` orthogonal to ``a``, which stays accurate for
    small angles.
    """
    r = b - (b @ a.T) @ a
    return np.linalg.svd(r, compute_uv=False)


def span_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Sine of the largest principal angle between two spans of equal dimension."""
    if a.shape != b.shape:
        raise ValueError("spans of different dimension")
    return float(min(1.0, principal_sines(a, b)[0]))


# ---------------------------------------------------------------------------
# subspaces

class Subspace:
    """Linear span inside a :class:`Space`, stored by an orthonormal row basis."""

    __slots__ = ("basis", "space")

    def __init__(self, basis: np.ndarray, space: Space):
        basis = np.asarray(basis, dtype=float).reshape(-1, space.dim)
        basis.setflags(write=False)
        self.basis = basis
        self.space = space

    @classmethod
    def span(cls, vectors: Sequence, space: Space, tol: float = DEFAULT_TOL) -> "Subspace":
        vecs = np.asarray(vectors, dtype=float).reshape(-1, space.dim)
        return cls(orthonormal_basis(vecs, tol), space)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def gram(self) -> np.ndarray:
        return self.basis @ self.space.gram @ self.basis.T

    def signature(self, tol: float = DEFAULT_TOL) -> Signature:
        return _eig_signature(self.gram(), tol)

    def residual(self, v) -> float:
        """Relative distance of ``v`` from the span (0 when contained)."""
        v = np.asarray(v, dtype=float)
        nv = np.linalg.norm(v)
        if nv == 0:
            return 0.0
        return float(np.linalg.norm(v - self.basis.T @ (self.basis @ v)) / nv)

    def contains(self, v, tol: float = DEFAULT_TOL) -> bool:
        return self.residual(v) <= tol

    def includes(self, other: "Subspace", tol: float = DEFAULT_TOL) -> bool:
        return all(self.contains(b, tol) for b in other.basis)

    def same_span(self, other: "Subspace", tol: float = DEFAULT_TOL) -> bool:
        return self.dim == other.dim and self.includes(other, tol)

    def complement(self) -> "Subspace":
        return orthogonal_complement(self)

    def intersect(self, other: "Subspace", tol: float = DEFAULT_TOL) -> "Subspace":
        return intersect_subspaces(self, other, tol)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, space={self.space.name})"


def subspace_signature(vectors: Sequence, space: Space, tol: float = DEFAULT_TOL) -> Signature:
    """Signature of the form restricted to the span of ``vectors``.

    Zero vectors are dropped; ``sum(signature)`` is the effective rank.
    """
    return Subspace.span(vectors, space, tol).signature(tol)


def orthogonal_complement(sub: Subspace) -> Subspace:
    space = sub.space
    if space.is_degenerate:
        raise UnsupportedSpaceError(f"orthogonal complement is not defined in degenerate {space.name}")
    if sub.dim == 0:
        return Subspace(np.eye(space.dim), space)
    null, _ = nullspace(sub.basis @ space.gram, space.dim - sub.dim)
    return Subspace(null, space)


def intersect_subspaces(a: Subspace, b: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    if a.space is not b.space:
        raise ValueError("subspaces of different ambient spaces")
    if a.dim == 0 or b.dim == 0:
        return Subspace(np.zeros((0, a.space.dim)), a.space)
    stacked = np.hstack([a.basis.T, -b.basis.T])
    _, s, vt = np.linalg.svd(stacked)
    k = stacked.shape[1]
    s_full = np.concatenate([s, np.zeros(k - s.size)])
    null_dim = int(np.sum(s_full <= tol * max(1.0, s_full[0])))
    coeffs = vt[k - null_dim:, : a.dim]
    return Subspace.span(coeffs @ a.basis, a.space, tol) if null_dim else Subspace(np.zeros((0, a.space.dim)), a.space)


def projective_normalize(v, pivot: int, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Rescale ``v`` so that coordinate ``pivot`` equals one."""
    v = np.asarray(v, dtype=float)
    scale = np.max(np.abs(v)) if v.size else 0.0
    if scale == 0 or abs(v[pivot]) <= tol * scale:
        raise DegenerateConfigurationError(f"cannot normalize on component {pivot}: it vanishes")
    return v / v[pivot]


def reflection_matrix(s, space: Space) -> np.ndarray:
    """Matrix of ``x -> x - 2<s,x>/<s,s> s``, the reflection in the polar hyperplane of ``s``."""
    s = np.asarray(s, dtype=float)
    q = space.quad(s)
    if q == 0:
        raise DegenerateConfigurationError("cannot reflect in an isotropic vector")
    return np.eye(space.dim) - 2.0 * np.outer(s, s @ space.gram) / q


class ProjectiveLine(Subspace):
    """Projective line: a 2-dimensional linear subspace of homogeneous coordinates."""

    __slots__ = ()

    def __init__(self, basis: np.ndarray, space: Space):
        super().__init__(basis, space)
        if self.dim != 2:
            raise DegenerateConfigurationError(f"a line needs a 2-dimensional span, got {self.dim}")

    @classmethod
    def span(cls, vectors: Sequence, space: Space | None = None, tol: float = DEFAULT_TOL):
        vecs = np.atleast_2d(np.asarray(vectors, dtype=float))
        if space is None:
            space = euclidean_space(vecs.shape[1])
        return cls(orthonormal_basis(vecs.reshape(-1, space.dim), tol), space)

    @classmethod
    def through(cls, a, b, space: Space | None = None, tol: float = DEFAULT_TOL):
        return cls.span([a, b], space, tol)

    def distance(self, other: "Subspace") -> float:
        return span_distance(self.basis, other.basis)

    def point(self, alpha: float, beta: float) -> np.ndarray:
        return alpha * self.basis[0] + beta * self.basis[1]

    def __repr__(self):
        return f"{type(self).__name__}(space={self.space.name})"
