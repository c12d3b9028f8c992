"""Projective model of Lie sphere geometry in P(R^{4,2}).

Lifts (storage basis ``e1, e2, e3, e0, einf, e6``)::

    sphere (c, r)   ->  c + e0 + (|c|^2 - r^2) einf + r e6
    plane  (v, d)   ->  v + 2 d einf + e6
    point  x        ->  x + e0 + |x|^2 einf
    infinity        ->  einf

Two elements are in oriented contact exactly when their lifts are orthogonal.
A contact element (point plus oriented tangent plane) is the isotropic line
spanned by the lifts of the point and the plane.
"""
from __future__ import annotations

import math

import numpy as np

from .elements import INFINITY, Infinity, Plane, Point, Sphere, SphereElement
from .exceptions import DegenerateConfigurationError, IncidenceError, NotIsotropicError
from .pseudo_euclid import DEFAULT_TOL, LIE, ProjectiveLine, Subspace, orthonormal_basis

E0, EINF, E6 = 3, 4, 5


def lie_lift(e: SphereElement) -> np.ndarray:
    """Homogeneous representative of a sphere element on the Lie quadric."""
    out = np.zeros(6)
    if isinstance(e, Sphere):
        c = np.array(e.c)
        out[:3] = c
        out[E0] = 1.0
        out[EINF] = c @ c - e.r * e.r
        out[E6] = e.r
    elif isinstance(e, Plane):
        out[:3] = e.v
        out[EINF] = 2.0 * e.d
        out[E6] = 1.0
    elif isinstance(e, Point):
        x = np.array(e.x)
        out[:3] = x
        out[E0] = 1.0
        out[EINF] = x @ x
    elif isinstance(e, Infinity):
        out[EINF] = 1.0
    else:
        raise TypeError(f"not a sphere element: {e!r}")
    return out


def isotropy_residual(xi) -> float:
    """``|<xi, xi>| / |xi|^2`` in R^{4,2}."""
    xi = np.asarray(xi, dtype=float)
    n2 = float(xi @ xi)
    return abs(LIE.quad(xi)) / n2 if n2 > 0 else 0.0


def lie_unlift(xi, tol: float = DEFAULT_TOL) -> SphereElement:
    """Sphere element represented by an isotropic vector of R^{4,2}.

    Components are compared with ``tol * max|xi|``.  Sphere representatives are
    normalised to e0-component one, plane representatives to e6-component one,
    which fixes the orientation.
    """
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (6,):
        raise ValueError(f"expected a 6-vector, got shape {xi.shape}")
    scale = float(np.max(np.abs(xi)))
    if scale == 0:
        raise ValueError("zero vector does not represent a sphere element")
    if isotropy_residual(xi) > tol:
        raise NotIsotropicError(f"vector is not on the Lie quadric (residual {isotropy_residual(xi):.3g})")
    has_e0 = abs(xi[E0]) > tol * scale
    has_e6 = abs(xi[E6]) > tol * scale
    if has_e0:
        eta = xi / xi[E0]
        if not has_e6:
            return Point(eta[:3])
        return Sphere(eta[:3], eta[E6])
    if has_e6:
        eta = xi / xi[E6]
        n = float(np.linalg.norm(eta[:3]))
        return Plane(eta[:3] / n, eta[EINF] / (2.0 * n))
    return INFINITY


def contact_residual(a: SphereElement, b: SphereElement) -> float:
    """Scale-free ``|<a^, b^>|`` used by :func:`oriented_contact`."""
    la, lb = lie_lift(a), lie_lift(b)
    return abs(LIE.inner(la, lb)) / (np.linalg.norm(la) * np.linalg.norm(lb))


def oriented_contact(a: SphereElement, b: SphereElement, tol: float = DEFAULT_TOL) -> bool:
    return contact_residual(a, b) <= tol


class IsotropicLine(ProjectiveLine):
    """Totally isotropic 2-plane of R^{4,2}, i.e. a line on the Lie quadric (a contact element)."""

    __slots__ = ()

    def __init__(self, basis, space=LIE, tol: float = DEFAULT_TOL):
        super().__init__(basis, LIE)
        g = self.gram()
        if np.max(np.abs(g)) > tol:
            raise NotIsotropicError(f"line is not isotropic (max |Gram| = {np.max(np.abs(g)):.3g})")

    @classmethod
    def span(cls, vectors, space=LIE, tol: float = DEFAULT_TOL) -> "IsotropicLine":
        vecs = np.asarray(vectors, dtype=float).reshape(-1, 6)
        return cls(orthonormal_basis(vecs, tol), LIE, tol)

    @classmethod
    def through(cls, a, b, space=LIE, tol: float = DEFAULT_TOL) -> "IsotropicLine":
        return cls.span([a, b], LIE, tol)

    @classmethod
    def from_line(cls, line: Subspace, tol: float = DEFAULT_TOL) -> "IsotropicLine":
        return line if isinstance(line, IsotropicLine) else cls(line.basis, LIE, tol)

    def contains_element(self, e: SphereElement, tol: float = DEFAULT_TOL) -> bool:
        return self.contains(lie_lift(e), tol)


def contact_element(x, P: Plane, tol: float = DEFAULT_TOL) -> IsotropicLine:
    """Isotropic line ``span(x^, p^)`` of the point ``x`` on the oriented plane ``P``."""
    x = x.xyz if isinstance(x, Point) else np.asarray(x, dtype=float)
    gap = P.signed_distance(x)
    if abs(gap) > tol * max(1.0, float(np.linalg.norm(x))):
        raise IncidenceError(f"point {tuple(x)} is not on the plane (distance {gap:.3g})")
    return IsotropicLine.through(lie_lift(Point(x)), lie_lift(P))


def _zero_component_member(line: Subspace, k: int) -> np.ndarray:
    b = line.basis
    return b[1, k] * b[0] - b[0, k] * b[1]


def point_and_plane_of(line: Subspace, tol: float = DEFAULT_TOL):
    """Contact point and oriented tangent plane of a contact element.

    Returns ``(Point, Plane)`` or ``(INFINITY, None)`` for a pencil of
    parallel planes.
    """
    line = IsotropicLine.from_line(line, tol)
    xi = _zero_component_member(line, E6)
    pt = lie_unlift(xi, tol)
    if isinstance(pt, Infinity):
        return INFINITY, None
    if not isinstance(pt, Point):
        raise DegenerateConfigurationError("isotropic line without a point member")
    pl = lie_unlift(_zero_component_member(line, E0), tol)
    if not isinstance(pl, Plane):
        raise DegenerateConfigurationError("isotropic line without a plane member")
    return pt, pl


def sphere_pencil_at(line: Subspace, t: float, tol: float = DEFAULT_TOL) -> SphereElement:
    """Member ``x^ + t p^`` of the pencil of a contact element.

    ``t = 0`` is the contact point, ``t = inf`` the tangent plane; for a
    contact point ``x`` with normal ``v`` the member is the sphere with center
    ``x + t v`` and radius ``t``.  For a pencil through infinity the member is
    ``einf + t p^``.
    """
    pt, pl = point_and_plane_of(line, tol)
    if pl is None:
        pl = lie_unlift(_zero_component_member(line, EINF), tol)
    if math.isinf(t):
        return pl
    return lie_unlift(lie_lift(pt) + t * lie_lift(pl), tol)
