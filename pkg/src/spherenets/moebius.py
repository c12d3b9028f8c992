"""Projective model of Moebius geometry in P(R^{4,1}).

Lifts are the Lie lifts with the e6 component dropped, so spheres lose their
orientation.  Points lie on the light cone, spheres and planes are
space-like, time-like vectors are imaginary spheres.
"""
from __future__ import annotations

import numpy as np

from .elements import INFINITY, Infinity, Plane, Point, Sphere, SphereElement, as_point
from .exceptions import DegenerateConfigurationError, ImaginarySphereError
from .pseudo_euclid import (
    DEFAULT_TOL,
    MOEBIUS,
    Signature,
    Subspace,
    rank_defect,
    reflection_matrix,
)

E0, EINF = 3, 4


def moebius_lift(e: SphereElement) -> np.ndarray:
    out = np.zeros(5)
    if isinstance(e, Sphere):
        c = np.array(e.c)
        out[:3] = c
        out[E0] = 1.0
        out[EINF] = c @ c - e.r * e.r
    elif isinstance(e, Plane):
        out[:3] = e.v
        out[EINF] = 2.0 * e.d
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


def moebius_unlift(xi, tol: float = DEFAULT_TOL) -> SphereElement:
    """Non-oriented sphere element represented by ``xi``.

    Spheres come back with ``r > 0``; planes keep the sign of the
    representative.  Raises :class:`ImaginarySphereError` for time-like input.
    """
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (5,):
        raise ValueError(f"expected a 5-vector, got shape {xi.shape}")
    scale = float(np.max(np.abs(xi)))
    if scale == 0:
        raise ValueError("zero vector does not represent a sphere element")
    if abs(xi[E0]) > tol * scale:
        eta = xi / xi[E0]
        c = eta[:3]
        q = float(c @ c - eta[EINF])
        if abs(q) <= tol * max(1.0, float(c @ c), abs(eta[EINF])):
            return Point(c)
        if q < 0:
            raise ImaginarySphereError(f"time-like representative (squared radius {q:.3g})")
        return Sphere(c, np.sqrt(q))
    v = xi[:3]
    n = float(np.linalg.norm(v))
    if n <= tol * scale:
        if abs(xi[EINF]) > tol * scale:
            return INFINITY
        raise ImaginarySphereError("time-like representative")
    return Plane(v / n, xi[EINF] / (2.0 * n))


def _scaled_inner(a, b) -> float:
    return abs(MOEBIUS.inner(a, b)) / (np.linalg.norm(a) * np.linalg.norm(b))


def orthogonal_spheres(s1: SphereElement, s2: SphereElement, tol: float = DEFAULT_TOL) -> bool:
    """True when the two spheres (or planes) intersect orthogonally."""
    return _scaled_inner(moebius_lift(s1), moebius_lift(s2)) <= tol


class Circle:
    """Circle stored by its dual span (two orthogonal spheres) and carrier span (its points)."""

    __slots__ = ("dual", "carrier")

    def __init__(self, dual: Subspace, carrier: Subspace, tol: float = DEFAULT_TOL):
        if dual.dim != 2 or carrier.dim != 3:
            raise DegenerateConfigurationError("circle needs a 2-dim dual and a 3-dim carrier")
        if dual.signature(tol) != Signature(2, 0, 0):
            raise DegenerateConfigurationError(f"dual span has signature {tuple(dual.signature(tol))}")
        if carrier.signature(tol) != Signature(2, 1, 0):
            raise DegenerateConfigurationError(f"carrier span has signature {tuple(carrier.signature(tol))}")
        if np.max(np.abs(dual.basis @ MOEBIUS.gram @ carrier.basis.T)) > tol:
            raise DegenerateConfigurationError("dual and carrier spans are not orthogonal")
        if carrier.contains(MOEBIUS.e("einf"), tol):
            raise DegenerateConfigurationError("circle passes through infinity (a straight line)")
        self.dual = dual
        self.carrier = carrier

    @classmethod
    def from_carrier(cls, carrier: Subspace, tol: float = DEFAULT_TOL) -> "Circle":
        return cls(carrier.complement(), carrier, tol)

    def _plane_and_sphere(self):
        b = self.dual.basis
        p = b[1, E0] * b[0] - b[0, E0] * b[1]
        # member of the dual pencil orthogonal to the plane: its center lies in the plane
        s = MOEBIUS.inner(b[1], p) * b[0] - MOEBIUS.inner(b[0], p) * b[1]
        return moebius_unlift(p), moebius_unlift(s)

    @property
    def center(self) -> np.ndarray:
        return self._plane_and_sphere()[1].center

    @property
    def radius(self) -> float:
        return abs(self._plane_and_sphere()[1].r)

    @property
    def normal(self) -> np.ndarray:
        return self._plane_and_sphere()[0].normal

    def contains(self, x, tol: float = DEFAULT_TOL) -> bool:
        return self.carrier.contains(moebius_lift(as_point(x)), tol)


def circumcircle(x1, x2, x3, tol: float = DEFAULT_TOL) -> Circle:
    """Circle through three points; raises for coincident or collinear points."""
    lifts = [moebius_lift(as_point(x)) for x in (x1, x2, x3)]
    carrier = Subspace.span(lifts, MOEBIUS, tol)
    if carrier.dim != 3:
        raise DegenerateConfigurationError("coincident points do not determine a circle")
    return Circle.from_carrier(carrier, tol)


def concircularity_residual(x, xi, xij, xj) -> float:
    return rank_defect([moebius_lift(as_point(p)) for p in (x, xi, xij, xj)], 3)


def concircular(x, xi, xij, xj, tol: float = DEFAULT_TOL) -> bool:
    """True when the four points lie on a common circle (or line)."""
    return concircularity_residual(x, xi, xij, xj) <= tol


def sphere_reflection_matrix(s: SphereElement) -> np.ndarray:
    """Inversion in a sphere, or reflection in a plane, acting on R^{4,1}."""
    if not isinstance(s, (Sphere, Plane)):
        raise TypeError("reflections are defined for spheres and planes")
    return reflection_matrix(moebius_lift(s), MOEBIUS)


def apply_reflection(s: SphereElement, x, tol: float = DEFAULT_TOL):
    """Image of a point under inversion in ``s``; the center maps to infinity."""
    xi = moebius_lift(x if isinstance(x, (Point, Infinity)) else Point(x))
    return moebius_unlift(sphere_reflection_matrix(s) @ xi, tol)


def reflect_element(s: SphereElement, e: SphereElement, tol: float = DEFAULT_TOL) -> SphereElement:
    """Image of any sphere element under inversion in ``s`` (orientation is not tracked)."""
    return moebius_unlift(sphere_reflection_matrix(s) @ moebius_lift(e), tol)
