"""Laguerre geometry: the Blaschke cylinder model and the cyclographic model.

Oriented planes lift to the Blaschke cylinder in P(R^{3,1,1}) with basis
``(e1, e2, e3, e6, einf)``::

    plane (v, d)  ->  v + e6 + 2 d einf

Spheres live in the dual space with basis ``(e1, e2, e3, e6, e0)``::

    sphere (c, r) ->  c + r e6 + e0

The pairing of a plane with a sphere vanishes exactly on tangency.  In the
cyclographic model a sphere is the point ``(c, r)`` of Minkowski space
R^{3,1}, and Laguerre transformations are Lorentz-affine maps.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .elements import Plane, Point, Sphere, SphereElement
from .exceptions import DegenerateConfigurationError, NotConicalError, NotIsotropicError
from .pseudo_euclid import BLASCHKE, DEFAULT_TOL, MINKOWSKI, rank_defect

ETA = MINKOWSKI.gram


def blaschke_lift(P: Plane) -> np.ndarray:
    if not isinstance(P, Plane):
        raise TypeError("only oriented planes lift to the Blaschke cylinder")
    return np.array([*P.v, 1.0, 2.0 * P.d])


def blaschke_unlift(xi, tol: float = DEFAULT_TOL) -> Plane:
    xi = np.asarray(xi, dtype=float)
    scale = float(np.max(np.abs(xi)))
    if scale == 0 or abs(xi[3]) <= tol * scale:
        raise DegenerateConfigurationError("e6 component vanishes: not an oriented plane")
    eta = xi / xi[3]
    if abs(BLASCHKE.quad(eta)) > tol * max(1.0, float(eta @ eta)):
        raise NotIsotropicError("vector is not on the Blaschke cylinder")
    n = float(np.linalg.norm(eta[:3]))
    return Plane(eta[:3] / n, eta[4] / (2.0 * n))


def laguerre_sphere_lift(S: SphereElement) -> np.ndarray:
    if isinstance(S, Sphere):
        return np.array([*S.c, S.r, 1.0])
    if isinstance(S, Point):
        return np.array([*S.x, 0.0, 1.0])
    raise TypeError("only spheres and points have Laguerre sphere coordinates")


def laguerre_sphere_unlift(s, tol: float = DEFAULT_TOL) -> SphereElement:
    s = np.asarray(s, dtype=float)
    scale = float(np.max(np.abs(s)))
    if scale == 0 or abs(s[4]) <= tol * scale:
        raise DegenerateConfigurationError("e0 component vanishes: not a proper sphere")
    s = s / s[4]
    if abs(s[3]) <= tol * max(1.0, float(np.max(np.abs(s)))):
        return Point(s[:3])
    return Sphere(s[:3], s[3])


def pairing(p, s) -> float:
    """Pairing of R^{3,1,1} with its dual; equals ``<c, v> - r - d`` on lifts."""
    p = np.asarray(p, dtype=float)
    s = np.asarray(s, dtype=float)
    return float(p[:3] @ s[:3] - p[3] * s[3] - 0.5 * p[4] * s[4])


def tangent(P: Plane, S: SphereElement, tol: float = DEFAULT_TOL) -> bool:
    p, s = blaschke_lift(P), laguerre_sphere_lift(S)
    return abs(pairing(p, s)) <= tol * np.linalg.norm(p) * np.linalg.norm(s)


def parallel_planes(P1: Plane, P2: Plane, tol: float = DEFAULT_TOL) -> bool:
    """True when the lifts differ by a multiple of einf, i.e. equal oriented normals."""
    return float(np.linalg.norm(blaschke_lift(P1)[:4] - blaschke_lift(P2)[:4])) <= tol


# ---------------------------------------------------------------------------
# cyclographic model

def cyclo_lift(S: SphereElement) -> np.ndarray:
    """Point ``(c, r)`` of Minkowski space R^{3,1}."""
    return laguerre_sphere_lift(S)[:4]


def cyclo_unlift(sigma) -> SphereElement:
    sigma = np.asarray(sigma, dtype=float)
    return Sphere(sigma[:3], sigma[3])


@dataclass(frozen=True, eq=False)
class LaguerreAffine:
    """Laguerre transformation ``sigma -> lam A sigma + b`` with ``A`` in O(3,1)."""

    A: np.ndarray
    lam: float = 1.0
    b: np.ndarray = field(default_factory=lambda: np.zeros(4))

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        b = np.asarray(self.b, dtype=float)
        if A.shape != (4, 4) or b.shape != (4,):
            raise ValueError("A must be 4x4 and b a 4-vector")
        if not self.lam > 0:
            raise ValueError("scale must be positive")
        if np.max(np.abs(A.T @ ETA @ A - ETA)) > 1e-9 * max(1.0, float(np.max(np.abs(A))) ** 2):
            raise ValueError("A does not preserve the Minkowski form")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "lam", float(self.lam))

    @classmethod
    def identity(cls) -> "LaguerreAffine":
        return cls(np.eye(4))

    @classmethod
    def radius_shift(cls, t: float) -> "LaguerreAffine":
        """Offset every sphere (and every tangent plane) by ``t`` along the normals."""
        return cls(np.eye(4), 1.0, np.array([0.0, 0.0, 0.0, t]))

    @classmethod
    def boost(cls, axis: int, rapidity: float) -> "LaguerreAffine":
        """Lorentz boost mixing spatial coordinate ``axis`` with the radius."""
        A = np.eye(4)
        ch, sh = np.cosh(rapidity), np.sinh(rapidity)
        A[axis, axis] = A[3, 3] = ch
        A[axis, 3] = A[3, axis] = sh
        return cls(A)

    def __call__(self, sigma) -> np.ndarray:
        return self.lam * self.A @ np.asarray(sigma, dtype=float) + self.b

    def compose(self, other: "LaguerreAffine") -> "LaguerreAffine":
        """``self`` after ``other``."""
        return LaguerreAffine(self.A @ other.A, self.lam * other.lam, self.lam * self.A @ other.b + self.b)


def laguerre_transform(T: LaguerreAffine, sigma):
    """Apply ``T`` to a Minkowski point, or to a sphere element (returning an element)."""
    if isinstance(sigma, (Sphere, Point)):
        return cyclo_unlift(T(cyclo_lift(sigma)))
    return T(sigma)


def minkowski_norm2(u) -> float:
    u = np.asarray(u, dtype=float)
    return float(u @ ETA @ u)


# ---------------------------------------------------------------------------
# cones of revolution and conical quadrilaterals

@dataclass(frozen=True, eq=False)
class ConeOfRevolution:
    """Cone with apex, unit axis and half opening angle.

    Its oriented tangent planes are those through the apex whose unit normal
    makes ``<axis, v> = sin(half_angle)``.  The spheres touching all of them
    are centered at ``apex + t axis`` with signed radius ``t sin(half_angle)``.
    """

    apex: np.ndarray
    axis: np.ndarray
    half_angle: float
    residual: float = 0.0

    @property
    def h(self) -> float:
        return float(np.sin(self.half_angle))

    def tangency_residual(self, P: Plane) -> float:
        v = P.normal
        return max(abs(float(v @ self.apex) - P.d), abs(float(v @ self.axis) - self.h))

    def tangent_plane(self, phi: float) -> Plane:
        """Tangent plane at azimuth ``phi`` around the axis."""
        a = self.axis
        u = np.cross(a, [1.0, 0.0, 0.0])
        if np.linalg.norm(u) < 0.5:
            u = np.cross(a, [0.0, 1.0, 0.0])
        u /= np.linalg.norm(u)
        w = np.cross(a, u)
        v = self.h * a + np.cos(self.half_angle) * (np.cos(phi) * u + np.sin(phi) * w)
        return Plane.through(self.apex, v)

    def tangent_sphere(self, t: float) -> SphereElement:
        return Sphere(self.apex + t * self.axis, t * self.h)


def fit_cone(P: Plane, Pi: Plane, Pij: Plane, Pj: Plane, tol: float = DEFAULT_TOL) -> ConeOfRevolution:
    """Cone of revolution touched by four oriented planes.

    The apex is the least-squares common point of the planes; the axis is the
    normal of the plane best fitting the four unit normals, oriented so that
    ``<axis, v> >= 0``.  Raises :class:`NotConicalError` when the planes are
    not concurrent or the normals are not concircular.
    """
    planes = (P, Pi, Pij, Pj)
    V = np.array([p.normal for p in planes])
    d = np.array([p.d for p in planes])
    sv = np.linalg.svd(V, compute_uv=False)
    if sv[2] <= tol * sv[0]:
        raise DegenerateConfigurationError("plane normals do not determine a unique common point")
    apex, *_ = np.linalg.lstsq(V, d, rcond=None)
    apex_res = float(np.max(np.abs(V @ apex - d))) / max(1.0, float(np.linalg.norm(apex)))
    if apex_res > tol:
        raise NotConicalError(f"planes are not concurrent (residual {apex_res:.3g})")
    M = V - V.mean(axis=0)
    _, s, vt = np.linalg.svd(M)
    if s[1] <= tol:
        raise DegenerateConfigurationError("normals do not determine a circle")
    a = vt[2]
    circ_res = float(s[2])
    if circ_res > tol:
        raise NotConicalError(f"plane normals are not concircular (residual {circ_res:.3g})")
    h = float(np.mean(V @ a))
    if h < 0:
        a, h = -a, -h
    return ConeOfRevolution(apex, a, float(np.arcsin(min(h, 1.0))), max(apex_res, circ_res))


def conical_residual(P: Plane, Pi: Plane, Pij: Plane, Pj: Plane) -> float:
    return rank_defect([blaschke_lift(p) for p in (P, Pi, Pij, Pj)], 3)


def is_conical_quad(P: Plane, Pi: Plane, Pij: Plane, Pj: Plane, tol: float = DEFAULT_TOL) -> bool:
    """True when the Blaschke lifts of the four planes are coplanar."""
    return conical_residual(P, Pi, Pij, Pj) <= tol
