"""Sphere congruences: R-congruences, planar and cyclidic families, common
tangent spheres, Q-congruences and their classification."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .elements import Point, Sphere, SphereElement
from .exceptions import DegenerateConfigurationError, DegenerateFamilyError, NonPlanarError
from .lie import E0, E6, lie_lift, lie_unlift
from .moebius import moebius_lift
from .pseudo_euclid import DEFAULT_TOL, LIE, Signature, Subspace, projective_distance, rank_defect


def r_residual(S, Si, Sij, Sj) -> float:
    return rank_defect([lie_lift(s) for s in (S, Si, Sij, Sj)], 3)


def is_r_congruence_quad(S, Si, Sij, Sj, tol: float = DEFAULT_TOL) -> bool:
    """True when the four Lie lifts span at most a projective plane."""
    return r_residual(S, Si, Sij, Sj) <= tol


def q_residual(S, Si, Sij, Sj) -> float:
    return rank_defect([moebius_lift(s) for s in (S, Si, Sij, Sj)], 3)


def is_q_congruence_quad(S, Si, Sij, Sj, tol: float = DEFAULT_TOL) -> bool:
    """True when the four (non-oriented) Moebius lifts span at most a projective plane."""
    return q_residual(S, Si, Sij, Sj) <= tol


# ---------------------------------------------------------------------------
# planar families

CYCLIDIC = "cyclidic"
NON_CYCLIDIC = "non-cyclidic"


class PlanarSphereFamily:
    """Spheres of the conic cut from the Lie quadric by a projective plane ``P(sigma)``.

    ``frame`` holds a basis of ``sigma`` with ``<e_k, e_l> = +-delta_kl``; the
    family is ``cos t e_a + sin t e_b + e_c`` where ``e_c`` carries the odd sign.
    """

    __slots__ = ("sigma", "kind", "frame")

    def __init__(self, sigma: Subspace, tol: float = DEFAULT_TOL):
        if sigma.dim != 3 or sigma.space is not LIE:
            raise ValueError("a planar family is a 3-dimensional subspace of R^{4,2}")
        lam, U = np.linalg.eigh(sigma.gram())
        scale = float(np.max(np.abs(lam)))
        if np.min(np.abs(lam)) <= tol * scale:
            raise DegenerateFamilyError("the form restricted to the family span is degenerate")
        vecs = (U.T @ sigma.basis) / np.sqrt(np.abs(lam))[:, None]
        pos = [k for k in range(3) if lam[k] > 0]
        neg = [k for k in range(3) if lam[k] < 0]
        if len(pos) == 2:
            kind, order = CYCLIDIC, pos + neg
        elif len(neg) == 2:
            kind, order = NON_CYCLIDIC, neg + pos
        else:
            raise DegenerateFamilyError("definite span contains no spheres")
        self.sigma = sigma
        self.kind = kind
        self.frame = vecs[order]

    @property
    def cyclidic(self) -> bool:
        return self.kind == CYCLIDIC

    def lift_at(self, theta: float) -> np.ndarray:
        a, b, c = self.frame
        return np.cos(theta) * a + np.sin(theta) * b + c

    def sphere_at(self, theta: float, tol: float = DEFAULT_TOL) -> SphereElement:
        return lie_unlift(self.lift_at(theta), tol)

    def parameter_of(self, s, tol: float = DEFAULT_TOL) -> float:
        """Parameter ``theta`` at which the family passes through ``s``."""
        xi = lie_lift(s) if not isinstance(s, np.ndarray) else s
        if not self.sigma.contains(xi, tol):
            raise ValueError("sphere is not a member of the family")
        signs = np.array([LIE.quad(e) for e in self.frame])
        coef = np.array([LIE.inner(e, xi) for e in self.frame]) * signs
        return float(np.arctan2(coef[1] / coef[2], coef[0] / coef[2]))


def family_of_quad(S, Si, Sij, Sj, tol: float = DEFAULT_TOL) -> PlanarSphereFamily:
    """Planar family through the four spheres of an R-congruence quad."""
    quad = (S, Si, Sij, Sj)
    res = r_residual(*quad)
    if res > tol:
        raise NonPlanarError(f"quad is not an R-congruence quad (residual {res:.3g})")
    sigma = Subspace.span([lie_lift(s) for s in quad], LIE, tol)
    if sigma.dim != 3:
        raise DegenerateFamilyError(f"quad spans a {sigma.dim}-dimensional space, not a plane")
    return PlanarSphereFamily(sigma, tol)


def family_sphere_at(F: PlanarSphereFamily, theta: float, tol: float = DEFAULT_TOL) -> SphereElement:
    return F.sphere_at(theta, tol)


def dual_family(F: PlanarSphereFamily, tol: float = DEFAULT_TOL):
    """Family of spheres touching every member of ``F``; ``None`` if ``F`` is not cyclidic."""
    if not F.cyclidic:
        return None
    return PlanarSphereFamily(F.sigma.complement(), tol)


# ---------------------------------------------------------------------------
# isotropic vectors of a subspace

def isotropic_samples(sub: Subspace, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Isotropic vectors of ``sub`` that detect any linear functional on its light cone.

    Returns the kernel directions of the induced form together with
    ``p/sqrt(lam_p) +- m/sqrt(|lam_m|)`` for every positive/negative eigenpair.
    """
    if sub.dim == 0:
        return []
    lam, U = np.linalg.eigh(sub.gram())
    vecs = U.T @ sub.basis
    scale = max(1.0, float(np.max(np.abs(lam))))
    zero = [vecs[k] for k in range(sub.dim) if abs(lam[k]) <= tol * scale]
    pos = [vecs[k] / np.sqrt(lam[k]) for k in range(sub.dim) if lam[k] > tol * scale]
    neg = [vecs[k] / np.sqrt(-lam[k]) for k in range(sub.dim) if lam[k] < -tol * scale]
    out = list(zero)
    for p, m in itertools.product(pos, neg):
        out.extend([p + m, p - m])
    return out


def _nonpoint(xi, tol) -> bool:
    return abs(xi[E6]) > tol * float(np.max(np.abs(xi)))


def check_condition_R(S, Si, Sj, Sij, tol: float = DEFAULT_TOL) -> bool:
    """Whether some non-point sphere (or plane) is in oriented contact with all four spheres."""
    W = Subspace.span([lie_lift(s) for s in (S, Si, Sj, Sij)], LIE, tol).complement()
    return any(_nonpoint(xi, tol) for xi in isotropic_samples(W, tol))


def check_condition_R0(S, Si, Sj, Sij, tol: float = DEFAULT_TOL) -> bool:
    """Whether the four spheres have a common oriented tangent plane."""
    lifts = [lie_lift(s) for s in (S, Si, Sj, Sij)] + [LIE.e("einf")]
    W = Subspace.span(lifts, LIE, tol).complement()
    return any(_nonpoint(xi, tol) and abs(xi[E0]) <= tol * np.max(np.abs(xi)) for xi in isotropic_samples(W, tol))


# ---------------------------------------------------------------------------
# common tangent spheres

def _sort_key(e: SphereElement):
    if isinstance(e, Sphere):
        return (0, e.r)
    if isinstance(e, Point):
        return (0, 0.0)
    return (1, 0.0)


def common_tangent_spheres(spheres: Sequence[SphereElement], tol: float = DEFAULT_TOL) -> tuple:
    """The two elements in oriented contact with all given spheres.

    The lifts must span a 4-space whose complement has signature (1, 1).
    Results are ordered by signed radius, planes and infinity last.
    """
    span = Subspace.span([lie_lift(s) for s in spheres], LIE, tol)
    if span.dim != 4:
        raise DegenerateConfigurationError(f"spheres span a {span.dim}-dimensional space, expected 4")
    W = span.complement()
    if W.signature(tol) != Signature(1, 1, 0):
        raise DegenerateConfigurationError(f"complement has signature {tuple(W.signature(tol))}, expected (1, 1)")
    out = sorted((lie_unlift(xi, tol) for xi in isotropic_samples(W, tol)), key=_sort_key)
    if not any(isinstance(e, (Sphere, Point)) for e in out):
        raise DegenerateConfigurationError("no proper common tangent sphere (non-generic data)")
    return tuple(out)


def _same(a, b, tol) -> bool:
    return projective_distance(lie_lift(a), lie_lift(b)) <= tol


def common_tangent_spheres_six(quad_a: Sequence, quad_b: Sequence, tol: float = DEFAULT_TOL) -> tuple:
    """Common tangent spheres of two R-quads sharing an edge (six distinct spheres)."""
    for q in (quad_a, quad_b):
        if len(q) != 4:
            raise ValueError("quads have four spheres")
        F = family_of_quad(*q, tol=tol)
        if not F.cyclidic:
            raise DegenerateConfigurationError("quad family is not cyclidic")
    shared = sum(1 for a in quad_a for b in quad_b if _same(a, b, tol))
    if shared != 2:
        raise ValueError(f"quads must share exactly one edge (two spheres), found {shared}")
    return common_tangent_spheres(list(quad_a) + list(quad_b), tol)


HEX_FACES = ((0, 1, 3, 2), (4, 5, 7, 6), (0, 1, 5, 4), (2, 3, 7, 6), (0, 2, 6, 4), (1, 3, 7, 5))


def common_tangent_spheres_eight(spheres: Sequence, tol: float = DEFAULT_TOL) -> tuple:
    """Common tangent spheres at the vertices of an R-hexahedron.

    ``spheres[k]`` sits at the cube vertex with binary digits of ``k``
    (first direction least significant).
    """
    if len(spheres) != 8:
        raise ValueError("a hexahedron has eight vertices")
    for face in HEX_FACES:
        F = family_of_quad(*(spheres[k] for k in face), tol=tol)
        if not F.cyclidic:
            raise DegenerateConfigurationError("a face family is not cyclidic")
    return common_tangent_spheres(spheres, tol)


# ---------------------------------------------------------------------------
# Q-congruence classification

@dataclass(frozen=True)
class OrthogonalCircle:
    center: tuple
    radius: float
    normal: tuple
    common_value: float


@dataclass(frozen=True)
class PointPair:
    p_plus: tuple
    p_minus: tuple
    common_value: float


@dataclass(frozen=True)
class SinglePoint:
    point: tuple
    common_value: float


def _center_radius(s: SphereElement):
    if isinstance(s, Sphere):
        return np.array(s.c), abs(s.r)
    if isinstance(s, Point):
        return np.array(s.x), 0.0
    raise TypeError("classification needs spheres or points")


def classify_q_quad(S, Si, Sij, Sj, tol: float = DEFAULT_TOL):
    """Common orthogonal circle, common point pair, or single common point of a Q-quad.

    The point ``C`` of the center plane with equal ``w = |c_k - C|^2 - r_k^2`` for
    all four spheres decides: ``w > 0`` circle of radius ``sqrt(w)``, ``w < 0``
    points ``C +- sqrt(-w) n``, ``w ~ 0`` the single point ``C``.
    """
    quad = (S, Si, Sij, Sj)
    res = q_residual(*quad)
    if res > tol:
        raise NonPlanarError(f"spheres do not form a Q-congruence quad (residual {res:.3g})")
    (c, r), (ci, ri), (cij, rij), (cj, rj) = (_center_radius(s) for s in quad)
    a, b = ci - c, cj - c
    n = np.cross(a, b)
    nn = float(np.linalg.norm(n))
    if nn <= tol * max(1.0, float(np.linalg.norm(a) * np.linalg.norm(b))):
        raise DegenerateConfigurationError("collinear centers")
    n /= nn
    # C = c + x a + y b with 2<C - c, c_k - c> = |c_k - c|^2 + r^2 - r_k^2
    M = 2.0 * np.array([[a @ a, a @ b], [b @ a, b @ b]])
    rhs = np.array([a @ a + r * r - ri * ri, b @ b + r * r - rj * rj])
    x, y = np.linalg.solve(M, rhs)
    C = c + x * a + y * b
    w = float((c - C) @ (c - C) - r * r)
    scale = max(max(float((ck - C) @ (ck - C)), rk * rk) for ck, rk in ((c, r), (ci, ri), (cij, rij), (cj, rj)))
    if abs(w) <= tol * (1.0 + scale):
        return SinglePoint(tuple(C), w)
    if w > 0:
        return OrthogonalCircle(tuple(C), float(np.sqrt(w)), tuple(n), w)
    h = float(np.sqrt(-w))
    return PointPair(tuple(C + h * n), tuple(C - h * n), w)


# ---------------------------------------------------------------------------
# one-parameter completion of R-quads

def r_quad_complete(S, Si, Sj, t: float, tol: float = DEFAULT_TOL) -> SphereElement:
    """Fourth sphere ``S_ij(t)`` making ``(S, Si, S_ij, Sj)`` an R-congruence quad.

    ``S_ij`` is the second intersection of the conic through the three lifts
    with the line through ``S^`` and ``Si^ + t Sj^``; ``t = inf`` gives ``Sj``.
    """
    s, si, sj = (lie_lift(e) for e in (S, Si, Sj))
    sigma = Subspace.span([s, si, sj], LIE, tol)
    if sigma.dim != 3:
        raise DegenerateConfigurationError("the three spheres do not span a projective plane")
    lam = np.linalg.eigvalsh(sigma.gram())
    if np.min(np.abs(lam)) <= tol * np.max(np.abs(lam)):
        raise DegenerateFamilyError("degenerate induced form on the span")
    w = sj.copy() if np.isinf(t) else si / np.linalg.norm(si) + t * sj / np.linalg.norm(sj)
    p = LIE.quad(w) * s - 2.0 * LIE.inner(s, w) * w
    return lie_unlift(p, tol)


__all__ = [
    "CYCLIDIC",
    "NON_CYCLIDIC",
    "OrthogonalCircle",
    "PlanarSphereFamily",
    "PointPair",
    "SinglePoint",
    "check_condition_R",
    "check_condition_R0",
    "classify_q_quad",
    "common_tangent_spheres",
    "common_tangent_spheres_eight",
    "common_tangent_spheres_six",
    "dual_family",
    "family_of_quad",
    "family_sphere_at",
    "is_q_congruence_quad",
    "is_r_congruence_quad",
    "isotropic_samples",
    "q_residual",
    "r_quad_complete",
    "r_residual",
]
