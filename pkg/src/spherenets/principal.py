"""Principal contact element nets and their circular, conical and spherical views.

A contact element net is a lattice map to isotropic lines of R^{4,2}.  It is
principal when neighbouring lines intersect; the intersection points are the
curvature spheres.  The points of a principal net form a circular net, its
planes a conical net.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .congruences import congruence_f_transform, lines_intersect, meet_residual
from .elements import Plane, Sphere, SphereElement, as_point
from .exceptions import (
    DegenerateConfigurationError,
    IncidenceError,
    NonPlanarError,
    NotIsotropicError,
)
from .grid import Grid, shift
from .laguerre import conical_residual, is_conical_quad
from .lie import IsotropicLine, contact_element, lie_lift, lie_unlift, point_and_plane_of
from .moebius import concircular, moebius_lift, moebius_unlift
from .pseudo_euclid import DEFAULT_TOL, LIE, MOEBIUS, Subspace, projective_distance, rank_defect, top_basis
from .qnets import _hyperplane_normal, _intersect_hyperplanes, complete_hexahedron_in_quadric


class ContactElementNet:
    """Lattice map to contact elements, stored as isotropic lines."""

    __slots__ = ("lines",)

    def __init__(self, lines: Grid, tol: float = DEFAULT_TOL):
        if not lines.is_complete():
            raise ValueError("contact element net has absent cells")
        self.lines = lines.map(lambda l: IsotropicLine.from_line(l, tol))

    @classmethod
    def from_pairs(cls, pairs: Grid, tol: float = DEFAULT_TOL) -> "ContactElementNet":
        """Net from a grid of ``(x, Plane)`` pairs; each ``x`` must lie on its plane."""
        lines = Grid(pairs.extents)
        for u, (x, P) in pairs.items():
            try:
                lines[u] = contact_element(x, P, tol)
            except IncidenceError as exc:
                raise IncidenceError(f"cell {u}: {exc}") from exc
        return cls(lines, tol)

    @classmethod
    def from_elements(cls, points: Grid, planes: Grid, tol: float = DEFAULT_TOL) -> "ContactElementNet":
        pairs = Grid(points.extents)
        for u in pairs.indices():
            pairs[u] = (points[u], planes[u])
        return cls.from_pairs(pairs, tol)

    @property
    def extents(self) -> tuple[int, ...]:
        return self.lines.extents

    def pairs(self, tol: float = DEFAULT_TOL) -> Grid:
        return self.lines.map(lambda l: point_and_plane_of(l, tol))

    def points(self, tol: float = DEFAULT_TOL) -> Grid:
        return self.lines.map(lambda l: point_and_plane_of(l, tol)[0])

    def planes(self, tol: float = DEFAULT_TOL) -> Grid:
        return self.lines.map(lambda l: point_and_plane_of(l, tol)[1])

    def distance(self, other: "ContactElementNet") -> float:
        """Largest line distance between corresponding contact elements."""
        if self.extents != other.extents:
            raise ValueError("nets of different extents")
        return max(self.lines[u].distance(other.lines[u]) for u in self.lines.indices())


def _as_net(net, tol) -> ContactElementNet:
    if isinstance(net, ContactElementNet):
        return net
    return ContactElementNet.from_pairs(net, tol)


@dataclass(frozen=True, eq=False)
class CurvatureSphereField:
    """Spheres ``l(u) ∩ l(u + e_i)`` on the edges of direction ``i``.

    ``umbilic[u]`` flags edges that belong to a quad whose four lines share a point.
    """

    direction: int
    spheres: Grid
    umbilic: Grid


def edge_residuals(net, i: int, tol: float = DEFAULT_TOL) -> Grid:
    net = _as_net(net, tol)
    ext = list(net.extents)
    ext[i] -= 1
    out = Grid(ext)
    for u in out.indices():
        out[u] = meet_residual(net.lines[u], net.lines[shift(u, i)])
    return out


def _edge_points(net: ContactElementNet, i: int, tol: float) -> Grid:
    ext = list(net.extents)
    ext[i] -= 1
    out = Grid(ext)
    for u in out.indices():
        try:
            meets, p = lines_intersect(net.lines[u], net.lines[shift(u, i)], tol)
        except DegenerateConfigurationError as exc:
            raise DegenerateConfigurationError(f"edge {u} direction {i}: {exc}") from exc
        if not meets:
            raise IncidenceError(f"contact elements at {u} and {shift(u, i)} share no sphere")
        out[u] = p
    return out


def curvature_sphere_fields(net, tol: float = DEFAULT_TOL) -> tuple[CurvatureSphereField, ...]:
    """Curvature sphere fields of a principal net over Z^2, with umbilic flags.

    A direction of extent one has no edges; its field is ``None``.
    """
    net = _as_net(net, tol)
    if len(net.extents) != 2:
        raise ValueError("curvature spheres are defined for two-dimensional nets")
    n0, n1 = net.extents
    pts = [_edge_points(net, i, tol) if net.extents[i] > 1 else None for i in (0, 1)]
    flags = [p.map(lambda _: False) if p is not None else None for p in pts]
    for a in range(n0 - 1):
        for b in range(n1 - 1):
            s = [pts[0][a, b], pts[0][a, b + 1], pts[1][a, b], pts[1][a + 1, b]]
            if max(projective_distance(s[0], t) for t in s[1:]) <= tol:
                flags[0][a, b] = flags[0][a, b + 1] = True
                flags[1][a, b] = flags[1][a + 1, b] = True
    return tuple(
        CurvatureSphereField(i, pts[i].map(lambda p: lie_unlift(p, tol)), flags[i]) if pts[i] is not None else None
        for i in (0, 1)
    )


def curvature_spheres(net, i: int, tol: float = DEFAULT_TOL) -> CurvatureSphereField:
    return curvature_sphere_fields(net, tol)[i]


class PrincipalCheck(NamedTuple):
    principal: bool
    fields: tuple | None
    residual: float


def is_principal(net, tol: float = DEFAULT_TOL) -> PrincipalCheck:
    """Whether all neighbouring contact elements share a sphere.

    ``net`` is a :class:`ContactElementNet` or a grid of ``(x, Plane)`` pairs
    (raises :class:`IncidenceError` when some ``x`` is off its plane).
    """
    net = _as_net(net, tol)
    res = max(
        (max(edge_residuals(net, i, tol).values(), default=0.0)
         for i, n in enumerate(net.extents) if n > 1),
        default=0.0,
    )
    if res > tol:
        return PrincipalCheck(False, None, res)
    return PrincipalCheck(True, curvature_sphere_fields(net, tol), res)


# ---------------------------------------------------------------------------
# the isotropic line through a sphere meeting a given contact element

def _lift(s) -> np.ndarray:
    return np.asarray(s, dtype=float) if isinstance(s, np.ndarray) else lie_lift(s)


def contact_member(line: Subspace, s1, tol: float = DEFAULT_TOL) -> np.ndarray:
    """The sphere of the pencil ``line`` in oriented contact with ``s1``.

    With ``line = span(s, sigma)`` it is ``alpha s + beta sigma`` with
    ``alpha : beta = -<sigma, s1> : <s, s1>``.
    """
    xi = _lift(s1)
    b = line.basis
    alpha, beta = -LIE.inner(b[1], xi), LIE.inner(b[0], xi)
    if math.hypot(alpha, beta) <= tol * np.linalg.norm(xi):
        raise DegenerateConfigurationError("s1 is orthogonal to the whole line (polar position)")
    return alpha * b[0] + beta * b[1]


def unique_isotropic_line_through(s1, line: Subspace, tol: float = DEFAULT_TOL) -> IsotropicLine:
    """Unique isotropic line through the isotropic point ``s1`` meeting ``line``.

    If ``s1`` already lies on ``line`` the line itself is returned.
    """
    xi = _lift(s1)
    if abs(LIE.quad(xi)) > tol * float(xi @ xi):
        raise NotIsotropicError("s1 is not on the Lie quadric")
    line = IsotropicLine.from_line(line, tol)
    if line.contains(xi, tol):
        return line
    return IsotropicLine.through(xi, contact_member(line, xi, tol), tol=tol)


def synthesis_step(l: Subspace, l1: Subspace, l2: Subspace, s12, tol: float = DEFAULT_TOL) -> IsotropicLine:
    """Fourth contact element ``l12 = span(l1, s12) ∩ span(l2, s12)`` of a principal quad."""
    xi = _lift(s12)
    V, s = top_basis(np.vstack([l.basis, l1.basis, l2.basis]), 4)
    if s.size < 4 or s[3] <= tol * s[0]:
        raise DegenerateConfigurationError("l, l1, l2 do not span a projective 3-space (umbilic quad)")
    gap = float(np.linalg.norm(xi - V.T @ (V @ xi)) / np.linalg.norm(xi))
    if gap > tol:
        raise NonPlanarError(f"sphere is not in span(l, l1, l2): not an R-congruence (residual {gap:.3g})")
    x = V @ xi
    n1 = _hyperplane_normal(np.vstack([l1.basis @ V.T, x]), 3, tol, "span(l1, s12)")
    n2 = _hyperplane_normal(np.vstack([l2.basis @ V.T, x]), 3, tol, "span(l2, s12)")
    y = _intersect_hyperplanes([n1, n2], 2, tol, "synthesis step")
    return IsotropicLine.span(y @ V, tol=tol)


def synthesize_from_r_congruence(S: Grid, seed: Subspace, tol: float = DEFAULT_TOL) -> ContactElementNet:
    """Principal contact element net through a two-dimensional R-congruence ``S``.

    ``seed`` is the contact element at ``(0, 0)``; it must contain ``S(0, 0)``.
    Axis lines follow from :func:`unique_isotropic_line_through`, interior
    lines from :func:`synthesis_step`.
    """
    if S.dims != 2:
        raise ValueError("synthesis needs a two-dimensional sphere net")
    lifts = S.map(_lift)
    for u in S.quads(0, 1):
        res = rank_defect(list(lifts.quad(u, 0, 1)), 3)
        if res > tol:
            raise NonPlanarError(f"quad at {u} is not an R-congruence quad (residual {res:.3g})")
    seed = IsotropicLine.from_line(seed, tol)
    if not seed.contains(lifts[0, 0], tol):
        raise IncidenceError("seed contact element does not contain S(0, 0)")
    n0, n1 = S.extents
    lines = Grid(S.extents)
    lines[0, 0] = seed
    for a in range(1, n0):
        lines[a, 0] = unique_isotropic_line_through(lifts[a, 0], lines[a - 1, 0], tol)
    for b in range(1, n1):
        lines[0, b] = unique_isotropic_line_through(lifts[0, b], lines[0, b - 1], tol)
    for b in range(1, n1):
        for a in range(1, n0):
            try:
                lines[a, b] = synthesis_step(lines[a - 1, b - 1], lines[a, b - 1], lines[a - 1, b], lifts[a, b], tol)
            except ValueError as exc:
                raise type(exc)(f"cell {(a, b)}: {exc}") from exc
    return ContactElementNet(lines, tol)


# ---------------------------------------------------------------------------
# circular and conical completions

def miquel_complete(x, x1, x2, x3, x12, x13, x23, tol: float = DEFAULT_TOL):
    """Eighth vertex of a circular hexahedron (Miquel's theorem)."""
    pts = [as_point(p) for p in (x, x1, x2, x3, x12, x13, x23)]
    for a, b, c, d in ((0, 1, 4, 2), (0, 1, 5, 3), (0, 2, 6, 3)):
        if not concircular(pts[a], pts[b], pts[c], pts[d], tol):
            raise NonPlanarError("input quad is not concircular")
    lifts = [moebius_lift(p) for p in pts]
    out = complete_hexahedron_in_quadric(MOEBIUS.gram, *lifts, tol=tol)
    return moebius_unlift(out.point, tol)


def conical_complete(P: Plane, Pi: Plane, Pj: Plane, v_ij, tol: float = DEFAULT_TOL) -> Plane:
    """Plane with normal ``v_ij`` through the common point of ``P, Pi, Pj``."""
    v_ij = np.asarray(v_ij, dtype=float)
    if abs(np.linalg.norm(v_ij) - 1.0) > 1e-9:
        raise ValueError("v_ij must be a unit vector")
    V = np.array([P.normal, Pi.normal, Pj.normal])
    sv = np.linalg.svd(V, compute_uv=False)
    if sv[2] <= tol * sv[0]:
        raise DegenerateConfigurationError("the three planes have no unique common point")
    x = np.linalg.solve(V, [P.d, Pi.d, Pj.d])
    return Plane(v_ij, float(v_ij @ x))


# ---------------------------------------------------------------------------
# Euclidean construction of neighbouring contact elements

class PottmannResult(NamedTuple):
    point: np.ndarray
    plane: Plane
    sphere: SphereElement


def pottmann_step(x, P: Plane, datum, tol: float = DEFAULT_TOL) -> PottmannResult:
    """Neighbouring contact element sharing a sphere with ``(x, P)``.

    With a point datum ``x1`` the new plane is the reflection of ``P`` in the
    bisecting plane of ``[x, x1]``; with a plane datum ``P1`` the new point is
    the reflection of ``x`` in the bisecting plane of ``P`` and ``P1``.  The
    sphere has its center on the normal of ``P`` at ``x``.  A point datum on
    ``P`` yields ``P`` itself as the common sphere.
    """
    x = as_point(x).xyz
    v = P.normal
    scale = max(1.0, float(np.linalg.norm(x)))
    if abs(P.signed_distance(x)) > tol * scale:
        raise IncidenceError("x is not on P")
    if isinstance(datum, Plane):
        v1 = datum.normal
        if np.linalg.norm(v - v1) <= tol:
            raise DegenerateConfigurationError("parallel planes with equal orientation: no finite sphere")
        r = datum.signed_distance(x) / (1.0 - float(v @ v1))
        c = x + r * v
        x1 = c - r * v1
        return PottmannResult(x1, datum, Sphere(c, r))
    x1 = as_point(datum).xyz
    delta = x1 - x
    dist = float(np.linalg.norm(delta))
    if dist <= tol * scale:
        raise DegenerateConfigurationError("x1 coincides with x")
    w = delta / dist
    wv = float(w @ v)
    v1 = v - 2.0 * wv * w
    P1 = Plane.from_normal(v1, float(v1 @ x1))
    if abs(wv) <= tol:
        return PottmannResult(x1, P1, P)
    r = dist / (2.0 * wv)
    return PottmannResult(x1, P1, Sphere(x + r * v, r))


# ---------------------------------------------------------------------------
# Ribaucour transformations

def ribaucour_transform(net: ContactElementNet, seed: Grid, tol: float = DEFAULT_TOL) -> ContactElementNet:
    """Ribaucour transform of a principal net from its lines along both axes."""
    for u, l in seed.items():
        if l is not None:
            IsotropicLine.from_line(l, tol)
    lines = congruence_f_transform(net.lines, seed, tol)
    for u, l in lines.items():
        try:
            IsotropicLine.from_line(l, tol)
        except NotIsotropicError as exc:
            raise NotIsotropicError(f"cell {u}: completed line is not isotropic") from exc
    return ContactElementNet(lines, tol)


def ribaucour_spheres(net: ContactElementNet, other: ContactElementNet, tol: float = DEFAULT_TOL) -> Grid:
    """Spheres shared by corresponding contact elements of two nets."""
    out = Grid(net.extents)
    for u in out.indices():
        meets, p = lines_intersect(net.lines[u], other.lines[u], tol)
        if not meets:
            raise IncidenceError(f"contact elements at {u} share no sphere")
        out[u] = lie_unlift(p, tol)
    return out


# ---------------------------------------------------------------------------
# extraction checks

def circular_residuals(points: Grid) -> Grid:
    """Concircularity residual of every elementary quad of a 2D point net."""
    out = Grid([n - 1 for n in points.extents])
    for u in out.indices():
        out[u] = rank_defect([moebius_lift(as_point(p)) for p in points.quad(u, 0, 1)], 3)
    return out


def conical_residuals(planes: Grid) -> Grid:
    out = Grid([n - 1 for n in planes.extents])
    for u in out.indices():
        out[u] = conical_residual(*planes.quad(u, 0, 1))
    return out


def is_circular_net(points: Grid, tol: float = DEFAULT_TOL) -> bool:
    return all(r <= tol for r in circular_residuals(points).values())


def is_conical_net(planes: Grid, tol: float = DEFAULT_TOL) -> bool:
    return all(is_conical_quad(*planes.quad(u, 0, 1), tol=tol) for u in planes.quads(0, 1))


__all__ = [
    "ContactElementNet",
    "CurvatureSphereField",
    "PottmannResult",
    "PrincipalCheck",
    "circular_residuals",
    "conical_complete",
    "conical_residuals",
    "contact_member",
    "curvature_sphere_fields",
    "curvature_spheres",
    "edge_residuals",
    "is_circular_net",
    "is_conical_net",
    "is_principal",
    "miquel_complete",
    "pottmann_step",
    "ribaucour_spheres",
    "ribaucour_transform",
    "synthesis_step",
    "synthesize_from_r_congruence",
    "unique_isotropic_line_through",
]
