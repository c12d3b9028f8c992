"""Sample principal contact element nets on surfaces of revolution.

Meridians and parallels are curvature lines, so sampling them gives exactly
principal nets (circular points, conical planes).  Every generator returns a
grid of ``(x, Plane)`` pairs; direction 0 runs along the parallels.
"""
from __future__ import annotations

import numpy as np

from .elements import Plane
from .grid import Grid
from .principal import pottmann_step


def _angles(n: int, lo: float, hi: float) -> np.ndarray:
    return np.linspace(lo, hi, n)


def torus_net(a: float = 2.0, b: float = 1.0, n_theta: int = 6, n_phi: int = 5,
              theta_range=(0.0, 1.5), phi_range=(-1.0, 1.0)) -> Grid:
    """Torus ``((a + b cos phi) cos theta, (a + b cos phi) sin theta, b sin phi)``.

    Planes carry the outward normal, so the tube spheres have radius ``-b``.
    """
    if not a > b > 0:
        raise ValueError("need a > b > 0")
    g = Grid((n_theta, n_phi))
    for i, th in enumerate(_angles(n_theta, *theta_range)):
        for j, ph in enumerate(_angles(n_phi, *phi_range)):
            n = np.array([np.cos(ph) * np.cos(th), np.cos(ph) * np.sin(th), np.sin(ph)])
            x = np.array([a * np.cos(th), a * np.sin(th), 0.0]) + b * n
            g[i, j] = (x, Plane.through(x, n))
    return g


def torus_curvature_spheres(a: float, b: float, theta: float, phi: float):
    """Exact curvature spheres at a torus point: ``(parallel_sphere, meridian_sphere)``.

    Uses the outward normal ``n`` and ``c = x + r n``.
    """
    n = np.array([np.cos(phi) * np.cos(theta), np.cos(phi) * np.sin(theta), np.sin(phi)])
    x = np.array([a * np.cos(theta), a * np.sin(theta), 0.0]) + b * n
    r_par = -(a + b * np.cos(phi)) / np.cos(phi)
    return (x + r_par * n, r_par), (x - b * n, -b)


def sphere_net(R: float = 1.0, n_theta: int = 5, n_phi: int = 5,
               theta_range=(0.0, 1.5), phi_range=(-1.0, 1.0)) -> Grid:
    """Latitude/longitude net on a sphere of radius ``R`` (inward normals, radius ``+R``).

    Every quad is umbilic: all contact elements share the sphere itself.
    """
    if R <= 0:
        raise ValueError("radius must be positive")
    g = Grid((n_theta, n_phi))
    for i, th in enumerate(_angles(n_theta, *theta_range)):
        for j, ph in enumerate(_angles(n_phi, *phi_range)):
            n = np.array([np.cos(ph) * np.cos(th), np.cos(ph) * np.sin(th), np.sin(ph)])
            g[i, j] = (R * n, Plane.through(R * n, -n))
    return g


def revolution_net(profile, normal0=None, n_theta: int = 5, theta_range=(0.0, 1.5)) -> Grid:
    """Principal net on the surface of revolution of a discrete meridian.

    ``profile`` is a sequence of ``(rho, z)`` points in the meridian half-plane
    and ``normal0`` the unit normal ``(n_rho, n_z)`` at the first point; later
    normals follow by reflection in the bisecting planes of the profile edges.
    """
    profile = np.asarray(profile, dtype=float)
    if profile.ndim != 2 or profile.shape[1] != 2 or len(profile) < 2:
        raise ValueError("profile must be a (k, 2) array with k >= 2")
    if normal0 is None:
        t = profile[1] - profile[0]
        normal0 = np.array([t[1], -t[0]])
    normal0 = np.asarray(normal0, dtype=float)
    normal0 = normal0 / np.linalg.norm(normal0)
    pts = [np.array([profile[0, 0], 0.0, profile[0, 1]])]
    planes = [Plane.through(pts[0], [normal0[0], 0.0, normal0[1]])]
    for rho, z in profile[1:]:
        x1 = np.array([rho, 0.0, z])
        step = pottmann_step(pts[-1], planes[-1], x1)
        pts.append(x1)
        planes.append(step.plane)
    g = Grid((n_theta, len(profile)))
    for i, th in enumerate(_angles(n_theta, *theta_range)):
        c, s = np.cos(th), np.sin(th)
        rot = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
        for j, (x, P) in enumerate(zip(pts, planes)):
            g[i, j] = (rot @ x, Plane(rot @ P.normal, P.d))
    return g
