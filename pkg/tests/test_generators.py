import numpy as np
import pytest

from spherenets.generators import revolution_net, sphere_net, torus_curvature_spheres, torus_net
from spherenets.lie import oriented_contact
from spherenets.elements import Point, Sphere
from spherenets.principal import (
    ContactElementNet,
    circular_residuals,
    conical_residuals,
    is_principal,
)


def test_torus_points_on_surface():
    a, b = 2.5, 0.8
    for (x, P) in torus_net(a, b, 5, 4).values():
        rho = np.hypot(x[0], x[1])
        assert abs((rho - a) ** 2 + x[2] ** 2 - b * b) < 1e-12
        assert abs(P.normal @ x - P.d) < 1e-12
        # outward normal points away from the core circle
        core = a * np.array([x[0], x[1], 0]) / rho
        assert (x - core) @ P.normal > 0


def test_torus_net_principal():
    g = torus_net(2, 1, 6, 5)
    assert is_principal(g).principal
    assert max(circular_residuals(g.map(lambda p: p[0])).values()) < 1e-9
    assert max(conical_residuals(g.map(lambda p: p[1])).values()) < 1e-9


def test_exact_curvature_spheres_touch():
    a, b = 2.0, 1.0
    for th, ph in ((0.0, 0.3), (1.1, -0.7)):
        n = np.array([np.cos(ph) * np.cos(th), np.cos(ph) * np.sin(th), np.sin(ph)])
        x = np.array([a * np.cos(th), a * np.sin(th), 0.0]) + b * n
        for c, r in torus_curvature_spheres(a, b, th, ph):
            assert np.linalg.norm(c - (x + r * n)) < 1e-12


def test_sphere_net():
    g = sphere_net(2.0, 4, 4)
    for (x, P) in g.values():
        assert abs(np.linalg.norm(x) - 2) < 1e-12
        assert oriented_contact(Sphere((0, 0, 0), 2.0), P)
    assert is_principal(g).principal


def test_revolution_net_principal():
    z = np.linspace(-1, 1, 5)
    profile = np.stack([2 + 0.5 * np.cos(1.3 * z), z], axis=1)
    g = revolution_net(profile, n_theta=4)
    check = is_principal(g)
    assert check.principal
    net = ContactElementNet.from_pairs(g)
    for u, x in net.points().items():
        assert isinstance(x, Point)


def test_generator_errors():
    with pytest.raises(ValueError):
        torus_net(1.0, 1.0)
    with pytest.raises(ValueError):
        sphere_net(0.0)
    with pytest.raises(ValueError):
        revolution_net([[1.0, 0.0]])
