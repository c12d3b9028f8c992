import numpy as np
import pytest

from spherenets import LIE, Infinity, Plane, Point, Sphere
from spherenets.elements import element_distance
from spherenets.exceptions import (
    DegenerateConfigurationError,
    IncidenceError,
    NonPlanarError,
)
from spherenets.generators import sphere_net, torus_curvature_spheres, torus_net
from spherenets.grid import Grid
from spherenets.laguerre import ConeOfRevolution, is_conical_quad
from spherenets.lie import IsotropicLine, contact_element, lie_lift, lie_unlift, oriented_contact, point_and_plane_of
from spherenets.moebius import apply_reflection, concircular
from spherenets.principal import (
    ContactElementNet,
    circular_residuals,
    conical_complete,
    conical_residuals,
    curvature_sphere_fields,
    is_circular_net,
    is_conical_net,
    is_principal,
    miquel_complete,
    pottmann_step,
    ribaucour_spheres,
    ribaucour_transform,
    synthesize_from_r_congruence,
    unique_isotropic_line_through,
)
from spherenets.pseudo_euclid import reflection_matrix, subspace_signature
from spherenets.sphere_congruences import r_residual

from conftest import random_unit, seeds

Z0 = Plane((0, 0, 1), 0)


def _sphere_params(e):
    if isinstance(e, Sphere):
        return np.array([*e.c, e.r])
    return np.array([*e.x, 0.0])


def _touches(S, x, P, tol=1e-9):
    c, r = np.array(S.c), S.r
    return np.linalg.norm(c - (np.asarray(x) + r * P.normal)) < tol


# ---------------------------------------------------------------------------
# principal nets and curvature spheres

def test_sphere_net_is_umbilic_principal():
    R = 1.5
    check = is_principal(sphere_net(R, 4, 4))
    assert check.principal
    for field in check.fields:
        assert all(field.umbilic.values())
        for S in field.spheres.values():
            assert element_distance(S, Sphere((0, 0, 0), R)) < 1e-9


def test_coplanar_contact_elements():
    rng = np.random.default_rng(0)
    g = Grid((3, 3))
    for u in g.indices():
        g[u] = (np.append(rng.normal(size=2), 0.0), Z0)
    check = is_principal(g)
    assert check.principal
    for field in check.fields:
        for S in field.spheres.values():
            assert element_distance(S, Z0) < 1e-9


def test_perturbed_planes_not_principal():
    g = torus_net(n_theta=4, n_phi=4)
    x, P = g[1, 2]
    v = P.normal + np.array([0.0, 0.05, 0.0])
    v /= np.linalg.norm(v)
    g[1, 2] = (x, Plane.through(x, v))
    assert not is_principal(g).principal


def test_point_off_plane_rejected():
    g = torus_net(n_theta=3, n_phi=3)
    x, P = g[2, 1]
    g[2, 1] = (x + 0.1 * P.normal, P)
    with pytest.raises(IncidenceError, match=r"\(2, 1\)"):
        is_principal(g)


def test_torus_curvature_spheres_match_exact():
    a, b = 2.0, 0.8
    th, ph = np.linspace(0, 1.5, 5), np.linspace(-1, 1, 4)
    net = ContactElementNet.from_pairs(torus_net(a, b, 5, 4))
    par, mer = curvature_sphere_fields(net)
    for u, S in mer.spheres.items():
        c, r = torus_curvature_spheres(a, b, th[u[0]], ph[u[1]])[1]
        assert element_distance(S, Sphere(c, r)) < 1e-9
        # the tube sphere's center lies on the core circle
        assert abs(np.hypot(*S.c[:2]) - a) < 1e-9 and abs(S.c[2]) < 1e-9
    pts, planes = net.points(), net.planes()
    for field in (par, mer):
        for u, S in field.spheres.items():
            v = list(u)
            v[field.direction] += 1
            for w in (u, tuple(v)):
                assert oriented_contact(S, Point(pts[w].x)) and oriented_contact(S, planes[w])
        for q in field.spheres.quads(0, 1):
            assert r_residual(*field.spheres.quad(q, 0, 1)) < 1e-9
        assert not any(field.umbilic.values())


def test_strip_sphere_is_pottmann_sphere():
    x, P = np.zeros(3), Z0
    step = pottmann_step(x, P, (0.7, 0.2, 0.4))
    g = Grid((2, 1))
    g[0, 0] = (x, P)
    g[1, 0] = (step.point, step.plane)
    S = is_principal(g).fields[0].spheres[0, 0]
    assert element_distance(S, step.sphere) < 1e-12


def test_extracted_nets_circular_and_conical():
    net = ContactElementNet.from_pairs(torus_net(2, 1, 5, 5))
    assert max(circular_residuals(net.points()).values()) < 1e-9
    assert max(conical_residuals(net.planes()).values()) < 1e-9


# ---------------------------------------------------------------------------
# the isotropic line through a sphere meeting a contact element

def test_unique_line_examples():
    l = contact_element((0, 0, 0), Z0)
    out = unique_isotropic_line_through(Sphere((0, 0, 2), 1), l)
    # the meeting sphere touches z = 0 at the origin and the oriented sphere ((0,0,2), 1)
    S = Sphere((0, 0, 1.5), 1.5)
    assert out.contains(lie_lift(S)) and l.contains(lie_lift(S))
    assert oriented_contact(S, Sphere((0, 0, 2), 1))
    # opposite orientation: the sphere from elementary geometry, c = (0,0,1/2), r = 1/2
    out2 = unique_isotropic_line_through(Sphere((0, 0, 2), -1), l)
    assert out2.contains(lie_lift(Sphere((0, 0, 0.5), 0.5)))


def test_unique_line_on_pencil_returns_line():
    l = contact_element((0, 0, 0), Z0)
    out = unique_isotropic_line_through(Sphere((0, 0, 3), 3), l)
    assert out.distance(l) < 1e-12


def test_unique_line_parallel_plane():
    l = contact_element((0, 0, 0), Z0)
    out = unique_isotropic_line_through(Plane((0, 0, 1), 3), l)
    assert out.contains(lie_lift(Z0)) and out.contains(LIE.e("einf"))
    x, _ = point_and_plane_of(out)
    assert isinstance(x, Infinity)


def test_unique_line_is_isotropic_and_meets():
    for rng in seeds(100):
        x = rng.normal(size=3)
        l = contact_element(x, Plane.through(x, random_unit(rng)))
        S = Sphere(rng.normal(size=3) * 2, rng.uniform(0.3, 2) * rng.choice([-1, 1]))
        out = unique_isotropic_line_through(S, l)
        assert subspace_signature(out.basis, LIE) == (0, 0, 2)
        assert np.linalg.matrix_rank(np.vstack([out.basis, l.basis]), tol=1e-9) == 3


# ---------------------------------------------------------------------------
# synthesis

def _offset_spheres(pairs, t):
    """Spheres of signed radius ``t`` touching each contact element."""
    return pairs.map(lambda p: Sphere(np.asarray(p[0]) + t * p[1].normal, t))


def test_synthesis_round_trip_torus():
    pairs = torus_net(2, 1, 5, 4)
    net = ContactElementNet.from_pairs(pairs)
    for S in (pairs.map(lambda p: Point(p[0])), pairs.map(lambda p: p[1]), _offset_spheres(pairs, 0.4)):
        out = synthesize_from_r_congruence(S, net.lines[0, 0])
        assert out.distance(net) < 1e-8
        assert is_principal(out).principal


def test_torus_curvature_field_is_degenerate_synthesis_data():
    # the parallel spheres are constant along parallels, so three neighbouring
    # lines of the synthesis pass through one sphere
    net = ContactElementNet.from_pairs(torus_net(2, 1, 4, 4))
    par = curvature_sphere_fields(net)[0].spheres
    with pytest.raises(DegenerateConfigurationError):
        synthesize_from_r_congruence(par, net.lines[0, 0])


def _generic_principal_net():
    # inversion of the torus points gives a circular net without symmetry
    inv = Sphere((0.3, -2.5, 1.7), 1.3)
    pts = torus_net(2, 1, 5, 5).map(lambda p: apply_reflection(inv, p[0]))
    x0 = np.array(pts[0, 0].x)
    return synthesize_from_r_congruence(pts, contact_element(x0, Plane.through(x0, [0.2, -0.5, 0.84])))


def test_synthesis_round_trip_curvature_spheres():
    net = _generic_principal_net()
    for field in curvature_sphere_fields(net):
        S = field.spheres
        assert not any(field.umbilic.values())
        out = synthesize_from_r_congruence(S, net.lines[0, 0])
        for u in S.indices():
            assert out.lines[u].distance(net.lines[u]) < 1e-8


def test_synthesis_from_circular_net_is_conical():
    pts = torus_net(2, 1, 4, 4).map(lambda p: Point(p[0]))
    x0 = np.array(pts[0, 0].x)
    seed = contact_element(x0, Plane.through(x0, [0.3, -0.2, 0.93]))
    out = synthesize_from_r_congruence(pts, seed)
    assert is_conical_net(out.planes())
    for u in pts.indices():
        assert element_distance(out.points()[u], pts[u]) < 1e-9


def test_synthesis_from_conical_net_is_circular():
    planes = torus_net(2, 1, 4, 4).map(lambda p: p[1])
    P0 = planes[0, 0]
    x0 = P0.d * P0.normal + 0.3 * np.cross(P0.normal, [0, 0, 1.0])
    out = synthesize_from_r_congruence(planes, contact_element(x0, P0))
    assert is_circular_net(out.points())
    for u in planes.indices():
        assert element_distance(out.planes()[u], planes[u]) < 1e-9


def test_synthesis_rejects_non_r_congruence():
    rng = np.random.default_rng(3)
    S = Grid((2, 2))
    for u in S.indices():
        S[u] = Sphere(rng.normal(size=3), 1.0)
    seed = unique_isotropic_line_through(S[0, 0], contact_element((0, 0, 0), Z0))
    with pytest.raises(NonPlanarError):
        synthesize_from_r_congruence(S, seed)


def test_synthesis_seed_must_contain_sphere():
    S = torus_net(2, 1, 3, 3).map(lambda p: Point(p[0]))
    with pytest.raises(IncidenceError):
        synthesize_from_r_congruence(S, contact_element((0, 0, 0), Z0))


# ---------------------------------------------------------------------------
# Miquel and conical completion

def test_miquel_unit_cube():
    c = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1)]
    out = miquel_complete(*c)
    assert element_distance(out, Point((1, 1, 1))) < 1e-12


def _point_on_circle_of(a, b, c, rng):
    """Random point of the unit sphere in the plane through a, b, c."""
    n = np.cross(b - a, c - a)
    n /= np.linalg.norm(n)
    h = n @ a
    center = h * n
    rho = np.sqrt(1 - h * h)
    u = np.cross(n, random_unit(rng))
    u /= np.linalg.norm(u)
    return center + rho * (np.cos(0.3) * u + np.sin(0.3) * np.cross(n, u)) * 1.0


def test_miquel_random_on_sphere():
    for rng in seeds(50):
        x, x1, x2, x3 = (random_unit(rng) for _ in range(4))
        x12 = _point_on_circle_of(x, x1, x2, rng)
        x13 = _point_on_circle_of(x, x1, x3, rng)
        x23 = _point_on_circle_of(x, x2, x3, rng)
        out = np.array(miquel_complete(x, x1, x2, x3, x12, x13, x23).x)
        # oracle: circles (x1, x12, x13) and (x2, x12, x23) lie on the unit
        # sphere; their planes meet in a line through x12 and x123
        n1 = np.cross(x12 - x1, x13 - x1)
        n2 = np.cross(x12 - x2, x23 - x2)
        d = np.cross(n1, n2)
        t = -2 * (x12 @ d) / (d @ d)
        oracle = x12 + t * d
        assert np.linalg.norm(out - oracle) < 1e-9
        assert concircular(x3, x13, out, x23, 1e-9)


def test_miquel_rejects_collinear():
    pts = [(float(k), 0.0, 0.0) for k in range(7)]
    with pytest.raises((NonPlanarError, DegenerateConfigurationError)):
        miquel_complete(*pts)


def test_miquel_rejects_non_concircular():
    c = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1.2, 1, 0), (1, 0, 1), (0, 1, 1)]
    with pytest.raises(NonPlanarError):
        miquel_complete(*c)


def test_conical_complete_coordinate_planes():
    v = np.ones(3) / np.sqrt(3)
    P = conical_complete(Plane((1, 0, 0), 0), Plane((0, 1, 0), 0), Plane((0, 0, 1), 0), v)
    assert element_distance(P, Plane(v, 0.0)) < 1e-15


def test_conical_complete_recovers_cone_plane():
    for rng in seeds(20):
        cone = ConeOfRevolution(rng.normal(size=3), random_unit(rng), rng.uniform(0.2, 1.3))
        phis = np.sort(rng.uniform(0, 2 * np.pi, 4))
        P, Pi, Pij, Pj = (cone.tangent_plane(p) for p in phis)
        out = conical_complete(P, Pi, Pj, Pij.normal)
        assert element_distance(out, Pij) < 1e-9
        assert is_conical_quad(P, Pi, out, Pj)


def test_conical_complete_errors():
    with pytest.raises(DegenerateConfigurationError):
        conical_complete(Plane((0, 0, 1), 0), Plane((0, 0, 1), 1), Plane((1, 0, 0), 0), (0, 1, 0))
    with pytest.raises(ValueError):
        conical_complete(Plane((1, 0, 0), 0), Plane((0, 1, 0), 0), Plane((0, 0, 1), 0), (1, 1, 0))


# ---------------------------------------------------------------------------
# Euclidean steps

def test_pottmann_point_example():
    step = pottmann_step((0, 0, 0), Z0, (1, 0, 1))
    assert element_distance(step.sphere, Sphere((0, 0, 1), 1)) < 1e-15
    assert element_distance(step.plane, Plane((-1, 0, 0), -1)) < 1e-15
    assert _touches(step.sphere, (0, 0, 0), Z0) and _touches(step.sphere, (1, 0, 1), step.plane)


def test_pottmann_parallel_plane_degenerate():
    with pytest.raises(DegenerateConfigurationError):
        pottmann_step((0, 0, 0), Z0, Plane((0, 0, 1), 2))


def test_pottmann_point_in_plane_gives_plane():
    step = pottmann_step((0, 0, 0), Z0, (1, 2, 0))
    assert step.sphere == Z0 and element_distance(step.plane, Z0) < 1e-15


def test_pottmann_errors():
    with pytest.raises(IncidenceError):
        pottmann_step((0, 0, 1), Z0, (1, 0, 0))
    with pytest.raises(DegenerateConfigurationError):
        pottmann_step((0, 0, 0), Z0, (0, 0, 0))


def test_pottmann_recovers_known_sphere():
    for rng in seeds(50):
        c, r = rng.normal(size=3), rng.uniform(0.3, 2) * rng.choice([-1, 1])
        u, u1 = random_unit(rng), random_unit(rng)
        x, x1 = c - r * u, c - r * u1
        P = Plane.through(x, u)
        step = pottmann_step(x, P, x1)
        assert element_distance(step.sphere, Sphere(c, r)) < 1e-9
        assert element_distance(step.plane, Plane.through(x1, u1)) < 1e-9
        back = pottmann_step(x, P, Plane.through(x1, u1))
        assert np.linalg.norm(back.point - x1) < 1e-9


def _pottmann_vs_lemma(rng):
    x = rng.normal(size=3)
    P = Plane.through(x, random_unit(rng))
    if rng.random() < 0.5:
        datum = rng.normal(size=3) * 2
        target = Point(datum)
    else:
        datum = Plane(random_unit(rng), rng.normal())
        target = datum
    step = pottmann_step(x, P, datum)
    line = unique_isotropic_line_through(target, contact_element(x, P))
    l = contact_element(x, P)
    # the meeting point is the common direction of the two spans
    A = np.vstack([l.basis, -line.basis]).T
    coef = np.linalg.svd(A)[2][-1]
    meet = coef[:2] @ l.basis
    return step.sphere, lie_unlift(meet)


def test_pottmann_agrees_with_lemma():
    for rng in seeds(100, 1000):
        a, b = _pottmann_vs_lemma(rng)
        assert np.max(np.abs(_sphere_params(a) - _sphere_params(b))) < 1e-9


# ---------------------------------------------------------------------------
# Ribaucour transforms

def _axis_seed(lines, plus):
    seed = Grid(lines.extents)
    for u in lines.indices():
        if sum(1 for a in u if a) <= 1:
            seed[u] = plus[u]
    return seed


def test_ribaucour_matches_lie_reflection():
    net = ContactElementNet.from_pairs(torus_net(2, 1, 4, 4))
    rng = np.random.default_rng(5)
    n = rng.normal(size=6)
    n[4] += 8.0
    A = reflection_matrix(n, LIE)
    image = net.lines.map(lambda l: IsotropicLine.span(l.basis @ A.T))
    out = ribaucour_transform(net, _axis_seed(net.lines, image))
    for u in net.lines.indices():
        assert out.lines[u].distance(image[u]) < 1e-8


def test_ribaucour_self_seed_flagged():
    net = ContactElementNet.from_pairs(torus_net(2, 1, 3, 3))
    with pytest.raises(DegenerateConfigurationError):
        ribaucour_transform(net, _axis_seed(net.lines, net.lines))


def test_ribaucour_spheres_form_r_congruence():
    net = ContactElementNet.from_pairs(torus_net(2, 1, 4, 4))
    rng = np.random.default_rng(6)

    def point_on(l):
        a, b = rng.normal(size=2)
        return a * l.basis[0] + b * l.basis[1]

    seed = Grid(net.extents)
    seed[0, 0] = contact_element(*_contact_through(lie_unlift(point_on(net.lines[0, 0])), rng))
    for a in range(1, 4):
        seed[a, 0] = unique_isotropic_line_through(point_on(net.lines[a, 0]), seed[a - 1, 0])
        seed[0, a] = unique_isotropic_line_through(point_on(net.lines[0, a]), seed[0, a - 1])
    plus = ribaucour_transform(net, seed)
    S = ribaucour_spheres(net, plus)
    for q in S.quads(0, 1):
        assert r_residual(*S.quad(q, 0, 1)) < 1e-9
    assert is_principal(plus).principal


def _contact_through(S, rng):
    """A contact element of the sphere ``S``."""
    u = random_unit(rng)
    if isinstance(S, Plane):
        x = S.d * S.normal
        return x, S
    c, r = (np.array(S.c), S.r) if isinstance(S, Sphere) else (np.array(S.x), 0.0)
    x = c - r * u
    return x, Plane.through(x, u)
