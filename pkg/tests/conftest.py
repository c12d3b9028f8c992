"""Shared fixtures, independent Euclidean oracles and the acceptance summary hook."""
import numpy as np
import pytest
from hypothesis import strategies as st

from spherenets import Plane, Point, Sphere

ACCEPTANCE_RESULTS = []


# ---------------------------------------------------------------------------
# random elements

def random_unit(rng, n=3):
    v = rng.normal(size=n)
    return v / np.linalg.norm(v)


def random_sphere(rng, scale=2.0):
    r = rng.uniform(0.2, scale) * rng.choice([-1.0, 1.0])
    return Sphere(rng.uniform(-scale, scale, 3), r)


def random_plane(rng, scale=2.0):
    return Plane(random_unit(rng), rng.uniform(-scale, scale))


def random_point(rng, scale=2.0):
    return Point(rng.uniform(-scale, scale, 3))


def random_element(rng):
    k = rng.integers(3)
    return (random_sphere, random_plane, random_point)[k](rng)


def seeds(n, base=0):
    return [np.random.default_rng(base + k) for k in range(n)]


coords = st.floats(-5, 5, allow_nan=False, allow_infinity=False)
vec3 = st.tuples(coords, coords, coords).map(np.array)
radii = st.floats(0.1, 5).flatmap(lambda r: st.sampled_from([r, -r]))
spheres = st.builds(Sphere, vec3, radii)
unit3 = vec3.filter(lambda v: np.linalg.norm(v) > 0.1).map(lambda v: v / np.linalg.norm(v))
planes = st.builds(Plane, unit3, coords)
points = st.builds(Point, vec3)
elements = st.one_of(spheres, planes, points)


# ---------------------------------------------------------------------------
# oracles (plain Euclidean geometry, independent of the lifts)

def circumcenter(a, b, c):
    """Center and radius of the circle through three points in R^3."""
    a, b, c = (np.asarray(t, float) for t in (a, b, c))
    u, v = b - a, c - a
    w = np.cross(u, v)
    center = a + (np.dot(v, v) * np.cross(w, u) + np.dot(u, u) * np.cross(v, w)) / (2 * np.dot(w, w))
    return center, float(np.linalg.norm(center - a))


def distance_to_circle(x, a, b, c):
    """Euclidean distance of ``x`` from the circle through ``a, b, c``."""
    center, R = circumcenter(a, b, c)
    n = np.cross(np.asarray(b) - a, np.asarray(c) - a)
    n = n / np.linalg.norm(n)
    d = np.asarray(x, float) - center
    h = d @ n
    rho = np.linalg.norm(d - h * n)
    return float(np.hypot(h, rho - R))


def euclid_contact(a, b):
    """Oriented contact residual from the Euclidean conditions."""
    if isinstance(a, Plane) and isinstance(b, Plane):
        return float(np.linalg.norm(a.normal - b.normal))
    if isinstance(a, Plane):
        a, b = b, a
    ca, ra = (a.center, a.r) if isinstance(a, Sphere) else (a.xyz, 0.0)
    if isinstance(b, Plane):
        return float(b.normal @ ca - ra - b.d)
    cb, rb = (b.center, b.r) if isinstance(b, Sphere) else (b.xyz, 0.0)
    return float(np.sum((ca - cb) ** 2) - (ra - rb) ** 2)


def invert(x, c, r):
    """Inversion in the sphere (c, r)."""
    d = np.asarray(x, float) - c
    return c + r * r * d / (d @ d)


def affine_random(rng, n=3):
    A = rng.normal(size=(n, n)) + 2 * np.eye(n)
    return A, rng.normal(size=n)


# ---------------------------------------------------------------------------
# acceptance bookkeeping

@pytest.fixture
def record():
    def _record(number, name, passed, detail=""):
        ACCEPTANCE_RESULTS.append((number, name, bool(passed), detail))
        return passed
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, passed, detail in sorted(ACCEPTANCE_RESULTS, key=lambda t: (t[0], t[1])):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number:>2}: {name}  {detail}")
