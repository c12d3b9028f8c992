"""Euclidean sphere elements: oriented spheres, oriented planes, points and infinity.

Orientation convention: a sphere ``(c, r)`` touches an oriented plane ``(v, d)``
at ``x`` when ``c = x + r v``, equivalently ``<c, v> - r - d = 0``.  Positive
radii therefore belong to spheres whose unit normals point inward.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

UNIT_TOL = 1e-9


def _vec3(x) -> tuple[float, float, float]:
    a = np.asarray(x, dtype=float).reshape(-1)
    if a.shape != (3,):
        raise ValueError(f"expected 3 coordinates, got {a.shape[0]}")
    if not np.all(np.isfinite(a)):
        raise ValueError("coordinates must be finite")
    return tuple(float(t) for t in a)


@dataclass(frozen=True)
class Point:
    x: tuple[float, float, float]

    def __init__(self, x):
        object.__setattr__(self, "x", _vec3(x))

    @property
    def xyz(self) -> np.ndarray:
        return np.array(self.x)


@dataclass(frozen=True)
class Sphere:
    """Oriented sphere with center ``c`` and signed radius ``r``.

    ``Sphere(c, 0)`` returns a :class:`Point`.
    """

    c: tuple[float, float, float]
    r: float

    def __new__(cls, c, r):
        if float(r) == 0.0:
            return Point(c)
        return super().__new__(cls)

    def __init__(self, c, r):
        r = float(r)
        if not np.isfinite(r):
            raise ValueError("radius must be finite")
        object.__setattr__(self, "c", _vec3(c))
        object.__setattr__(self, "r", r)

    def __getnewargs__(self):
        return (self.c, self.r)

    @property
    def center(self) -> np.ndarray:
        return np.array(self.c)

    def flipped(self) -> "Sphere":
        return Sphere(self.c, -self.r)


@dataclass(frozen=True)
class Plane:
    """Oriented plane ``{y : <v, y> = d}`` with unit normal ``v``."""

    v: tuple[float, float, float]
    d: float

    def __init__(self, v, d):
        v = _vec3(v)
        n = float(np.linalg.norm(v))
        if abs(n - 1.0) > UNIT_TOL:
            raise ValueError(f"plane normal must be a unit vector, |v| = {n!r}")
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "d", float(d))

    @classmethod
    def from_normal(cls, n, d) -> "Plane":
        """Plane ``<n, y> = d`` for a non-unit ``n``; both sides are rescaled by ``1/|n|``."""
        n = np.asarray(n, dtype=float)
        s = np.linalg.norm(n)
        if s == 0:
            raise ValueError("zero normal")
        return cls(n / s, float(d) / s)

    @classmethod
    def through(cls, x, v) -> "Plane":
        v = np.asarray(v, dtype=float)
        return cls.from_normal(v, float(np.dot(v, x)))

    @property
    def normal(self) -> np.ndarray:
        return np.array(self.v)

    def flipped(self) -> "Plane":
        return Plane(tuple(-t for t in self.v), -self.d)

    def signed_distance(self, x) -> float:
        return float(np.dot(self.v, x) - self.d)


@dataclass(frozen=True)
class Infinity:
    pass


INFINITY = Infinity()

SphereElement = Union[Sphere, Plane, Point, Infinity]


def as_point(x) -> Point:
    return x if isinstance(x, Point) else Point(x)


def element_distance(a: SphereElement, b: SphereElement) -> float:
    """Largest coordinate difference between two elements of the same kind (inf otherwise)."""
    if type(a) is not type(b):
        return float("inf")
    if isinstance(a, Infinity):
        return 0.0
    if isinstance(a, Point):
        return float(np.max(np.abs(np.subtract(a.x, b.x))))
    if isinstance(a, Sphere):
        return float(max(np.max(np.abs(np.subtract(a.c, b.c))), abs(a.r - b.r)))
    return float(max(np.max(np.abs(np.subtract(a.v, b.v))), abs(a.d - b.d)))
