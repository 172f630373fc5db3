"""Projective primitives over exact scalars: points, planes, lines in P^3.

Points and planes are plain coordinate tuples; a point is never the zero
vector.  Lines carry two spanning points and compare via Plucker vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .linalg import Matrix, dot, vec_scale
from .scalars import is_zero


def is_zero_vec(v: Sequence) -> bool:
    return all(is_zero(x) for x in v)


def proportional(u: Sequence, v: Sequence) -> bool:
    """True when u = c*v with c nonzero.  Zero vectors match only each other."""
    if len(u) != len(v):
        return False
    zu, zv = is_zero_vec(u), is_zero_vec(v)
    if zu or zv:
        return zu and zv
    # cross-multiply against the pivot coordinate
    k = next(i for i, x in enumerate(u) if not is_zero(x))
    if is_zero(v[k]):
        return False
    return all(is_zero(u[k] * y - v[k] * x) for x, y in zip(u, v))


def normalize_proj(v: Sequence) -> tuple:
    """Scale so the first nonzero coordinate is 1 (canonical representative)."""
    k = next((i for i, x in enumerate(v) if not is_zero(x)), None)
    if k is None:
        raise ValueError("zero vector has no projective class")
    return tuple(x / v[k] for x in v)


def span_rank(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return Matrix(vectors).rank()


def collinear_p3(points: Sequence[Sequence]) -> bool:
    return span_rank(points) <= 2


def coplanar_p3(points: Sequence[Sequence]) -> bool:
    return span_rank(points) <= 3


def plane_through(p, q, r) -> tuple:
    """Plane through three non-collinear points of P^3 (coefficient vector)."""
    M = Matrix([p, q, r])
    ns = M.nullspace()
    if len(ns) != 1:
        raise ValueError("points do not span a plane")
    return ns[0]


def plane_of_points(points: Sequence[Sequence]):
    """The unique plane through a coplanar, plane-spanning set, else None."""
    M = Matrix(points)
    ns = M.nullspace()
    if len(ns) != 1:
        return None
    return ns[0]


def plucker(a: Sequence, b: Sequence) -> tuple:
    """Plucker coordinates (p01, p02, p03, p12, p13, p23) of the span of a, b."""
    def m(i, j):
        return a[i] * b[j] - a[j] * b[i]
    return (m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(1, 3), m(2, 3))


@dataclass(frozen=True)
class LineP3:
    """Line in P^3 spanned by two distinct points."""

    a: tuple
    b: tuple

    def __post_init__(self):
        if proportional(self.a, self.b):
            raise ValueError("spanning points coincide")

    @property
    def plucker(self) -> tuple:
        return plucker(self.a, self.b)

    def contains(self, p: Sequence) -> bool:
        return span_rank([self.a, self.b, p]) <= 2

    def point_at(self, s, t) -> tuple:
        """s*a + t*b; callers keep (s, t) != (0, 0)."""
        return tuple(s * x + t * y for x, y in zip(self.a, self.b))

    def __eq__(self, other):
        if not isinstance(other, LineP3):
            return NotImplemented
        return proportional(self.plucker, other.plucker)

    def __hash__(self):
        return hash(normalize_proj(self.plucker))

    def meets(self, other: "LineP3") -> bool:
        """True when the lines intersect (equivalently, are coplanar)."""
        p, q = self.plucker, other.plucker
        s = (p[0] * q[5] - p[1] * q[4] + p[2] * q[3]
             + p[3] * q[2] - p[4] * q[1] + p[5] * q[0])
        return is_zero(s)

    def meet_plane(self, plane: Sequence):
        """Intersection point with a plane, or None if the line lies in it."""
        da, db = dot(plane, self.a), dot(plane, self.b)
        if is_zero(da) and is_zero(db):
            return None
        # db*a - da*b is on the line and orthogonal to the plane form
        return tuple(db * x - da * y for x, y in zip(self.a, self.b))

    def in_plane(self, plane: Sequence) -> bool:
        return is_zero(dot(plane, self.a)) and is_zero(dot(plane, self.b))


def line_line_meet(l1: LineP3, l2: LineP3):
    """Intersection point of two distinct coplanar lines, else None."""
    if l1 == l2 or not l1.meets(l2):
        return None
    # solve alpha*a1 + beta*b1 - gamma*a2 - delta*b2 = 0 on the columns;
    # alpha*a1 + beta*b1 is then the common point (nonzero: lines are lines)
    M = Matrix.from_cols([l1.a, l1.b, vec_scale(-1, l2.a), vec_scale(-1, l2.b)])
    ker = M.nullspace()
    alpha, beta = ker[0][0], ker[0][1]
    return tuple(alpha * x + beta * y for x, y in zip(l1.a, l1.b))


def planes_meet(h1: Sequence, h2: Sequence) -> LineP3:
    """Line of intersection of two distinct planes."""
    ns = Matrix([h1, h2]).nullspace()
    if len(ns) != 2:
        raise ValueError("planes coincide or are invalid")
    return LineP3(ns[0], ns[1])


def three_planes_meet(h1, h2, h3):
    """Common point of three planes, or None if they share a line/coincide."""
    ns = Matrix([h1, h2, h3]).nullspace()
    if len(ns) != 1:
        return None
    return ns[0]


def general_position_p3(points: Sequence[Sequence]) -> bool:
    """No 3 collinear and no 4 coplanar among the given P^3 points."""
    for trio in combinations(points, 3):
        if span_rank(trio) <= 2:
            return False
    for quad in combinations(points, 4):
        if span_rank(quad) <= 3:
            return False
    return True


def line_of_intersection(points: Sequence[Sequence]):
    """The line spanned by a rank-2 point set, or None."""
    M = Matrix(points)
    R, piv = M.rref()
    if len(piv) != 2:
        return None
    return LineP3(R.row(0), R.row(1))
