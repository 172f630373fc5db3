"""Projective cameras, scenes, and the joint-image machinery.

A camera is a rank-3 exact 3x4 matrix up to scale; its center is the
right kernel.  A scene bundles cameras with world points.  Image
membership for the joint map across all views is decided by the bilinear
(pairwise) and trilinear (triple) vanishing conditions, which cut out the
closure of the image of projective space under the joint map.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .linalg import Matrix, skew3
from .projective import LineP3, is_zero_vec, proportional
from .scalars import is_zero


class CenterProjected(Exception):
    """Projection was asked for the camera's own center (undefined image)."""

    def __init__(self, msg, index: Optional[int] = None):
        super().__init__(msg)
        self.index = index


class NoIntersection(Exception):
    """Image tuple has no common world point (off the joint image)."""


class LineOfSolutions(Exception):
    """Triangulation is ambiguous: a whole line maps to the image tuple."""

    def __init__(self, line: LineP3):
        super().__init__("a line of world points matches the images")
        self.line = line


class SingularHomography(Exception):
    """A projective change of coordinates must be invertible."""


@dataclass(frozen=True)
class Camera:
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (3, 4):
            raise ValueError("camera must be 3x4")
        if self.matrix.rank() != 3:
            raise ValueError("camera must have rank 3")

    @staticmethod
    def of(rows: Sequence[Sequence]) -> "Camera":
        return Camera(Matrix(rows))

    @property
    def center(self) -> tuple:
        """Right kernel representative (the unique center, up to scale)."""
        return self.matrix.nullspace()[0]

    def project(self, x: Sequence) -> tuple:
        u = self.matrix.apply(x)
        if is_zero_vec(u):
            raise CenterProjected("point is the camera center")
        return u

    def project_or_none(self, x: Sequence) -> Optional[tuple]:
        u = self.matrix.apply(x)
        return None if is_zero_vec(u) else u

    def back_project(self, u: Sequence) -> LineP3:
        """The full preimage line of image point u (always contains the center)."""
        if is_zero_vec(u):
            raise ValueError("zero vector is not an image point")
        x0 = self.matrix.solve(u)
        if x0 is None:
            raise ValueError("rank-3 camera is surjective; unreachable")
        return LineP3(self.center, x0)

    def sees_on_line(self, u: Sequence, x: Sequence) -> bool:
        """True when x lies on the preimage line of u (center included)."""
        v = self.matrix.apply(x)
        return is_zero_vec(v) or proportional(v, u)

    def row(self, i: int) -> tuple:
        return self.matrix.row(i)

    def with_homography(self, h_inv: Matrix) -> "Camera":
        return Camera(self.matrix * h_inv)


def camera_with_center(c: Sequence) -> Camera:
    """A canonical rank-3 camera whose center is c.

    Rows are e_i - (c_i/c_j) e_j for the three indices i != j, where j is
    the first nonzero coordinate of c.
    """
    c = tuple(Fraction(x) if isinstance(x, int) else x for x in c)
    if is_zero_vec(c):
        raise ValueError("center cannot be the zero vector")
    j = next(i for i, x in enumerate(c) if not is_zero(x))
    rows = []
    for i in range(4):
        if i == j:
            continue
        row = [Fraction(0)] * 4
        row[i] = Fraction(1)
        row[j] = -c[i] / c[j]
        rows.append(row)
    return Camera.of(rows)


def epipole(viewer: Camera, other: Camera) -> tuple:
    """Image of other's center in viewer.  Raises CenterProjected if equal."""
    return viewer.project(other.center)


@dataclass(frozen=True)
class Scene:
    cameras: tuple[Camera, ...]
    points: tuple[tuple, ...]

    def __post_init__(self):
        object.__setattr__(self, "cameras", tuple(self.cameras))
        object.__setattr__(self, "points", tuple(tuple(p) for p in self.points))
        for p in self.points:
            if is_zero_vec(p):
                raise ValueError("zero vector is not a projective point")
            if len(p) != 4:
                raise ValueError("world points live in P^3")
        ctrs = [c.center for c in self.cameras]
        for i, j in combinations(range(len(ctrs)), 2):
            if proportional(ctrs[i], ctrs[j]):
                raise ValueError("camera centers %d and %d coincide" % (i, j))

    @property
    def n_cameras(self) -> int:
        return len(self.cameras)

    @property
    def n_points(self) -> int:
        return len(self.points)

    def centers(self) -> list[tuple]:
        return [cam.center for cam in self.cameras]

    def images(self) -> list[list[tuple]]:
        """Per-point tuples of image points; raises CenterProjected if a
        world point sits at a camera center."""
        return [[cam.project(p) for cam in self.cameras] for p in self.points]

    def with_homography(self, h: Matrix) -> "Scene":
        """Apply x -> Hx to points and P -> P H^{-1} to cameras."""
        return apply_homography(h, self)


def joint_images_equal(s1: Scene, s2: Scene) -> bool:
    """Same camera count, same point count, and matching images pointwise.

    This is the verifier for conjugacy certificates: every point of s1 and
    the matching point of s2 produce proportional images in every view.
    """
    if s1.n_cameras != s2.n_cameras or s1.n_points != s2.n_points:
        return False
    for p, q in zip(s1.points, s2.points):
        for c1, c2 in zip(s1.cameras, s2.cameras):
            u = c1.project_or_none(p)
            v = c2.project_or_none(q)
            if u is None or v is None:
                if not (u is None and v is None):
                    return False
                continue
            if not proportional(u, v):
                return False
    return True


def joint_map(cameras: Sequence[Camera], x: Sequence) -> tuple:
    """Tuple of projections of x, one per camera."""
    out = []
    for k, cam in enumerate(cameras):
        u = cam.project_or_none(x)
        if u is None:
            raise CenterProjected("x is the center of camera %d" % k, index=k)
        out.append(u)
    return tuple(out)


def triangulate(cameras: Sequence[Camera],
                image_points: Sequence[Sequence]) -> tuple:
    """The unique world point projecting to the given image points.

    The solution set of the stacked constraints [u_i]_x P_i x = 0 is
    computed exactly.  Raises NoIntersection when empty, LineOfSolutions
    (carrying the line) when one-dimensional.
    """
    if len(cameras) != len(image_points) or len(cameras) < 2:
        raise ValueError("need one image point per camera, two cameras up")
    blocks = []
    for cam, u in zip(cameras, image_points):
        blocks.append(skew3(u) * cam.matrix)
    M = blocks[0]
    for b in blocks[1:]:
        M = M.stack(b)
    ns = M.nullspace()
    if len(ns) == 0:
        raise NoIntersection("image tuple is not realizable")
    if len(ns) == 1:
        return ns[0]
    if len(ns) == 2:
        raise LineOfSolutions(LineP3(ns[0], ns[1]))
    # rank < 2 cannot happen for rank-3 cameras with nonzero image points
    raise ValueError("degenerate triangulation system")


def bilinear_value(c1: Camera, c2: Camera, u1: Sequence, u2: Sequence):
    """det of the stacked 6x6 [[P1, u1, 0], [P2, 0, u2]]."""
    z = Fraction(0)
    rows = []
    for i in range(3):
        rows.append(tuple(c1.matrix.row(i)) + (u1[i], z))
    for i in range(3):
        rows.append(tuple(c2.matrix.row(i)) + (z, u2[i]))
    return Matrix(rows).det()


def trilinear_values(c1, c2, c3, u1, u2, u3) -> list:
    """All 36 maximal minors of the 9x7 stack [[P1,u1,0,0],...]."""
    z = Fraction(0)
    rows = []
    for cam, u, slot in ((c1, u1, 0), (c2, u2, 1), (c3, u3, 2)):
        for i in range(3):
            tail = [z, z, z]
            tail[slot] = u[i]
            rows.append(tuple(cam.matrix.row(i)) + tuple(tail))
    M = Matrix(rows)
    vals = []
    for drop in combinations(range(9), 2):
        keep = [i for i in range(9) if i not in drop]
        vals.append(M.submatrix(keep, range(7)).det())
    return vals


@dataclass(frozen=True)
class MembershipReport:
    """Outcome of the joint-image membership test; truthy iff on-variety."""

    ok: bool
    failing: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def multiview_membership(cameras: Sequence[Camera],
                         image_points: Sequence[Sequence]) -> MembershipReport:
    """Whether an image tuple lies in the closed joint image of the cameras.

    Checks every bilinear pair condition and every trilinear triple
    condition; together these cut out the closure for any camera count.
    """
    n = len(cameras)
    if n != len(image_points):
        raise ValueError("need one image point per camera")
    for k, u in enumerate(image_points):
        if is_zero_vec(u):
            return MembershipReport(False, "zero image point %d" % k)
    for i, j in combinations(range(n), 2):
        if not is_zero(bilinear_value(cameras[i], cameras[j],
                                      image_points[i], image_points[j])):
            return MembershipReport(False, "bilinear(%d,%d)" % (i, j))
    for i, j, k in combinations(range(n), 3):
        vals = trilinear_values(cameras[i], cameras[j], cameras[k],
                                image_points[i], image_points[j],
                                image_points[k])
        if any(not is_zero(v) for v in vals):
            return MembershipReport(False, "trilinear(%d,%d,%d)" % (i, j, k))
    return MembershipReport(True)


def apply_homography(h: Matrix, scene: Scene) -> Scene:
    """Act by x -> Hx on points and P -> P H^{-1} on cameras."""
    if is_zero(h.det()):
        raise SingularHomography("homography must be invertible")
    h_inv = h.adjugate()
    cams = tuple(c.with_homography(h_inv) for c in scene.cameras)
    pts = tuple(h.apply(p) for p in scene.points)
    return Scene(cams, pts)
