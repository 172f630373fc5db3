"""Fundamental matrices: construction, camera recovery, compatibility.

The pairing convention throughout: for cameras (P1, P2) the fundamental
matrix F satisfies x^T F y = det of the 6x6 stack [[P1, x, 0], [P2, 0, y]]
for image points x (view 1) and y (view 2).  Its left nullspace is the
epipole in view 1 (the image of P2's center) and its right nullspace the
epipole in view 2.  Entrywise,

    F[i][k] = (-1)^(i+k) det( P1 minus row i stacked on P2 minus row k ),

which agrees with the 6x6 definition by a two-column Laplace expansion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .camera import Camera
from .linalg import Matrix, dot, skew3
from .projective import proportional
from .scalars import is_zero, scalar_to_json


class CoincidentCenters(Exception):
    """Two cameras share a center; no fundamental matrix exists."""


class RankDeficient(Exception):
    """A fundamental matrix must have rank exactly 2."""


class EpipolesCollinear(Exception):
    """The quadruple identity needs non-collinear epipoles in every image."""


class Incompatible(Exception):
    """No camera set realizes the given fundamental matrices."""


@dataclass(frozen=True)
class FundamentalMatrix:
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (3, 3):
            raise ValueError("fundamental matrix must be 3x3")
        if self.matrix.rank() != 2:
            raise RankDeficient("rank must be exactly 2, got %d"
                                % self.matrix.rank())

    @property
    def left_epipole(self) -> tuple:
        """Epipole in the first image (kernel of the transpose)."""
        return self.matrix.T.nullspace()[0]

    @property
    def right_epipole(self) -> tuple:
        """Epipole in the second image (right kernel)."""
        return self.matrix.nullspace()[0]

    @property
    def T(self) -> "FundamentalMatrix":
        return FundamentalMatrix(self.matrix.T)

    def pair_value(self, x: Sequence, y: Sequence):
        return dot(x, self.matrix.apply(y))

    def __eq__(self, other):
        if not isinstance(other, FundamentalMatrix):
            return NotImplemented
        return proportional(_flat(self.matrix), _flat(other.matrix))

    def __hash__(self):
        from .projective import normalize_proj
        return hash(normalize_proj(_flat(self.matrix)))


def _flat(m: Matrix) -> tuple:
    return tuple(x for r in m.rows for x in r)


def fundamental_from_pair(c1: Camera, c2: Camera) -> FundamentalMatrix:
    """F of a camera pair via the signed 4x4 minor formula."""
    rows = []
    for i in range(3):
        keep1 = [c1.matrix.row(a) for a in range(3) if a != i]
        row = []
        for k in range(3):
            keep2 = [c2.matrix.row(b) for b in range(3) if b != k]
            d = Matrix(keep1 + keep2).det()
            row.append(d if (i + k) % 2 == 0 else -d)
        rows.append(row)
    m = Matrix(rows)
    if m.is_zero_matrix():
        raise CoincidentCenters("cameras share a center")
    return FundamentalMatrix(m)


def canonical_pair_from_F(f) -> tuple[Camera, Camera]:
    """A camera pair whose fundamental matrix is f (gauge-fixed).

    First camera [I | 0]; second [[e]_x F^T | e] with e the right epipole.
    """
    f = _as_fundamental(f)
    e = f.right_epipole
    A = skew3(e) * f.matrix.T
    rows = [tuple(A.row(i)) + (e[i],) for i in range(3)]
    return (Camera.of([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]),
            Camera.of(rows))


def _as_fundamental(f) -> FundamentalMatrix:
    if isinstance(f, FundamentalMatrix):
        return f
    return FundamentalMatrix(f if isinstance(f, Matrix) else Matrix(f))


def triple_compatible_noncollinear(f12, f13, f23) -> bool:
    """Whether the three F's come from a non-collinear camera triple.

    Requires the two epipoles in each image to differ and the three
    transfer scalars to vanish exactly.
    """
    f12, f13, f23 = (_as_fundamental(f) for f in (f12, f13, f23))
    e12, e21 = f12.left_epipole, f12.right_epipole
    e13, e31 = f13.left_epipole, f13.right_epipole
    e23, e32 = f23.left_epipole, f23.right_epipole
    if proportional(e12, e13) or proportional(e21, e23) \
            or proportional(e31, e32):
        return False
    return (is_zero(f12.pair_value(e13, e23))
            and is_zero(f13.pair_value(e12, e32))
            and is_zero(f23.pair_value(e21, e31)))


def triple_compatible_collinear(f12, f13, f23) -> bool:
    """Whether the three F's come from a collinear camera triple.

    Requires the epipoles to coincide per image and the matrix transfer
    identity (F12)^T [e]_x F13 = F23 to hold projectively.
    """
    f12, f13, f23 = (_as_fundamental(f) for f in (f12, f13, f23))
    e12, e21 = f12.left_epipole, f12.right_epipole
    e13, e31 = f13.left_epipole, f13.right_epipole
    e23, e32 = f23.left_epipole, f23.right_epipole
    if not (proportional(e12, e13) and proportional(e21, e23)
            and proportional(e31, e32)):
        return False
    lhs = f12.matrix.T * skew3(e12) * f13.matrix
    return proportional(_flat(lhs), _flat(f23.matrix))


def _triple_ok(f12, f13, f23) -> bool:
    return (triple_compatible_noncollinear(f12, f13, f23)
            or triple_compatible_collinear(f12, f13, f23))


@dataclass(frozen=True)
class FundamentalSet:
    """A complete set of fundamental matrices over labels 0..n-1.

    Stored per unordered pair (i, j) with i < j, in the row-image-i,
    column-image-j pairing convention.
    """

    n: int
    pairs: dict

    def __post_init__(self):
        want = {(i, j) for i, j in combinations(range(self.n), 2)}
        have = set(self.pairs)
        if want != have:
            raise ValueError("need exactly one F per unordered pair")
        object.__setattr__(
            self, "pairs",
            {k: _as_fundamental(v) for k, v in self.pairs.items()})

    @staticmethod
    def from_cameras(cams: Sequence[Camera]) -> "FundamentalSet":
        pairs = {}
        for i, j in combinations(range(len(cams)), 2):
            pairs[(i, j)] = fundamental_from_pair(cams[i], cams[j])
        return FundamentalSet(len(cams), pairs)

    def F(self, i: int, j: int) -> Matrix:
        """The matrix pairing image i against image j (transposed as needed)."""
        if i < j:
            return self.pairs[(i, j)].matrix
        return self.pairs[(j, i)].matrix.T

    def epipole(self, i: int, j: int) -> tuple:
        """e_i^j: the epipole in image i induced by camera j."""
        if i < j:
            return self.pairs[(i, j)].left_epipole
        return self.pairs[(j, i)].right_epipole

    def _triple(self, i, j, k):
        return (FundamentalMatrix(self.F(i, j)),
                FundamentalMatrix(self.F(i, k)),
                FundamentalMatrix(self.F(j, k)))


def sextuple_compatible(fs: FundamentalSet,
                        quad: Optional[Sequence[int]] = None) -> bool:
    """The 12-factor product identity over four labels.

    Both sides use one fixed representative per epipole and per F, so each
    side rescales identically and exact equality is well defined.  Raises
    EpipolesCollinear when any image has its three epipoles on a line
    (the identity's precondition fails there).
    """
    idx = tuple(quad) if quad is not None else tuple(range(4))
    if len(idx) != 4:
        raise ValueError("sextuple check needs exactly four labels")
    a, b, c, d = idx
    for i in idx:
        others = [j for j in idx if j != i]
        E = Matrix([fs.epipole(i, j) for j in others])
        if E.rank() < 3:
            raise EpipolesCollinear("epipoles collinear in image %d" % i)

    def term(i, j, s, t):
        # (e_i^s)^T F^{ij} e_j^t
        return dot(fs.epipole(i, s), fs.F(i, j).apply(fs.epipole(j, t)))

    lhs = (term(a, b, d, c) * term(a, c, b, d) * term(a, d, c, b)
           * term(b, c, d, a) * term(b, d, a, c) * term(c, d, b, a))
    rhs = (term(a, b, c, d) * term(a, c, d, b) * term(a, d, b, c)
           * term(b, c, a, d) * term(b, d, c, a) * term(c, d, a, b))
    return is_zero(lhs - rhs)


@dataclass(frozen=True)
class NSetReport:
    """Compatibility verdict for a complete fundamental-matrix set.

    status is one of 'compatible', 'incompatible', 'undetermined';
    offending names the first failing label tuple; residuals maps checked
    identities to their exact values (all zero on success).
    """

    status: str
    offending: Optional[tuple] = None
    residuals: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.status == "compatible"


def _epipoles_all_coincide(fs: FundamentalSet) -> bool:
    for i in range(fs.n):
        others = [j for j in range(fs.n) if j != i]
        base = fs.epipole(i, others[0])
        if any(not proportional(base, fs.epipole(i, j)) for j in others[1:]):
            return False
    return True


def nset_compatible(fs: FundamentalSet) -> NSetReport:
    """Full n-set compatibility: triples, then quadruple identities.

    When all epipoles coincide per image the collinear shortcut applies
    and triple-wise checks suffice.  A quadruple whose epipoles are
    collinear-but-not-coincident in some image falls outside the printed
    criteria; the verdict is then 'undetermined' for that quadruple.
    """
    residuals = {}
    if fs.n < 2:
        raise ValueError("need at least two labels")
    if fs.n == 2:
        return NSetReport("compatible", residuals=residuals)
    collinear_world = _epipoles_all_coincide(fs)
    for i, j, k in combinations(range(fs.n), 3):
        trip = fs._triple(i, j, k)
        if collinear_world:
            ok = triple_compatible_collinear(*trip)
        else:
            ok = _triple_ok(*trip)
        residuals["triple(%d,%d,%d)" % (i, j, k)] = "pass" if ok else "fail"
        if not ok:
            return NSetReport("incompatible", (i, j, k), residuals)
    if collinear_world or fs.n == 3:
        return NSetReport("compatible", residuals=residuals)
    undetermined = None
    for quad in combinations(range(fs.n), 4):
        if _quad_epipoles_coincide(fs, quad):
            # a collinear sub-quadruple: triple-wise checks already passed
            residuals["sextuple%s" % (quad,)] = "collinear shortcut"
            continue
        try:
            ok = sextuple_compatible(fs, quad)
        except EpipolesCollinear:
            residuals["sextuple%s" % (quad,)] = "epipoles collinear"
            undetermined = undetermined or quad
            continue
        residuals["sextuple%s" % (quad,)] = "pass" if ok else "fail"
        if not ok:
            return NSetReport("incompatible", quad, residuals)
    if undetermined is not None:
        return NSetReport("undetermined", undetermined, residuals)
    return NSetReport("compatible", residuals=residuals)


def _quad_epipoles_coincide(fs: FundamentalSet, quad) -> bool:
    for i in quad:
        others = [j for j in quad if j != i]
        base = fs.epipole(i, others[0])
        if any(not proportional(base, fs.epipole(i, j)) for j in others[1:]):
            return False
    return True


def cameras_from_compatible(fs: FundamentalSet) -> list[Camera]:
    """Cameras realizing a compatible fundamental set, gauge-fixed.

    Camera 0 is [I | 0]; camera 1 comes from the canonical pair of F^{01};
    each further camera k is solved linearly: within the 4-parameter
    family compatible with F^{0k}, impose proportionality of the derived
    F against every already placed camera.  Every pair is verified at the
    end; Incompatible is raised if anything fails.
    """
    n = fs.n
    if n < 2:
        raise ValueError("need at least two labels")
    q0, q1 = canonical_pair_from_F(FundamentalMatrix(fs.F(0, 1)))
    cams = [q0, q1]
    for k in range(2, n):
        cams.append(_solve_camera(fs, cams, k))
    for i, j in combinations(range(n), 2):
        got = fundamental_from_pair(cams[i], cams[j]).matrix
        if not proportional(_flat(got), _flat(fs.F(i, j))):
            raise Incompatible("pair (%d,%d) not reproduced" % (i, j))
    return cams


def _family_camera(fs: FundamentalSet, k: int, u: Sequence) -> Matrix:
    """Member of the F^{0k}-compatible family at parameters u = (v, lam)."""
    f0k = fs.F(0, k)
    e = f0k.nullspace()[0]
    A = skew3(e) * f0k.T
    v, lam = u[:3], u[3]
    rows = [tuple(A[i, j] + e[i] * v[j] for j in range(3)) + (lam * e[i],)
            for i in range(3)]
    return Matrix(rows)


def _solve_camera(fs: FundamentalSet, placed: list[Camera], k: int) -> Camera:
    """Solve for camera k against all placed cameras (linear, exact).

    The derived F against each placed camera is affine in u = (v, lam), so
    proportionality to the target F^{jk} with per-pair scale t_j is one
    joint linear system in (u, t_0, ..).
    """
    zero4 = (Fraction(0),) * 4
    base = _family_camera(fs, k, zero4)
    rows_out, rhs = [], []
    for j in range(len(placed)):
        b = _derived_vec(placed[j], base)
        cols = []
        for m in range(4):
            uv = [Fraction(0)] * 4
            uv[m] = Fraction(1)
            cols.append([x - y for x, y in
                         zip(_derived_vec(placed[j], _family_camera(fs, k, uv)), b)])
        g = _flat(fs.F(j, k))
        for r in range(9):
            row = [cols[m][r] for m in range(4)]
            row += [Fraction(0)] * len(placed)
            row[4 + j] = -g[r]
            rows_out.append(row)
            rhs.append(-b[r])
    M = Matrix(rows_out)
    sol = M.solve(rhs)
    if sol is None:
        raise Incompatible("no camera matches F^{jk} for k=%d" % k)
    for cand in _affine_candidates(sol, M.nullspace()):
        u = cand[:4]
        if is_zero(u[3]):
            continue
        m = _family_camera(fs, k, u)
        if m.rank() != 3:
            continue
        cam = Camera(m)
        if all(_pair_matches(placed[j], cam, fs.F(j, k))
               for j in range(len(placed))):
            return cam
    raise Incompatible("camera family for k=%d degenerates" % k)


def _pair_matches(c1: Camera, c2: Camera, target: Matrix) -> bool:
    got = _derived_vec(c1, c2.matrix)
    if all(is_zero(x) for x in got):
        return False
    return proportional(got, _flat(target))


def _affine_candidates(sol, null_basis, coeff_range=(0, 1, -1, 2, 3)):
    """Particular solution plus small integer combinations of the kernel."""
    dim = len(null_basis)
    if dim == 0:
        yield sol
        return
    if dim > 6:
        null_basis = null_basis[:6]
        dim = 6
    idx = [0] * dim
    while True:
        cand = list(sol)
        for m in range(dim):
            c = coeff_range[idx[m]]
            if c:
                cand = [a + c * b for a, b in zip(cand, null_basis[m])]
        yield tuple(cand)
        m = 0
        while m < dim:
            idx[m] += 1
            if idx[m] < len(coeff_range):
                break
            idx[m] = 0
            m += 1
        if m == dim:
            return


def _derived_vec(c1: Camera, m2: Matrix) -> list:
    """vec of the derived F of (c1, m2), tolerating degenerate m2."""
    rows = []
    for i in range(3):
        keep1 = [c1.matrix.row(a) for a in range(3) if a != i]
        row = []
        for kk in range(3):
            keep2 = [m2.row(b) for b in range(3) if b != kk]
            d = Matrix(keep1 + keep2).det()
            row.append(d if (i + kk) % 2 == 0 else -d)
        rows.append(row)
    return list(_flat(Matrix(rows)))


def fundamental_to_json(f: FundamentalMatrix) -> list:
    return [[scalar_to_json(x) for x in r] for r in f.matrix.rows]
