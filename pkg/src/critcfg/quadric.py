"""Pullback quadrics, their exact real classification, permissible lines,
and the enumeration of conjugate fundamental matrices along matrix lines.

A quadric through both camera centers corresponds to a line in the space
of 3x3 matrices through the pair's own fundamental matrix; the conjugates
are the real rank-2 points on that line.  The determinant along the line
is a homogeneous cubic whose root pattern decides everything: finitely
many intersections split into the smooth-ruled / cone / non-ruled / plane
cases, while an identically zero determinant sends us to the epipole
analysis of the all-rank-2 lines.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .camera import Camera
from .fundamental import FundamentalMatrix, fundamental_from_pair
from .linalg import Matrix, dot
from .projective import LineP3, is_zero_vec, proportional
from .roots import Poly, gcd_many, quadratic_roots
from .scalars import is_zero, sign


class NoLine(Exception):
    """The quadric is not a pullback for this camera pair."""


class NotPermissible(Exception):
    """The line pair fails one of the four permissibility conditions."""


class BothCentersSingular(Exception):
    """Both centers sit in the singular locus; the F choice is not unique."""


class PointNotOnQuadric(Exception):
    pass


class ContainsEpipolarLine(Exception):
    """Curve-type transform hypothesis fails (an epipolar line is inside)."""


class ContainsExcludedLine(Exception):
    pass


# -- symmetric form helpers --------------------------------------------------

SYM_INDEX = ((0, 0), (0, 1), (0, 2), (0, 3), (1, 1),
             (1, 2), (1, 3), (2, 2), (2, 3), (3, 3))


def sym_to_vec(m: Matrix) -> tuple:
    return tuple(m[i, j] for i, j in SYM_INDEX)


def vec_to_sym(v: Sequence) -> Matrix:
    rows = [[None] * 4 for _ in range(4)]
    for (i, j), x in zip(SYM_INDEX, v):
        rows[i][j] = x
        rows[j][i] = x
    return Matrix(rows)


def quadric_value(q: Matrix, x: Sequence):
    return dot(x, q.apply(x))


def quadric_contains(q: Matrix, x: Sequence) -> bool:
    return is_zero(quadric_value(q, x))


def polar_value(q: Matrix, x: Sequence, y: Sequence):
    """The symmetric bilinear form x^T q y."""
    return dot(x, q.apply(y))


def line_on_quadric(q: Matrix, line: LineP3) -> bool:
    a, b = line.a, line.b
    return (is_zero(quadric_value(q, a)) and is_zero(quadric_value(q, b))
            and is_zero(polar_value(q, a, b)))


def quadrics_through(points: Sequence[Sequence]) -> list[Matrix]:
    """Basis of the space of symmetric forms vanishing at all given points."""
    if not points:
        return [vec_to_sym(tuple(Fraction(k == m) for k in range(10)))
                for m in range(10)]
    rows = []
    for p in points:
        row = []
        for i, j in SYM_INDEX:
            row.append(p[i] * p[j] if i == j else 2 * p[i] * p[j])
        rows.append(row)
    return [vec_to_sym(v) for v in Matrix(rows).nullspace()]


# -- classification -----------------------------------------------------------

@dataclass(frozen=True)
class QuadricClass:
    """Exact real type of a symmetric 4x4 form (up to overall sign)."""

    label: str                       # SmoothRuled | SmoothNonRuled | Cone |
    #                                  TwoRealPlanes | TwoConjugateComplexPlanes
    #                                  | DoublePlane
    rank: int
    signature: tuple[int, int]       # (larger count, smaller count)
    singular: tuple                  # nullspace basis of the form

    @property
    def is_ruled(self) -> bool:
        """Whether the real locus carries a line through a generic point."""
        if self.label == "SmoothNonRuled":
            return False
        if self.label == "Cone" and self.signature == (3, 0):
            return False             # a single real point
        return True


def congruent_diagonal(q: Matrix) -> tuple[list, Matrix]:
    """(diagonal entries d, transform T) with T^t q T = diag(d), T invertible."""
    n = q.nrows
    A = [list(r) for r in q.rows]
    T = [[Fraction(i == j) for j in range(n)] for i in range(n)]

    def col_op(dst, src, f):
        # col_dst += f * col_src, mirrored on rows of A, tracked in T
        for r in range(n):
            A[r][dst] = A[r][dst] + f * A[r][src]
        for r in range(n):
            A[dst][r] = A[dst][r] + f * A[src][r]
        for r in range(n):
            T[r][dst] = T[r][dst] + f * T[r][src]

    def col_swap(i, j):
        for r in range(n):
            A[r][i], A[r][j] = A[r][j], A[r][i]
        A[i], A[j] = A[j], A[i]
        for r in range(n):
            T[r][i], T[r][j] = T[r][j], T[r][i]

    for k in range(n):
        if is_zero(A[k][k]):
            pivot = next((j for j in range(k + 1, n)
                          if not is_zero(A[j][j])), None)
            if pivot is not None:
                col_swap(k, pivot)
            else:
                found = None
                for i in range(k, n):
                    for j in range(i + 1, n):
                        if not is_zero(A[i][j]):
                            found = (i, j)
                            break
                    if found:
                        break
                if not found:
                    break                 # all remaining entries zero
                i, j = found
                col_op(i, j, Fraction(1))  # puts 2*A[i][j] on the diagonal
                if i != k:
                    col_swap(k, i)
        piv = A[k][k]
        for i in range(k + 1, n):
            if not is_zero(A[i][k]):
                col_op(i, k, -A[i][k] / piv)
    return [A[i][i] for i in range(n)], Matrix(T)


def classify_quadric(q: Matrix) -> QuadricClass:
    """Exact label from rank and real signature (congruence-invariant)."""
    if q.shape != (4, 4) or not q.is_symmetric():
        raise ValueError("need a symmetric 4x4 form")
    if q.is_zero_matrix():
        raise ValueError("zero form is not a quadric")
    diag, _ = congruent_diagonal(q)
    pos = sum(1 for d in diag if sign(d) > 0)
    neg = sum(1 for d in diag if sign(d) < 0)
    if neg > pos:
        pos, neg = neg, pos
    rank = pos + neg
    singular = tuple(q.nullspace())
    if rank == 4:
        label = "SmoothRuled" if (pos, neg) == (2, 2) else "SmoothNonRuled"
    elif rank == 3:
        label = "Cone"
    elif rank == 2:
        label = "TwoRealPlanes" if (pos, neg) == (1, 1) \
            else "TwoConjugateComplexPlanes"
    else:
        label = "DoublePlane"
    return QuadricClass(label, rank, (pos, neg), singular)


def real_planes(q: Matrix):
    """The two real plane factors of a rank-2 indefinite form, or the
    single plane (doubled) of a rank-1 form; None when the planes are a
    complex pair.  Plane coefficients may live in Q(sqrt d)."""
    cls = classify_quadric(q)
    if cls.label == "DoublePlane":
        # q = +- h h^T: h spans the row space
        h = next(r for r in q.rref()[0].rows if not is_zero_vec(r))
        return (tuple(h), tuple(h))
    if cls.label != "TwoRealPlanes":
        return None
    diag, T = congruent_diagonal(q)
    live = [k for k, d in enumerate(diag) if not is_zero(d)]
    a, b = live
    da, db = diag[a], diag[b]
    # form is da ya^2 + db yb^2 with da*db < 0: split needs sqrt(-db/da)
    from .scalars import sqrt_scalar
    r = sqrt_scalar(-db / da)
    # planes (in y): ya - r yb = 0 and ya + r yb = 0; back to x via y = T^{-1} x
    Tinv = T.adjugate()
    h1 = tuple(Tinv[a, j] - r * Tinv[b, j] for j in range(4))
    h2 = tuple(Tinv[a, j] + r * Tinv[b, j] for j in range(4))
    return (h1, h2)


# -- pullback -----------------------------------------------------------------

@dataclass(frozen=True)
class PullbackQuadric:
    raw: Matrix
    sym: Matrix

    def value(self, x):
        return quadric_value(self.sym, x)

    def contains(self, x) -> bool:
        return is_zero(self.value(x))


def pullback_quadric(c1: Camera, c2: Camera, f) -> PullbackQuadric:
    fm = f.matrix if isinstance(f, FundamentalMatrix) else Matrix(f)
    raw = c1.matrix.T * fm * c2.matrix
    return PullbackQuadric(raw, raw + raw.T)


def epipolar_lines(c1: Camera, c2: Camera,
                   f: FundamentalMatrix) -> tuple[LineP3, LineP3]:
    """Back-projections of f's epipoles: the line pair lying on the pullback."""
    g1 = c1.back_project(f.left_epipole)
    g2 = c2.back_project(f.right_epipole)
    return g1, g2


# -- permissible pairs --------------------------------------------------------

def _singular_points_on_line(q: Matrix, line: LineP3):
    """Points of the singular locus on the line: [] / [pt] / 'all'."""
    sa, sb = q.apply(line.a), q.apply(line.b)
    M = Matrix.from_cols([sa, sb])
    r = M.rank()
    if r == 0:
        return "all"
    if r == 2:
        return []
    ker = M.nullspace()[0]
    pt = tuple(ker[0] * x + ker[1] * y for x, y in zip(line.a, line.b))
    return [pt]


def is_permissible_pair(q, p1, p2, g1: LineP3, g2: LineP3) -> bool:
    """The four line-pair conditions for a quadric with two marked points."""
    qs = q.sym if isinstance(q, PullbackQuadric) else q
    # 1. each line on the quadric, through its point
    if not (line_on_quadric(qs, g1) and line_on_quadric(qs, g2)):
        return False
    if not (g1.contains(p1) and g2.contains(p2)):
        return False
    # 2. common points of the two lines are singular on the quadric
    if g1 == g2:
        if not (is_zero_vec(qs.apply(g1.a)) and is_zero_vec(qs.apply(g1.b))):
            return False
    elif g1.meets(g2):
        from .projective import line_line_meet
        z = line_line_meet(g1, g2)
        if z is not None and not is_zero_vec(qs.apply(z)):
            return False
    # 3. singular points on one line lie on the other
    s1 = _singular_points_on_line(qs, g1)
    s2 = _singular_points_on_line(qs, g2)
    if s1 == "all" or s2 == "all":
        if s1 != s2 or g1 != g2:
            # a fully singular line must be shared by both
            if not (s1 == "all" and s2 == "all" and g1 == g2):
                return False
    else:
        for pt in s1:
            if not g2.contains(pt):
                return False
        for pt in s2:
            if not g1.contains(pt):
                return False
    # 4. on a two-plane quadric the lines share a plane
    cls = classify_quadric(qs)
    if cls.label == "TwoRealPlanes":
        planes = real_planes(qs)
        same = False
        for h in planes:
            if g1.in_plane(h) and g2.in_plane(h):
                same = True
        if not same:
            return False
    return True


# -- conjugate enumeration along the matrix line ------------------------------

@dataclass(frozen=True)
class MatrixLine:
    """The line {s*base + t*direction} in the space of 3x3 matrices."""

    base: Matrix
    direction: Matrix

    def __post_init__(self):
        v1 = tuple(x for r in self.base.rows for x in r)
        v2 = tuple(x for r in self.direction.rows for x in r)
        if Matrix([v1, v2]).rank() != 2:
            raise ValueError("base and direction must be independent")

    def at(self, u) -> Matrix:
        """base + u * direction."""
        return self.base + self.direction.scale(u)


@dataclass(frozen=True)
class ConjugateFamily:
    """One-parameter family of conjugate fundamental matrices.

    Members are base + t*direction for parameters t avoiding the listed
    rank-deficient exceptions (the pair's own F is the point at infinity
    of the parametrization and is excluded automatically).
    """

    line: MatrixLine
    excluded: tuple             # exact parameter values of rank < 2 members
    table_row: str

    def member(self, t) -> FundamentalMatrix:
        m = self.line.at(t)
        return FundamentalMatrix(m)

    def sample(self, count: int = 1) -> list[FundamentalMatrix]:
        out = []
        t = Fraction(0)
        while len(out) < count:
            if not any(is_zero(t - e) for e in self.excluded if e is not None):
                try:
                    out.append(self.member(t))
                except Exception:
                    pass
            t += 1
        return out


@dataclass(frozen=True)
class ConjugateEnumeration:
    """Outcome of the rank-2 search along the quadric's matrix line."""

    kind: str                    # 'finite' | 'family' | 'empty'
    table_row: str
    line: MatrixLine
    items: tuple = ()            # FundamentalMatrix entries (finite case)
    family: Optional[ConjugateFamily] = None

    @property
    def count(self) -> str:
        if self.kind == "finite":
            return str(len(self.items))
        return "inf" if self.kind == "family" else "0"


def _matrix_line_for(c1: Camera, c2: Camera, q: Matrix) -> MatrixLine:
    """Solve sym(P1^T F P2) proportional to q for F; 2-dim space expected."""
    pivot = next(((i, j) for i, j in SYM_INDEX if not is_zero(q[i, j])), None)
    if pivot is None:
        raise NoLine("zero quadric")
    rows = []
    basis = []
    for m in range(9):
        e = [Fraction(0)] * 9
        e[m] = Fraction(1)
        Fm = Matrix([e[0:3], e[3:6], e[6:9]])
        raw = c1.matrix.T * Fm * c2.matrix
        basis.append(raw + raw.T)
    pi, pj = pivot
    for i, j in SYM_INDEX:
        if (i, j) == pivot:
            continue
        # B[i,j]*q[pivot] - q[i,j]*B[pivot] = 0, linear in F
        rows.append([basis[m][i, j] * q[pi, pj] - q[i, j] * basis[m][pi, pj]
                     for m in range(9)])
    W = Matrix(rows).nullspace()
    if len(W) != 2:
        raise NoLine("quadric is not a pullback for this pair "
                     "(solution dim %d)" % len(W))
    fp = fundamental_from_pair(c1, c2).matrix
    fp_vec = tuple(x for r in fp.rows for x in r)
    # pick a basis member independent of F_P as the base point
    for w in W:
        if Matrix([fp_vec, w]).rank() == 2:
            f0 = Matrix([w[0:3], w[3:6], w[6:9]])
            break
    else:
        raise NoLine("solution space collapsed onto the pair's F")
    # sanity: the base must pull back to a nonzero multiple of q
    raw = c1.matrix.T * f0 * c2.matrix
    if (raw + raw.T).is_zero_matrix():
        # swap: the chosen member was in the kernel direction
        w = W[0] if w is W[1] else W[1]
        f0 = Matrix([w[0:3], w[3:6], w[6:9]])
    return MatrixLine(f0, fp)


def conjugate_fundamentals(c1: Camera, c2: Camera, q) -> ConjugateEnumeration:
    """All conjugate fundamental matrices whose pullback is the given quadric.

    The determinant along the matrix line is a homogeneous cubic with a
    guaranteed root at the pair's own F; its remaining root structure (or
    identical vanishing) selects the outcome.
    """
    qs = q.sym if isinstance(q, PullbackQuadric) else q
    if not (quadric_contains(qs, c1.center) and quadric_contains(qs, c2.center)):
        raise NoLine("quadric must pass through both camera centers")
    line = _matrix_line_for(c1, c2, qs)
    f0, fp = line.base, line.direction
    # det(f0 + u*fp) as an exact cubic in u; leading (u^3) coeff is det fp = 0
    ent = [[Poly([f0[i, j], fp[i, j]]) for j in range(3)] for i in range(3)]
    chi = Matrix(ent).det_ring()
    coeffs = list(chi.coeffs) + [Fraction(0)] * (4 - len(chi.coeffs))
    if chi.is_zero():
        return _table3_enumeration(line)
    assert is_zero(coeffs[3]), "det along the line must kill the pair's F"
    m = 3 - chi.degree          # multiplicity of the root at the pair's F
    residual = Poly(coeffs[:chi.degree + 1])
    if m == 3:
        # triple root at F_P: cone with the baseline on it; nothing viable
        return ConjugateEnumeration("empty", "cone_baseline_on_cone", line)
    if m == 2:
        u0 = -residual.coeffs[0] / residual.coeffs[1]
        cand = line.at(u0)
        if Matrix(cand.rows).rank() == 2:
            return ConjugateEnumeration(
                "finite", "smooth_ruled_centers_on_line", line,
                (FundamentalMatrix(cand),))
        raise NoLine("unexpected rank at the simple root")
    # m == 1: residual quadratic
    roots, cpx = quadratic_roots(residual)
    if cpx:
        return ConjugateEnumeration("empty", "smooth_non_ruled", line)
    ranks = [(u, Matrix(line.at(u).rows).rank(), mult) for u, mult in roots]
    if len(ranks) == 1:
        u0, r0, mult = ranks[0]
        if r0 == 2:
            return ConjugateEnumeration(
                "finite", "cone_generic", line,
                (FundamentalMatrix(line.at(u0)),))
        raise NoLine("double rank-1 root off the identically-zero branch")
    if all(r == 2 for _, r, _ in ranks):
        items = tuple(FundamentalMatrix(line.at(u)) for u, _, _ in ranks)
        return ConjugateEnumeration("finite", "smooth_ruled_generic",
                                    line, items)
    if all(r == 1 for _, r, _ in ranks):
        return ConjugateEnumeration("empty", "two_planes_different_planes",
                                    line)
    raise NoLine("mixed rank pattern along the line; inconsistent input")


def _poly_vec_primitive(polys: list[Poly]) -> tuple[list[Poly], Poly]:
    g = gcd_many([p for p in polys if not p.is_zero()])
    if g.is_zero() or g.degree == 0:
        return polys, Poly([1])
    return [p.divmod(g)[0] for p in polys], g


def _table3_enumeration(line: MatrixLine) -> ConjugateEnumeration:
    """Epipole analysis when every member of the line has rank <= 2."""
    f0, fp = line.base, line.direction
    ent = [[Poly([f0[i, j], fp[i, j]]) for j in range(3)] for i in range(3)]
    M = Matrix(ent)
    adj = M.adjugate()           # entries are degree <= 2 polynomials
    adj_entries = [adj[i, j] for i in range(3) for j in range(3)]
    if all(p.is_zero() for p in adj_entries):
        raise NoLine("whole line has rank <= 1; degenerate input")
    # right epipole: a nonzero column of the adjugate, made primitive
    cols = [[adj[i, j] for i in range(3)] for j in range(3)]
    rcol = next(c for c in cols if any(not p.is_zero() for p in c))
    rprim, _ = _poly_vec_primitive(rcol)
    rows = [[adj[i, j] for j in range(3)] for i in range(3)]
    lrow = next(r for r in rows if any(not p.is_zero() for p in r))
    lprim, _ = _poly_vec_primitive(lrow)
    rdeg = max(p.degree for p in rprim)
    ldeg = max(p.degree for p in lprim)
    lo, hi = sorted((rdeg, ldeg))
    # rank-1 members: common vanishing of all adjugate entries
    g = gcd_many([p for p in adj_entries if not p.is_zero()])
    excluded = []
    double_rank1 = False
    if g.degree == 2:
        rts, cpx = quadratic_roots(g)
        if not cpx:
            excluded = [u for u, _ in rts]
            double_rank1 = (len(rts) == 1)
    elif g.degree == 1:
        excluded = [-g.coeffs[0] / g.coeffs[1]]
    if (lo, hi) == (0, 0):
        row = "double_plane" if double_rank1 \
            else "two_planes_both_centers_on_singular_line"
    elif (lo, hi) == (0, 1):
        row = "two_planes_one_center_on_singular_line"
    elif (lo, hi) == (0, 2):
        row = "cone_center_at_vertex"
    else:
        row = "two_planes_same_plane"
    fam = ConjugateFamily(line, tuple(excluded), row)
    return ConjugateEnumeration("family", row, line, family=fam)


# -- two-view labels ----------------------------------------------------------

@dataclass(frozen=True)
class TwoViewLabel:
    row: str
    critical: bool
    conjugate_count: str         # '2' | '1' | 'inf' | '0'
    quadric_class: QuadricClass
    trivial_flag: bool = False


_CRITICAL_ROWS = {
    "smooth_ruled_generic": "2",
    "smooth_ruled_centers_on_line": "1",
    "cone_generic": "1",
    "cone_center_at_vertex": "inf",
    "two_planes_same_plane": "inf",
    "two_planes_one_center_on_singular_line": "inf",
    "two_planes_both_centers_on_singular_line": "inf",
    "double_plane": "inf",
}


def two_view_label(q, p1, p2) -> TwoViewLabel:
    """The exact taxonomy row for a quadric with two marked center points."""
    qs = q.sym if isinstance(q, PullbackQuadric) else q
    if not quadric_contains(qs, p1):
        raise PointNotOnQuadric("first center not on the quadric")
    if not quadric_contains(qs, p2):
        raise PointNotOnQuadric("second center not on the quadric")
    if proportional(p1, p2):
        raise ValueError("centers must be distinct")
    cls = classify_quadric(qs)
    baseline_on = is_zero(polar_value(qs, p1, p2))

    if cls.label == "SmoothRuled":
        row = "smooth_ruled_centers_on_line" if baseline_on \
            else "smooth_ruled_generic"
    elif cls.label == "SmoothNonRuled":
        row = "smooth_non_ruled"
    elif cls.label == "Cone":
        vertex = cls.singular[0]
        if proportional(p1, vertex) or proportional(p2, vertex):
            row = "cone_center_at_vertex"
        elif baseline_on:
            row = "cone_baseline_on_cone"
        else:
            row = "cone_generic"
    elif cls.label in ("TwoRealPlanes", "TwoConjugateComplexPlanes"):
        s1 = is_zero_vec(qs.apply(p1))
        s2 = is_zero_vec(qs.apply(p2))
        if s1 and s2:
            row = "two_planes_both_centers_on_singular_line"
        elif s1 or s2:
            row = "two_planes_one_center_on_singular_line"
        else:
            planes = real_planes(qs)
            same = any(is_zero(dot(h, p1)) and is_zero(dot(h, p2))
                       for h in planes)
            row = "two_planes_same_plane" if same \
                else "two_planes_different_planes"
    else:
        row = "double_plane"

    critical = row in _CRITICAL_ROWS
    count = _CRITICAL_ROWS.get(row, "0")
    trivial = (row == "two_planes_both_centers_on_singular_line"
               and cls.label == "TwoConjugateComplexPlanes")
    return TwoViewLabel(row, critical, count, cls, trivial)


# -- unique F from a permissible pair ----------------------------------------

def fundamental_from_permissible(c1: Camera, c2: Camera, q,
                                 g1: LineP3, g2: LineP3) -> FundamentalMatrix:
    """The unique F pulling back to q with the given epipolar lines."""
    qs = q.sym if isinstance(q, PullbackQuadric) else q
    p1, p2 = c1.center, c2.center
    if is_zero_vec(qs.apply(p1)) and is_zero_vec(qs.apply(p2)):
        raise BothCentersSingular("uniqueness fails with both centers singular")
    if not is_permissible_pair(qs, p1, p2, g1, g2):
        raise NotPermissible("line pair fails the permissibility conditions")
    # image points of the lines (each line projects to one point)
    e1 = _line_image(c1, g1)
    e2 = _line_image(c2, g2)
    line = _matrix_line_for(c1, c2, qs)
    # members of the line satisfying the epipole conditions
    f0, fp = line.base, line.direction

    def conds(m: Matrix) -> list:
        out = list(m.T.apply(e1))      # e1^T m = 0
        out += list(m.apply(e2))       # m e2 = 0
        return out

    a_f0, a_fp = conds(f0), conds(fp)
    rows = [[x, y] for x, y in zip(a_f0, a_fp)]
    ker = Matrix(rows).nullspace()
    cands = []
    if len(ker) == 2:
        # every member works: epipole conditions degenerate; fall back to
        # rank-2 members of the line with matching epipolar lines
        enum = conjugate_fundamentals(c1, c2, qs)
        if enum.kind == "finite":
            cands = [f.matrix for f in enum.items]
        elif enum.kind == "family":
            cands = [f.matrix for f in enum.family.sample(3)]
    elif len(ker) == 1:
        alpha, beta = ker[0]
        cand = f0.scale(alpha) + fp.scale(beta)
        cands = [cand]
    for cand in cands:
        if cand.is_zero_matrix() or Matrix(cand.rows).rank() != 2:
            continue
        fm = FundamentalMatrix(cand)
        raw = c1.matrix.T * cand * c2.matrix
        if (raw + raw.T).is_zero_matrix():
            continue                    # the pair's own F slipped in
        ge1, ge2 = epipolar_lines(c1, c2, fm)
        if ge1 == g1 and ge2 == g2:
            return fm
    raise NotPermissible("no fundamental matrix realizes the line pair")


def _line_image(cam: Camera, g: LineP3) -> tuple:
    """The single image point of a line through the camera center."""
    for pt in (g.a, g.b, g.point_at(1, 1)):
        u = cam.project_or_none(pt)
        if u is not None:
            return u
    raise ValueError("line seems to vanish in the camera")


# -- lines on quadrics --------------------------------------------------------

def lines_through_point_on_quadric(q: Matrix, p: Sequence):
    """Lines on the quadric through a point of it.

    Returns ('lines', [...]) with 0-2 LineP3 entries (coordinates possibly
    in Q(sqrt d)), ('all_rulings', vertex_or_point) at a singular point, or
    ('plane', h) when the full tangent plane lies inside the quadric.
    """
    if not quadric_contains(q, p):
        raise PointNotOnQuadric("point not on quadric")
    grad = q.apply(p)
    if is_zero_vec(grad):
        return ("all_rulings", tuple(p))
    # tangent plane basis: solutions of grad . x = 0, with p among them
    tangent = Matrix([grad]).nullspace()
    others = [w for w in tangent if not proportional(w, p)]
    w1, w2 = others[0], others[1] if len(others) > 1 else None
    if w2 is None:
        # p duplicated inside the basis; rebuild deterministically
        basis = [v for v in tangent]
        w1, w2 = [v for v in basis if not proportional(v, p)][:2]
    a = polar_value(q, w1, w1)
    b = polar_value(q, w1, w2)
    c = polar_value(q, w2, w2)
    if is_zero(a) and is_zero(b) and is_zero(c):
        return ("plane", tuple(grad))
    # direction mu*w1 + nu*w2: restricted form a mu^2 + 2b mu nu + c nu^2
    out = []
    if is_zero(a):
        out.append(w1)                      # (mu, nu) = (1, 0)
        if not is_zero(c):
            # second root: 2b mu + c nu = 0 -> (c, -2b)
            out.append(tuple(c * x - 2 * b * y for x, y in zip(w1, w2)))
        elif not is_zero(b):
            out.append(w2)
    else:
        poly = Poly([c, 2 * b, a])          # in t with direction t*w1 + w2
        if poly.degree == 2:
            roots, cpx = quadratic_roots(poly)
            if not cpx:
                for t, _ in roots:
                    out.append(tuple(t * x + y for x, y in zip(w1, w2)))
        else:
            # a != 0 and degree < 2 means c = b = 0: root at direction w2
            out.append(w2)
    lines = []
    seen = []
    for d in out:
        ln = LineP3(tuple(p), tuple(d))
        if not line_on_quadric(q, ln):
            raise AssertionError("computed direction leaves the quadric")
        if any(ln == s for s in seen):
            continue
        seen.append(ln)
        lines.append(ln)
    return ("lines", lines)


# -- curve type transforms ----------------------------------------------------

@dataclass(frozen=True)
class CurveType:
    a: int
    b: int
    c1: int
    c2: int

    def __post_init__(self):
        if min(self.a, self.b, self.c1, self.c2) < 0:
            raise ValueError("curve type entries must be non-negative")


@dataclass(frozen=True)
class PlanesCurveType:
    a: int
    b: int
    c0: int
    c1: int
    c2: int

    def __post_init__(self):
        if min(self.a, self.b, self.c0, self.c1, self.c2) < 0:
            raise ValueError("curve type entries must be non-negative")


def map_curve_type(t: CurveType) -> CurveType:
    """Conjugate curve type on a smooth quadric or cone."""
    b2 = t.a + t.b - t.c1 - t.c2
    c1n, c2n = t.a - t.c2, t.a - t.c1
    if b2 < 0 or c1n < 0 or c2n < 0:
        raise ContainsEpipolarLine(
            "curve must not contain an epipolar line")
    return CurveType(t.a, b2, c1n, c2n)


def map_planes_curve_type(t: PlanesCurveType) -> PlanesCurveType:
    """Conjugate curve type on a two-plane quadric."""
    a2 = 2 * t.a - t.c0 - t.c1 - t.c2
    c0n = t.a - t.c1 - t.c2
    c1n = t.a - t.c0 - t.c2
    c2n = t.a - t.c0 - t.c1
    if min(a2, c0n, c1n, c2n) < 0:
        raise ContainsExcludedLine(
            "curve must avoid the epipolar lines and the center line")
    return PlanesCurveType(a2, t.b, c0n, c1n, c2n)
