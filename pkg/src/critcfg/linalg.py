"""Dense exact matrices over Fraction or QuadExt entries.

Everything is immutable (tuples of tuples) and small: the library never
builds matrices beyond roughly 9 x 12, so clarity wins over asymptotics.
Field operations (rref, rank, nullspace, solve) need exact division, which
both scalar types provide.  Ring-only routines (cofactor determinants,
adjugate) also work for polynomial entries.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .scalars import is_zero, rat


def _coerce(x):
    if isinstance(x, int):
        return Fraction(x)
    return x


class Matrix:
    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = tuple(tuple(_coerce(x) for x in r) for r in rows)
        if self.rows:
            w = len(self.rows[0])
            if any(len(r) != w for r in self.rows):
                raise ValueError("ragged rows")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i) -> tuple:
        return self.rows[i]

    def col(self, j) -> tuple:
        return tuple(r[j] for r in self.rows)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(repr(x) for x in r) for r in self.rows)
        return "Matrix[%s]" % body

    # -- constructors -------------------------------------------------------
    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix([[Fraction(i == j) for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(m: int, n: int) -> "Matrix":
        return Matrix([[Fraction(0)] * n for _ in range(m)])

    @staticmethod
    def from_cols(cols) -> "Matrix":
        return Matrix(cols).T

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a + b for a, b in zip(r, s)]
                       for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a - b for a, b in zip(r, s)]
                       for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self.rows])

    def scale(self, c) -> "Matrix":
        c = _coerce(c)
        return Matrix([[c * a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch %s * %s" % (self.shape, other.shape))
            cols = [other.col(j) for j in range(other.ncols)]
            return Matrix([[dot(r, c) for c in cols] for r in self.rows])
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def apply(self, v: Sequence) -> tuple:
        """Matrix times column vector, returned as a tuple."""
        if len(v) != self.ncols:
            raise ValueError("vector length %d, need %d" % (len(v), self.ncols))
        return tuple(dot(r, v) for r in self.rows)

    @property
    def T(self) -> "Matrix":
        return Matrix(list(zip(*self.rows))) if self.rows else self

    def stack(self, other: "Matrix") -> "Matrix":
        return Matrix(self.rows + other.rows)

    def augment(self, other: "Matrix") -> "Matrix":
        return Matrix([r + s for r, s in zip(self.rows, other.rows)])

    def submatrix(self, keep_rows, keep_cols) -> "Matrix":
        return Matrix([[self.rows[i][j] for j in keep_cols] for i in keep_rows])

    def drop(self, i: int, j: int) -> "Matrix":
        """Minor matrix: delete row i and column j."""
        return Matrix([r[:j] + r[j + 1:]
                       for k, r in enumerate(self.rows) if k != i])

    # -- field routines ------------------------------------------------------
    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and the pivot column indices."""
        rows = [list(r) for r in self.rows]
        m, n = self.nrows, self.ncols
        pivots = []
        pr = 0
        for pc in range(n):
            pv = None
            for i in range(pr, m):
                if not is_zero(rows[i][pc]):
                    pv = i
                    break
            if pv is None:
                continue
            rows[pr], rows[pv] = rows[pv], rows[pr]
            inv = rows[pr][pc]
            rows[pr] = [x / inv for x in rows[pr]]
            for i in range(m):
                if i != pr and not is_zero(rows[i][pc]):
                    f = rows[i][pc]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[pr])]
            pivots.append(pc)
            pr += 1
            if pr == m:
                break
        return Matrix(rows), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[tuple]:
        """Basis of the right kernel, as column vectors (tuples)."""
        R, pivots = self.rref()
        n = self.ncols
        free = [j for j in range(n) if j not in pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * n
            v[f] = Fraction(1)
            for r, p in enumerate(pivots):
                v[p] = -R[r, f]
            basis.append(tuple(v))
        return basis

    def solve(self, b: Sequence):
        """One solution of A x = b, or None if inconsistent."""
        aug = self.augment(Matrix([[x] for x in b]))
        R, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        x = [Fraction(0)] * self.ncols
        for r, p in enumerate(pivots):
            x[p] = R[r, self.ncols]
        return tuple(x)

    def det(self):
        """Determinant by exact Gaussian elimination (field entries)."""
        if self.nrows != self.ncols:
            raise ValueError("det of non-square matrix")
        n = self.nrows
        if n == 0:
            return Fraction(1)
        rows = [list(r) for r in self.rows]
        det = Fraction(1)
        for c in range(n):
            pv = None
            for i in range(c, n):
                if not is_zero(rows[i][c]):
                    pv = i
                    break
            if pv is None:
                return Fraction(0)
            if pv != c:
                rows[c], rows[pv] = rows[pv], rows[c]
                det = -det
            det = det * rows[c][c]
            inv = rows[c][c]
            for i in range(c + 1, n):
                if not is_zero(rows[i][c]):
                    f = rows[i][c] / inv
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
        return det

    # -- ring routines (no division; fine for polynomial entries) ------------
    def det_ring(self):
        """Determinant by expansion, entries need only +, -, *."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("det of non-square matrix")
        if n == 0:
            return Fraction(1)
        if n == 1:
            return self.rows[0][0]
        total = None
        for perm in permutations(range(n)):
            sgn = _perm_sign(perm)
            term = self.rows[0][perm[0]]
            for i in range(1, n):
                term = term * self.rows[i][perm[i]]
            term = term if sgn > 0 else -term
            total = term if total is None else total + term
        return total

    def adjugate(self) -> "Matrix":
        """Transposed cofactor matrix; adj(A) * A = det(A) * I."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("adjugate of non-square matrix")
        cof = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                m = self.drop(i, j).det_ring()
                cof[i][j] = m if (i + j) % 2 == 0 else -m
        return Matrix(cof).T

    def is_zero_matrix(self) -> bool:
        return all(is_zero(x) for r in self.rows for x in r)

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(self.nrows) for j in range(i))


def _perm_sign(perm) -> int:
    sgn, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, clen = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sgn = -sgn
    return sgn


def dot(u: Sequence, v: Sequence):
    it = iter(zip(u, v))
    a, b = next(it)
    out = _coerce(a) * _coerce(b)
    for a, b in it:
        out = out + _coerce(a) * _coerce(b)
    return out


def cross(u: Sequence, v: Sequence) -> tuple:
    (a, b, c), (d, e, f) = [tuple(_coerce(x) for x in w) for w in (u, v)]
    return (b * f - c * e, c * d - a * f, a * e - b * d)


def vec_sub(u, v):
    return tuple(_coerce(a) - _coerce(b) for a, b in zip(u, v))


def vec_add(u, v):
    return tuple(_coerce(a) + _coerce(b) for a, b in zip(u, v))


def vec_scale(c, u):
    c = _coerce(c)
    return tuple(c * _coerce(x) for x in u)


def skew3(v: Sequence) -> Matrix:
    """3x3 cross-product matrix [v]_x with [v]_x w = v x w."""
    a, b, c = (_coerce(x) for x in v)
    z = Fraction(0)
    return Matrix([[z, -c, b], [c, z, -a], [-b, a, z]])
