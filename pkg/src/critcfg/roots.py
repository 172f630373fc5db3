"""Exact univariate polynomials and real-root machinery.

Coefficients are stored low degree first and may be Fraction or QuadExt
(both are fields with exact sign, so Euclidean division, gcd and Sturm
sequences all stay exact).  Root *finding* that must return closed-form
values is limited to degree <= 2 plus rational roots of higher degrees;
anything needing a cubic or worse irrationality raises NeedsExtension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd
from typing import Sequence

from .scalars import NeedsExtension, is_zero, rat, sign, sqrt_scalar


class ZeroPolynomial(Exception):
    """Raised where an identically zero polynomial needs separate handling."""


def _coerce(x):
    return Fraction(x) if isinstance(x, int) else x


class Poly:
    """Dense exact polynomial; immutable, normalized (no zero leading coeff)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        cs = [_coerce(c) for c in coeffs]
        while cs and is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k <= self.degree else Fraction(0)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        return "Poly(%s)" % " + ".join(
            "%r*t^%d" % (c, k) for k, c in enumerate(self.coeffs) if not is_zero(c))

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[k] + other[k] for k in range(n)])

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[k] - other[k] for k in range(n)])

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return Poly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Poly":
        c = _coerce(c)
        return Poly([c * a for a in self.coeffs])

    def __call__(self, x):
        x = _coerce(x)
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        dn = other.degree
        while len(rem) - 1 >= dn and rem:
            k = len(rem) - 1 - dn
            f = rem[-1] / lead
            q[k] = f
            for j, c in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - f * c
            while rem and is_zero(rem[-1]):
                rem.pop()
        return Poly(q), Poly(rem)

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return Poly([c / lead for c in self.coeffs])

    def compose_linear(self, a, b) -> "Poly":
        """p(a*t + b)."""
        a, b = _coerce(a), _coerce(b)
        out = Poly([])
        lin = Poly([b, a])
        for c in reversed(self.coeffs):
            out = out * lin + Poly([c])
        return out


def poly_gcd(p: Poly, q: Poly) -> Poly:
    while not q.is_zero():
        p, q = q, p % q
    return p.monic()


def gcd_many(polys: Sequence[Poly]) -> Poly:
    g = Poly([])
    for p in polys:
        g = poly_gcd(g, p) if not g.is_zero() else Poly(p.coeffs).monic()
        if g.degree == 0:
            break
    return g


def squarefree_part(p: Poly) -> Poly:
    if p.degree <= 0:
        return p.monic()
    g = poly_gcd(p, p.derivative())
    return p.divmod(g)[0].monic()


def poly_proportional(p: Poly, q: Poly) -> bool:
    """True when p = c*q for some nonzero scalar c (zero ~ zero only)."""
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    if p.degree != q.degree:
        return False
    c = p.coeffs[-1] / q.coeffs[-1]
    return all(is_zero(a - c * b) for a, b in zip(p.coeffs, q.coeffs))


def rational_roots(p: Poly) -> list[tuple[Fraction, int]]:
    """All rational roots with multiplicities.  Coefficients must be rational."""
    if p.is_zero():
        raise ZeroPolynomial("every rational is a root")
    cs = [rat(c) for c in p.coeffs]
    den = 1
    for c in cs:
        den = den * c.denominator // int_gcd(den, c.denominator)
    ints = [int(c * den) for c in cs]
    # strip t^k factor: roots at 0
    k0 = 0
    while ints and ints[0] == 0:
        ints.pop(0)
        k0 += 1
    out = []
    if k0:
        out.append((Fraction(0), k0))
    if len(ints) <= 1:
        return out
    a0, an = abs(ints[0]), abs(ints[-1])
    cands = set()
    for r in _divisors(a0):
        for s in _divisors(an):
            cands.add(Fraction(r, s))
            cands.add(Fraction(-r, s))
    q = Poly(ints)
    for c in sorted(cands):
        if q(c) == 0:
            m = 0
            while True:
                quo, rem = q.divmod(Poly([-c, 1]))
                if not rem.is_zero():
                    break
                q, m = quo, m + 1
            out.append((c, m))
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return [1]
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return out


def quadratic_roots(p: Poly):
    """Exact roots of a degree-2 polynomial.

    Returns (roots, complex_pair): roots is a list of (value, multiplicity)
    with values Fraction or QuadExt; complex_pair is True when the
    discriminant is negative (then roots is empty).
    """
    if p.degree != 2:
        raise ValueError("need degree exactly 2, got %d" % p.degree)
    c, b, a = p.coeffs
    disc = b * b - 4 * a * c
    s = sign(disc)
    if s < 0:
        return [], True
    if s == 0:
        return [(-b / (2 * a), 2)], False
    r = sqrt_scalar(disc) if not hasattr(disc, "d") else _quadext_sqrt(disc)
    return [((-b + r) / (2 * a), 1), ((-b - r) / (2 * a), 1)], False


def _quadext_sqrt(x):
    # sqrt of a QuadExt would leave Q(sqrt d); only the rational case survives
    if x.b == 0:
        return sqrt_scalar(x.a)
    raise NeedsExtension("square root of a non-rational value")


def roots_exact(p: Poly):
    """Exact real roots of p with multiplicity, plus a complex-pair count.

    Works whenever the real roots lie in Q or a single Q(sqrt d): rational
    roots are split off first, the remainder must be degree <= 2.  Raises
    NeedsExtension otherwise and ZeroPolynomial for the zero polynomial.
    """
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial")
    if p.degree == 0:
        return [], 0
    if any(hasattr(c, "d") for c in p.coeffs):
        if p.degree > 2:
            raise NeedsExtension("high-degree polynomial over Q(sqrt d)")
        if p.degree == 1:
            return [(-p.coeffs[0] / p.coeffs[1], 1)], 0
        roots, cpx = quadratic_roots(p)
        return roots, (1 if cpx else 0)
    found = rational_roots(p)
    q = p
    for r, m in found:
        for _ in range(m):
            q = q.divmod(Poly([-r, 1]))[0]
    if q.degree == 0:
        return found, 0
    if q.degree == 1:
        found.append((-q.coeffs[0] / q.coeffs[1], 1))
        return found, 0
    if q.degree == 2:
        roots, cpx = quadratic_roots(q)
        if cpx:
            return found, 1
        # a residual quadratic after removing rational roots has irrational
        # (or repeated irrational) roots; merge multiplicities
        return found + roots, 0
    raise NeedsExtension("real roots need a field beyond Q(sqrt d)")


# -- Sturm machinery --------------------------------------------------------

def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        seq.append(-(seq[-2] % seq[-1]))
    if seq[-1].is_zero():
        seq.pop()
    return seq


def _sign_changes(vals) -> int:
    out, prev = 0, 0
    for v in vals:
        s = sign(v)
        if s == 0:
            continue
        if prev and s != prev:
            out += 1
        prev = s
    return out


def count_real_roots(p: Poly, lo, hi) -> int:
    """Distinct real roots of p in the half-open interval (lo, hi].

    p must be squarefree for exact counts; callers pass squarefree_part.
    """
    seq = sturm_sequence(p)
    va = [q(lo) for q in seq]
    vb = [q(hi) for q in seq]
    return _sign_changes(va) - _sign_changes(vb)


def _abs(x):
    return -x if sign(x) < 0 else x


def root_bound(p: Poly):
    """Cauchy bound: all real roots lie in [-B, B]."""
    if p.degree < 1:
        return Fraction(1)
    lead = p.coeffs[-1]
    m = Fraction(0)
    for c in p.coeffs[:-1]:
        v = _abs(c / lead)
        if v > m:
            m = v
    return Fraction(1) + m


def isolate_real_roots(p: Poly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint open rational intervals, one distinct real root each.

    Exact rational roots are returned as degenerate (r, r) pairs.  Input
    need not be squarefree; isolation runs on the squarefree part.
    """
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial")
    q = squarefree_part(p)
    if q.degree < 1:
        return []
    out: list[tuple[Fraction, Fraction]] = []
    B = root_bound(q)
    stack = [(-B - 1, B + 1)]
    while stack:
        lo, hi = stack.pop()
        n = count_real_roots(q, lo, hi)
        if n == 0:
            continue
        if n == 1:
            # half-open count: a root exactly at hi is the one root
            out.append((hi, hi) if is_zero(q(hi)) else (lo, hi))
            continue
        mid = (lo + hi) / 2
        if is_zero(q(mid)):
            out.append((mid, mid))
            # shrink around the exact root so the halves exclude it
            eps = _gap_below(q, mid)
            stack.append((lo, mid - eps))
            stack.append((mid + eps, hi))
        else:
            stack.append((lo, mid))
            stack.append((mid, hi))
    out.sort()
    return out


def _gap_below(q: Poly, r: Fraction) -> Fraction:
    # any eps with no second root in [r-eps, r+eps]; shrink until Sturm agrees
    eps = Fraction(1, 2)
    while count_real_roots(q, r - eps, r + eps) > 1:
        eps /= 2
    return eps


def interval_sample(lo: Fraction, hi: Fraction) -> Fraction:
    """A rational strictly between lo and hi (midpoint; exact pairs collapse)."""
    return (rat(lo) + rat(hi)) / 2


def refine_interval(p: Poly, lo, hi, width: Fraction):
    """Shrink an isolating interval of squarefree p below the given width."""
    q = squarefree_part(p)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if is_zero(q(mid)):
            return mid, mid
        if count_real_roots(q, lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


@dataclass(frozen=True)
class RootDescriptor:
    """One root (or one conjugate complex pair) of a low-degree polynomial."""

    multiplicity: int
    real: bool
    rational: bool
    value: object = None                 # exact scalar when representable
    interval: tuple | None = None        # isolating interval otherwise


@dataclass(frozen=True)
class CubicRootProfile:
    roots: tuple[RootDescriptor, ...]

    @property
    def total_multiplicity(self) -> int:
        return sum(r.multiplicity for r in self.roots)

    def real_roots(self) -> list[RootDescriptor]:
        return [r for r in self.roots if r.real]


def cubic_root_profile(p: Poly) -> CubicRootProfile:
    """Complete root classification of a degree <= 3 rational polynomial.

    Rational roots carry exact values; a residual quadratic factor yields
    exact values in Q(sqrt d) or a complex-pair descriptor; an irreducible
    cubic yields isolating intervals for its real roots plus a complex
    pair when only one is real.  Raises ZeroPolynomial on the zero input.
    """
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial")
    if p.degree > 3:
        raise ValueError("degree must be at most 3")
    if p.degree == 0:
        return CubicRootProfile(())
    descs: list[RootDescriptor] = []
    found = rational_roots(p)
    q = p
    for r, m in found:
        descs.append(RootDescriptor(m, True, True, value=r))
        for _ in range(m):
            q = q.divmod(Poly([-r, 1]))[0]
    if q.degree == 1:
        # leftover linear factor: root is rational, but then rational_roots
        # would have caught it; unreachable for exact input
        r = -q.coeffs[0] / q.coeffs[1]
        descs.append(RootDescriptor(1, True, True, value=r))
    elif q.degree == 2:
        roots, cpx = quadratic_roots(q)
        if cpx:
            descs.append(RootDescriptor(2, False, False))
        else:
            for v, m in roots:
                descs.append(RootDescriptor(m, True, False, value=v))
    elif q.degree == 3:
        # irreducible over Q: roots are distinct and not in any Q(sqrt d)
        ivs = isolate_real_roots(q)
        for lo, hi in ivs:
            descs.append(RootDescriptor(1, True, False, interval=(lo, hi)))
        if len(ivs) == 1:
            descs.append(RootDescriptor(2, False, False))
    return CubicRootProfile(tuple(descs))
