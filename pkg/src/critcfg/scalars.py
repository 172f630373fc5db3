"""Exact scalar arithmetic: rationals and degree-2 extensions Q(sqrt(d)).

Rationals are plain fractions.Fraction (always canonical: gcd 1, positive
denominator).  QuadExt carries a + b*sqrt(d) with d a squarefree integer > 1.
Anything of higher algebraic degree raises NeedsExtension.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union


class NeedsExtension(Exception):
    """A value would live outside Q(sqrt(d)) for a single squarefree d."""


Rat = Fraction
Scalar = Union[Fraction, "QuadExt"]


def rat(x) -> Fraction:
    """Coerce ints, strings like '3/7' or '-2', and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, QuadExt):
        if x.b == 0:
            return x.a
        raise NeedsExtension("not rational: %r" % (x,))
    raise TypeError("cannot make a rational from %r" % (x,))


def rat_str(x: Fraction) -> str:
    """Serialize canonically, 'p/q' or bare 'p' when q == 1."""
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def squarefree_split(n: int) -> tuple[int, int]:
    """n = s^2 * d with d squarefree; returns (s, d).  n must be > 0."""
    if n <= 0:
        raise ValueError("need a positive integer")
    s, d, p = 1, 1, 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    return s, d * n


def rational_sqrt(x: Fraction):
    """Exact square root of a rational if it is a perfect square, else None."""
    if x < 0:
        return None
    if x == 0:
        return Fraction(0)
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


class QuadExt:
    """a + b*sqrt(d), with rational a, b and squarefree integer d > 1.

    Arithmetic mixes freely with int/Fraction.  Division is exact (multiply
    by the conjugate).  Comparisons and sign are exact as real numbers.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        a, b = rat(a), rat(b)
        if d <= 1:
            raise ValueError("d must be a squarefree integer > 1")
        s, d0 = squarefree_split(d)
        if s != 1:
            # absorb square part of d into b
            b, d = b * s, d0
        if d == 1:
            # d was a perfect square: value is rational after all
            a, b, d = a + b, Fraction(0), 2
        self.a, self.b, self.d = a, b, d

    # -- coercion ---------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, QuadExt):
            if other.b == 0:
                return QuadExt.of(other.a, self.d)
            if other.d != self.d and self.b != 0:
                raise NeedsExtension("mixing sqrt(%d) with sqrt(%d)" % (self.d, other.d))
            return QuadExt.of(other.a, other.d, other.b)
        if isinstance(other, (int, Fraction)):
            return QuadExt.of(rat(other), self.d)
        return None

    @staticmethod
    def of(a, d: int, b=0) -> "QuadExt":
        q = object.__new__(QuadExt)
        q.a, q.b, q.d = rat(a), rat(b), d
        return q

    # -- ring ops ---------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        d = self.d if self.b else o.d
        return QuadExt.of(self.a + o.a, d, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt.of(-self.a, self.d, -self.b)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        d = self.d if self.b else o.d
        return QuadExt.of(self.a * o.a + self.b * o.b * d, d,
                          self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero")
        # conjugate trick; norm is nonzero for nonzero o (d squarefree)
        n = o.a * o.a - o.b * o.b * o.d
        inv = QuadExt.of(o.a / n, self.d if self.b else o.d, -o.b / n)
        return self * inv

    def __rtruediv__(self, other):
        o = self._lift(other)
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return 1 / (self ** (-k))
        out = QuadExt.of(1, self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- predicates -------------------------------------------------------
    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadExt):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.d == other.d and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return -1 if a < 0 else (1 if a > 0 else 0)
        if a == 0:
            return -1 if b < 0 else 1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 d
        lhs, rhs = a * a, b * b * self.d
        if a > 0:  # b < 0
            return 1 if lhs > rhs else (-1 if lhs < rhs else 0)
        return -1 if lhs > rhs else (1 if lhs < rhs else 0)

    def __lt__(self, other):
        o = self._lift(other)
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._lift(other)
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._lift(other)
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._lift(other)
        return (self - o).sign() >= 0

    def conjugate(self) -> "QuadExt":
        return QuadExt.of(self.a, self.d, -self.b)

    def __repr__(self):
        if self.b == 0:
            return rat_str(self.a)
        return "(%s + %s*sqrt(%d))" % (rat_str(self.a), rat_str(self.b), self.d)


def sign(x) -> int:
    """Exact sign of a Scalar: -1, 0, or 1."""
    if isinstance(x, QuadExt):
        return x.sign()
    x = rat(x)
    return -1 if x < 0 else (1 if x > 0 else 0)


def is_zero(x) -> bool:
    if isinstance(x, QuadExt):
        return not x
    return rat(x) == 0


def sqrt_scalar(x):
    """Exact sqrt of a nonnegative rational as Fraction or QuadExt.

    Raises NeedsExtension for negative input (no complex support here).
    """
    x = rat(x)
    if x < 0:
        raise NeedsExtension("sqrt of a negative rational")
    r = rational_sqrt(x)
    if r is not None:
        return r
    # x = (p/q) = (p*q)/q^2 ; sqrt = sqrt(p*q)/q = (s/q) sqrt(d)
    n = x.numerator * x.denominator
    s, d = squarefree_split(n)
    return QuadExt.of(0, d, Fraction(s, x.denominator))


def scalar_from_json(obj) -> Scalar:
    """Parse 'p/q' strings or {'a':..., 'b':..., 'd':...} objects."""
    if isinstance(obj, str):
        return rat(obj)
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, dict):
        return QuadExt(rat(obj["a"]), rat(obj["b"]), int(obj["d"]))
    raise TypeError("bad scalar payload: %r" % (obj,))


def scalar_to_json(x):
    if isinstance(x, QuadExt):
        if x.b == 0:
            return rat_str(x.a)
        return {"a": rat_str(x.a), "b": rat_str(x.b), "d": x.d}
    return rat_str(rat(x))
