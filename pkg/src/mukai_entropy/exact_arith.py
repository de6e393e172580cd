"""Exact arithmetic for square-root multiples and real quadratic irrationals.

Two value types live here:

* :class:`Surd` -- an integer multiple ``c * sqrt(r)`` of a single square
  root, the entry type of the matrices with entries ``a*sqrt(r), b*sqrt(s)``.
* :class:`QuadraticReal` -- an element ``x + y*sqrt(disc)`` of a real
  quadratic field with rational ``x, y``.  Eigenvalues, spectral radii and
  attracting fixed points of the hyperbolic matrices are stored this way.

All values are immutable and normalized at construction, so equality is
syntactic.  Integers and rationals are arbitrary precision throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import ComplexEigenvalues

__all__ = [
    "Surd",
    "QuadraticReal",
    "GaussianRational",
    "squarefree_decompose",
    "surd_mul",
    "eigenvalues",
    "to_float",
]

RationalLike = Union[int, Fraction]


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``n == s*s*f`` and ``f`` squarefree.

    ``n`` must be non-negative; ``0`` decomposes as ``(0, 1)``.
    """
    if n < 0:
        raise ValueError(f"cannot decompose negative radicand {n}")
    if n == 0:
        return 0, 1
    s, f = 1, 1
    rest = n
    p = 2
    while p * p <= rest:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            f *= p
        p += 1 if p == 2 else 2
    return s, f * rest


@dataclass(frozen=True)
class Surd:
    """The real number ``coeff * sqrt(radicand)``."""

    coeff: int
    radicand: int = 1

    def __post_init__(self):
        if self.radicand < 1:
            raise ValueError(f"radicand must be positive, got {self.radicand}")
        if self.coeff == 0:
            object.__setattr__(self, "radicand", 1)
            return
        s, f = squarefree_decompose(self.radicand)
        object.__setattr__(self, "coeff", self.coeff * s)
        object.__setattr__(self, "radicand", f)

    def __mul__(self, other: Surd | int) -> Surd:
        if isinstance(other, int):
            return Surd(self.coeff * other, self.radicand)
        if isinstance(other, Surd):
            return surd_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self) -> Surd:
        return Surd(-self.coeff, self.radicand)

    def __float__(self) -> float:
        return to_float(self.to_quadratic())

    def to_quadratic(self) -> QuadraticReal:
        return QuadraticReal(0, self.coeff, self.radicand)

    def __str__(self) -> str:
        if self.radicand == 1:
            return str(self.coeff)
        return f"{self.coeff}*sqrt({self.radicand})"


def surd_mul(u: Surd, v: Surd) -> Surd:
    return Surd(u.coeff * v.coeff, u.radicand * v.radicand)


def _frac(v: RationalLike) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    raise TypeError(f"expected an int or Fraction, got {type(v).__name__}")


@dataclass(frozen=True)
class QuadraticReal:
    """The real number ``x + y*sqrt(disc)`` with ``x, y`` rational.

    After normalization ``disc`` is squarefree, and a rational value always
    carries ``y == 0, disc == 1``.  Irrational values only combine with
    rationals or with values over the same ``disc``.
    """

    x: Fraction
    y: Fraction = Fraction(0)
    disc: int = 1

    def __post_init__(self):
        x, y, disc = _frac(self.x), _frac(self.y), self.disc
        if disc < 0:
            raise ValueError(f"discriminant must be non-negative, got {disc}")
        s, f = squarefree_decompose(disc)
        y = y * s
        if f == 1:
            x, y = x + y, Fraction(0)
        if y == 0:
            f = 1
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "disc", f)

    # construction and coercion

    @classmethod
    def _coerce(cls, other) -> QuadraticReal | None:
        if isinstance(other, QuadraticReal):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(Fraction(other))
        return None

    def _common_disc(self, other: QuadraticReal) -> int:
        if self.disc == other.disc or other.disc == 1:
            return self.disc
        if self.disc == 1:
            return other.disc
        raise ValueError(
            f"cannot combine values over sqrt({self.disc}) and sqrt({other.disc})"
        )

    @property
    def is_rational(self) -> bool:
        return self.y == 0

    def conjugate(self) -> QuadraticReal:
        return QuadraticReal(self.x, -self.y, self.disc)

    def norm(self) -> Fraction:
        """Field norm ``x^2 - y^2 disc``; the product with the conjugate."""
        return self.x * self.x - self.y * self.y * self.disc

    # arithmetic

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        disc = self._common_disc(o)
        return QuadraticReal(self.x + o.x, self.y + o.y, disc)

    __radd__ = __add__

    def __neg__(self) -> QuadraticReal:
        return QuadraticReal(-self.x, -self.y, self.disc)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        disc = self._common_disc(o)
        return QuadraticReal(
            self.x * o.x + self.y * o.y * disc,
            self.x * o.y + self.y * o.x,
            disc,
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadraticReal:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadraticReal(self.x / n, -self.y / n, self.disc)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> QuadraticReal:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadraticReal(Fraction(1))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # order

    def sign(self) -> int:
        """Exact sign, decided by comparing ``x^2`` with ``y^2 disc``."""
        sx = (self.x > 0) - (self.x < 0)
        sy = (self.y > 0) - (self.y < 0)
        if sy == 0:
            return sx
        if sx == 0 or sx == sy:
            return sy
        # opposite signs: the larger magnitude wins
        lhs = self.x * self.x
        rhs = self.y * self.y * self.disc
        if lhs == rhs:
            return 0
        return sx if lhs > rhs else sy

    def __abs__(self) -> QuadraticReal:
        return -self if self.sign() < 0 else self

    def _cmp(self, other) -> int | None:
        o = self._coerce(other)
        if o is None:
            return None
        return (self - o).sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.y == 0 and self.x == other
        if isinstance(other, QuadraticReal):
            return (self.x, self.y, self.disc) == (other.x, other.y, other.disc)
        return NotImplemented

    def __hash__(self):
        if self.y == 0:
            return hash(self.x)
        return hash((self.x, self.y, self.disc))

    def __floor__(self) -> int:
        den = math.lcm(self.x.denominator, self.y.denominator)
        X = int(self.x * den)
        Y = int(self.y * den)
        if Y == 0:
            return X // den
        root = math.isqrt(Y * Y * self.disc)
        # disc is squarefree > 1 here, so Y*sqrt(disc) is never an integer
        floor_s = root if Y > 0 else -root - 1
        return (X + floor_s) // den

    def __float__(self) -> float:
        return to_float(self)

    def __str__(self) -> str:
        if self.y == 0:
            return str(self.x)
        den = math.lcm(self.x.denominator, self.y.denominator)
        X = int(self.x * den)
        Y = int(self.y * den)
        root = f"sqrt({self.disc})"
        irr = root if abs(Y) == 1 else f"{abs(Y)}*{root}"
        if X == 0:
            body = irr if Y > 0 else f"-{irr}"
        else:
            body = f"{X}{'+' if Y > 0 else '-'}{irr}"
        if den == 1:
            return body
        if X == 0:
            return f"{body}/{den}"
        return f"({body})/{den}"


def _sqrt_fraction(q: Fraction, bits: int = 80) -> Fraction:
    """Rational approximation of sqrt(q) with relative error below 2**-bits."""
    n, d = q.numerator, q.denominator
    nd = n * d
    k = max(0, bits - nd.bit_length() // 2 + 1)
    return Fraction(math.isqrt(nd << (2 * k)), d << k)


def to_float(q: QuadraticReal) -> float:
    """Convert to float with relative error at the level of one rounding.

    When ``x`` and ``y*sqrt(disc)`` have opposite signs the value is
    rewritten as ``norm / (x - y*sqrt(disc))`` so nothing cancels.
    """
    if q.y == 0:
        return float(q.x)
    sx = (q.x > 0) - (q.x < 0)
    sy = (q.y > 0) - (q.y < 0)
    root = _sqrt_fraction(q.y * q.y * q.disc)
    if sx == 0 or sx == sy:
        return float(q.x + sy * root)
    return float(q.norm() / (q.x - sy * root))


def eigenvalues(tr: int, det: int = 1) -> tuple[QuadraticReal, QuadraticReal]:
    """Roots ``alpha >= beta`` of ``x^2 - tr*x + det``."""
    disc = tr * tr - 4 * det
    if disc < 0:
        raise ComplexEigenvalues(
            f"x^2 - {tr}x + {det} has complex roots (discriminant {disc})"
        )
    half = Fraction(1, 2)
    alpha = QuadraticReal(tr * half, half, disc)
    beta = QuadraticReal(tr * half, -half, disc)
    return alpha, beta


@dataclass(frozen=True)
class GaussianRational:
    """A complex number with exact rational real and imaginary parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _frac(self.re))
        object.__setattr__(self, "im", _frac(self.im))

    @classmethod
    def from_complex(cls, z: complex) -> GaussianRational:
        z = complex(z)
        return cls(Fraction(z.real), Fraction(z.imag))

    @property
    def real(self) -> Fraction:
        return self.re

    @property
    def imag(self) -> Fraction:
        return self.im

    def _coerce(self, other) -> GaussianRational | None:
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(Fraction(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))
