"""Scalar value types shared by the invariant pipelines.

Three arithmetic modes are used throughout the package:

* exact rationals (``fractions.Fraction``) -- pointed categories, counts;
* exact real quadratic extensions Q(sqrt(d)) (:class:`QuadExt`) -- quantum
  dimensions of the golden / Ising-type categories;
* IEEE doubles with the module-wide tolerance ``TOL`` -- 6j tensors at a
  root of unity.

Exact roots of unity (:class:`RootOfUnity`) and elements of cyclotomic
fields (:class:`Cyclotomic`) support the abelian character tables and the
exact validation of modular-data relations.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import gcd
from typing import Union

TOL = 1e-9

Rational = Union[int, Fraction]


def feq(x: float, y: float, tol: float = TOL) -> bool:
    """Float equality at relative/absolute tolerance ``tol``."""
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


class QuadExt:
    """Exact element a + b*sqrt(d) of a real quadratic field Q(sqrt(d)).

    ``d`` must be a squarefree integer > 1.  Mixed arithmetic with ints and
    Fractions is supported; two QuadExt values can be combined only when
    they live in the same field.
    """

    __slots__ = ("d", "a", "b")

    def __init__(self, d: int, a: Rational, b: Rational):
        if d <= 1:
            raise ValueError(f"QuadExt needs a squarefree d > 1, got {d}")
        self.d = d
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def _coerce(other, d: int) -> "QuadExt | None":
        if isinstance(other, QuadExt):
            return other if other.d == d else None
        if isinstance(other, (int, Fraction)):
            return QuadExt(d, other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other, self.d)
        if o is None:
            return NotImplemented
        return QuadExt(self.d, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(self.d, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other, self.d)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other, self.d)
        if o is None:
            return NotImplemented
        return QuadExt(
            self.d,
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other, self.d)
        if o is None:
            return NotImplemented
        norm = o.a * o.a - self.d * o.b * o.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in QuadExt")
        conj = QuadExt(self.d, o.a, -o.b)
        num = self * conj
        return QuadExt(self.d, num.a / norm, num.b / norm)

    def __rtruediv__(self, other):
        o = self._coerce(other, self.d)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            return QuadExt(self.d, 1, 0) / self ** (-n)
        out = QuadExt(self.d, 1, 0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                return self.b == 0 and other.b == 0 and self.a == other.a
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, float):
            return feq(float(self), other)
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.d, self.a, self.b))

    def __float__(self):
        from math import sqrt

        return float(self.a) + float(self.b) * sqrt(self.d)

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        return f"{self.a}+{self.b}*sqrt({self.d})"


class RootOfUnity:
    """Exact root of unity exp(2*pi*i * k/m), stored as the exponent k/m."""

    __slots__ = ("exponent",)

    def __init__(self, k: int, m: int):
        if m <= 0:
            raise ValueError("order must be positive")
        k %= m
        g = gcd(k, m) if k else m
        self.exponent = Fraction(k, m) if k else Fraction(0, 1)

    @classmethod
    def from_exponent(cls, e: Fraction) -> "RootOfUnity":
        e = Fraction(e) % 1
        return cls(e.numerator, e.denominator)

    @property
    def order(self) -> int:
        return self.exponent.denominator

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity.from_exponent(self.exponent + other.exponent)

    def conj(self) -> "RootOfUnity":
        return RootOfUnity.from_exponent(-self.exponent)

    def __pow__(self, n: int) -> "RootOfUnity":
        return RootOfUnity.from_exponent(self.exponent * n)

    def is_one(self) -> bool:
        return self.exponent == 0

    def __eq__(self, other):
        if isinstance(other, RootOfUnity):
            return self.exponent == other.exponent
        return NotImplemented

    def __hash__(self):
        return hash(self.exponent)

    def __complex__(self):
        return cmath.exp(2j * cmath.pi * float(self.exponent))

    def __repr__(self):
        e = self.exponent
        return f"zeta({e.denominator})^{e.numerator}"


def _cyclotomic_poly(n: int) -> list[int]:
    """Integer coefficient list (low to high) of the n-th cyclotomic polynomial."""
    # x^n - 1 divided by the cyclotomic polynomials of the proper divisors.
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _polydiv_exact(poly, _cyclotomic_poly(d))
    return poly


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


class Cyclotomic:
    """Exact element of Q(zeta_n), represented in Q[x]/(x^n - 1).

    Multiplication is cyclic convolution; equality reduces the difference
    modulo the n-th cyclotomic polynomial, which is exact equality in the
    field.  Adequate for small n (character and modular-data checks).
    """

    __slots__ = ("n", "coeffs")

    _phi_cache: dict[int, list[int]] = {}

    def __init__(self, n: int, coeffs=None):
        self.n = n
        if coeffs is None:
            self.coeffs = [Fraction(0)] * n
        else:
            self.coeffs = [Fraction(c) for c in coeffs]
            if len(self.coeffs) != n:
                raise ValueError("coefficient length mismatch")

    @classmethod
    def zero(cls, n: int) -> "Cyclotomic":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "Cyclotomic":
        out = cls(n)
        out.coeffs[0] = Fraction(1)
        return out

    @classmethod
    def root(cls, n: int, k: int, scale: Rational = 1) -> "Cyclotomic":
        """scale * zeta_n^k"""
        out = cls(n)
        out.coeffs[k % n] = Fraction(scale)
        return out

    @classmethod
    def from_root_of_unity(cls, r: RootOfUnity, n: int, scale: Rational = 1) -> "Cyclotomic":
        e = r.exponent
        if n % e.denominator != 0:
            raise ValueError(f"zeta_{e.denominator} does not lie in Q(zeta_{n})")
        return cls.root(n, e.numerator * (n // e.denominator), scale)

    def __add__(self, other: "Cyclotomic") -> "Cyclotomic":
        return Cyclotomic(self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "Cyclotomic") -> "Cyclotomic":
        return Cyclotomic(self.n, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.n, [c * other for c in self.coeffs])
        out = [Fraction(0)] * self.n
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    k = i + j
                    if k >= self.n:
                        k -= self.n
                    out[k] += a * b
        return Cyclotomic(self.n, out)

    __rmul__ = __mul__

    def conj(self) -> "Cyclotomic":
        out = [Fraction(0)] * self.n
        for i, a in enumerate(self.coeffs):
            out[(-i) % self.n] += a
        return Cyclotomic(self.n, out)

    def _phi(self) -> list[int]:
        if self.n not in Cyclotomic._phi_cache:
            Cyclotomic._phi_cache[self.n] = _cyclotomic_poly(self.n)
        return Cyclotomic._phi_cache[self.n]

    def is_zero(self) -> bool:
        # remainder of the coefficient polynomial modulo Phi_n
        rem = list(self.coeffs)
        phi = self._phi()
        dphi = len(phi) - 1
        for i in range(len(rem) - 1, dphi - 1, -1):
            c = rem[i]  # phi is monic
            if c:
                for j in range(dphi + 1):
                    rem[i - dphi + j] -= c * phi[j]
        return all(c == 0 for c in rem[:dphi])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.one(self.n) * other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("Cyclotomic values are not hashable")

    def __complex__(self):
        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(float(c) * z**i for i, c in enumerate(self.coeffs) if c)

    def __repr__(self):
        terms = [f"{c}*z^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


Scalar = Union[Fraction, QuadExt, float]


def scalar_to_float(x) -> float:
    if isinstance(x, (QuadExt, Fraction)):
        return float(x)
    return float(x)


def scalar_eq(x, y, tol: float = TOL) -> bool:
    """Equality across scalar modes: exact when both exact, tolerance otherwise."""
    exact_types = (int, Fraction, QuadExt)
    if isinstance(x, exact_types) and isinstance(y, exact_types):
        return x == y
    return feq(scalar_to_float(x), scalar_to_float(y), tol)


def format_scalar(x) -> str:
    """Bit-exact textual form: rationals as p/q, QuadExt as p/q+r/s*sqrt(d), floats via repr."""
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    if isinstance(x, QuadExt):
        a = Fraction(x.a)
        b = Fraction(x.b)
        return f"{a.numerator}/{a.denominator}+{b.numerator}/{b.denominator}*sqrt({x.d})"
    return repr(float(x))


def parse_scalar(text: str):
    """Inverse of :func:`format_scalar`."""
    text = text.strip()
    if "sqrt" in text:
        left, _, rest = text.partition("+")
        mid, _, tail = rest.partition("*sqrt(")
        d = int(tail.rstrip(")"))
        return QuadExt(d, Fraction(left), Fraction(mid))
    if "/" in text and "." not in text and "e" not in text and "E" not in text:
        return Fraction(text)
    try:
        return Fraction(int(text))
    except ValueError:
        return float(text)
