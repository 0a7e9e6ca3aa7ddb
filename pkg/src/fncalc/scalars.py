"""Exact Gaussian-rational scalars.

Every coefficient in the calculus is a Gaussian rational a + b*i with a, b
rational.  Values are stored over a common positive denominator in lowest
terms, so equality is canonical and hashing is safe.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class GaussianRational:
    """Immutable exact complex rational (re_num + im_num*i) / den."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        an, ad = _as_ratio(re)
        bn, bd = _as_ratio(im)
        # common denominator, then reduce by gcd(a, b, d)
        a = an * bd
        b = bn * ad
        d = ad * bd
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(gcd(abs(a), abs(b)), d)
        if g > 1:
            a //= g
            b //= g
            d //= g
        self._a = a
        self._b = b
        self._d = d

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "GaussianRational":
        # internal: inputs already normalized
        v = object.__new__(cls)
        v._a = a
        v._b = b
        v._d = d
        return v

    @classmethod
    def _norm(cls, a: int, b: int, d: int) -> "GaussianRational":
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(gcd(abs(a), abs(b)), d)
        if g > 1:
            a //= g
            b //= g
            d //= g
        return cls._raw(a, b, d)

    # -- field access ----------------------------------------------------

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    @property
    def re_num(self) -> int:
        return self.re.numerator

    @property
    def re_den(self) -> int:
        return self.re.denominator

    @property
    def im_num(self) -> int:
        return self.im.numerator

    @property
    def im_den(self) -> int:
        return self.im.denominator

    # -- predicates ------------------------------------------------------

    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    @property
    def is_real(self) -> bool:
        return self._b == 0

    @property
    def is_imaginary(self) -> bool:
        return self._a == 0

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        d1, d2 = self._d, other._d
        return GaussianRational._norm(
            self._a * d2 + other._a * d1, self._b * d2 + other._b * d1, d1 * d2
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        d1, d2 = self._d, other._d
        return GaussianRational._norm(
            self._a * d2 - other._a * d1, self._b * d2 - other._b * d1, d1 * d2
        )

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other.__sub__(self)

    def __neg__(self):
        return GaussianRational._raw(-self._a, -self._b, self._d)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a1, b1, a2, b2 = self._a, self._b, other._a, other._b
        return GaussianRational._norm(
            a1 * a2 - b1 * b2, a1 * b2 + b1 * a2, self._d * other._d
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by zero Gaussian rational")
        a2, b2 = other._a, other._b
        n = a2 * a2 + b2 * b2
        # (a1+b1 i)(a2-b2 i) / (d1/d2 * n)
        a1, b1 = self._a, self._b
        return GaussianRational._norm(
            (a1 * a2 + b1 * b2) * other._d,
            (b1 * a2 - a1 * b2) * other._d,
            self._d * n,
        )

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other.__truediv__(self)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self._a, -self._b, self._d)

    def norm_sq(self) -> Fraction:
        """|z|^2 as an exact rational."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._a == other._a and self._b == other._b and self._d == other._d

    def __hash__(self) -> int:
        return hash((self._a, self._b, self._d))

    # -- conversions -------------------------------------------------------

    def __complex__(self) -> complex:
        return complex(self._a / self._d, self._b / self._d)

    def __float__(self) -> float:
        if self._b:
            raise ValueError(f"{self} has a nonzero imaginary part")
        return self._a / self._d

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self) -> str:
        if self._b == 0:
            return _fmt_frac(self._a, self._d)
        if self._a == 0:
            return _fmt_imag(self._b, self._d)
        sign = "+" if self._b > 0 else "-"
        return f"({_fmt_frac(self._a, self._d)}{sign}{_fmt_imag(abs(self._b), self._d)})"


def _fmt_frac(n: int, d: int) -> str:
    g = gcd(abs(n), d)
    n, d = n // g, d // g
    return str(n) if d == 1 else f"{n}/{d}"

def _fmt_imag(n: int, d: int) -> str:
    g = gcd(abs(n), d)
    n, d = n // g, d // g
    if d == 1:
        if n == 1:
            return "i"
        if n == -1:
            return "-i"
        return f"{n}i"
    return f"{n}/{d}i"


def _as_ratio(x) -> tuple[int, int]:
    if isinstance(x, int):
        return x, 1
    if isinstance(x, Fraction):
        return x.numerator, x.denominator
    raise TypeError(f"cannot build an exact scalar from {type(x).__name__}")


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    return None


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def rational(num: int, den: int = 1) -> GaussianRational:
    """Exact real rational num/den."""
    return GaussianRational(Fraction(num, den))


def imaginary(num: int, den: int = 1) -> GaussianRational:
    """Exact purely imaginary (num/den)*i."""
    return GaussianRational(0, Fraction(num, den))
