"""Exact Gaussian-rational arithmetic.

A GaussianRational is a complex number whose real and imaginary parts are
exact rationals.  This is the coefficient field for every series in the
package: no floating point is allowed anywhere near the jet kernel, because
the oracle computations must match coefficient-for-coefficient.

gmpy2.mpq is used when available (an order of magnitude faster on the dense
series products that dominate the Lie-derivative pipeline); fractions.Fraction
is a drop-in fallback with identical observable behaviour.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Rat


class GaussianRational:
    """Immutable complex number with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re if type(re) is type(_RZERO) else Rat(re))
        object.__setattr__(self, "im", im if type(im) is type(_RZERO) else Rat(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_rational(cls, num, den=1):
        return cls(Rat(num, den))

    # -- predicates --------------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self):
        return not self.im

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, int):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- field operations --------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero GaussianRational")
        a, b, c, d = self.re, self.im, other.re, other.im
        n = c * c + d * d
        return GaussianRational((a * c + b * d) / n, (b * c - a * d) / n)

    def inverse(self):
        return ONE / self

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    # -- rendering -----------------------------------------------------------

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_str(self.im)
        sign = "-" if self.im < 0 else "+"
        return f"{self.re} {sign} {_imag_str(abs(self.im))}"


def _imag_str(im):
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}*i"


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(x)


_RZERO = Rat(0)

ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
