"""Exact scalar arithmetic: rationals, Gaussian rationals, Gamma-ratio algebra.

Everything downstream works over the field Q(i).  Rationals are backed by
gmpy2.mpq when available (identity batteries generate large numerators) and
fall back to fractions.Fraction otherwise; the two are hash- and
value-compatible.

Gamma function values at half-integer arguments are irrational, so Gamma
itself is never materialized.  Only ratios Gamma(x+k)/Gamma(x) with integer
shift k, which are always rational, are exposed; every integral needed by the
radial and angular computations reduces to such ratios.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    Rational = Fraction

__all__ = [
    "Rational",
    "Q",
    "GaussianRational",
    "GammaRatio",
    "PoleError",
    "gamma_ratio",
    "beta_quotient",
    "rational_sqrt",
]

ZERO = Rational(0)
ONE = Rational(1)


def Q(numerator, denominator=1):
    """Exact rational constructor; accepts ints, 'p/q' strings and Fractions."""
    if isinstance(numerator, str):
        return Rational(Fraction(numerator))
    return Rational(numerator) / Rational(denominator)


class PoleError(ArithmeticError):
    """A Gamma factor hit a non-positive integer argument."""


class GaussianRational:
    """Element a + b*i of Q(i) with exact field operations."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Rational(re) if not isinstance(re, type(ZERO)) else re
        self.im = Rational(im) if not isinstance(im, type(ZERO)) else im

    # -- constructors -------------------------------------------------
    @classmethod
    def i(cls):
        return cls(0, 1)

    @classmethod
    def from_parts(cls, re, im):
        """Trusted fast path: both arguments already Rational."""
        z = cls.__new__(cls)
        z.re = re
        z.im = im
        return z

    # -- field structure ----------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        return GaussianRational.from_parts(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return GaussianRational.from_parts(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other).__sub__(self)

    def __mul__(self, other):
        other = _coerce(other)
        if not other.im:
            return GaussianRational.from_parts(self.re * other.re, self.im * other.re)
        if not self.im:
            return GaussianRational.from_parts(self.re * other.re, self.re * other.im)
        return GaussianRational.from_parts(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        n = other.abs2()
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        if not other.im:
            return GaussianRational.from_parts(self.re / other.re, self.im / other.re)
        return GaussianRational.from_parts(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        return _coerce(other).__truediv__(self)

    def __neg__(self):
        return GaussianRational.from_parts(-self.re, -self.im)

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("only integer powers of Gaussian rationals")
        if k < 0:
            return (GaussianRational(1) / self) ** (-k)
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- involution and norm --------------------------------------------
    def conjugate(self):
        return GaussianRational.from_parts(self.re, -self.im)

    def abs2(self):
        """|z|^2 = re^2 + im^2, a non-negative Rational."""
        return self.re * self.re + self.im * self.im

    # -- comparisons / plumbing ------------------------------------------
    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        if not self.im:
            return f"{self.re}"
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)) or type(x) is type(ZERO):
        return GaussianRational(x)
    raise TypeError(f"cannot coerce {type(x)!r} into Q(i)")


class GammaRatio:
    """The rational number Gamma(base + shift) / Gamma(base), shift >= 0."""

    __slots__ = ("base", "shift")

    def __init__(self, base, shift):
        if shift < 0 or int(shift) != shift:
            raise ValueError("shift must be a non-negative integer")
        self.base = Q(base)
        self.shift = int(shift)

    def value(self):
        return gamma_ratio(self.base, self.shift)

    def __repr__(self):
        return f"GammaRatio({self.base}, {self.shift})"


def gamma_ratio(x, k):
    """Gamma(x+k)/Gamma(x) = prod_{j<k} (x+j) for integer k >= 0.

    Raises PoleError when a factor vanishes (Gamma pole between x and x+k).
    """
    if k < 0 or int(k) != k:
        raise ValueError("shift must be a non-negative integer")
    x = Q(x)
    out = ONE
    for j in range(int(k)):
        factor = x + j
        if not factor:
            raise PoleError(f"gamma_ratio: zero factor at {x}+{j}")
        out = out * factor
    return out


def beta_quotient(p, q, dq):
    """Quotient B(p, q+dq)/B(p, q) of Beta values, exact.

    Equals Gamma(q+dq)Gamma(p+q) / (Gamma(q)Gamma(p+q+dq)); rational for any
    integer dq because the Gamma factors pair into integer-shift ratios.
    Negative dq is handled through the reciprocal quotient.
    """
    p = Q(p)
    q = Q(q)
    if int(dq) != dq:
        raise ValueError("dq must be an integer")
    dq = int(dq)
    if dq < 0:
        return ONE / beta_quotient(p, q + dq, -dq)
    return gamma_ratio(q, dq) / gamma_ratio(p + q, dq)


def rational_sqrt(x):
    """Exact square root of a non-negative Rational, or None if irrational."""
    x = Q(x)
    if x < 0:
        return None
    num = int(x.numerator)
    den = int(x.denominator)
    rn = _isqrt_exact(num)
    rd = _isqrt_exact(den)
    if rn is None or rd is None:
        return None
    return Q(rn, rd)


def _isqrt_exact(n):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None
