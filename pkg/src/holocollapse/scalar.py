"""Exact Gaussian rationals: a + b*i with a, b in Q."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

__all__ = ["GaussianRational", "ZERO", "ONE", "I", "gr", "parse_scalar"]


def _q(x) -> mpq:
    if isinstance(x, type(mpq())):
        return x
    if isinstance(x, bool):
        return mpq(int(x))
    if isinstance(x, (int, Fraction)):
        return mpq(x)
    if isinstance(x, Rational):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(Fraction(x.strip()))
    raise TypeError(f"not an exact rational: {x!r}")


_MPQ = type(mpq())


class GaussianRational:
    """Immutable element of Q(i).

    Components are kept as gmpy2 ``mpq`` values, which are always reduced
    with a positive denominator.  ``re`` and ``im`` expose them as Fractions.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("cannot combine a GaussianRational with an imaginary part")
            self._re, self._im = re._re, re._im
            return
        self._re = _q(re)
        self._im = _q(im)

    @classmethod
    def _raw(cls, re: _MPQ, im: _MPQ) -> "GaussianRational":
        obj = object.__new__(cls)
        obj._re = re
        obj._im = im
        return obj

    @property
    def re(self) -> Fraction:
        return Fraction(int(self._re.numerator), int(self._re.denominator))

    @property
    def im(self) -> Fraction:
        return Fraction(int(self._im.numerator), int(self._im.denominator))

    @property
    def is_real(self) -> bool:
        return self._im == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self._re, -self._im)

    def norm(self) -> Fraction:
        n = self._re * self._re + self._im * self._im
        return Fraction(int(n.numerator), int(n.denominator))

    # arithmetic

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational._raw(self._re + other._re, self._im + other._im)
        try:
            return GaussianRational._raw(self._re + _q(other), self._im)
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational._raw(self._re - other._re, self._im - other._im)
        try:
            return GaussianRational._raw(self._re - _q(other), self._im)
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        try:
            return GaussianRational._raw(_q(other) - self._re, -self._im)
        except TypeError:
            return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self._re, self._im, other._re, other._im
            if b == 0 and d == 0:
                return GaussianRational._raw(a * c, b)
            return GaussianRational._raw(a * c - b * d, a * d + b * c)
        try:
            o = _q(other)
        except TypeError:
            return NotImplemented
        return GaussianRational._raw(self._re * o, self._im * o)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        a, b = self._re, self._im
        if b == 0:
            if a == 0:
                raise ZeroDivisionError("GaussianRational division by zero")
            return GaussianRational._raw(1 / a, b)
        n = a * a + b * b
        return GaussianRational._raw(a / n, -b / n)

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            return self * other.inverse()
        try:
            o = _q(other)
        except TypeError:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational._raw(self._re / o, self._im / o)

    def __rtruediv__(self, other):
        try:
            return GaussianRational(other) * self.inverse()
        except TypeError:
            return NotImplemented

    def __neg__(self):
        return GaussianRational._raw(-self._re, -self._im)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        out = ONE
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # comparisons

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self._re == other._re and self._im == other._im
        try:
            return self._im == 0 and self._re == _q(other)
        except TypeError:
            return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __bool__(self):
        return bool(self._re) or bool(self._im)

    def __hash__(self):
        if self._im == 0:
            return hash(self._re)
        return hash((self._re, self._im))

    # text

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"GaussianRational('{format_scalar(self)}')"


def _fmt_q(x) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(z: GaussianRational) -> str:
    """Compact exact text: '3', '-1/2', '2 i', '1/2-3/4 i', '1+i'."""
    a, b = z._re, z._im
    if b == 0:
        return _fmt_q(a)
    imag = "i" if b == 1 else "-i" if b == -1 else f"{_fmt_q(b)} i"
    if a == 0:
        return imag
    return f"{_fmt_q(a)}{'+' if b > 0 else ''}{imag}"




def parse_scalar(text) -> GaussianRational:
    """Parse exact text such as '3', '1/2', 'i', '-2 i', '1/2+3/4 i', '1-i'."""
    if isinstance(text, GaussianRational):
        return text
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return GaussianRational(text)
    if not isinstance(text, str):
        raise TypeError(f"cannot parse scalar from {text!r}")
    s = text.replace(" ", "").replace("j", "i")
    if not s:
        raise ValueError("empty scalar")
    if "i" not in s:
        return GaussianRational(Fraction(s))
    if not s.endswith("i"):
        raise ValueError(f"bad scalar {text!r}")
    body = s[:-1].rstrip("*")
    # split real and imaginary at the last sign that is not the leading one
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut > 0 and body[cut - 1] not in "/":
        real, imag = body[:cut], body[cut:]
    else:
        real, imag = "", body
    if imag in ("", "+"):
        imag = "1"
    elif imag == "-":
        imag = "-1"
    return GaussianRational(Fraction(real) if real else 0, Fraction(imag))


def gr(x=0, y=0) -> GaussianRational:
    """Shorthand constructor; strings are parsed."""
    if isinstance(x, str) and y == 0:
        return parse_scalar(x)
    return GaussianRational(x, y)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
