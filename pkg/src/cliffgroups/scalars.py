"""Exact scalar types: rationals (``int``/``Fraction``) and Gaussian rationals.

Real exact coefficients are plain ``int`` or ``fractions.Fraction``.  Complex
exact coefficients are the same, plus :class:`Gaussian` when the imaginary part
is nonzero.  Every arithmetic result passes through :func:`normalize`, so a
value whose imaginary part cancels collapses back to a rational and a
``Fraction`` with denominator 1 collapses to ``int``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

__all__ = ["Gaussian", "gauss", "normalize", "is_exact", "to_fraction", "denominator", "I"]


def _q(x) -> Fraction | int:
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return _q(Fraction(x.numerator, x.denominator))
    raise TypeError(f"not an exact rational: {x!r}")


class Gaussian:
    """A Gaussian rational ``re + im*i`` with ``im != 0``.

    Use :func:`gauss` to build values; it returns a plain rational when the
    imaginary part vanishes.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = _q(re)
        self.im = _q(im)

    @staticmethod
    def _parts(x):
        if isinstance(x, Gaussian):
            return x.re, x.im
        if isinstance(x, (int, Fraction)):
            return x, 0
        if isinstance(x, Rational):
            return _q(x), 0
        return None

    def __add__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return gauss(self.re + o[0], self.im + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return gauss(self.re - o[0], self.im - o[1])

    def __rsub__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return gauss(o[0] - self.re, o[1] - self.im)

    def __mul__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = o
        return gauss(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return _div(self.re, self.im, o[0], o[1])

    def __rtruediv__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return _div(o[0], o[1], self.re, self.im)

    # exact division (fraction-free elimination relies on it)
    __floordiv__ = __truediv__
    __rfloordiv__ = __rtruediv__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return Gaussian(self.re, -self.im)

    def __eq__(self, other):
        o = self._parts(other)
        if o is None:
            return NotImplemented
        return self.re == o[0] and self.im == o[1]

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return True  # im != 0 by construction

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"Gaussian({self.re!r}, {self.im!r})"


def _div(a, b, c, d):
    den = c * c + d * d
    if den == 0:
        raise ZeroDivisionError("Gaussian division by zero")
    return gauss(Fraction(a * c + b * d) / den, Fraction(b * c - a * d) / den)


def gauss(re, im=0):
    """Build an exact complex scalar, collapsing to a rational when ``im == 0``."""
    if im == 0:
        return _q(re)
    return Gaussian(re, im)


I = Gaussian(0, 1)


def normalize(x):
    """Canonical exact form of ``x``; floats are returned unchanged."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Gaussian):
        return x if x.im != 0 else _q(x.re)
    return x


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Gaussian)) and not isinstance(x, bool)


def to_fraction(x) -> Fraction:
    return Fraction(x)


def denominator(x) -> int:
    """Least common denominator of the rational parts of ``x``."""
    if isinstance(x, int):
        return 1
    if isinstance(x, Fraction):
        return x.denominator
    if isinstance(x, Gaussian):
        return math.lcm(denominator(x.re), denominator(x.im))
    raise TypeError(f"not an exact scalar: {x!r}")


def format_scalar(x) -> str:
    """Text form of one exact scalar: ``a``, ``a/b`` or ``a/b+c/d*i``."""
    x = normalize(x)
    if isinstance(x, Gaussian):
        re = "" if x.re == 0 else format_scalar(x.re)
        if x.im == 1:
            im = "i"
        elif x.im == -1:
            im = "-i"
        else:
            im = format_scalar(x.im) + "*i"
        if not re:
            return im
        return re + ("" if im.startswith("-") else "+") + im
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, complex):
        return repr(x)
    return str(x)
