"""Exact Gaussian rationals a + bi with a, b in Q."""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational


_F0 = Fraction(0)


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        if type(im) is Fraction:
            self.im = im
        else:
            self.im = _F0 if type(im) is int and not im else Fraction(im)

    @classmethod
    def coerce(cls, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Rational)):
            return cls(x)
        if isinstance(x, str):
            return cls.parse(x)
        raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if other is ONE:
            return self
        if self is ONE and isinstance(other, GaussianRational):
            return other
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.im and not o.im:
            return GaussianRational(self.re * o.re)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        n = o.re * o.re + o.im * o.im
        if not n:
            raise ZeroDivisionError("division by zero scalar")
        return self * GaussianRational(o.re / n, -o.im / n)

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        im = "i" if self.im == 1 else "-i" if self.im == -1 else f"{self.im}i"
        if not self.re:
            return im
        sign = "" if im.startswith("-") else "+"
        return f"{self.re}{sign}{im}"

    _TOKEN = re.compile(r"\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*(i?)\s*")

    @classmethod
    def parse(cls, text: str) -> GaussianRational:
        """Parse forms like ``3``, ``-1/2``, ``i``, ``2i``, ``2+i``, ``1/2 - 3/2 i``."""
        s = text.strip()
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        pos, total, seen = 0, cls(0), False
        while pos < len(s):
            m = cls._TOKEN.match(s, pos)
            if m is None or m.end() == pos or not (m.group(2) or m.group(3)):
                raise ValueError(f"bad scalar {text!r} at offset {pos}")
            if seen and not m.group(1):
                raise ValueError(f"missing sign in scalar {text!r} at offset {pos}")
            mag = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            if m.group(1) == "-":
                mag = -mag
            total = total + (cls(0, mag) if m.group(3) else cls(mag))
            seen = True
            pos = m.end()
        if not seen:
            raise ValueError(f"empty scalar {text!r}")
        return total


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
