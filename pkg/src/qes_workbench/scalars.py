"""Exact and floating scalars.

Three kinds of coefficient live in this package:

* ``Fraction`` -- exact rationals (ints are normalised to ``Fraction``);
* :class:`Gauss` -- exact Gaussian rationals ``re + im*i``;
* ``complex`` -- double-precision complex numbers.

Exact arithmetic never degrades to floating point on its own; use
:func:`promote` to move a value into the floating world explicitly.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = [
    "Gauss",
    "I",
    "MixedScalarError",
    "gauss",
    "is_exact",
    "is_float",
    "normalize",
    "promote",
    "conj",
    "parse_scalar",
    "scalar_to_json",
    "scalar_from_json",
    "format_scalar",
]


class MixedScalarError(TypeError):
    """Exact and floating scalars were combined without explicit promotion."""


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)) and not isinstance(v, bool):
        return Fraction(v)
    raise MixedScalarError(f"expected an exact rational, got {v!r}")


class Gauss:
    """Gaussian rational ``re + im*i`` with ``Fraction`` parts.

    Arithmetic results whose imaginary part vanishes are returned as plain
    ``Fraction`` values, so rational computations stay rational.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("Gauss is immutable")

    # ------------------------------------------------------------------ coercion
    @staticmethod
    def _parts(other):
        if isinstance(other, Gauss):
            return other.re, other.im
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Fraction(other), Fraction(0)
        if isinstance(other, (float, complex)):
            raise MixedScalarError("cannot mix exact Gaussian rationals with floats; promote first")
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return gauss(self.re + p[0], self.im + p[1])

    __radd__ = __add__

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return gauss(self.re - p[0], self.im - p[1])

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return gauss(p[0] - self.re, p[1] - self.im)

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = p
        return gauss(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        c, d = p
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("Gaussian rational division by zero")
        a, b = self.re, self.im
        return gauss((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return Gauss(*p) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return Fraction(1) / (self ** (-n))
        result: Gauss | Fraction = Fraction(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def __pos__(self):
        return self

    def __abs__(self):
        return abs(complex(self))

    def __eq__(self, other):
        if isinstance(other, Gauss):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self):
        return Gauss(self.re, -self.im)

    def __repr__(self):
        return f"Gauss({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)


I = Gauss(0, 1)


def gauss(re, im=0):
    """Build a Gaussian rational, collapsing to ``Fraction`` when real."""
    re, im = _frac(re), _frac(im)
    if im == 0:
        return re
    return Gauss(re, im)


def is_exact(c) -> bool:
    return isinstance(c, (int, Fraction, Gauss)) and not isinstance(c, bool)


def is_float(c) -> bool:
    return isinstance(c, (float, complex))


def normalize(c):
    """Canonical form of a scalar: int -> Fraction, real Gauss -> Fraction, float -> complex."""
    if isinstance(c, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, Fraction):
        return c
    if isinstance(c, Gauss):
        return c.re if c.im == 0 else c
    if isinstance(c, float):
        return complex(c)
    if isinstance(c, complex):
        return c
    if isinstance(c, Rational):
        return Fraction(c)
    raise TypeError(f"not a supported scalar: {c!r}")


def promote(c) -> complex:
    """Explicit exact -> floating promotion."""
    return complex(c)


def conj(c):
    if isinstance(c, (int, Fraction)):
        return c
    return c.conjugate()


_RAT = r"[+-]?\d+(?:/\d+)?"
_COMPLEX_RE = re.compile(
    rf"^\s*(?:(?P<re>{_RAT})\s*)?(?:(?P<sign>[+-])?\s*(?P<im>\d+(?:/\d+)?)?\s*(?P<i>[ij]))?\s*$"
)


def parse_scalar(text: str):
    """Parse ``"-1/2"``, ``"3+2i"``, ``"i"``, ``"-i/2"``-style strings exactly.

    Floating literals are rejected; exact inputs must stay exact.
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    # "a/bi" style imaginary with denominator after i, e.g. "i/2", "-3i/4"
    m = re.fullmatch(r"([+-]?)(\d*)[ij]/(\d+)", s)
    if m:
        num = int(m.group(2)) if m.group(2) else 1
        im = Fraction(num, int(m.group(3)))
        return gauss(0, -im if m.group(1) == "-" else im)
    m = _COMPLEX_RE.match(s)
    if not m or (m.group("re") is None and m.group("i") is None):
        raise ValueError(f"malformed exact scalar: {text!r}")
    re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im_part = Fraction(0)
    if m.group("i"):
        im_part = Fraction(m.group("im")) if m.group("im") else Fraction(1)
        if m.group("sign") == "-":
            im_part = -im_part
        elif m.group("sign") is None and m.group("re") is not None:
            if m.group("im") is not None:
                raise ValueError(f"malformed exact scalar: {text!r}")
            # "3i", "1/2i": the leading rational is the imaginary coefficient
            re_part, im_part = Fraction(0), re_part
    return gauss(re_part, im_part)


def _rat_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def scalar_to_json(c):
    """``"num/den"`` for rationals, ``["re", "im"]`` for Gaussian rationals, ``[re, im]`` floats."""
    c = normalize(c)
    if isinstance(c, Fraction):
        return _rat_str(c)
    if isinstance(c, Gauss):
        return [_rat_str(c.re), _rat_str(c.im)]
    return [c.real, c.imag]


def scalar_from_json(obj):
    if isinstance(obj, str):
        return Fraction(obj)
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        if all(isinstance(v, str) for v in obj):
            return gauss(Fraction(obj[0]), Fraction(obj[1]))
        return complex(float(obj[0]), float(obj[1]))
    if isinstance(obj, int):
        return Fraction(obj)
    raise ValueError(f"bad scalar encoding: {obj!r}")


def format_scalar(c) -> str:
    c = normalize(c)
    if isinstance(c, Fraction):
        return _rat_str(c)
    if isinstance(c, Gauss):
        if c.re == 0:
            return f"{_rat_str(c.im)}i"
        sign = "+" if c.im > 0 else "-"
        return f"{_rat_str(c.re)}{sign}{_rat_str(abs(c.im))}i"
    return repr(c)
