"""Second-order jets in (x, y): value, gradient and Hessian over complex numbers.

Enough calculus to evaluate the Laplacian of closed-form expressions such as
``Psi0(w(x, y)) * P(w(x, y))`` at a point without finite differences.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

__all__ = ["Jet", "jsqrt", "jexp", "jlog", "as_jet"]


def _c(v) -> complex:
    return complex(v)


@dataclass(frozen=True)
class Jet:
    v: complex
    x: complex = 0j
    y: complex = 0j
    xx: complex = 0j
    xy: complex = 0j
    yy: complex = 0j

    @classmethod
    def const(cls, c) -> "Jet":
        return cls(_c(c))

    @classmethod
    def var_x(cls, x0) -> "Jet":
        return cls(_c(x0), 1 + 0j)

    @classmethod
    def var_y(cls, y0) -> "Jet":
        return cls(_c(y0), 0j, 1 + 0j)

    def lap(self) -> complex:
        return self.xx + self.yy

    # chain rule for a scalar function with f, f', f'' at the value
    def _apply(self, f0, f1, f2) -> "Jet":
        return Jet(
            f0,
            f1 * self.x,
            f1 * self.y,
            f2 * self.x * self.x + f1 * self.xx,
            f2 * self.x * self.y + f1 * self.xy,
            f2 * self.y * self.y + f1 * self.yy,
        )

    def __add__(self, o):
        if not isinstance(o, Jet):
            try:
                return Jet(self.v + _c(o), self.x, self.y, self.xx, self.xy, self.yy)
            except TypeError:
                return NotImplemented
        return Jet(self.v + o.v, self.x + o.x, self.y + o.y, self.xx + o.xx, self.xy + o.xy, self.yy + o.yy)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.v, -self.x, -self.y, -self.xx, -self.xy, -self.yy)

    def __sub__(self, o):
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, Jet):
            try:
                c = _c(o)
            except TypeError:
                return NotImplemented
            return Jet(self.v * c, self.x * c, self.y * c, self.xx * c, self.xy * c, self.yy * c)
        return Jet(
            self.v * o.v,
            self.x * o.v + self.v * o.x,
            self.y * o.v + self.v * o.y,
            self.xx * o.v + 2 * self.x * o.x + self.v * o.xx,
            self.xy * o.v + self.x * o.y + self.y * o.x + self.v * o.xy,
            self.yy * o.v + 2 * self.y * o.y + self.v * o.yy,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        if self.v == 0:
            raise ZeroDivisionError("jet reciprocal at zero")
        r = 1 / self.v
        return self._apply(r, -r * r, 2 * r * r * r)

    def __truediv__(self, o):
        if isinstance(o, Jet):
            return self * o.reciprocal()
        return self * (1 / _c(o))

    def __rtruediv__(self, o):
        return self.reciprocal() * _c(o)

    def __pow__(self, e):
        if isinstance(e, int):
            if e == 0:
                return Jet(1 + 0j)
            if e < 0:
                return (self ** (-e)).reciprocal()
            if e == 1:
                return self
            v = self.v
            return self._apply(v ** e, e * v ** (e - 1), e * (e - 1) * v ** (e - 2))
        e = _c(e)
        if self.v == 0:
            raise ZeroDivisionError("non-integer power of a jet at zero")
        f0 = cmath.exp(e * cmath.log(self.v))
        return self._apply(f0, e * f0 / self.v, e * (e - 1) * f0 / (self.v * self.v))

    def exp(self) -> "Jet":
        f = cmath.exp(self.v)
        return self._apply(f, f, f)

    def log(self) -> "Jet":
        return self._apply(cmath.log(self.v), 1 / self.v, -1 / (self.v * self.v))

    def sqrt(self) -> "Jet":
        s = cmath.sqrt(self.v)
        if s == 0:
            raise ZeroDivisionError("sqrt jet at zero")
        return self._apply(s, 0.5 / s, -0.25 / (s * self.v))

    def __complex__(self):
        return self.v


def as_jet(v) -> Jet:
    return v if isinstance(v, Jet) else Jet.const(v)


def jsqrt(v):
    if isinstance(v, Jet):
        return v.sqrt()
    return cmath.sqrt(_c(v))


def jexp(v):
    if isinstance(v, Jet):
        return v.exp()
    return cmath.exp(_c(v))


def jlog(v):
    if isinstance(v, Jet):
        return v.log()
    return cmath.log(_c(v))
