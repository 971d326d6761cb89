"""Closed-form moment families for Gram matrices.

Each family returns exact *relative* moments ``m(a, b) / m(0, 0)`` whenever its
shape parameters are rational, and a floating normalisation ``m(0, 0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

__all__ = [
    "poch",
    "Dirichlet",
    "GammaProduct",
    "GaussianProduct",
    "GammaGaussian",
    "Disk",
    "Weighted",
]


def poch(x, n: int):
    """Rising factorial (x)_n."""
    out = Fraction(1) if isinstance(x, (int, Fraction)) else 1.0
    for j in range(n):
        out *= x + j
    return out


def _gamma(x) -> float:
    return math.gamma(float(x))


@dataclass(frozen=True)
class Dirichlet:
    """Simplex w1, w2 >= 0, w1 + w2 <= 1 with density w1^(al-1) w2^(be-1) (1-w1-w2)^(ga-1)."""

    al: Fraction
    be: Fraction
    ga: Fraction
    domain = "simplex"

    def rel(self, a: int, b: int):
        return poch(self.al, a) * poch(self.be, b) / poch(self.al + self.be + self.ga, a + b)

    @property
    def norm(self) -> float:
        return _gamma(self.al) * _gamma(self.be) * _gamma(self.ga) / _gamma(self.al + self.be + self.ga)

    def describe(self) -> str:
        return f"simplex, w1^({self.al - 1}) w2^({self.be - 1}) (1-w1-w2)^({self.ga - 1})"


def _gamma_rel(s, lam, a: int):
    # int_0^oo w^(s-1+a) e^(-lam w) dw relative to a = 0
    return poch(s, a) / lam ** a


@dataclass(frozen=True)
class GammaProduct:
    """Quadrant with density w1^(s1-1) w2^(s2-1) exp(-lam (w1 + w2))."""

    s1: Fraction
    s2: Fraction
    lam: Fraction
    domain = "quadrant"

    def rel(self, a: int, b: int):
        return _gamma_rel(self.s1, self.lam, a) * _gamma_rel(self.s2, self.lam, b)

    @property
    def norm(self) -> float:
        lam = float(self.lam)
        return _gamma(self.s1) * _gamma(self.s2) / lam ** float(self.s1 + self.s2)

    def describe(self) -> str:
        return f"quadrant, w1^({self.s1 - 1}) w2^({self.s2 - 1}) exp(-{self.lam}(w1+w2))"


def _gauss_rel(lam, mu, n: int):
    """int w^n exp(lam w^2 + mu w) dw relative to n = 0, lam < 0."""
    var = Fraction(-1, 2) / lam
    c = -mu / (2 * lam)
    total = Fraction(0)
    for k in range(0, n + 1, 2):
        dfact = 1
        for j in range(k - 1, 0, -2):
            dfact *= j
        total += comb(n, k) * c ** (n - k) * var ** (k // 2) * dfact
    return total


def _gauss_norm(lam, mu) -> float:
    lam, mu = float(lam), float(mu)
    return math.sqrt(math.pi / -lam) * math.exp(-mu * mu / (4 * lam))


@dataclass(frozen=True)
class GaussianProduct:
    """Plane with density exp(lam (w1^2 + w2^2) + mu1 w1 + mu2 w2)."""

    lam: Fraction
    mu1: Fraction = Fraction(0)
    mu2: Fraction = Fraction(0)
    domain = "plane"

    def rel(self, a: int, b: int):
        return _gauss_rel(self.lam, self.mu1, a) * _gauss_rel(self.lam, self.mu2, b)

    @property
    def norm(self) -> float:
        return _gauss_norm(self.lam, self.mu1) * _gauss_norm(self.lam, self.mu2)

    def describe(self) -> str:
        return f"plane, exp({self.lam}(w1^2+w2^2) + {self.mu1} w1 + {self.mu2} w2)"


@dataclass(frozen=True)
class GammaGaussian:
    """Half-plane strip: exp(glam w1^2 + gmu w1) on R times w2^(s-1) exp(-lam w2) on (0, oo)."""

    glam: Fraction
    gmu: Fraction
    s: Fraction
    lam: Fraction
    domain = "halfplane-strip"

    def rel(self, a: int, b: int):
        return _gauss_rel(self.glam, self.gmu, a) * _gamma_rel(self.s, self.lam, b)

    @property
    def norm(self) -> float:
        return _gauss_norm(self.glam, self.gmu) * _gamma(self.s) / float(self.lam) ** float(self.s)

    def describe(self) -> str:
        return (f"w1 in R, w2 > 0, exp({self.glam} w1^2 + {self.gmu} w1) "
                f"w2^({self.s - 1}) exp(-{self.lam} w2)")


@dataclass(frozen=True)
class Disk:
    """Unit disk with density (1 - u1^2 - u2^2)^c."""

    c: Fraction
    domain = "ball"

    def rel(self, a: int, b: int):
        if a % 2 or b % 2:
            return Fraction(0)
        return poch(Fraction(1, 2), a // 2) * poch(Fraction(1, 2), b // 2) / poch(self.c + 2, (a + b) // 2)

    @property
    def norm(self) -> float:
        return math.pi / float(self.c + 1)

    def describe(self) -> str:
        return f"unit disk, (1-u1^2-u2^2)^({self.c})"


@dataclass(frozen=True)
class Weighted:
    """``base`` density multiplied by a polynomial weight given as {(da, db): coeff}."""

    base: object
    extra: tuple[tuple[tuple[int, int], Fraction], ...]

    @property
    def domain(self) -> str:
        return self.base.domain

    def rel(self, a: int, b: int):
        return sum((c * self.base.rel(a + da, b + db) for (da, db), c in self.extra), Fraction(0))

    @property
    def norm(self) -> float:
        return self.base.norm

    def describe(self) -> str:
        terms = " + ".join(f"{c} w1^{da} w2^{db}" for (da, db), c in self.extra)
        return f"{self.base.describe()} times ({terms})"
