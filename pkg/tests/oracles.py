"""Independent reference computations used by the tests.

Nothing here calls the package's own linear algebra, jets or moment code.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import sympy
from scipy import integrate


def sympy_rank(rows) -> int:
    def conv(v):
        if isinstance(v, Fraction):
            return sympy.Rational(v.numerator, v.denominator)
        if hasattr(v, "re"):
            return conv(v.re) + sympy.I * conv(v.im)
        return sympy.nsimplify(v)

    return sympy.Matrix([[conv(v) for v in r] for r in rows]).rank()


def fd_laplacian(f, x: float, y: float, h: float = 1e-3) -> complex:
    """Fourth-order five-point-per-axis Laplacian."""
    def d2(g):
        return (-g(2 * h) + 16 * g(h) - 30 * g(0) + 16 * g(-h) - g(-2 * h)) / (12 * h * h)

    return d2(lambda t: f(x + t, y)) + d2(lambda t: f(x, y + t))


def gauge_residual_fd(spec, p, P, x: float, y: float) -> float:
    """Gauge identity at (x, y) with finite differences instead of jets."""
    from qes_workbench.catalog import _float_params

    pf = _float_params(p)
    vmap, g = spec.variables(p), spec.gauge(p)

    def psi0(a, b):
        w1, w2 = vmap(a, b)
        return complex(g.evaluate(complex(w1), complex(w2)))

    def f(a, b):
        w1, w2 = vmap(a, b)
        return psi0(a, b) * complex(P.eval((complex(w1), complex(w2))))

    w1, w2 = (complex(v) for v in vmap(x, y))
    lhs = (fd_laplacian(f, x, y) + complex(spec.potential(x, y, pf)) * f(x, y)) / psi0(x, y)
    pref, h = spec.h(p)
    rhs = spec.multiplier(x, y, w1, w2, p) * complex(h.apply(P).eval((w1, w2))) / complex(pref.eval((w1, w2)))
    return abs(lhs - rhs) / (1 + abs(lhs) + abs(rhs))


def quad_2d(weight, a: int, b: int, lo1, hi1, lo2, hi2) -> float:
    """Numerical moment of w1^a w2^b against weight on a rectangle (or simplex via hi2(w1))."""
    val, _ = integrate.dblquad(lambda w2, w1: w1 ** a * w2 ** b * weight(w1, w2), lo1, hi1, lo2, hi2,
                               epsabs=1e-12, epsrel=1e-10)
    return val


def dirichlet_moment(al, be, ga, a, b) -> float:
    return math.gamma(al + a) * math.gamma(be + b) * math.gamma(ga) / math.gamma(al + be + ga + a + b)


def e16_energy(k1, k2, a4, N) -> Fraction:
    k1, k2, a4 = sympy.Rational(str(k1)), sympy.Rational(str(k2)), sympy.Rational(str(a4))
    v = a4 ** 2 / (4 * (1 + 2 * (k1 + k2 + N)) ** 2)
    return Fraction(int(v.p), int(v.q))


def s4_printed(b1, k3, a4, N) -> Fraction:
    b1, k3, a4 = Fraction(b1), Fraction(k3), Fraction(a4)
    return (-4 * b1 ** 2 / (6 - a4 / (2 * k3) + 4 * N) ** 2
            - (8 * N * k3 - a4 + 4 * k3) * (8 * N * k3 - a4 + 12 * k3) / (64 * k3 ** 2))


def sphere_sympy(x, y):
    """s1^2 + s2^2 + s3^2 with the squared-radius numerator, simplified symbolically."""
    X, Y = sympy.symbols("x y")
    s = X ** 2 + Y ** 2
    plus = -sympy.I / (X * Y)
    minus = sympy.I / 4 * s ** 2 / (X * Y)
    s3 = sympy.I / 2 * (Y ** 2 - X ** 2) / (X * Y)
    expr = ((plus + minus) / 2) ** 2 + ((plus - minus) / (2 * sympy.I)) ** 2 + s3 ** 2
    return sympy.simplify(expr.subs({X: x, Y: y}))


def harmonic_x(a3: float, x0: float, p0: float, t: np.ndarray) -> np.ndarray:
    w = 2 * math.sqrt(-a3)
    return x0 * np.cos(w * t) + 2 * p0 / w * np.sin(w * t)
