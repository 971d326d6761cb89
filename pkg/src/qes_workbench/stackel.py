"""Conformal Stäckel transforms of Laplace systems to Helmholtz eigenproblems.

A Laplace equation ``(Δ + V0 + alpha U) Psi = 0`` is equivalent to the
Helmholtz problem ``U^{-1} (Δ + V0) Psi = -alpha Psi`` on the metric
``ds^2 = U (dx^2 + dy^2)``; the measure picks up the factor ``U``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from . import catalog as cat
from .jets import Jet
from .moments import Weighted
from .polys import Poly2
from .scalars import I, Gauss, normalize, scalar_to_json
from .spectra import InnerProductSpec, e16_inner_product, inner_product, kernel_basis

__all__ = [
    "HelmholtzSystem",
    "cst",
    "e16_eigenvalue",
    "e16_eigenvalue_k3_route",
    "e16_k3",
    "s4_params",
    "s4_eigenvalue",
    "s4_eigenvalue_derived",
    "s4_kernel_residual",
    "sphere_embedding",
    "sphere_embedding_check",
    "transformed_inner_product",
    "same_kernel_residual",
]


@dataclass(frozen=True)
class HelmholtzSystem:
    source: str
    target: str
    split: str
    alpha: object
    U: Callable
    V0: Callable
    U_text: str
    spectral_param: str
    eigenvalue: object
    measure: str

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "split": self.split,
            "U": self.U_text,
            "spectral_param": self.spectral_param,
            "eigenvalue": scalar_to_json(self.eigenvalue),
            "measure": self.measure,
        }


_TARGETS = {("S211", "a4"): "E1", ("S211", "a3"): "E16"}
_U_TEXT = {("S211", "a4"): "1", ("S211", "a3"): "x^2+y^2"}
_U_SIGN = {("S211", "a3"): -1}


def cst(system, params: Mapping, split: str) -> HelmholtzSystem:
    """Split ``V = V0 + alpha U`` along the parameter ``split`` (V is affine in it)."""
    spec = cat.get_system(system)
    p = cat.complete_params(spec.id, params)
    if spec.id == "S211" and split in ("b2", "S4"):
        return _cst_s4(p)
    if split not in ("a1", "a2", "a3", "a4"):
        raise cat.CatalogError(f"unknown split parameter {split!r}")
    if split not in p:
        raise cat.CatalogError(f"{spec.id} has no parameter {split}")
    alpha = p[split]
    p0 = dict(p, **{split: Fraction(0)})
    p1 = dict(p0, **{split: Fraction(1)})

    # U is normalised so the Helmholtz operator is U^{-1}(Δ + V0) with U > 0 where possible
    sign = _U_SIGN.get((spec.id, split), 1)

    def V0(x, y):
        return spec.potential(x, y, p0)

    def U(x, y):
        return sign * (spec.potential(x, y, p1) - spec.potential(x, y, p0))

    target = _TARGETS.get((spec.id, split), f"{spec.id}/{split}")
    return HelmholtzSystem(
        spec.id, target, split, alpha, U, V0,
        _U_TEXT.get((spec.id, split), f"{'-' if sign < 0 else ''}dV/d{split}"),
        split if sign < 0 else f"-{split}",
        alpha if sign < 0 else normalize(-alpha),
        "U dx dy",
    )


def _cst_s4(p) -> HelmholtzSystem:
    b1 = (p["a2"] - p["a1"]) / 2
    b2 = (p["a2"] + p["a1"]) / 2

    def U(x, y):
        return 1 / (x * x) + 1 / (y * y)

    def V0(x, y):
        return b1 * (1 / (y * y) - 1 / (x * x)) - p["a3"] * (x * x + y * y) + p["a4"]

    return HelmholtzSystem("S211", "S4", "b2", b2, U, V0, "(x^2+y^2)/(x^2 y^2)", "-b2", -b2, "U dx dy")


# --------------------------------------------------------------------------- E16


def e16_k3(k1, k2, a4, N: int):
    """k3 from the [211] constraint a4 = -4 k3 (2N + 2k1 + 2k2 + 1)."""
    return normalize(-Fraction(1, 4) * a4 / (2 * N + 2 * k1 + 2 * k2 + 1))


def e16_eigenvalue(k1, k2, a4, N: int):
    """Quantised E16 energy a3 = a4^2 / (4 (1 + 2(k1 + k2 + N))^2)."""
    k1, k2, a4 = normalize(k1), normalize(k2), normalize(a4)
    return normalize(a4 ** 2 / (4 * (1 + 2 * (k1 + k2 + N)) ** 2))


def e16_eigenvalue_k3_route(k1, k2, a4, N: int):
    k3 = e16_k3(normalize(k1), normalize(k2), normalize(a4), N)
    return normalize(4 * k3 ** 2)


def same_kernel_residual(k1, k2, a4, N: int, points) -> float:
    """Max relative residual of ``s^{-1}(Δ + a1/x^2 + a2/y^2 + a4) Ψ - a3 Ψ`` over the
    exact [211] kernel at level N, with a3 from :func:`e16_eigenvalue`."""
    k3 = e16_k3(k1, k2, a4, N)
    params = {"k1": k1, "k2": k2, "k3": k3, "a4": a4}
    p = cat.complete_params("S211", params)
    a3 = e16_eigenvalue(k1, k2, a4, N)
    assert a3 == p["a3"]
    kern = kernel_basis("S211", p, N)
    g = cat.get_system("S211").gauge(p)
    a1, a2, fa4, fa3 = (complex(p[n]) for n in ("a1", "a2", "a4", "a3"))
    worst = 0.0
    for x0, y0 in points:
        X, Y = Jet.var_x(float(x0)), Jet.var_y(float(y0))
        w1, w2 = X * X, Y * Y
        psi0 = g.evaluate(w1, w2)
        s = x0 * x0 + y0 * y0
        for P in kern:
            psi = psi0 * P.eval((w1, w2))
            lhs = (psi.lap() + (a1 / x0 ** 2 + a2 / y0 ** 2 + fa4) * psi.v) / s
            rhs = fa3 * psi.v
            worst = max(worst, abs(lhs - rhs) / (abs(lhs) + abs(rhs) + abs(psi.v) + 1e-300))
    return worst


# --------------------------------------------------------------------------- S4


def s4_params(k1, k2, k3, N: int) -> dict:
    """(a1, a2, a3, a4, b1, b2) of the S4 form built on a [211] level-N solution.

    ``k3`` is the S4 convention: the [211] gauge exponent is ``-k3``, so the
    constraint reads ``a4 = +4 k3 (2N + 2k1 + 2k2 + 1)``.
    """
    k1, k2, k3 = normalize(k1), normalize(k2), normalize(k3)
    a1 = -2 * k1 * (2 * k1 - 1)
    a2 = -2 * k2 * (2 * k2 - 1)
    a4 = 4 * k3 * (2 * N + 2 * k1 + 2 * k2 + 1)
    return {"a1": a1, "a2": a2, "a3": 4 * k3 ** 2, "a4": normalize(a4),
            "b1": normalize((a2 - a1) / 2), "b2": normalize((a2 + a1) / 2)}


def s4_eigenvalue(b1, k3, a4, N: int):
    """b2 = -4 b1^2 / (6 - a4/(2k3) + 4N)^2 - (8Nk3 - a4 + 4k3)(8Nk3 - a4 + 12k3) / (64 k3^2)."""
    b1, k3, a4 = normalize(b1), normalize(k3), normalize(a4)
    first = -4 * b1 ** 2 / (6 - a4 / (2 * k3) + 4 * N) ** 2
    second = -(8 * N * k3 - a4 + 4 * k3) * (8 * N * k3 - a4 + 12 * k3) / (64 * k3 ** 2)
    return normalize(first + second)


def s4_eigenvalue_derived(b1, k3, a4, N: int):
    """b2 from a1, a2 reconstructed through the [211] level-N constraint.

    With T = 4N + 4 - a4/(2 k3): b2 = -4 b1^2/T^2 + 1/4 - T^2/16.
    """
    b1, k3, a4 = normalize(b1), normalize(k3), normalize(a4)
    T = 4 * N + 4 - a4 / (2 * k3)
    return normalize(-4 * b1 ** 2 / T ** 2 + Fraction(1, 4) - T ** 2 / 16)


def s4_kernel_residual(k1, k2, k3, N: int, b2, points) -> float:
    """Residual of the S4 equation on the exact level-N [211] kernel for a given b2."""
    prm = s4_params(k1, k2, k3, N)
    b1 = prm["b1"]
    p211 = cat.complete_params("S211", {"k1": k1, "k2": k2, "k3": -normalize(k3), "a4": prm["a4"]})
    kern = kernel_basis("S211", p211, N)
    g = cat.get_system("S211").gauge(p211)
    a3, a4, fb1, fb2 = (complex(v) for v in (prm["a3"], prm["a4"], b1, normalize(b2)))
    worst = 0.0
    for x0, y0 in points:
        X, Y = Jet.var_x(float(x0)), Jet.var_y(float(y0))
        psi0 = g.evaluate(X * X, Y * Y)
        s = x0 * x0 + y0 * y0
        q = x0 * x0 * y0 * y0
        for P in kern:
            psi = psi0 * P.eval((X * X, Y * Y))
            val = (q / s) * psi.lap() + (-a3 * q + a4 * q / s + fb1 * (x0 * x0 - y0 * y0) / s + fb2) * psi.v
            worst = max(worst, abs(val) / (abs(psi.v) * (1 + abs(fb2) + abs(a4)) + abs((q / s) * psi.lap())))
    return worst


def sphere_embedding(x, y, variant: str = "corrected"):
    """(s1, s2, s3) from degenerate elliptic coordinates of type 2.

    ``variant="printed"`` uses s1 - i s2 = (i/4)(x^2+y^2)/(xy); the corrected
    embedding uses (i/4)(x^2+y^2)^2/(xy), which lies on the sphere.
    """
    x, y = normalize(x), normalize(y)
    if x * y == 0:
        raise cat.SingularPointError("sphere embedding needs x y != 0")
    xy = x * y
    s = x * x + y * y
    plus = -I / xy
    minus = (I / 4) * (s * s if variant == "corrected" else s) / xy
    s3 = (I / 2) * (y * y - x * x) / xy
    s1 = (plus + minus) / 2
    s2 = (plus - minus) / (2 * I)
    return normalize(s1), normalize(s2), normalize(s3)


def sphere_embedding_check(x, y, variant: str = "corrected"):
    """|s1^2 + s2^2 + s3^2 - 1|, exact for exact inputs."""
    s1, s2, s3 = sphere_embedding(x, y, variant)
    r = normalize(s1 * s1 + s2 * s2 + s3 * s3 - 1)
    if isinstance(r, Gauss):
        return r
    return abs(r)


# --------------------------------------------------------------------------- measures


def transformed_inner_product(system, params: Mapping, target: str = "E16", check: bool = True) -> InnerProductSpec:
    """Inner product after a Stäckel transform: the source measure times U."""
    if target == "E16":
        return e16_inner_product(params, check)
    if target in ("E1", "identity"):
        return inner_product(system, params, check)
    raise cat.CatalogError(f"no moment-computable transformed measure for target {target!r}")
