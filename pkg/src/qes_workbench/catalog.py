"""The fourteen conformally superintegrable Laplace systems in two dimensions.

Each :class:`SystemSpec` bundles the potential, the parameter map a(k), the
polynomial variables w(x, y), the gauge factor Psi0, the gauge-transformed
operator h acting on polynomials, its gl(3) form, the conformal symmetries,
the quantisation constraint and the inner product.

Conventions fixed here (see also the README):

* ``Psi0^{-1} (Δ + V) (Psi0 · P∘w) = μ(x, y) · [(h P) / prefactor](w)``;
  ``μ`` is the conformal multiplier and ``prefactor`` the clearing polynomial
  (non-trivial for B and F only).
* Multivalued maps use principal branches of ``sqrt`` and ``log``.
* Symmetry operators carry a frame tag: ``"w"`` (polynomial variables),
  ``"xy"`` (Cartesian) or ``"zzbar"`` (z = x+iy, zbar = x-iy, where
  Δ = 4 ∂z ∂zbar).  Laurent coefficients are allowed there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .diffops import DiffOp2, mult
from .gl3 import Gl3Expression, to_diffop
from .jets import Jet, jexp, jsqrt
from .polys import ONE, W1, W2, Poly2, RectangleSpace, TotalDegreeSpace
from .scalars import I, is_exact, normalize, parse_scalar

__all__ = [
    "SYSTEM_IDS",
    "CatalogError",
    "UnknownSystem",
    "MissingParameter",
    "ParameterMismatch",
    "NoPolynomialStructure",
    "SingularPointError",
    "PhysicalRangeError",
    "GaugeFactor",
    "VariableMap",
    "Symmetry",
    "SystemSpec",
    "get_system",
    "list_systems",
    "complete_params",
    "potential",
    "build_h",
    "build_symmetries",
    "frame_hamiltonian",
    "gl3_form",
    "verify_gl3_form",
    "verify_gauge_transform",
    "reduced_operator",
    "check_physical",
    "catalog_json",
    "PARAM_NAMES",
]

PARAM_NAMES = (
    "a1", "a2", "a3", "a4", "k1", "k2", "k3", "k4",
    "N", "M", "n1", "n2", "m", "A", "b1", "b2", "lam", "c", "r", "alpha", "beta", "gauge",
)
_ALIASES = {"lambda": "lam", "n_1": "n1", "n_2": "n2"}


class CatalogError(ValueError):
    pass


class UnknownSystem(CatalogError):
    pass


class MissingParameter(CatalogError):
    pass


class ParameterMismatch(CatalogError):
    pass


class NoPolynomialStructure(CatalogError):
    pass


class SingularPointError(CatalogError):
    pass


class PhysicalRangeError(CatalogError):
    pass


def P(c) -> Poly2:
    return Poly2.const(c)


def op(terms: Mapping[tuple[int, int], object]) -> DiffOp2:
    return DiffOp2({d: (c if isinstance(c, Poly2) else P(c)) for d, c in terms.items()})


def _anti(a: DiffOp2, b: DiffOp2) -> DiffOp2:
    return a.compose(b) + b.compose(a)


# --------------------------------------------------------------------------- data types


@dataclass(frozen=True)
class GaugeFactor:
    """``Psi0 = exp(exp_num / exp_den) * prod(base ** exponent)`` in the w variables."""

    exp_num: Poly2
    exp_den: Poly2 = ONE
    powers: tuple[tuple[Poly2, object], ...] = ()

    def evaluate(self, w1, w2):
        e = self.exp_num.eval((w1, w2))
        if self.exp_den != ONE:
            e = e / self.exp_den.eval((w1, w2))
        val = jexp(e)
        for base, ex in self.powers:
            b = base.eval((w1, w2))
            if isinstance(b, Jet):
                val = val * (b ** complex(ex))
            else:
                b = complex(b)
                if b == 0:
                    raise SingularPointError("gauge factor base vanishes")
                val = val * b ** complex(ex)
        return val

    def describe(self) -> str:
        s = f"exp(({self.exp_num.pretty()})"
        if self.exp_den != ONE:
            s += f"/({self.exp_den.pretty()})"
        s += ")"
        for b, e in self.powers:
            s += f" * ({b.pretty()})^({e})"
        return s

    def to_json(self) -> dict:
        from .scalars import scalar_to_json

        return {
            "exp_num": self.exp_num.to_json(),
            "exp_den": self.exp_den.to_json(),
            "powers": [{"base": b.to_json(), "exponent": scalar_to_json(e)} for b, e in self.powers],
            "text": self.describe(),
        }


@dataclass(frozen=True)
class VariableMap:
    description: str
    forward: Callable

    def __call__(self, x, y):
        return self.forward(x, y)

    def jet_forward(self, x, y):
        return self.forward(Jet.var_x(x), Jet.var_y(y))


@dataclass(frozen=True)
class Symmetry:
    """A conformal symmetry ``prefactor^{-1} * op`` in the given frame."""

    name: str
    op: DiffOp2
    frame: str = "w"
    prefactor: Poly2 = ONE
    note: str = ""

    def apply(self, p: Poly2) -> Poly2:
        img = self.op.apply(p)
        if self.prefactor == ONE:
            return img
        return img.divexact(self.prefactor)


@dataclass(frozen=True)
class SystemSpec:
    id: str
    label: str
    table: int
    solvability: str
    separable: tuple[str, ...]
    inputs: tuple[str, ...]
    derive: Callable[[dict], dict]
    potential_text: str
    potential: Callable
    variables: Callable[[dict], VariableMap] | None = None
    gauge: Callable[[dict], GaugeFactor] | None = None
    multiplier: Callable | None = None
    h: Callable[[dict], tuple[Poly2, DiffOp2]] | None = None
    gl3: Callable[[dict], Gl3Expression] | None = None
    symmetries: Callable[[dict], list[Symmetry]] = lambda p: []
    hamiltonian: Callable[[dict], DiffOp2] | None = None
    spectral: str | None = None
    constraint_text: str = ""
    solve_constraint: Callable[[dict, int], object] | None = None
    space: Callable[[dict, int], object] | None = None
    physical: Callable[[dict], list[str]] = lambda p: []
    notes: tuple[str, ...] = ()


# --------------------------------------------------------------------------- helpers


def _g(p: Mapping, name: str):
    if name not in p:
        raise MissingParameter(f"parameter {name!r} is required")
    return p[name]


def _int(p: Mapping, name: str) -> int:
    v = _g(p, name)
    if not (isinstance(v, Fraction) and v.denominator == 1 and v >= 0):
        raise CatalogError(f"{name} must be a non-negative integer, got {v}")
    return int(v)


def _set_derived(p: dict, name: str, value) -> None:
    value = normalize(value)
    if name in p and p[name] != value:
        raise ParameterMismatch(f"{name}={p[name]} contradicts the parameter map value {value}")
    p[name] = value


def _real(v) -> bool:
    return isinstance(v, Fraction)


def _need_real(p, names, msgs):
    for n in names:
        if n in p and not _real(p[n]):
            msgs.append(f"{n} must be real in physical mode")


def _ge(p, name, bound, msgs, text):
    v = p.get(name)
    if v is None or not _real(v) or v < bound:
        msgs.append(text)


def _lt(p, name, bound, msgs, text):
    v = p.get(name)
    if v is None or not _real(v) or not v < bound:
        msgs.append(text)


def _inv(v, what="value"):
    try:
        return Fraction(1, v) if isinstance(v, int) else 1 / v
    except ZeroDivisionError:
        raise SingularPointError(f"singular point: {what} vanishes") from None


def _sq(v):
    return v * v


# --------------------------------------------------------------------------- [1111]


def _d1111(p):
    for i in (1, 2, 3):
        k = _g(p, f"k{i}")
        _set_derived(p, f"a{i}", -2 * k * (2 * k - 1))
    return p


def _V1111(x, y, p):
    s = x * x + y * y
    return (p["a1"] * _inv(x * x, "x") + p["a2"] * _inv(y * y, "y")
            + 4 * p["a3"] * _inv(_sq(s - 1), "x^2+y^2-1") - 4 * p["a4"] * _inv(_sq(s + 1), "x^2+y^2+1"))


def _vars1111(p):
    def f(x, y):
        den = _inv(_sq(x * x + y * y + 1))
        return 4 * x * x * den, 4 * y * y * den
    return VariableMap("w1 = 4x^2/(x^2+y^2+1)^2, w2 = 4y^2/(x^2+y^2+1)^2", f)


def _K(p):
    return p["k1"] + p["k2"] + p["k3"]


def _h1111(p):
    k1, k2, K = p["k1"], p["k2"], _K(p)
    E0 = -Fraction(1, 2) * (_g(p, "a4") + 2 * K * (1 + 2 * K))
    h = op({
        (2, 0): 2 * W1 * (1 - W1),
        (0, 2): 2 * W2 * (1 - W2),
        (1, 1): -4 * W1 * W2,
        (1, 0): (1 + 4 * k1) - (3 + 4 * K) * W1,
        (0, 1): (1 + 4 * k2) - (3 + 4 * K) * W2,
        (0, 0): E0,
    })
    return ONE, h


def _gl1111(p, printed=False):
    k1, k2, K = p["k1"], p["k2"], _K(p)
    E0 = -Fraction(1, 2) * (_g(p, "a4") + 2 * K * (1 + 2 * K))
    e = Gl3Expression()
    for i, k in ((1, k1), (2, k2)):
        j0, jm = f"J0_{i}{i}", f"Jminus{i}"
        e.add_product(j0, jm, 2).add_product(j0, j0, -2)
        e.add_linear(jm, 1 + 4 * k).add_linear(j0, -(1 + 4 * K))
    if printed:
        e.add_linear("J0_12", -4)
    else:
        e.add_product("J0_11", "J0_22", -4)
    return e.add_const(E0)


def _sym1111(p):
    k1, k2, k3 = p["k1"], p["k2"], p["k3"]
    L1 = op({
        (2, 0): W1 * W2, (1, 1): -2 * W1 * W2, (0, 2): W1 * W2,
        (0, 1): W1.scale(Fraction(1, 2) * (1 + 4 * k2)) - W2.scale(Fraction(1, 2) * (1 + 4 * k1)),
        (1, 0): -(W1.scale(Fraction(1, 2) * (1 + 4 * k2)) - W2.scale(Fraction(1, 2) * (1 + 4 * k1))),
    })
    L2 = op({
        (2, 0): -W1 * (W1 + W2 - 1),
        (1, 0): Fraction(1, 2) + 2 * k1 - (1 + 2 * k1 + 2 * k3) * W1 - Fraction(1, 2) * (1 + 4 * k1) * W2,
        (0, 0): -2 * k1,
    })
    return [Symmetry("L1", L1), Symmetry("L2", L2)]


def gl3_symmetries_1111(p) -> dict[str, Gl3Expression]:
    """gl(3) forms of the two [1111] symmetries."""
    k1, k2, k3 = p["k1"], p["k2"], p["k3"]
    L1 = (Gl3Expression()
          .add_product("J0_12", "J0_22", 1).add_product("J0_21", "J0_11", 1)
          .add_product("J0_22", "J0_11", -2).add_linear("J0_12", -1).add_linear("J0_21", -1)
          .add_linear("J0_12", Fraction(1, 2) * (1 + 4 * k2)).add_linear("J0_11", -Fraction(1, 2) * (1 + 4 * k2))
          .add_linear("J0_21", Fraction(1, 2) * (1 + 4 * k1)).add_linear("J0_22", -Fraction(1, 2) * (1 + 4 * k1)))
    L2 = (Gl3Expression()
          .add_product("J0_21", "J0_11", -1).add_product("J0_11", "J0_11", -1)
          .add_product("J0_11", "Jminus1", 1).add_linear("J0_21", 1).add_linear("J0_11", 1)
          .add_linear("Jminus1", Fraction(1, 2) + 2 * k1).add_linear("J0_21", -(Fraction(1, 2) + 2 * k1))
          .add_linear("J0_11", -(1 + 2 * k1 + 2 * k3)).add_const(-2 * k1))
    return {"L1": L1, "L2": L2}


def _phys1111(p):
    msgs: list[str] = []
    for n in ("k1", "k2", "k3"):
        _ge(p, n, Fraction(1, 4), msgs, f"Square-integrability demands {n} >= 1/4")
    return msgs


# --------------------------------------------------------------------------- [211]


def _d211(p):
    for i in (1, 2):
        k = _g(p, f"k{i}")
        _set_derived(p, f"a{i}", -2 * k * (2 * k - 1))
    _set_derived(p, "a3", 4 * _g(p, "k3") ** 2)
    return p


def _V211(x, y, p):
    return (p["a1"] * _inv(x * x, "x") + p["a2"] * _inv(y * y, "y")
            - p["a3"] * (x * x + y * y) + p.get("a4", 0))


def _vars_sq(p):
    return VariableMap("w1 = x^2, w2 = y^2", lambda x, y: (x * x, y * y))


def _E0_211(p):
    return 4 * p["k3"] * (1 + 2 * p["k1"] + 2 * p["k2"]) + _g(p, "a4")


def _h211(p):
    k1, k2, k3 = p["k1"], p["k2"], p["k3"]
    return ONE, op({
        (2, 0): 4 * W1, (0, 2): 4 * W2,
        (1, 0): 2 * (4 * k1 + 1 + 4 * k3 * W1),
        (0, 1): 2 * (4 * k2 + 1 + 4 * k3 * W2),
        (0, 0): _E0_211(p),
    })


def _gl211(p):
    k1, k2, k3 = p["k1"], p["k2"], p["k3"]
    return (Gl3Expression()
            .add_product("J0_11", "Jminus1", 4).add_linear("J0_11", 8 * k3).add_linear("J0_22", 8 * k3)
            .add_linear("Jminus1", 2 * (1 + 4 * k1)).add_product("J0_22", "Jminus2", 4)
            .add_linear("Jminus2", 2 * (1 + 4 * k2)).add_const(_E0_211(p)))


def _sym211(p):
    k1, k2, k3 = p["k1"], p["k2"], p["k3"]
    L1 = op({(2, 0): 2 * W1, (1, 0): 4 * k1 + 1 + 4 * k3 * W1, (0, 0): 2 * k3 * (1 + 2 * k1)})
    c = -8 * k2 * W1 + 8 * k1 * W2 - 2 * W1 + 2 * W2
    L2 = op({(2, 0): 4 * W1 * W2, (1, 1): -8 * W1 * W2, (0, 2): 4 * W1 * W2, (1, 0): c, (0, 1): -c})
    return [Symmetry("L1", L1), Symmetry("L2", L2)]


def _phys211(p):
    msgs: list[str] = []
    _ge(p, "k1", Fraction(1, 4), msgs, "Square-integrability demands k1 >= 1/4")
    _ge(p, "k2", Fraction(1, 4), msgs, "Square-integrability demands k2 >= 1/4")
    _lt(p, "k3", 0, msgs, "Square-integrability demands k3 < 0")
    return msgs


# --------------------------------------------------------------------------- [22]


def _d22(p):
    k1, k2, k3 = _g(p, "k1"), _g(p, "k2"), _g(p, "k3")
    n1, n2 = _int(p, "n1"), _int(p, "n2")
    _set_derived(p, "a1", 4 * k2 * (2 * n2 - 2 * k3 + 1))
    _set_derived(p, "a2", 4 * k2 ** 2)
    _set_derived(p, "a3", -4 * k1 * (2 * n1 - 2 * k3 + 1))
    _set_derived(p, "a4", 4 * k1 ** 2)
    return p


def _V22(x, y, p):
    z, zb = _zz(x, y)
    iz = _inv(z, "x+iy")
    return p["a1"] * iz * iz + p["a2"] * zb * iz * iz * iz + p["a3"] - p["a4"] * z * zb


def _vars22(p):
    def f(x, y):
        ex = is_exact(x) and is_exact(y)
        z = x + I * y if ex else x + 1j * y
        zb = x - I * y if ex else x - 1j * y
        return x * x + y * y, zb * _inv(z, "x+iy")
    return VariableMap("w1 = x^2+y^2, w2 = (x-iy)/(x+iy)", f)


def _h22(p):
    k1, k2, k3 = p["k1"], p["k2"], p["k3"]
    n1, n2 = _int(p, "n1"), _int(p, "n2")
    return ONE, op({
        (2, 0): 4 * W1 * W1, (0, 2): -4 * W2 * W2,
        (1, 0): 4 * W1 * (2 * k1 * W1 - 2 * k3 + 1),
        (0, 1): -4 * W2 * (2 * k2 * W2 - 2 * k3 + 1),
        (0, 0): 8 * (-k1 * n1 * W1 + k2 * n2 * W2),
    })


def _sym22(p):
    k1, k2, k3 = p["k1"], p["k2"], p["k3"]
    n2 = _int(p, "n2")
    L1 = op({
        (0, 2): -4 * W2 * W2,
        (0, 1): -4 * W2 * (2 * k2 * W2 - 2 * k3 + 1),
        (0, 0): 8 * k2 * n2 * W2 - 4 * ((k2 - k3) ** 2 + 2 * k2 * n2 + k2),
    })
    iw1, iw2 = Poly2.monomial(-1, 0), Poly2.monomial(0, -1)
    L2 = op({
        (2, 0): 4 * W1 * iw2, (1, 1): 8, (0, 2): 4 * W2 * iw1,
        (1, 0): 8 * iw2 * (k1 * W1 + k2 * W2 - 2 * k3),
        (0, 1): 8 * iw1 * (k1 * W1 + k2 * W2 - 2 * k3),
        (0, 0): -8 * k3 * iw1 * iw2 * (2 * k1 * W1 + 2 * k2 * W2 - 2 * k3 - 1),
    })
    return [Symmetry("L1", L1), Symmetry("L2", L2, note="Laurent coefficients; does not preserve polynomials")]


# --------------------------------------------------------------------------- [31]


def _d31(p):
    k2, k3, k4 = _g(p, "k2"), _g(p, "k3"), _g(p, "k4")
    _set_derived(p, "a2", 4 * k2 * k3)
    _set_derived(p, "a3", -k3 ** 2)
    _set_derived(p, "a4", -2 * k4 * (2 * k4 - 1))
    return p


def _V31(x, y, p):
    return (_g(p, "a1") - p["a2"] * x + p["a3"] * (4 * x * x + y * y) + p["a4"] * _inv(y * y, "y"))


def _vars31(p):
    return VariableMap("w1 = x, w2 = y^2", lambda x, y: (x * Fraction(1) if is_exact(x) else x, y * y))


def _c31(p):
    return p["k2"] ** 2 + 4 * p["k3"] * p["k4"] + 3 * p["k3"] + _g(p, "a1")


def _h31(p):
    k2, k3, k4 = p["k2"], p["k3"], p["k4"]
    return ONE, op({
        (2, 0): 1, (0, 2): 4 * W2,
        (1, 0): 2 * k2 + 4 * k3 * W1,
        (0, 1): 8 * k4 + 2 + 4 * k3 * W2,
        (0, 0): _c31(p),
    })


def _gl31(p):
    k2, k3, k4 = p["k2"], p["k3"], p["k4"]
    return (Gl3Expression()
            .add_product("Jminus1", "Jminus1", 1).add_linear("Jminus1", 2 * k2).add_linear("J0_11", 4 * k3)
            .add_product("J0_22", "Jminus2", 4).add_linear("Jminus2", 8 * k4 + 2).add_linear("J0_22", 4 * k3)
            .add_const(_c31(p)))


def _sym31(p):
    k2, k3, k4 = p["k2"], p["k3"], p["k4"]
    L1 = op({(2, 0): 1, (1, 0): 4 * k3 * W1 + 2 * k2, (0, 0): k2 ** 2 + 2 * k3})
    L2 = op({
        (1, 0): -k3 * W2 - 2 * k4 - Fraction(1, 2),
        (0, 1): -2 * k2 * W2 + 8 * k4 * W1 + 2 * W1,
        (1, 1): -2 * W2,
        (0, 2): 4 * W1 * W2,
        (0, 0): -Fraction(1, 2) * k2 * (4 * k4 + 1),
    })
    return [Symmetry("L1", L1), Symmetry("L2", L2)]


def _phys31(p):
    msgs: list[str] = []
    _ge(p, "k4", Fraction(1, 4), msgs, "Square-integrability demands k4 >= 1/4")
    _lt(p, "k3", 0, msgs, "Square-integrability demands k3 < 0")
    _need_real(p, ("k2",), msgs)
    return msgs


# --------------------------------------------------------------------------- [4]


def _d4(p):
    k4 = _g(p, "k4")
    if k4 == 0:
        raise CatalogError("k4 must be nonzero")
    _set_derived(p, "a4", -k4 ** 2)
    return p


def _zz(x, y):
    ex = is_exact(x) and is_exact(y)
    return (x + I * y, x - I * y) if ex else (x + 1j * y, x - 1j * y)


def _V4(x, y, p):
    z, zb = _zz(x, y)
    return (_g(p, "a1") - p["a2"] * z + p["a3"] * (3 * z * z + 2 * zb)
            - p["a4"] * (4 * z * zb + 2 * z * z * z))


def _vars4(p):
    def f(x, y):
        z, zb = _zz(x, y)
        r = jsqrt(2 * zb)
        return (-1j * z - 1j * r) / 4, (-1j * z + 1j * r) / 4
    return VariableMap("w1,2 = (y - ix -/+ i sqrt(2(x-iy)))/4, principal sqrt", f)


def _c4(p, w: Poly2) -> Poly2:
    k4, a2, a3 = p["k4"], p["a2"], p["a3"]
    return (-32 * k4 ** 4 * w * w + 8 * I * k4 ** 2 * a3 * w - (k4 ** 2 * a2 + a3 ** 2)) / k4 ** 3


def _Z4(p):
    k4, a1, a2, a3 = p["k4"], _g(p, "a1"), p["a2"], p["a3"]
    return 4 * I * (2 * a1 * k4 ** 4 + a2 * a3 * k4 ** 2 + a3 ** 3 - 8 * I * k4 ** 5) / k4 ** 4


def _h4(p):
    return ONE, op({
        (2, 0): -1, (1, 0): -_c4(p, W1),
        (0, 2): 1, (0, 1): _c4(p, W2),
        (0, 0): _Z4(p) * (W1 - W2),
    })


def Y_operator(p, s: int, N: int) -> DiffOp2:
    """One-variable piece with ``h = Y_1 - Y_2`` under the quantisation constraint."""
    p = complete_params("S4", p)
    w = W1 if s == 1 else W2
    der = (2, 0) if s == 1 else (0, 2)
    one = (1, 0) if s == 1 else (0, 1)
    return op({der: -1, one: -_c4(p, w), (0, 0): -32 * p["k4"] * N * w})


def _sym4(p):
    k4, a2, a3 = p["k4"], p["a2"], p["a3"]
    const = (16 * I * k4 ** 5 * a3 + a3 ** 4 + k4 ** 4 * a2 ** 2 + 2 * k4 ** 2 * a2 * a3 ** 2) / (4 * k4 ** 6)
    L2 = op({
        (1, 0): W2 * _c4(p, W1), (0, 1): -W1 * _c4(p, W2),
        (2, 0): W2, (0, 2): -W1,
        (0, 0): -const * (W1 - W2),
    })
    return [Symmetry("L2", L2, prefactor=W1 - W2, note="cleared by (w1 - w2)")]


def _space4(p, N):
    return RectangleSpace(N, N)


def _solve4(p, N):
    k4, a2, a3 = p["k4"], p["a2"], p["a3"]
    return 4 * I * k4 * (N + 1) - a2 * a3 / (2 * k4 ** 2) - a3 ** 3 / (2 * k4 ** 4)


def _mult4(x, y, w1, w2, p):
    return -1j / (8 * (complex(w1) - complex(w2)))


# --------------------------------------------------------------------------- [0]


def _d0(p):
    k2, k3, k4 = _g(p, "k2"), _g(p, "k3"), _g(p, "k4")
    if k4 == 0:
        raise CatalogError("k4 must be nonzero")
    _set_derived(p, "a2", 4 * k4 * k2)
    _set_derived(p, "a3", 4 * k4 * k3)
    _set_derived(p, "a4", -4 * k4 ** 2)
    return p


def _V0(x, y, p):
    return _g(p, "a1") - (p["a2"] * x + p["a3"] * y) + p["a4"] * (x * x + y * y)


def _vars0(p):
    s1 = -p["a2"] / (2 * p["a4"])
    s2 = -p["a3"] / (2 * p["a4"])
    return VariableMap("w1 = x - a2/(2a4), w2 = y - a3/(2a4)", lambda x, y: (x + s1, y + s2))


def _c0(p):
    return p["k2"] ** 2 + p["k3"] ** 2 + _g(p, "a1") + 4 * p["k4"]


def _h0(p):
    k4 = p["k4"]
    return ONE, op({(2, 0): 1, (0, 2): 1, (1, 0): 4 * k4 * W1, (0, 1): 4 * k4 * W2, (0, 0): _c0(p)})


def _gl0(p):
    k4 = p["k4"]
    return (Gl3Expression().add_product("Jminus1", "Jminus1", 1).add_product("Jminus2", "Jminus2", 1)
            .add_linear("J0_11", 4 * k4).add_linear("J0_22", 4 * k4).add_const(_c0(p)))


def _sym0(p):
    k2, k3, k4 = p["k2"], p["k3"], p["k4"]
    L1 = op({(1, 0): 4 * k4 * W1, (2, 0): 1, (0, 0): k2 ** 2 + 2 * k4})
    L2 = op({(1, 0): 2 * k4 * W2, (0, 1): 2 * k4 * W1, (1, 1): 1, (0, 0): k2 * k3})
    return [Symmetry("L1", L1), Symmetry("L2", L2)]


def _phys0(p):
    msgs: list[str] = []
    _lt(p, "k4", 0, msgs, "Square-integrability demands k4 < 0")
    _need_real(p, ("k2", "k3"), msgs)
    return msgs


# --------------------------------------------------------------------------- (1), (2)


def _dX(p):
    if _g(p, "lam") == 0:
        raise CatalogError("lam must be nonzero")
    for n in ("a1", "a2", "a3", "a4"):
        p.setdefault(n, Fraction(0))
    return p


def _VX1(x, y, p):
    z, _ = _zz(x, y)
    iz = _inv(z, "x+iy")
    return p["a1"] * iz ** 2 + p["a2"] - p["a3"] * iz ** 3 + p["a4"] * iz ** 4


def _VX2(x, y, p):
    z, _ = _zz(x, y)
    return p["a1"] + p["a2"] * z + p["a3"] * z ** 2 + p["a4"] * z ** 3


def _vars_z(p):
    return VariableMap("w1 = z = x+iy, w2 = zbar = x-iy", lambda x, y: _zz(x, y))


def _gaugeX1(p):
    lam = p["lam"]
    num = lam * W2 * W1 ** 3 + (p["a1"] * W1 * W1 - Fraction(1, 2) * p["a3"] * W1 + Fraction(1, 3) * p["a4"]) / (4 * lam)
    return GaugeFactor(num, W1 ** 3)


def _gaugeX2(p):
    lam = p["lam"]
    th = -(Fraction(1, 2) * p["a2"] * W1 ** 2 + Fraction(1, 3) * p["a3"] * W1 ** 3 + Fraction(1, 4) * p["a4"] * W1 ** 4) / (4 * lam)
    return GaugeFactor(lam * W2 + th)


def reduced_operator(system: str, params: Mapping, variant: str = "gauge") -> DiffOp2:
    """One-variable operator in z for the exceptional systems (1), (2).

    ``variant="gauge"`` is what the factorised ansatz actually produces,
    ``4 lam d/dz + a``.  ``variant="euler"`` is ``4 lam z d/dz + a``, the form
    whose kernel is ``z^N`` exactly when ``4 lam N + a = 0``.
    """
    sid = _sid(system)
    if sid not in ("X1", "X2"):
        raise NoPolynomialStructure(f"{sid} has no reduced one-variable operator")
    p = complete_params(sid, params)
    a = p["a2"] if sid == "X1" else p["a1"]
    if variant == "gauge":
        return op({(1, 0): 4 * p["lam"], (0, 0): a})
    if variant == "euler":
        return op({(1, 0): 4 * p["lam"] * W1, (0, 0): a})
    raise CatalogError(f"unknown reduced-operator variant {variant!r}")


def _zframe_basics():
    # Laplacian and M = x d_y - y d_x in (z, zbar)
    lap = op({(1, 1): 4})
    M = op({(1, 0): I * W1, (0, 1): -I * W2})
    Pp = op({(0, 1): 2})
    return lap, M, Pp


def _symX1(p):
    _, M, Pp = _zframe_basics()
    iz = Poly2.monomial(-1, 0)
    corr = I * (2 * p["a1"] * iz - Poly2.monomial(-2, 0).scale(Fraction(3, 2) * p["a3"])
                + Poly2.monomial(-3, 0).scale(Fraction(4, 3) * p["a4"]))
    return [Symmetry("L1", Pp, "zzbar"), Symmetry("L2", _anti(M, Pp) + mult(corr), "zzbar")]


def _symX2(p):
    _, M, Pp = _zframe_basics()
    corr = I * (Fraction(1, 2) * p["a2"] * W1 ** 2 + Fraction(2, 3) * p["a3"] * W1 ** 3
                + Fraction(3, 4) * p["a4"] * W1 ** 4)
    return [Symmetry("L1", Pp, "zzbar"), Symmetry("L2", _anti(M, Pp) + mult(corr), "zzbar")]


def _HX1(p):
    V = p["a1"] * Poly2.monomial(-2, 0) + p["a2"] - p["a3"] * Poly2.monomial(-3, 0) + p["a4"] * Poly2.monomial(-4, 0)
    return op({(1, 1): 4, (0, 0): V})


def _HX2(p):
    V = p["a1"] + p["a2"] * W1 + p["a3"] * W1 ** 2 + p["a4"] * W1 ** 3
    return op({(1, 1): 4, (0, 0): V})


# --------------------------------------------------------------------------- A


def _dA(p):
    k3 = _g(p, "k3")
    _set_derived(p, "a3", -2 * k3 * (2 * k3 - 1))
    return p


def _VA(x, y, p):
    s = x * x + y * y
    return 4 * p["a3"] * _inv(_sq(s - 1), "x^2+y^2-1") - 4 * _g(p, "a4") * _inv(_sq(s + 1), "x^2+y^2+1")


def _varsA(p):
    def f(x, y):
        den = _inv(x * x + y * y + 1)
        return 2 * x * den, 2 * y * den
    return VariableMap("u1 = 2x/(x^2+y^2+1), u2 = 2y/(x^2+y^2+1)", f)


def _cA(p):
    k3 = p["k3"]
    return -(2 * k3 * (2 * k3 + 1) + _g(p, "a4"))


def _hA(p):
    k3 = p["k3"]
    return ONE, op({
        (2, 0): 1 - W1 * W1, (0, 2): 1 - W2 * W2, (1, 1): -2 * W1 * W2,
        (1, 0): -(2 + 4 * k3) * W1, (0, 1): -(2 + 4 * k3) * W2,
        (0, 0): _cA(p),
    })


def _glA(p):
    k3 = p["k3"]
    return (Gl3Expression().add_product("Jminus1", "Jminus1", 1).add_product("Jminus2", "Jminus2", 1)
            .add_product("J0_11", "J0_11", -1).add_product("J0_22", "J0_22", -1)
            .add_linear("J0_11", -(1 + 4 * k3)).add_linear("J0_22", -(1 + 4 * k3))
            .add_product("J0_11", "J0_22", -2).add_const(_cA(p)))


def _symA(p):
    k3 = p["k3"]
    J = op({(0, 1): W1, (1, 0): -W2})
    L2 = op({(2, 0): -Fraction(1, 4) * (W1 * W1 + W2 * W2 - 1), (1, 0): -(Fraction(1, 4) + k3) * W1})
    L3 = op({(1, 1): -2 * (W1 * W1 + W2 * W2 - 1), (1, 0): -(1 + 4 * k3) * W2, (0, 1): -(1 + 4 * k3) * W1})
    return [Symmetry("J", J), Symmetry("L1", J.compose(J)), Symmetry("L2", L2), Symmetry("L3", L3)]


def _physA(p):
    msgs: list[str] = []
    _ge(p, "k3", Fraction(1, 4), msgs, "Square-integrability demands k3 >= 1/4")
    return msgs


# --------------------------------------------------------------------------- B


def _dB(p):
    A = _g(p, "A")
    N = _int(p, "N")
    _set_derived(p, "a4", A ** 2)
    variant = p.get("variant_a1", "derived")
    if variant == "printed":
        _set_derived(p, "a1", -(N + 2) * (N + Fraction(1, 2)))
    else:
        _set_derived(p, "a1", -(N + Fraction(1, 2)) * (N + Fraction(3, 2)))
    return p


def _VB(x, y, p):
    return p["a1"] * _inv(x * x, "x") + p["a4"]


def _varsB(p):
    def f(x, y):
        r = jsqrt(x * x + y * y)
        return y + r, -y + r
    return VariableMap("x^2 = u1 u2, y = (u1 - u2)/2 with u1 = y + r, u2 = -y + r", f)


def _gaugeB(p):
    A, N = p["A"], _int(p, "N")
    return GaugeFactor((I * A / 2) * (W1 + W2), ONE, ((W1 * W2, -Fraction(N, 2) - Fraction(1, 4)),))


def _hB(p):
    A, N = p["A"], _int(p, "N")
    D = op({
        (2, 0): W1, (0, 2): W2,
        (1, 0): I * A * W1 - N, (0, 1): I * A * W2 - N,
        (0, 0): -I * A * N,
    })
    return (W1 + W2).scale(Fraction(1, 4)), D


def _glB(p):
    A, N = p["A"], _int(p, "N")
    return (Gl3Expression().add_product("J0_11", "Jminus1", 1).add_product("J0_22", "Jminus2", 1)
            .add_linear("J0_11", I * A).add_linear("J0_22", I * A)
            .add_linear("Jminus1", -N).add_linear("Jminus2", -N).add_const(-I * A * N))


def _symB(p):
    a1 = p["a1"]
    X, Y = W1, W2
    ix2 = Poly2.monomial(-2, 0)
    Py = op({(0, 1): 1})
    L1 = op({(0, 2): X * X, (1, 1): -2 * X * Y, (2, 0): Y * Y, (1, 0): -X, (0, 1): -Y,
             (0, 0): a1 * Y * Y * ix2})
    L2 = op({(1, 1): X, (2, 0): -Y, (0, 1): Fraction(1, 2), (0, 0): -a1 * Y * ix2})
    return [Symmetry("Py", Py, "xy"), Symmetry("L1", L1, "xy"), Symmetry("L2", L2, "xy")]


def _HB(p):
    return op({(2, 0): 1, (0, 2): 1, (0, 0): p["a1"] * Poly2.monomial(-2, 0) + p["a4"]})


# --------------------------------------------------------------------------- C


def _dC(p):
    k4 = _g(p, "k4")
    if "a1" in p and "a3" not in p:
        p["a3"] = p.pop("a1")
    elif "a1" in p:
        if p["a1"] != p["a3"]:
            raise ParameterMismatch("for C, a1 is an alias of the constant a3")
        p.pop("a1")
    gauge = int(p.get("gauge", 1))
    if gauge not in (1, 2):
        raise CatalogError("C gauge selector must be 1 (even sector) or 2 (odd sector)")
    p["gauge"] = Fraction(gauge)
    _set_derived(p, "a4", 4 * k4 ** 2)
    return p


def _VC(x, y, p):
    return _g(p, "a3") - p["a4"] * (x * x + y * y)


def _gaugeC(p):
    if int(p["gauge"]) == 1:
        return GaugeFactor(p["k4"] * (W1 + W2))
    return GaugeFactor(p["k4"] * (W1 + W2), ONE, ((W1, Fraction(1, 2)), (W2, Fraction(1, 2))))


def _hC(p):
    k4, a3 = p["k4"], _g(p, "a3")
    lo, c0 = (2, 4 * k4) if int(p["gauge"]) == 1 else (6, 12 * k4)
    return ONE, op({
        (1, 0): lo + 8 * k4 * W1, (0, 1): lo + 8 * k4 * W2,
        (2, 0): 4 * W1, (0, 2): 4 * W2, (0, 0): c0 + a3,
    })


def _symC(p):
    k4 = p["k4"]
    X, Y = W1, W2
    L = op({(0, 1): X, (1, 0): -Y})
    L1 = op({(2, 0): 1, (0, 0): -4 * k4 ** 2 * X * X})
    L2 = op({(1, 1): 1, (0, 0): -4 * k4 ** 2 * X * Y})
    return [Symmetry("L", L, "xy"), Symmetry("L1", L1, "xy"), Symmetry("L2", L2, "xy")]


def _HC(p):
    return op({(2, 0): 1, (0, 2): 1, (0, 0): p["a3"] - p["a4"] * (W1 * W1 + W2 * W2)})


def _physC(p):
    msgs: list[str] = []
    _lt(p, "k4", 0, msgs, "Square-integrability demands k4 < 0")
    return msgs


# --------------------------------------------------------------------------- D, E, F


def _dD(p):
    _g(p, "a1"), _g(p, "a2")
    return p


def _VD(x, y, p):
    return p["a1"] - p["a2"] * x


def _symD(p):
    X, Y = W1, W2
    M = op({(0, 1): X, (1, 0): -Y})
    dy = op({(0, 1): 1})
    L1 = _anti(M, dy).scale(Fraction(1, 2)) + mult(Fraction(1, 4) * p["a2"] * Y * Y)
    L2 = op({(1, 1): 1, (0, 0): -Fraction(1, 2) * p["a2"] * Y})
    return [Symmetry("Py", dy, "xy"), Symmetry("L1", L1, "xy"), Symmetry("L2", L2, "xy")]


def _HD(p):
    return op({(2, 0): 1, (0, 2): 1, (0, 0): p["a1"] - p["a2"] * W1})


def _dE(p):
    _g(p, "a1"), _g(p, "a3")
    return p


def _VE(x, y, p):
    z, _ = _zz(x, y)
    iz = _inv(z, "x+iy")
    return p["a1"] * iz * iz + p["a3"]


def _symE(p):
    _, M, Pp = _zframe_basics()
    iz = Poly2.monomial(-1, 0)
    L1 = _anti(M, Pp).scale(Fraction(1, 2)) + mult(I * p["a1"] * iz)
    L2 = M.compose(M) + mult(p["a1"] * W2 * iz)
    return [Symmetry("P+", Pp, "zzbar"), Symmetry("L1", L1, "zzbar"), Symmetry("L2", L2, "zzbar")]


def _HE(p):
    return op({(1, 1): 4, (0, 0): p["a1"] * Poly2.monomial(-2, 0) + p["a3"]})


def _dF(p):
    k1, k4 = _g(p, "k1"), _g(p, "k4")
    _set_derived(p, "a1", k1 * k4 / 4)
    _set_derived(p, "a2", I * k1 ** 2 / 16)
    return p


def _VF(x, y, p):
    z, _ = _zz(x, y)
    return p["a1"] - p["a2"] * z


def _varsF(p):
    def f(x, y):
        ex = is_exact(x) and is_exact(y)
        sm = (y - (I if ex else 1j) * x) / 4
        df = jsqrt(-(y + (I if ex else 1j) * x) / 2)
        return (sm + df) / 2, (sm - df) / 2
    return VariableMap("u + w = (y - ix)/4, u - w = sqrt(-(y + ix)/2), principal sqrt", f)


def _gaugeF(p):
    k1, k4 = p["k1"], p["k4"]
    return GaugeFactor(k1 * (W1 * W1 + W2 * W2) + k4 * (W1 + W2))


def _hF(p):
    k1, k4 = p["k1"], p["k4"]
    D = op({(1, 0): 2 * k1 * W1 + k4, (0, 1): -(2 * k1 * W2 + k4),
            (2, 0): Fraction(1, 2), (0, 2): -Fraction(1, 2)})
    return (W2 - W1).scale(8), D


def _glF(p):
    k1, k4 = p["k1"], p["k4"]
    return (Gl3Expression().add_product("Jminus1", "Jminus1", Fraction(1, 2))
            .add_product("Jminus2", "Jminus2", -Fraction(1, 2))
            .add_linear("J0_11", 2 * k1).add_linear("J0_22", -2 * k1)
            .add_linear("Jminus1", k4).add_linear("Jminus2", -k4))


def _symF(p):
    a2 = p["a2"]
    X, Y = W1, W2
    Pp = op({(1, 0): 1, (0, 1): I})
    L1 = op({(2, 0): 1, (0, 0): -a2 * X})
    L2 = op({
        (1, 1): X - I * Y, (0, 2): I * X, (2, 0): -Y,
        (0, 1): Fraction(1, 2), (1, 0): -I / 2,
        (0, 0): -(I / 4) * a2 * (X + I * Y) ** 2,
    })
    return [Symmetry("P+", Pp, "xy"), Symmetry("L1", L1, "xy"), Symmetry("L2", L2, "xy")]


def _HF(p):
    return op({(2, 0): 1, (0, 2): 1, (0, 0): p["a1"] - p["a2"] * (W1 + I * W2)})


# --------------------------------------------------------------------------- registry


def _mult_const(c):
    return lambda x, y, w1, w2, p: complex(c)


def _mult_sphere(scale):
    def f(x, y, w1, w2, p):
        s = complex(x) ** 2 + complex(y) ** 2
        return scale / (s + 1) ** 2
    return f


def _mult_22(x, y, w1, w2, p):
    return 1 / (complex(x) ** 2 + complex(y) ** 2)


def _total(p, N):
    return TotalDegreeSpace(N)


_SYSTEMS: dict[str, SystemSpec] = {}


def _reg(s: SystemSpec):
    _SYSTEMS[s.id] = s


_reg(SystemSpec(
    "S1111", "[1111]", 1, "ES", ("spherical", "elliptic"), ("k1", "k2", "k3"), _d1111,
    "a1/x^2 + a2/y^2 + 4a3/(x^2+y^2-1)^2 - 4a4/(x^2+y^2+1)^2", _V1111,
    variables=_vars1111,
    gauge=lambda p: GaugeFactor(Poly2(), ONE, ((W1, p["k1"]), (W2, p["k2"]), (1 - W1 - W2, p["k3"]))),
    multiplier=_mult_sphere(8), h=_h1111, gl3=_gl1111, symmetries=_sym1111,
    spectral="a4", constraint_text="2(N+K)(2N+2K+1) + a4 = 0, K = k1+k2+k3",
    solve_constraint=lambda p, N: -2 * (N + _K(p)) * (2 * N + 2 * _K(p) + 1),
    space=_total, physical=_phys1111,
))
_reg(SystemSpec(
    "S211", "[211]", 1, "ES", ("cartesian", "polar", "elliptic"), ("k1", "k2", "k3"), _d211,
    "a1/x^2 + a2/y^2 - a3(x^2+y^2) + a4", _V211,
    variables=_vars_sq,
    gauge=lambda p: GaugeFactor(p["k3"] * (W1 + W2), ONE, ((W1, p["k1"]), (W2, p["k2"]))),
    multiplier=_mult_const(1), h=_h211, gl3=_gl211, symmetries=_sym211,
    spectral="a4", constraint_text="4k3(2N+2k1+2k2+1) + a4 = 0",
    solve_constraint=lambda p, N: -4 * p["k3"] * (2 * N + 2 * p["k1"] + 2 * p["k2"] + 1),
    space=_total, physical=_phys211,
))
_reg(SystemSpec(
    "S22", "[22]", 1, "explicit-polynomial", ("polar", "hyperbolic"), ("k1", "k2", "k3", "n1", "n2"), _d22,
    "a1/(x+iy)^2 + a2(x-iy)/(x+iy)^3 + a3 - a4(x^2+y^2)", _V22,
    variables=_vars22,
    gauge=lambda p: GaugeFactor(p["k1"] * W1 + p["k2"] * W2, ONE, ((W1 * W2, -p["k3"]),)),
    multiplier=_mult_22, h=_h22, symmetries=_sym22,
    spectral="a3", constraint_text="a3 = -4k1(2n1-2k3+1), a1 = 4k2(2n2-2k3+1)",
    solve_constraint=lambda p, N: -4 * p["k1"] * (2 * N - 2 * p["k3"] + 1),
    space=lambda p, N: RectangleSpace(_int(p, "n1"), _int(p, "n2")),
    notes=("invariant space is the (n1, n2) bidegree rectangle",),
))
_reg(SystemSpec(
    "S31", "[31]", 1, "ES", ("cartesian", "parabolic"), ("k2", "k3", "k4"), _d31,
    "a1 - a2 x + a3(4x^2+y^2) + a4/y^2", _V31,
    variables=_vars31,
    gauge=lambda p: GaugeFactor(p["k3"] * (W1 * W1 + W2 / 2) + p["k2"] * W1, ONE, ((W2, p["k4"]),)),
    multiplier=_mult_const(1), h=_h31, gl3=_gl31, symmetries=_sym31,
    spectral="a1", constraint_text="a1 + k3(4N+4k4+3) + k2^2 = 0",
    solve_constraint=lambda p, N: -p["k3"] * (4 * N + 4 * p["k4"] + 3) - p["k2"] ** 2,
    space=_total, physical=_phys31,
))
_reg(SystemSpec(
    "S4", "[4]", 1, "explicit-polynomial", ("semi-hyperbolic",), ("k4", "a2", "a3"), _d4,
    "a1 - a2(x+iy) + a3(3(x+iy)^2 + 2(x-iy)) - a4(4(x^2+y^2) + 2(x+iy)^3)", _V4,
    variables=_vars4,
    gauge=lambda p: GaugeFactor(
        (-32 * p["k4"] ** 4 * (W1 ** 3 + W2 ** 3) + 12 * I * p["k4"] ** 2 * p["a3"] * (W1 ** 2 + W2 ** 2)
         - 3 * (p["k4"] ** 2 * p["a2"] + p["a3"] ** 2) * (W1 + W2)) / (6 * p["k4"] ** 3)),
    multiplier=_mult4, h=_h4, symmetries=_sym4,
    spectral="a1",
    constraint_text="a1 = 4 i k4 (N+1) - a2 a3/(2k4^2) - a3^3/(2k4^4)",
    solve_constraint=_solve4, space=_space4,
    notes=("invariant space is the (N, N) bidegree rectangle",),
))
_reg(SystemSpec(
    "S0", "[0]", 1, "ES", ("cartesian",), ("k2", "k3", "k4"), _d0,
    "a1 - (a2 x + a3 y) + a4(x^2+y^2)", _V0,
    variables=_vars0,
    gauge=lambda p: GaugeFactor(p["k4"] * (W1 * W1 + W2 * W2)),
    multiplier=_mult_const(1), h=_h0, gl3=_gl0, symmetries=_sym0,
    spectral="a1", constraint_text="4k4 N + k2^2 + k3^2 + a1 + 4k4 = 0",
    solve_constraint=lambda p, N: -4 * p["k4"] * N - p["k2"] ** 2 - p["k3"] ** 2 - 4 * p["k4"],
    space=_total, physical=_phys0,
))
_reg(SystemSpec(
    "X1", "(1)", 1, "exceptional-factorized", (), ("lam",), _dX,
    "a1/(x+iy)^2 + a2 - a3/(x+iy)^3 + a4/(x+iy)^4", _VX1,
    variables=_vars_z, gauge=_gaugeX1, multiplier=_mult_const(1),
    symmetries=_symX1, hamiltonian=_HX1, spectral="a2",
    constraint_text="4 lam N + a2 = 0 (reduced operator)",
    notes=("only factorised solutions exp(lam zbar) Theta(z) P(z) are treated",),
))
_reg(SystemSpec(
    "X2", "(2)", 1, "exceptional-factorized", (), ("lam",), _dX,
    "a1 + a2(x+iy) + a3(x+iy)^2 + a4(x+iy)^3", _VX2,
    variables=_vars_z, gauge=_gaugeX2, multiplier=_mult_const(1),
    symmetries=_symX2, hamiltonian=_HX2, spectral="a1",
    constraint_text="4 lam N + a1 = 0 (reduced operator)",
    notes=("only factorised solutions exp(lam zbar) Theta(z) P(z) are treated",),
))
_reg(SystemSpec(
    "A", "A", 2, "ES", ("spherical", "elliptic"), ("k3",), _dA,
    "4a3/(x^2+y^2-1)^2 - 4a4/(x^2+y^2+1)^2", _VA,
    variables=_varsA,
    gauge=lambda p: GaugeFactor(Poly2(), ONE, ((1 - W1 * W1 - W2 * W2, p["k3"]),)),
    multiplier=_mult_sphere(4), h=_hA, gl3=_glA, symmetries=_symA,
    spectral="a4", constraint_text="(M+2k3)(M+2k3+1) + a4 = 0",
    solve_constraint=lambda p, N: -(N + 2 * p["k3"]) * (N + 2 * p["k3"] + 1),
    space=_total, physical=_physA,
))
_reg(SystemSpec(
    "B", "B", 2, "ES", ("cartesian", "polar", "parabolic", "elliptic"), ("A", "N"), _dB,
    "a1/x^2 + a4", _VB,
    variables=_varsB, gauge=_gaugeB, multiplier=_mult_const(1), h=_hB, gl3=_glB,
    symmetries=_symB, hamiltonian=_HB,
    spectral="a1", constraint_text="a1 = -(N+1/2)(N+3/2), a4 = A^2",
    solve_constraint=lambda p, N: -(N + Fraction(1, 2)) * (N + Fraction(3, 2)),
    space=_total,
    notes=("h is stored cleared: (u1+u2)/4 * h",),
))
_reg(SystemSpec(
    "C", "C", 2, "ES", ("cartesian", "polar", "hyperbolic", "elliptic"), ("k4",), _dC,
    "a3 - a4(x^2+y^2)", _VC,
    variables=_vars_sq, gauge=_gaugeC, multiplier=_mult_const(1), h=_hC,
    symmetries=_symC, hamiltonian=_HC,
    spectral="a3", constraint_text="a3 + 4k4(2N+1) = 0 (gauge 1), a3 + 4k4(2N+3) = 0 (gauge 2)",
    solve_constraint=lambda p, N: -4 * p["k4"] * (2 * N + (1 if int(p["gauge"]) == 1 else 3)),
    space=_total, physical=_physC,
    notes=("gauge selector: 1 = even sector exp(k4 r^2), 2 = odd sector exp(k4 r^2) x y",),
))
_reg(SystemSpec(
    "D", "D", 2, "none", ("cartesian", "parabolic"), ("a1", "a2"), _dD,
    "a1 - a2 x", _VD, symmetries=_symD, hamiltonian=_HD,
))
_reg(SystemSpec(
    "E", "E", 2, "none", ("polar", "hyperbolic"), ("a1", "a3"), _dE,
    "a1/(x+iy)^2 + a3", _VE, symmetries=_symE, hamiltonian=_HE,
))
_reg(SystemSpec(
    "F", "F", 2, "ES", ("cartesian", "semi-hyperbolic"), ("k1", "k4"), _dF,
    "a1 - a2(x+iy)", _VF,
    variables=_varsF, gauge=_gaugeF, multiplier=_mult_const(1), h=_hF, gl3=_glF,
    symmetries=_symF, hamiltonian=_HF,
    space=lambda p, N: RectangleSpace(N, N),
    notes=("h is stored cleared: 8(w-u) * h", "no constraint: every (N, N) rectangle carries solutions"),
))

SYSTEM_IDS = tuple(_SYSTEMS)


# --------------------------------------------------------------------------- public API


def _sid(system) -> str:
    s = str(system)
    if s in _SYSTEMS:
        return s
    alias = {"[1111]": "S1111", "[211]": "S211", "[22]": "S22", "[31]": "S31", "[4]": "S4",
             "[0]": "S0", "(1)": "X1", "(2)": "X2", "1111": "S1111", "211": "S211", "22": "S22",
             "31": "S31", "4": "S4", "0": "S0"}
    if s in alias:
        return alias[s]
    raise UnknownSystem(f"unknown system {system!r}; known: {', '.join(_SYSTEMS)}")


def get_system(system) -> SystemSpec:
    return _SYSTEMS[_sid(system)]


def list_systems() -> list[tuple[str, str, tuple[str, ...]]]:
    return [(s.id, s.solvability, s.separable) for s in _SYSTEMS.values()]


def _coerce_params(params: Mapping | None) -> dict:
    out = {}
    for k, v in (params or {}).items():
        k = _ALIASES.get(k, k)
        if k == "variant_a1":
            out[k] = v
            continue
        if isinstance(v, str):
            v = parse_scalar(v)
        out[k] = normalize(v)
    return out


def complete_params(system, params: Mapping | None) -> dict:
    """Copy ``params``, parse strings and apply the system's parameter map."""
    spec = get_system(system)
    return spec.derive(_coerce_params(params))


def check_physical(system, params: Mapping) -> None:
    spec = get_system(system)
    p = complete_params(spec.id, params)
    msgs = spec.physical(p)
    if msgs:
        raise PhysicalRangeError("; ".join(msgs))


def _float_params(p: Mapping) -> dict:
    return {k: (complex(v) if is_exact(v) else v) for k, v in p.items() if k != "variant_a1"}


def potential(system, params: Mapping) -> Callable:
    """``V(x, y)``: exact for exact points, complex otherwise.

    The potential coefficients a_i may be given directly, without the
    parameters they are usually derived from.
    """
    spec = get_system(system)
    try:
        p = complete_params(spec.id, params)
    except MissingParameter:
        p = _coerce_params(params)
    pf = _float_params(p)

    def V(x, y):
        try:
            if is_exact(x) and is_exact(y):
                return spec.potential(x, y, p)
            return spec.potential(x, y, pf)
        except ZeroDivisionError as exc:
            raise SingularPointError(f"{spec.id} potential is singular at ({x}, {y})") from exc
        except KeyError as exc:
            raise MissingParameter(f"parameter {exc.args[0]!r} is required") from exc

    return V


def build_h(system, params: Mapping) -> tuple[Poly2, DiffOp2]:
    spec = get_system(system)
    if spec.h is None:
        raise NoPolynomialStructure(f"{spec.id} has no two-variable operator on polynomial spaces")
    return spec.h(complete_params(spec.id, params))


def build_symmetries(system, params: Mapping) -> list[Symmetry]:
    spec = get_system(system)
    return spec.symmetries(complete_params(spec.id, params))


def frame_hamiltonian(system, params: Mapping) -> DiffOp2:
    """Δ + V in the symmetry frame for systems whose symmetries are given in x, y or z, zbar."""
    spec = get_system(system)
    if spec.hamiltonian is None:
        raise NoPolynomialStructure(f"{spec.id} symmetries live in the polynomial variables")
    return spec.hamiltonian(complete_params(spec.id, params))


def gl3_form(system, params: Mapping, printed: bool = False) -> Gl3Expression:
    spec = get_system(system)
    if spec.gl3 is None:
        raise NoPolynomialStructure(f"{spec.id} has no gl(3) form")
    p = complete_params(spec.id, params)
    if spec.id == "S1111":
        return _gl1111(p, printed=printed)
    return spec.gl3(p)


def verify_gl3_form(system, params: Mapping, printed: bool = False,
                    perturb: Mapping | None = None) -> tuple[bool, DiffOp2]:
    """Compare the gl(3) expansion against the explicit operator exactly.

    ``perturb`` adds extra linear coefficients to the gl(3) expression (a
    negative control).  Returns ``(equal, difference)``.
    """
    e = gl3_form(system, params, printed=printed)
    for tag, c in (perturb or {}).items():
        e.add_linear(tag, c)
    _, h = build_h(system, params)
    diff = to_diffop(e, 0) - h
    return diff.is_zero(), diff


def verify_gauge_transform(system, params: Mapping, p: Poly2, point, gauge: GaugeFactor | None = None) -> float:
    """Relative residual of the gauge identity at one point, via second-order jets.

    Compares ``Psi0^{-1} (Δ + V)(Psi0 · P∘w)`` with ``μ · (hP / prefactor)∘w``.
    For the exceptional systems (1), (2) the reduced operator replaces h and
    ``p`` must depend on w1 = z only.
    """
    spec = get_system(system)
    pp = complete_params(spec.id, params)
    if spec.variables is None or spec.gauge is None:
        raise NoPolynomialStructure(f"{spec.id} has no polynomial gauge structure")
    if spec.id in ("X1", "X2"):
        if p.degree_in(1) > 0:
            raise CatalogError("exceptional systems take polynomials in z = w1 only")
        pref, h = ONE, reduced_operator(spec.id, pp)
    else:
        pref, h = spec.h(pp)
    x0, y0 = point
    x0, y0 = complex(x0), complex(y0)
    if x0.imag == 0 and y0.imag == 0:
        x0, y0 = x0.real, y0.real
    vmap = spec.variables(pp)
    g = gauge or spec.gauge(pp)
    try:
        J1, J2 = vmap.jet_forward(x0, y0)
        psi0 = g.evaluate(J1, J2)
        if not isinstance(psi0, Jet):
            psi0 = Jet.const(psi0)
        Pj = p.eval((J1, J2))
        Pj = Pj if isinstance(Pj, Jet) else Jet.const(Pj)
        psi = psi0 * Pj
        V = complex(spec.potential(x0, y0, _float_params(pp)))
    except ZeroDivisionError as exc:
        raise SingularPointError(f"singular point ({x0}, {y0}) for {spec.id}") from exc
    w = (J1.v, J2.v)
    lhs = (psi.lap() + V * psi.v) / psi0.v
    hp = h.apply(p)
    try:
        rhs = spec.multiplier(x0, y0, w[0], w[1], pp) * complex(hp.eval(w)) / complex(pref.eval(w))
    except ZeroDivisionError as exc:
        raise SingularPointError(f"singular point ({x0}, {y0}) for {spec.id}") from exc
    scale = 1 + abs(lhs) + abs(rhs) + abs(V * Pj.v)
    return abs(lhs - rhs) / scale


def catalog_json(system, params: Mapping | None = None) -> dict:
    """Descriptor of one catalog entry; operators are included when params are complete."""
    spec = get_system(system)
    doc = {
        "id": spec.id,
        "label": spec.label,
        "table": spec.table,
        "solvability": spec.solvability,
        "separable": list(spec.separable),
        "inputs": list(spec.inputs),
        "potential": spec.potential_text,
        "spectral_parameter": spec.spectral,
        "constraint": spec.constraint_text,
        "notes": list(spec.notes),
    }
    if params is None:
        return doc
    p = complete_params(spec.id, params)
    from .scalars import scalar_to_json

    doc["params"] = {k: scalar_to_json(v) for k, v in sorted(p.items()) if k != "variant_a1"}
    if spec.variables is not None:
        doc["variables"] = spec.variables(p).description
    if spec.gauge is not None:
        doc["gauge"] = spec.gauge(p).describe()
    if spec.h is not None:
        try:
            pref, h = spec.h(p)
            doc["prefactor"] = pref.to_json()
            doc["operator"] = h.to_json()
            doc["operator_text"] = h.pretty()
        except MissingParameter as exc:
            doc["operator_error"] = str(exc)
    try:
        doc["symmetries"] = [
            {"name": s.name, "frame": s.frame, "operator": s.op.to_json(),
             "prefactor": s.prefactor.to_json(), "note": s.note}
            for s in spec.symmetries(p)
        ]
    except MissingParameter as exc:
        doc["symmetries_error"] = str(exc)
    return doc
