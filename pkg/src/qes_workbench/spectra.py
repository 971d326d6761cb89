"""Quantisation constraints, kernels, symmetry spectra, Gram matrices, separation
equations and the QES / PT extensions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import catalog as cat
from .diffops import DiffOp2, InvarianceViolation, OperatorMatrix, matrix_on_space, polys_from_vector
from .gl3 import generator_op
from .jets import Jet
from .linalg import nullspace, solve_combination
from .moments import Dirichlet, Disk, GammaGaussian, GammaProduct, GaussianProduct, Weighted
from .polys import ONE, W1, W2, Poly2, RectangleSpace, TotalDegreeSpace
from .scalars import conj, is_exact, normalize, scalar_to_json

__all__ = [
    "NoConstraint",
    "NotInvariant",
    "EmptyKernel",
    "solve_constraint",
    "impose_constraint",
    "invariant_space",
    "constrained_h",
    "kernel_basis",
    "SymmetrySpectrum",
    "symmetry_spectrum",
    "InnerProductSpec",
    "inner_product",
    "gram_matrix",
    "selfadjointness_check",
    "SeparationOperator1D",
    "separation_operator",
    "lambda_spectrum",
    "reconstruct",
    "qes_extension",
    "pt_extension",
    "pt_physical_form",
    "sorted_eigen",
    "spectrum_report",
]


class NoConstraint(cat.CatalogError):
    pass


class NotInvariant(cat.CatalogError):
    pass


class EmptyKernel(cat.CatalogError):
    pass


# --------------------------------------------------------------------------- constraints


def solve_constraint(system, params: Mapping, N: int):
    """Exact value of the spectral parameter making degree-N polynomial solutions appear."""
    spec = cat.get_system(system)
    if spec.solve_constraint is None:
        raise NoConstraint(f"{spec.id} has no quantisation constraint on a polynomial space")
    if N < 0:
        raise ValueError("N must be non-negative")
    p = _base_params(spec, params, N)
    return normalize(spec.solve_constraint(p, N))


def _base_params(spec, params, N):
    raw = cat._coerce_params(params)
    if spec.id == "S22":
        raw.setdefault("n1", Fraction(N))
        raw.setdefault("n2", Fraction(N))
    if spec.id == "B":
        raw["N"] = Fraction(N)
        raw.pop("a1", None)
    elif spec.id != "S22":
        raw.pop(spec.spectral, None)
        if spec.id == "C":
            raw.pop("a1", None)
    return spec.derive(raw)


def impose_constraint(system, params: Mapping, N: int) -> dict:
    """Complete parameters with the spectral parameter fixed by the constraint."""
    spec = cat.get_system(system)
    if spec.id == "F":
        return cat.complete_params("F", params)
    p = _base_params(spec, params, N)
    if spec.id not in ("S22", "B"):
        p[spec.spectral] = normalize(spec.solve_constraint(p, N))
    return p


def invariant_space(system, params: Mapping, N: int):
    spec = cat.get_system(system)
    if spec.space is None:
        raise cat.NoPolynomialStructure(f"{spec.id} has no invariant polynomial space")
    p = cat.complete_params(spec.id, params) if spec.id == "S22" else params
    return spec.space(p, N)


def constrained_h(system, params: Mapping, N: int) -> tuple[dict, Poly2, DiffOp2, object]:
    """``(params, prefactor, h, space)`` with the constraint imposed."""
    p = impose_constraint(system, params, N)
    pref, h = cat.build_h(system, p)
    return p, pref, h, invariant_space(system, p, N)


def kernel_basis(system, params: Mapping, N: int, impose: bool = True) -> list[Poly2]:
    """Exact polynomial basis of ker(h) on the invariant space of level N."""
    if impose:
        p, _, h, space = constrained_h(system, params, N)
    else:
        p = cat.complete_params(system, params)
        _, h = cat.build_h(system, p)
        space = invariant_space(system, p, N)
    M = matrix_on_space(h, space)
    vecs = nullspace([list(r) for r in M.entries], M.dim)
    if not vecs:
        raise EmptyKernel(f"h of {cat.get_system(system).id} has trivial kernel on {space.label()}")
    return [polys_from_vector(M.basis, v) for v in vecs]


# --------------------------------------------------------------------------- eigen helpers


def sorted_eigen(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues ordered by (real, imag, index) with matching eigenvector columns."""
    vals, vecs = np.linalg.eig(np.asarray(mat, dtype=complex))
    order = sorted(range(len(vals)), key=lambda i: (round(vals[i].real, 10), round(vals[i].imag, 10), i))
    return vals[order], vecs[:, order]


@dataclass
class SymmetrySpectrum:
    system: str
    symmetry: str
    sector: str
    eigenvalues: list[complex]
    eigenvectors: list[Poly2]
    matrix: list[list]

    def to_json(self) -> dict:
        return {
            "system": self.system,
            "symmetry": self.symmetry,
            "sector": self.sector,
            "eigenvalues": [{"re": v.real, "im": v.imag} for v in self.eigenvalues],
            "eigenvectors": [p.to_json() for p in self.eigenvectors],
        }


def _restricted_matrix(sym: cat.Symmetry, basis: Sequence[Poly2]) -> list[list]:
    monos = sorted({m for b in basis for m in b.monomials()})
    index = {m: i for i, m in enumerate(monos)}

    def coords(p: Poly2):
        v = [Fraction(0)] * len(monos)
        for m, c in p.items():
            if m not in index:
                return None
            v[index[m]] = c
        return v

    cols = [coords(b) for b in basis]
    out = []
    for b in basis:
        try:
            img = sym.apply(b)
        except ValueError as exc:
            raise NotInvariant(f"{sym.name} does not map the sector into itself: {exc}") from exc
        t = coords(img) if img.is_polynomial() else None
        x = solve_combination(cols, t) if t is not None else None
        if x is None:
            raise NotInvariant(f"{sym.name} does not map the sector into itself (image of {b.pretty()})")
        out.append(x)
    n = len(basis)
    return [[out[j][i] for j in range(n)] for i in range(n)]


def symmetry_spectrum(system, params: Mapping, N: int, symmetry: str = "L1",
                      sector: str = "kernel") -> SymmetrySpectrum:
    """Eigen-decomposition of a w-frame symmetry restricted to the kernel of h
    (``sector="kernel"``) or to the whole invariant space (``sector="space"``)."""
    spec = cat.get_system(system)
    p = impose_constraint(spec.id, params, N) if spec.solve_constraint else cat.complete_params(spec.id, params)
    syms = {s.name: s for s in spec.symmetries(p)}
    if symmetry not in syms:
        raise cat.CatalogError(f"{spec.id} has no symmetry {symmetry!r}; available: {', '.join(syms)}")
    sym = syms[symmetry]
    if sym.frame != "w":
        raise NotInvariant(f"{spec.id}.{symmetry} is given in the {sym.frame} frame, not on polynomials")
    if not sym.op.is_polynomial() and sym.prefactor == ONE:
        raise NotInvariant(f"{spec.id}.{symmetry} has Laurent coefficients and does not preserve polynomials")
    if sector == "kernel":
        basis = kernel_basis(spec.id, p, N, impose=False)
    elif sector == "space":
        basis = [Poly2.monomial(*m) for m in invariant_space(spec.id, p, N).basis()]
    else:
        raise ValueError("sector must be 'kernel' or 'space'")
    mat = _restricted_matrix(sym, basis)
    vals, vecs = sorted_eigen(np.array([[complex(v) for v in row] for row in mat]))
    polys = []
    for k in range(len(vals)):
        acc = Poly2()
        for coef, b in zip(vecs[:, k], basis):
            acc = acc + b.promote().scale(complex(coef))
        polys.append(acc)
    return SymmetrySpectrum(spec.id, symmetry, sector, list(vals), polys, mat)


# --------------------------------------------------------------------------- inner products


@dataclass(frozen=True)
class InnerProductSpec:
    system: str
    domain: str
    weight: str
    family: object
    conditions: tuple[str, ...] = ()

    def moment(self, a: int, b: int) -> float:
        return float(self.family.rel(a, b)) * self.family.norm

    def describe(self) -> dict:
        return {"system": self.system, "domain": self.domain, "weight": self.weight,
                "moments": self.family.describe(), "conditions": list(self.conditions)}


def _half(x):
    return x + Fraction(1, 2)


def inner_product(system, params: Mapping, check: bool = True) -> InnerProductSpec:
    """Inner product making h formally self-adjoint (physical parameters required)."""
    spec = cat.get_system(system)
    p = cat.complete_params(spec.id, params)
    if check:
        msgs = spec.physical(p)
        if msgs:
            raise cat.PhysicalRangeError("; ".join(msgs))
    sid = spec.id
    if sid == "S1111":
        fam = Dirichlet(2 * p["k1"] + Fraction(1, 2), 2 * p["k2"] + Fraction(1, 2), 2 * p["k3"] + Fraction(1, 2))
        return InnerProductSpec(sid, "simplex", "|Psi0|^2 (w1 w2 (1-w1-w2))^(-1/2)", fam)
    if sid in ("S211", "E16"):
        fam = GammaProduct(2 * p["k1"] + Fraction(1, 2), 2 * p["k2"] + Fraction(1, 2), -2 * p["k3"])
        return InnerProductSpec(sid, "quadrant", "|Psi0|^2 (w1 w2)^(-1/2)", fam)
    if sid == "S31":
        fam = GammaGaussian(2 * p["k3"], 2 * p["k2"], 2 * p["k4"] + Fraction(1, 2), -p["k3"])
        return InnerProductSpec(sid, "halfplane-strip", "|Psi0|^2 w2^(-1/2)", fam)
    if sid == "S0":
        fam = GaussianProduct(2 * p["k4"])
        return InnerProductSpec(sid, "plane", "|Psi0|^2", fam)
    if sid == "A":
        fam = Disk(2 * p["k3"] - Fraction(1, 2))
        return InnerProductSpec(sid, "ball", "|Psi0|^2 (1-u1^2-u2^2)^(-1/2)", fam)
    if sid == "C":
        s = Fraction(1, 2) if int(p["gauge"]) == 1 else Fraction(3, 2)
        fam = GammaProduct(s, s, -2 * p["k4"])
        return InnerProductSpec(sid, "quadrant", "|Psi0|^2 (u1 u2)^(-1/2)", fam)
    raise cat.NoPolynomialStructure(f"no inner product is available for {sid}")


def e16_inner_product(params: Mapping, check: bool = True) -> InnerProductSpec:
    base = inner_product("S211", params, check)
    fam = Weighted(base.family, (((1, 0), Fraction(1)), ((0, 1), Fraction(1))))
    return InnerProductSpec("E16", "quadrant", "|Psi0|^2 (w1 + w2) (w1 w2)^(-1/2)", fam)


def _pair_rel(ip: InnerProductSpec, f: Poly2, g: Poly2):
    """Exact relative Hermitian pairing sum conj(f_m) g_n m(m + n)."""
    total = Fraction(0)
    exact = f.kind != "float" and g.kind != "float"
    if not exact:
        total = 0j
    for (a1, b1), c1 in f.items():
        for (a2, b2), c2 in g.items():
            r = ip.family.rel(a1 + a2, b1 + b2)
            if r == 0:
                continue
            total = total + (conj(c1) * c2 * (r if exact else float(r)))
    return total


def gram_matrix(system, params: Mapping, N: int, check: bool = True, ip: InnerProductSpec | None = None) -> np.ndarray:
    ip = ip or inner_product(system, params, check)
    space = invariant_space(system, cat.complete_params(system, params), N)
    basis = space.basis()
    n = len(basis)
    G = np.empty((n, n))
    for i, (a1, b1) in enumerate(basis):
        for j, (a2, b2) in enumerate(basis):
            G[i, j] = ip.moment(a1 + a2, b1 + b2)
    return G


def selfadjointness_check(system, params: Mapping, N: int, op: DiffOp2 | None = None,
                          check: bool = True, ip: InnerProductSpec | None = None) -> float:
    """max |<h P_i, P_j> - <P_i, h P_j>| over the monomial basis of P_N.

    When the spectral parameter is absent, the level-N constraint fixes it.
    """
    spec = cat.get_system(system)
    p = cat.complete_params(spec.id, params)
    if spec.spectral is not None and spec.spectral not in p:
        p = impose_constraint(spec.id, params, N)
    ip = ip or inner_product(system, p, check)
    if op is None:
        _, op = cat.build_h(system, p)
    basis = [Poly2.monomial(*m) for m in TotalDegreeSpace(N).basis()]
    images = [op.apply(b) for b in basis]
    worst = 0.0
    for i in range(len(basis)):
        for j in range(len(basis)):
            d = _pair_rel(ip, images[i], basis[j]) - _pair_rel(ip, basis[i], images[j])
            worst = max(worst, abs(complex(d)) * ip.family.norm)
    return worst


# --------------------------------------------------------------------------- separation


@dataclass
class SeparationOperator1D:
    """Second-order operator in one variable (stored on w1) with the separation constant Λ."""

    system: str
    coords: str
    variable: str
    op: DiffOp2
    N: int
    params: dict
    symmetric: tuple[Poly2, Poly2] | None = None
    reflect: bool = False
    note: str = ""

    def to_json(self) -> dict:
        return {"system": self.system, "coords": self.coords, "variable": self.variable,
                "N": self.N, "operator": self.op.to_json(),
                "text": self.op.pretty((self.variable, "_")), "note": self.note}


def _one(terms) -> DiffOp2:
    return cat.op(terms)


def separation_operator(system, coords: str, params: Mapping, N: int,
                        variant: str = "derived") -> SeparationOperator1D:
    """Printed one-variable separation operators, with the constraint at level N imposed."""
    spec = cat.get_system(system)
    sid = spec.id
    key = (sid, coords)
    u = W1
    if key == ("S211", "elliptic"):
        p = impose_constraint(sid, params, N)
        k1, k2, k3, c = p["k1"], p["k2"], p["k3"], cat._g(p, "c")
        c2 = c * c
        mid = (4 * k1 + 4 * k2 + 4 * k3 * c2 + 2) if variant == "derived" else (4 * k1 + 4 * k2 + 4 * k3 ** 2 + 2)
        op = _one({(2, 0): -4 * u * (u - 1),
                   (1, 0): 2 * (4 * k3 * c2 * u * u - mid * u + 4 * k2 + 1),
                   (0, 0): -8 * k3 * c2 * N * u})
        sym = (1 - (W1 + W2) / c2, -W2 / c2)
        return SeparationOperator1D(sid, coords, "u", op, N, p, sym)
    if key == ("S1111", "elliptic"):
        p = impose_constraint(sid, params, N)
        k1, k2, k3 = p["k1"], p["k2"], p["k3"]
        r = p["r"] if "r" in p else cat._g(p, "c")
        K = k1 + k2 + k3
        lin = (4 * r * k1 + 4 * r * k3 + 2 * r + 2 + 4 * k2 + 4 * k3) if variant == "derived" else (4 * r * K + 2 * r + 2 + 4 * k2 + 4 * k3)
        op = _one({(2, 0): 4 * u * (r * u - 1) * (u - 1),
                   (1, 0): 2 * ((4 * r * K + 3 * r) * u * u - lin * u + 4 * k3 + 1),
                   (0, 0): -2 * r * N * (2 * N + 4 * K + 1) * u})
        sym = ((r + 1 - W1 - r * W2) / r, (1 - W1 - W2) / r)
        return SeparationOperator1D(sid, coords, "u", op, N, p, sym)
    if key == ("S31", "parabolic"):
        p = impose_constraint(sid, params, N)
        k2, k3, k4 = p["k2"], p["k3"], p["k4"]
        if variant == "derived":
            op = _one({(2, 0): 2 * u, (1, 0): 8 * k3 * u * u + 4 * k2 * u + 4 * k4 + 1, (0, 0): -8 * k3 * N * u})
            sym = (W1, -W2 / 4)
        else:
            op = _one({(2, 0): 2 * u, (1, 0): 2 * k3 * u * u + 2 * k2 * u + 4 * k4 + 1, (0, 0): -2 * k3 * N * u})
            sym = None
        return SeparationOperator1D(sid, coords, "u", op, N, p, sym, reflect=True,
                                    note="V(v) solves the same equation with k2 -> -k2, Λ -> -Λ")
    if sid == "S22" and coords in ("polar", "polar-S", "polar-T"):
        p = impose_constraint(sid, params, N)
        k1, k2, k3 = p["k1"], p["k2"], p["k3"]
        m = N
        if coords == "polar-T":
            op = _one({(2, 0): 4 * u * u, (1, 0): 4 * u * (2 * k2 * u + k3 - 2 * m), (0, 0): -8 * k2 * m * u})
            return SeparationOperator1D(sid, coords, "tau", op, N, p)
        op = _one({(2, 0): 4 * u * u, (1, 0): (8 * k1 * u + 4 * k3 - 8 * m) * u, (0, 0): -8 * k1 * m * u})
        return SeparationOperator1D(sid, "polar-S", "rho", op, N, p)
    if key == ("A", "elliptic"):
        raw = cat._coerce_params(params)
        raw.pop("a4", None)
        p = cat.complete_params("A", raw)
        k3 = p["k3"]
        p["a4"] = -2 * (N + k3) * (2 * N + 2 * k3 + 1)
        r = p["r"] if "r" in p else cat._g(p, "c")
        q = 4 * k3 ** 2 + 2 * k3 + p["a4"]
        op = _one({(2, 0): u * (u - 1) * (r * u - 1),
                   (1, 0): Fraction(1, 2) - (1 + r) * (2 * k3 + 1) * u + r * (2 * k3 + Fraction(3, 2)) * u * u,
                   (0, 0): Fraction(1, 4) * r * q * u - Fraction(1, 4) * q})
        return SeparationOperator1D(sid, coords, "v", op, N, p, note="M = 2N")
    raise cat.CatalogError(f"no printed separation operator for {sid} in {coords!r} coordinates")


def lambda_spectrum(sep: SeparationOperator1D) -> tuple[np.ndarray, list[Poly2]]:
    """The N+1 eigenvalues Λ on polynomials of degree <= N, sorted, with eigenvectors."""
    try:
        M = matrix_on_space(sep.op, RectangleSpace(sep.N, 0))
    except InvarianceViolation as exc:
        raise NotInvariant(str(exc)) from exc
    vals, vecs = sorted_eigen(M.to_numpy())
    polys = [polys_from_vector(M.basis, [complex(v) for v in vecs[:, k]]) for k in range(len(vals))]
    return vals, polys


def _elementary(U: Poly2, reflect: bool) -> Poly2:
    """U(u) U(v) (or U(u) U(-v)) as a polynomial in (e1, e2) = (u + v', u v')."""
    c = [complex(U.coeff((i, 0))) for i in range(U.degree() + 1)]
    n = len(c)
    p = [Poly2.const(2.0), W1.promote()]
    e2 = W2.promote()
    for k in range(2, n):
        p.append(W1.promote() * p[k - 1] - e2 * p[k - 2])
    out = Poly2()
    for i in range(n):
        if c[i] == 0:
            continue
        out = out + (e2 ** i).scale(c[i] * c[i])
        for j in range(i + 1, n):
            if c[j] != 0:
                out = out + ((e2 ** i) * p[j - i]).scale(c[i] * c[j])
    return out


def reconstruct(sep: SeparationOperator1D, U: Poly2) -> Poly2:
    """2D polynomial P(w1, w2) = U(u) V(v) built from one separation eigenvector."""
    if sep.symmetric is None:
        raise cat.CatalogError(f"no reconstruction map for {sep.system} {sep.coords}")
    E = _elementary(U, sep.reflect)
    e1, e2 = sep.symmetric
    return E.substitute(e1.promote(), e2.promote())


def reconstruction_residual(sep: SeparationOperator1D, U: Poly2) -> float:
    P = reconstruct(sep, U)
    _, h = cat.build_h(sep.system, sep.params)
    img = h.promote().apply(P)
    scale = max((abs(c) for _, c in P.items()), default=1.0)
    return max((abs(c) for _, c in img.items()), default=0.0) / scale


# --------------------------------------------------------------------------- QES / PT


_EXT_SYSTEMS = ("S1111", "S211", "A")


def _raising(N) -> DiffOp2:
    return generator_op("Jplus1", N) + generator_op("Jplus2", N)


def qes_extension(system, params: Mapping, N: int, alpha) -> DiffOp2:
    """h + alpha (J+_1(N) + J+_2(N))."""
    spec = cat.get_system(system)
    if spec.id not in _EXT_SYSTEMS:
        raise cat.CatalogError(f"QES extension is defined for {', '.join(_EXT_SYSTEMS)}")
    _, h = cat.build_h(spec.id, params)
    return h + _raising(N).scale(normalize(alpha))


def pt_extension(system, params: Mapping, N: int, alpha, beta) -> dict:
    """h + alpha J+(N) + beta (J-_1 - J-_2) with the swap-conjugation check and its spectrum."""
    spec = cat.get_system(system)
    op = qes_extension(spec.id, params, N, alpha)
    op = op + (generator_op("Jminus1", 0) - generator_op("Jminus2", 0)).scale(normalize(beta))
    M = matrix_on_space(op, TotalDegreeSpace(N))
    basis = list(M.basis)
    perm = [basis.index((m[1], m[0])) for m in basis]
    n = len(basis)
    identity = all(
        conj(M.entries[perm[i]][perm[j]]) == M.entries[i][j] for i in range(n) for j in range(n)
    )
    vals, _ = sorted_eigen(M.to_numpy())
    return {
        "system": spec.id,
        "N": N,
        "operator": op,
        "matrix": M,
        "swap_conjugation_identity": identity,
        "eigenvalues": vals,
        "max_abs_imag": float(np.max(np.abs(vals.imag))) if len(vals) else 0.0,
    }


def pt_physical_form(params: Mapping, N: int, alpha, beta, points: Sequence | None = None,
                     poly: Poly2 | None = None) -> dict:
    """Cartesian form of the [211] PT operator, checked against the conjugated w-form.

    The check evaluates ``H_PT(g P∘w)`` by jets and compares with ``g · (h_PT P)∘w``
    where ``g = exp(alpha s^2/16) Psi0``.  Two potentials are compared: the derived
    one (including the beta term) and the printed one, which uses k' = 1 - 4k,
    k3' = -2k3 and omits the beta term.
    """
    p = cat.complete_params("S211", params)
    alpha, beta = normalize(alpha), normalize(beta)
    k1, k2, k3 = (complex(p[n]) for n in ("k1", "k2", "k3"))
    al, be = complex(alpha), complex(beta)
    op = pt_extension("S211", p, N, alpha, beta)["operator"]
    poly = poly if poly is not None else (W1 ** 2 + 2 * W1 * W2 - W2 + 3)
    points = points or [(0.4, 0.7), (0.9, -0.3), (-0.6, 0.5)]
    V = cat.potential("S211", p)
    kp1, kp2, kp3 = 1 - 4 * k1, 1 - 4 * k2, -2 * k3

    def VN_derived(x, y):
        s = x * x + y * y
        return (-(al * s / 16) * (16 * (N + k1 + k2 + 1) + 16 * k3 * s + al * s * s)
                - be * (k1 / (x * x) - k2 / (y * y)))

    def VN_printed(x, y):
        s = x * x + y * y
        return -(al * s / 16) * (4 * (6 - kp1 - kp2) + 16 * N - 8 * kp3 * s + al * s * s)

    res = {"derived": 0.0, "printed": 0.0}
    hp = op.promote().apply(poly.promote())
    for x0, y0 in points:
        X, Y = Jet.var_x(float(x0)), Jet.var_y(float(y0))
        w1, w2 = X * X, Y * Y
        s = w1 + w2
        g = (s * s * (al / 16) + (w1 + w2) * k3).exp() * (w1 ** k1) * (w2 ** k2)
        f = g * poly.eval((w1, w2))
        base = f.lap() + complex(V(float(x0), float(y0))) * f.v + (be / 2) * (f.x / x0 - f.y / y0)
        rhs = g.v * complex(hp.eval((w1.v, w2.v)))
        for name, VN in (("derived", VN_derived), ("printed", VN_printed)):
            lhs = base + VN(x0, y0) * f.v
            res[name] = max(res[name], abs(lhs - rhs) / (1 + abs(rhs) + abs(base)))
    return {
        "system": "S211",
        "N": N,
        "alpha": scalar_to_json(alpha),
        "beta": scalar_to_json(beta),
        "form": "H + (beta/2)(x^-1 d_x - y^-1 d_y) + V_N",
        "gauge": "exp(alpha (x^2+y^2)^2 / 16) Psi0",
        "residual_derived": res["derived"],
        "residual_printed": res["printed"],
        "printed_parameter_map": "a1 = (1 - k1'^2)/4 equals -2k1(2k1-1) exactly for k1' = 1 - 4k1",
    }


# --------------------------------------------------------------------------- report


def spectrum_report(system, params: Mapping, N: int, symmetry: str | None = None) -> dict:
    spec = cat.get_system(system)
    p, pref, h, space = constrained_h(spec.id, params, N)
    try:
        kern = kernel_basis(spec.id, p, N, impose=False)
    except EmptyKernel:
        kern = []
    M = matrix_on_space(h, space)
    vals, _ = sorted_eigen(M.to_numpy())
    doc = {
        "system": spec.id,
        "N": N,
        "space": space.label(),
        "constraint_parameter": spec.spectral,
        "constraint_value": scalar_to_json(p[spec.spectral]) if spec.spectral in p else None,
        "kernel_dim": len(kern),
        "kernel": [k.to_json() for k in kern],
        "eigenvalues": [{"re": float(v.real), "im": float(v.imag)} for v in vals],
    }
    if spec.id in ("S1111", "S211", "S31", "S0", "A", "C"):
        try:
            doc["gram_asymmetry"] = selfadjointness_check(spec.id, p, N)
        except cat.PhysicalRangeError as exc:
            doc["gram_asymmetry"] = None
            doc["gram_note"] = str(exc)
    if symmetry:
        doc["symmetry"] = symmetry_spectrum(spec.id, p, N, symmetry).to_json()
    return doc
