"""The nine first-order generators of gl(3) acting on bivariate polynomials.

    Jm1 = d1,  Jm2 = d2,  J0_ij = w_i d_j,  J0N = E - N,  Jp_i = w_i (E - N)

with ``E = w1 d1 + w2 d2`` the Euler operator.  For integer ``N >= 0`` every
generator preserves P_N.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .diffops import DiffOp2, commutator, d1, d2, identity, mult
from .linalg import solve_combination
from .polys import W1, W2, Poly2, basis_of_PN
from .scalars import normalize, scalar_to_json, format_scalar

__all__ = [
    "TAGS",
    "SPAN_TAGS",
    "generator_op",
    "Gl3Expression",
    "to_diffop",
    "check_commutator_table",
    "decompose",
]

TAGS = ("Jminus1", "Jminus2", "J0_11", "J0_12", "J0_21", "J0_22", "J0N", "Jplus1", "Jplus2")
# J0N = J0_11 + J0_22 - N, so the identity replaces it in a linearly independent span.
SPAN_TAGS = ("Jminus1", "Jminus2", "J0_11", "J0_12", "J0_21", "J0_22", "Jplus1", "Jplus2", "I")

_ALIASES = {
    "Jm1": "Jminus1", "Jm2": "Jminus2", "Jp1": "Jplus1", "Jp2": "Jplus2",
    "J0_1": "J0_11", "J0_2": "J0_22", "J0": "J0N",
}


def _canon(tag: str) -> str:
    tag = _ALIASES.get(tag, tag)
    if tag not in TAGS and tag != "I":
        raise KeyError(f"unknown gl3 generator {tag!r}")
    return tag


def generator_op(tag: str, N=0) -> DiffOp2:
    tag = _canon(tag)
    N = normalize(N)
    if tag == "I":
        return identity()
    if tag == "Jminus1":
        return d1()
    if tag == "Jminus2":
        return d2()
    if tag.startswith("J0_") and tag != "J0N":
        i, j = int(tag[3]) - 1, int(tag[4]) - 1
        w = W1 if i == 0 else W2
        return mult(w) * (d1() if j == 0 else d2())
    euler_shift = mult(W1) * d1() + mult(W2) * d2() - mult(N)
    if tag == "J0N":
        return euler_shift
    return mult(W1 if tag == "Jplus1" else W2) * euler_shift


@dataclass
class Gl3Expression:
    """``sum c_g g + sum c_gh (g ∘ h) + const``; products apply the right factor first."""

    linear: dict[str, object] = field(default_factory=dict)
    quadratic: dict[tuple[str, str], object] = field(default_factory=dict)
    constant: object = Fraction(0)

    def add_linear(self, tag: str, c) -> "Gl3Expression":
        tag = _canon(tag)
        self.linear[tag] = normalize(self.linear.get(tag, 0) + c)
        return self

    def add_product(self, left: str, right: str, c) -> "Gl3Expression":
        key = (_canon(left), _canon(right))
        self.quadratic[key] = normalize(self.quadratic.get(key, 0) + c)
        return self

    def add_const(self, c) -> "Gl3Expression":
        self.constant = normalize(self.constant + c)
        return self

    def pretty(self) -> str:
        parts = [f"({format_scalar(c)}) {a}*{b}" for (a, b), c in self.quadratic.items() if c != 0]
        parts += [f"({format_scalar(c)}) {g}" for g, c in self.linear.items() if c != 0]
        if self.constant != 0:
            parts.append(f"({format_scalar(self.constant)})")
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {
            "linear": {g: scalar_to_json(c) for g, c in self.linear.items()},
            "quadratic": [[a, b, scalar_to_json(c)] for (a, b), c in self.quadratic.items()],
            "constant": scalar_to_json(self.constant),
        }


def to_diffop(e: Gl3Expression, N=0) -> DiffOp2:
    out = mult(e.constant)
    for g, c in e.linear.items():
        out = out + generator_op(g, N).scale(c)
    for (a, b), c in e.quadratic.items():
        out = out + generator_op(a, N).compose(generator_op(b, N)).scale(c)
    return out


def _flatten(op: DiffOp2, keys) -> list:
    return [op.coeff(*d).coeff(m) for d, m in keys]


def decompose(op: DiffOp2, N=0) -> dict[str, object] | None:
    """Exact coefficients of ``op`` over SPAN_TAGS, or None if outside the span."""
    gens = [generator_op(t, N) for t in SPAN_TAGS]
    keys = sorted(
        {(d, m) for g in gens + [op] for d, c in g.terms.items() for m in c.terms},
        key=lambda k: (k[0], k[1]),
    )
    cols = [_flatten(g, keys) for g in gens]
    x = solve_combination(cols, _flatten(op, keys))
    if x is None:
        return None
    return {t: normalize(v) for t, v in zip(SPAN_TAGS, x) if v != 0}


def _pair_label(a: str, b: str) -> str:
    return f"[{a},{b}]"


def check_commutator_table(N=0, degree_bound: int = 5) -> dict:
    """Expand all 36 commutators of the nine generators and verify closure.

    The expected combination comes from an exact linear solve against the
    span; it is then re-checked by applying both sides to every monomial of
    degree <= degree_bound.
    """
    if degree_bound < 2:
        raise ValueError("degree_bound must be at least 2")
    N = normalize(N)
    gens = {t: generator_op(t, N) for t in TAGS}
    span_ops = {t: generator_op(t, N) for t in SPAN_TAGS}
    monos = [Poly2.monomial(*m) for m in basis_of_PN(degree_bound)]
    pairs = []
    mismatches = []
    for a, b in itertools.combinations(TAGS, 2):
        comm = commutator(gens[a], gens[b])
        combo = decompose(comm, N)
        ok = combo is not None
        if ok:
            rebuilt = mult(0)
            for t, c in combo.items():
                rebuilt = rebuilt + span_ops[t].scale(c)
            ok = all(comm.apply(p) == rebuilt.apply(p) for p in monos)
        entry = {
            "pair": _pair_label(a, b),
            "expected": {t: scalar_to_json(c) for t, c in (combo or {}).items()},
            "verified": ok,
        }
        pairs.append(entry)
        if not ok:
            mismatches.append(entry["pair"])
    return {
        "N": scalar_to_json(N),
        "degree_bound": degree_bound,
        "n_pairs": len(pairs),
        "pairs": pairs,
        "mismatches": mismatches,
        "ok": not mismatches,
    }
