"""Polynomial-coefficient differential operators in two variables."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

import numpy as np

from .linalg import matmul
from .polys import Monomial, Poly2, RectangleSpace, TotalDegreeSpace, grlex_key
from .scalars import normalize, scalar_to_json, scalar_from_json, is_exact

__all__ = [
    "MAX_ORDER",
    "DiffOp2",
    "OrderOverflowError",
    "InvarianceViolation",
    "OperatorMatrix",
    "d1",
    "d2",
    "mult",
    "identity",
    "matrix_on_space",
    "matrix_on_PN",
    "is_degree_nonincreasing",
]

MAX_ORDER = 4


class OrderOverflowError(ValueError):
    def __init__(self, deriv: tuple[int, int], coeff: Poly2):
        self.deriv = deriv
        self.coeff = coeff
        super().__init__(
            f"derivative order {deriv[0] + deriv[1]} exceeds cap {MAX_ORDER} in term "
            f"({coeff.pretty()}) d1^{deriv[0]} d2^{deriv[1]}"
        )


class InvarianceViolation(ValueError):
    """The operator sends ``monomial`` outside the space; ``excess`` is the offending part."""

    def __init__(self, monomial: Monomial, excess: Poly2, space_label: str = ""):
        self.monomial = monomial
        self.excess = excess
        self.space_label = space_label
        super().__init__(
            f"image of w1^{monomial[0]} w2^{monomial[1]} leaves {space_label or 'the space'}: "
            f"excess {excess.pretty()}"
        )


class DiffOp2:
    """``sum c_ij(w1, w2) d1^i d2^j`` with ``i + j <= MAX_ORDER``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Poly2] | None = None):
        clean: dict[tuple[int, int], Poly2] = {}
        for d, c in (terms or {}).items():
            if not isinstance(c, Poly2):
                c = Poly2.const(c)
            if c.is_zero():
                continue
            d = (int(d[0]), int(d[1]))
            if d[0] < 0 or d[1] < 0:
                raise ValueError("negative derivative order")
            if d[0] + d[1] > MAX_ORDER:
                raise OrderOverflowError(d, c)
            clean[d] = clean[d] + c if d in clean else c
            if clean[d].is_zero():
                del clean[d]
        self._terms = clean

    @property
    def terms(self) -> dict[tuple[int, int], Poly2]:
        return dict(self._terms)

    def coeff(self, i: int, j: int) -> Poly2:
        return self._terms.get((i, j), Poly2())

    def order(self) -> int:
        return max((i + j for i, j in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    # ------------------------------------------------------------ arithmetic
    def __add__(self, other):
        if not isinstance(other, DiffOp2):
            if isinstance(other, Poly2) or is_exact(other) or isinstance(other, (float, complex)):
                other = mult(other)
            else:
                return NotImplemented
        out = dict(self._terms)
        for d, c in other._terms.items():
            out[d] = out[d] + c if d in out else c
        return DiffOp2(out)

    __radd__ = __add__

    def __neg__(self):
        return DiffOp2({d: -c for d, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "DiffOp2":
        return DiffOp2({d: p.scale(c) for d, p in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, DiffOp2):
            return self.compose(other)
        if isinstance(other, Poly2):
            return self.compose(mult(other))
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, Poly2):
            return mult(other).compose(self)
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, DiffOp2):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def compose(self, other: "DiffOp2") -> "DiffOp2":
        """``self ∘ other`` via the Leibniz rule."""
        out: dict[tuple[int, int], Poly2] = {}
        for (a1, a2), ca in self._terms.items():
            for (b1, b2), cb in other._terms.items():
                for g1 in range(a1 + 1):
                    for g2 in range(a2 + 1):
                        dcb = cb.diff(g1, g2)
                        if dcb.is_zero():
                            continue
                        d = (a1 - g1 + b1, a2 - g2 + b2)
                        term = ca * dcb.scale(comb(a1, g1) * comb(a2, g2))
                        out[d] = out[d] + term if d in out else term
        out = {d: c for d, c in out.items() if not c.is_zero()}
        for d, c in out.items():
            if d[0] + d[1] > MAX_ORDER:
                raise OrderOverflowError(d, c)
        return DiffOp2(out)

    def apply(self, p: Poly2) -> Poly2:
        out = Poly2()
        for (i, j), c in self._terms.items():
            dp = p.diff(i, j)
            if not dp.is_zero():
                out = out + c * dp
        return out

    __call__ = apply

    def promote(self) -> "DiffOp2":
        return DiffOp2({d: c.promote() for d, c in self._terms.items()})

    def conjugate(self) -> "DiffOp2":
        return DiffOp2({d: c.conjugate() for d, c in self._terms.items()})

    def swap(self) -> "DiffOp2":
        """Relabel w1 <-> w2."""
        return DiffOp2({(d[1], d[0]): c.swap() for d, c in self._terms.items()})

    def is_polynomial(self) -> bool:
        return all(c.is_polynomial() for c in self._terms.values())

    # ------------------------------------------------------------ io
    def to_json(self) -> list:
        return [
            {"deriv": [d[0], d[1]], "coeff": self._terms[d].to_json()}
            for d in sorted(self._terms, key=lambda t: (t[0] + t[1], -t[0]))
        ]

    @classmethod
    def from_json(cls, obj) -> "DiffOp2":
        return cls({tuple(t["deriv"]): Poly2.from_json(t["coeff"]) for t in obj})

    def pretty(self, names: tuple[str, str] = ("w1", "w2")) -> str:
        if not self._terms:
            return "0"
        parts = []
        for d in sorted(self._terms, key=lambda t: (-(t[0] + t[1]), -t[0])):
            ds = "".join(
                [f"d{names[0]}" + (f"^{d[0]}" if d[0] > 1 else "")] * (d[0] > 0)
                + [f"d{names[1]}" + (f"^{d[1]}" if d[1] > 1 else "")] * (d[1] > 0)
            )
            c = self._terms[d].pretty(names)
            parts.append(f"[{c}]{ds}" if ds else f"[{c}]")
        return " + ".join(parts)

    def __repr__(self):
        return f"DiffOp2({self.pretty()})"


def d1(n: int = 1) -> DiffOp2:
    return DiffOp2({(n, 0): Poly2.const(1)})


def d2(n: int = 1) -> DiffOp2:
    return DiffOp2({(0, n): Poly2.const(1)})


def mult(p) -> DiffOp2:
    if not isinstance(p, Poly2):
        p = Poly2.const(p)
    return DiffOp2({(0, 0): p})


def identity() -> DiffOp2:
    return mult(1)


def commutator(a: DiffOp2, b: DiffOp2) -> DiffOp2:
    return a.compose(b) - b.compose(a)


__all__.append("commutator")


@dataclass(frozen=True)
class OperatorMatrix:
    """Exact matrix of an operator on a monomial space; column k is op(basis[k])."""

    basis: tuple[Monomial, ...]
    entries: tuple[tuple, ...]
    space_label: str = ""

    @property
    def N(self) -> int:
        return max((m[0] + m[1] for m in self.basis), default=0)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list[list]:
        return [list(r) for r in self.entries]

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if self.basis != other.basis:
            raise ValueError("matrices live on different bases")
        prod = matmul(self.entries, other.entries)
        return OperatorMatrix(self.basis, tuple(tuple(r) for r in prod), self.space_label)

    def is_exact(self) -> bool:
        return all(is_exact(v) for r in self.entries for v in r)

    def to_numpy(self) -> np.ndarray:
        return np.array([[complex(v) for v in r] for r in self.entries], dtype=complex)

    def is_lower_block_triangular(self) -> bool:
        """No basis element is sent to a strictly higher total degree."""
        for j, mj in enumerate(self.basis):
            for i, mi in enumerate(self.basis):
                if sum(mi) > sum(mj) and self.entries[i][j] != 0:
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "space": self.space_label,
            "basis": [[m[0], m[1]] for m in self.basis],
            "entries": [[scalar_to_json(v) for v in r] for r in self.entries],
        }

    @classmethod
    def from_json(cls, obj) -> "OperatorMatrix":
        return cls(
            tuple(tuple(m) for m in obj["basis"]),
            tuple(tuple(scalar_from_json(v) for v in r) for r in obj["entries"]),
            obj.get("space", ""),
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + [f"w1^{m[0]}w2^{m[1]}" for m in self.basis])
        for m, r in zip(self.basis, self.entries):
            row = []
            for v in r:
                s = scalar_to_json(v)
                row.append(s if isinstance(s, str) else f"{s[0]}{'' if str(s[1]).startswith('-') else '+'}{s[1]}i")
            w.writerow([f"w1^{m[0]}w2^{m[1]}"] + row)
        return buf.getvalue()


def matrix_on_space(op: DiffOp2, space) -> OperatorMatrix:
    basis = space.basis()
    index = {m: k for k, m in enumerate(basis)}
    zero = Fraction(0)
    cols = []
    for m in basis:
        img = op.apply(Poly2.monomial(m[0], m[1]))
        bad = {t: c for t, c in img.terms.items() if t not in index}
        if bad:
            raise InvarianceViolation(m, Poly2(bad), space.label())
        col = [zero] * len(basis)
        for t, c in img.terms.items():
            col[index[t]] = c
        cols.append(col)
    n = len(basis)
    entries = tuple(tuple(normalize(cols[j][i]) for j in range(n)) for i in range(n))
    return OperatorMatrix(tuple(basis), entries, space.label())


def matrix_on_PN(op: DiffOp2, N: int) -> OperatorMatrix:
    return matrix_on_space(op, TotalDegreeSpace(N))


def is_degree_nonincreasing(op: DiffOp2, N_max: int) -> tuple[bool, tuple[Monomial, Poly2] | None]:
    """True unless some monomial of degree <= N_max maps to higher degree (or a Laurent term).

    The witness is ``(monomial, image)``.
    """
    for m in TotalDegreeSpace(N_max).basis():
        img = op.apply(Poly2.monomial(*m))
        if not img.is_polynomial() or img.degree() > m[0] + m[1]:
            return False, (m, img)
    return True, None


def polys_from_vector(basis: Sequence[Monomial], vec: Sequence) -> Poly2:
    return Poly2({m: c for m, c in zip(basis, vec)})


__all__ += ["polys_from_vector", "RectangleSpace", "TotalDegreeSpace"]
