"""Graded bivariate polynomials in (w1, w2).

Coefficients are exact (``Fraction`` / :class:`Gauss`) or floating
(``complex``); a polynomial never mixes the two.  Negative exponents are
accepted so that the few symmetry operators with Laurent coefficients can be
represented; :meth:`Poly2.is_polynomial` tells the two apart.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .scalars import (
    MixedScalarError,
    Gauss,
    conj,
    is_exact,
    normalize,
    scalar_from_json,
    scalar_to_json,
    format_scalar,
)

Monomial = tuple[int, int]

__all__ = [
    "Monomial",
    "Poly2",
    "W1",
    "W2",
    "ONE",
    "grlex_key",
    "basis_of_PN",
    "rectangle_basis",
    "TotalDegreeSpace",
    "RectangleSpace",
]


def grlex_key(m: Monomial) -> tuple[int, int]:
    """Sort key: total degree ascending, then e1 descending."""
    return (m[0] + m[1], -m[0])


def basis_of_PN(N: int) -> list[Monomial]:
    if N < 0:
        raise ValueError("N must be non-negative")
    return [(d - j, j) for d in range(N + 1) for j in range(d + 1)]


def rectangle_basis(n1: int, n2: int) -> list[Monomial]:
    if n1 < 0 or n2 < 0:
        raise ValueError("rectangle caps must be non-negative")
    mons = [(p, q) for p in range(n1 + 1) for q in range(n2 + 1)]
    return sorted(mons, key=grlex_key)


class TotalDegreeSpace:
    """P_N: monomials of total degree at most N."""

    def __init__(self, N: int):
        self.N = int(N)
        self._basis = basis_of_PN(self.N)

    def basis(self) -> list[Monomial]:
        return list(self._basis)

    def contains(self, m: Monomial) -> bool:
        return m[0] >= 0 and m[1] >= 0 and m[0] + m[1] <= self.N

    @property
    def dim(self) -> int:
        return len(self._basis)

    def label(self) -> str:
        return f"P_{self.N}"

    def __eq__(self, other):
        return isinstance(other, TotalDegreeSpace) and other.N == self.N

    def __repr__(self):
        return f"TotalDegreeSpace({self.N})"


class RectangleSpace:
    """Monomials w1^p w2^q with p <= n1 and q <= n2."""

    def __init__(self, n1: int, n2: int):
        self.n1, self.n2 = int(n1), int(n2)
        self._basis = rectangle_basis(self.n1, self.n2)

    def basis(self) -> list[Monomial]:
        return list(self._basis)

    def contains(self, m: Monomial) -> bool:
        return 0 <= m[0] <= self.n1 and 0 <= m[1] <= self.n2

    @property
    def dim(self) -> int:
        return len(self._basis)

    def label(self) -> str:
        return f"R_{self.n1},{self.n2}"

    @property
    def N(self) -> int:
        return self.n1 + self.n2

    def __eq__(self, other):
        return isinstance(other, RectangleSpace) and (other.n1, other.n2) == (self.n1, self.n2)

    def __repr__(self):
        return f"RectangleSpace({self.n1}, {self.n2})"


def _kind(c) -> str:
    return "exact" if is_exact(c) else "float"


class Poly2:
    """Immutable bivariate polynomial ``{(e1, e2): coeff}``."""

    __slots__ = ("_terms", "_kind")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean: dict[Monomial, object] = {}
        kind = None
        for m, c in (terms or {}).items():
            c = normalize(c)
            if c == 0:
                continue
            k = _kind(c)
            if kind is None:
                kind = k
            elif kind != k:
                raise MixedScalarError("polynomial mixes exact and floating coefficients")
            clean[(int(m[0]), int(m[1]))] = c
        self._terms = clean
        self._kind = kind

    # -------------------------------------------------------------- builders
    @classmethod
    def const(cls, c) -> "Poly2":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, e1: int, e2: int, c=1) -> "Poly2":
        return cls({(e1, e2): c})

    @classmethod
    def var(cls, i: int) -> "Poly2":
        return cls({(1, 0) if i == 0 else (0, 1): 1})

    @classmethod
    def from_coeffs(cls, basis: Iterable[Monomial], coeffs: Iterable) -> "Poly2":
        terms: dict[Monomial, object] = {}
        for m, c in zip(basis, coeffs):
            terms[m] = c
        return cls(terms)

    # -------------------------------------------------------------- access
    @property
    def terms(self) -> dict[Monomial, object]:
        return dict(self._terms)

    @property
    def kind(self) -> str | None:
        """``"exact"``, ``"float"`` or ``None`` for the zero polynomial."""
        return self._kind

    def coeff(self, m: Monomial):
        return self._terms.get(m, Fraction(0))

    def monomials(self) -> list[Monomial]:
        return sorted(self._terms, key=grlex_key)

    def items(self) -> Iterator[tuple[Monomial, object]]:
        for m in self.monomials():
            yield m, self._terms[m]

    def is_zero(self) -> bool:
        return not self._terms

    def is_polynomial(self) -> bool:
        return all(m[0] >= 0 and m[1] >= 0 for m in self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(m[0] + m[1] for m in self._terms)

    def degree_in(self, i: int) -> int:
        if not self._terms:
            return -1
        return max(m[i] for m in self._terms)

    def __len__(self):
        return len(self._terms)

    # -------------------------------------------------------------- arithmetic
    def _check(self, other: "Poly2"):
        if self._kind and other._kind and self._kind != other._kind:
            raise MixedScalarError("cannot combine exact and floating polynomials; promote first")

    @staticmethod
    def _coerce(other) -> "Poly2 | None":
        if isinstance(other, Poly2):
            return other
        if isinstance(other, (int, Fraction, Gauss, float, complex)) and not isinstance(other, bool):
            return Poly2.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Poly2(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly2({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        self._check(other)
        out: dict[Monomial, object] = {}
        for (a1, a2), c in self._terms.items():
            for (b1, b2), d in other._terms.items():
                m = (a1 + b1, a2 + b2)
                out[m] = out.get(m, 0) + c * d
        return Poly2(out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly2":
        return self * Poly2.const(c)

    def __truediv__(self, c):
        if isinstance(c, Poly2):
            return NotImplemented
        return Poly2({m: v / c for m, v in self._terms.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = Poly2.const(1) if self._kind != "float" else Poly2.const(1.0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -------------------------------------------------------------- calculus
    def diff(self, i: int = 0, j: int = 0) -> "Poly2":
        """``∂1^i ∂2^j`` of the polynomial (Laurent exponents handled too)."""
        out: dict[Monomial, object] = {}
        for (e1, e2), c in self._terms.items():
            f = 1
            for t in range(i):
                f *= e1 - t
            for t in range(j):
                f *= e2 - t
            if f:
                m = (e1 - i, e2 - j)
                out[m] = out.get(m, 0) + c * f
        return Poly2(out)

    # -------------------------------------------------------------- transforms
    def promote(self) -> "Poly2":
        return Poly2({m: complex(c) for m, c in self._terms.items()})

    def conjugate(self) -> "Poly2":
        return Poly2({m: conj(c) for m, c in self._terms.items()})

    def swap(self) -> "Poly2":
        """Exchange w1 and w2."""
        return Poly2({(m[1], m[0]): c for m, c in self._terms.items()})

    def substitute(self, q1: "Poly2", q2: "Poly2") -> "Poly2":
        """Compose with polynomial maps w1 -> q1, w2 -> q2."""
        if not self.is_polynomial():
            raise ValueError("cannot substitute into a Laurent polynomial")
        out = Poly2()
        for (e1, e2), c in self._terms.items():
            out = out + (q1 ** e1) * (q2 ** e2) * Poly2.const(c)
        return out

    def divexact(self, d: "Poly2") -> "Poly2":
        """Exact division by ``d``; raises ``ValueError`` when there is a remainder."""
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")

        def lead(p: Poly2) -> Monomial:
            return max(p._terms, key=lambda m: (m[0] + m[1], m[0]))

        ld = lead(d)
        cd = d._terms[ld]
        rem = self
        quot = Poly2()
        while not rem.is_zero():
            lr = lead(rem)
            if lr[0] < ld[0] or lr[1] < ld[1]:
                raise ValueError("polynomial division leaves a remainder")
            t = Poly2.monomial(lr[0] - ld[0], lr[1] - ld[1], rem._terms[lr] / cd)
            quot = quot + t
            rem = rem - t * d
        return quot

    # -------------------------------------------------------------- evaluation
    def eval(self, point):
        """Evaluate at ``(w1, w2)``.

        Exact points with exact coefficients give exact results.  Any float,
        complex or jet argument promotes the coefficients to ``complex``.
        """
        a, b = point
        exact_point = is_exact(a) and is_exact(b)
        if exact_point and self._kind != "float":
            a, b = normalize(a), normalize(b)
            total = Fraction(0)
            for (e1, e2), c in self._terms.items():
                total = total + c * a ** e1 * b ** e2
            return normalize(total)
        if exact_point:
            a, b = complex(a), complex(b)
        total = 0j
        pw1: dict[int, object] = {}
        pw2: dict[int, object] = {}
        for (e1, e2), c in self._terms.items():
            if e1 not in pw1:
                pw1[e1] = a ** e1
            if e2 not in pw2:
                pw2[e2] = b ** e2
            total = pw1[e1] * pw2[e2] * complex(c) + total
        return total

    __call__ = eval

    # -------------------------------------------------------------- io
    def to_json(self) -> dict:
        return {"terms": [{"e": [m[0], m[1]], "c": scalar_to_json(c)} for m, c in self.items()]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "Poly2":
        return cls({tuple(t["e"]): scalar_from_json(t["c"]) for t in obj["terms"]})

    def pretty(self, names: tuple[str, str] = ("w1", "w2")) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (e1, e2), c in self.items():
            mon = []
            for name, e in zip(names, (e1, e2)):
                if e == 1:
                    mon.append(name)
                elif e:
                    mon.append(f"{name}^{e}")
            cs = format_scalar(c)
            if mon:
                body = "*".join(mon)
                if cs == "1":
                    parts.append(body)
                elif cs == "-1":
                    parts.append("-" + body)
                else:
                    parts.append(f"({cs})*{body}")
            else:
                parts.append(f"({cs})" if any(ch in cs[1:] for ch in "+-") else cs)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly2({self.pretty()})"


W1 = Poly2.var(0)
W2 = Poly2.var(1)
ONE = Poly2.const(1)
