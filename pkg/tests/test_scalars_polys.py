from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qes_workbench.polys import ONE, W1, W2, Poly2, basis_of_PN, rectangle_basis
from qes_workbench.scalars import (
    I, Gauss, MixedScalarError, gauss, normalize, parse_scalar, scalar_from_json, scalar_to_json,
)

from strategies import gaussians, polys, rationals


def test_difference_of_squares():
    assert (W1 + W2) * (W1 - W2) == W1 ** 2 - W2 ** 2


def test_additive_identity():
    p = W1 * 3 + W2 ** 2
    assert p + Poly2() == p


def test_square_expansion():
    got = (1 - W1 - W2) ** 2
    want = Poly2({(0, 0): 1, (1, 0): -2, (0, 1): -2, (2, 0): 1, (1, 1): 2, (0, 2): 1})
    assert got == want


@pytest.mark.parametrize("N, n", [(0, 1), (3, 10), (6, 28)])
def test_basis_sizes(N, n):
    b = basis_of_PN(N)
    assert len(b) == n
    assert b[0] == (0, 0)


def test_basis_grlex_order():
    assert basis_of_PN(2) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert len(rectangle_basis(2, 1)) == 6


def test_eval_examples():
    assert (W1 ** 2 - W2 ** 2).eval((3, 1)) == 8
    assert Poly2.const(5).eval((Fraction(7, 3), -2)) == 5
    assert (1 - W1 - W2).eval((Fraction(1, 4), Fraction(1, 4))) == Fraction(1, 2)


def test_mixing_exact_and_float_raises():
    with pytest.raises(MixedScalarError):
        Poly2({(0, 0): Fraction(1, 2), (1, 0): 0.5})
    with pytest.raises(MixedScalarError):
        W1 + Poly2.const(0.25)
    assert (W1.promote() + Poly2.const(0.25)).kind == "float"


def test_gauss_arithmetic():
    z = gauss(1, 2)
    assert z * z.conjugate() == 5
    assert isinstance(I * I, Fraction) and I * I == -1
    assert (z / z) == 1


@pytest.mark.parametrize("text, value", [
    ("-1/2", Fraction(-1, 2)),
    ("3+2i", gauss(3, 2)),
    ("i", I),
    ("-i/2", gauss(0, Fraction(-1, 2))),
    ("1/2i", gauss(0, Fraction(1, 2))),
])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("text", ["0.5", "", "1/2/3", "2i3"])
def test_parse_scalar_rejects(text):
    with pytest.raises(ValueError):
        parse_scalar(text)


@given(gaussians)
def test_json_roundtrip(z):
    assert scalar_from_json(scalar_to_json(z)) == normalize(z)


@given(polys(), polys(), polys())
@settings(max_examples=60)
def test_ring_axioms(p, q, r):
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p


@given(polys(), polys(), rationals, rationals)
@settings(max_examples=60)
def test_eval_is_homomorphism(p, q, a, b):
    assert (p * q).eval((a, b)) == p.eval((a, b)) * q.eval((a, b))
    assert (p + q).eval((a, b)) == p.eval((a, b)) + q.eval((a, b))


@given(polys(), polys())
@settings(max_examples=40)
def test_divexact_inverts_multiplication(p, q):
    if q.is_zero():
        return
    assert (p * q).divexact(q) == p


@given(polys())
def test_swap_and_substitute(p):
    assert p.swap().swap() == p
    assert p.substitute(W2, W1) == p.swap()
    assert p.substitute(W1, W2) == p


def test_laurent_exponents():
    p = Poly2.monomial(-1, 0) * W1
    assert p == ONE
    assert not Poly2.monomial(1, -2).is_polynomial()
