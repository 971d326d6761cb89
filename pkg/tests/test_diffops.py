from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qes_workbench import catalog as cat
from qes_workbench.diffops import (
    DiffOp2, InvarianceViolation, OrderOverflowError, commutator, d1, d2, identity, is_degree_nonincreasing,
    matrix_on_PN, mult,
)
from qes_workbench.gl3 import generator_op
from qes_workbench.linalg import nullspace, rank
from qes_workbench.polys import W1, W2, Poly2

from oracles import sympy_rank
from strategies import polys, rationals


def test_apply_examples():
    assert (mult(W1) * d2()).apply(W2 ** 2) == 2 * W1 * W2
    assert d1(2).apply(W1 ** 3) == 6 * W1


def test_h1111_on_constant():
    p = {"k1": Fraction(1, 3), "k2": Fraction(1, 5), "k3": Fraction(2, 7), "a4": Fraction(3)}
    K = p["k1"] + p["k2"] + p["k3"]
    E0 = -Fraction(1, 2) * (p["a4"] + 2 * K * (1 + 2 * K))
    _, h = cat.build_h("S1111", p)
    assert h.apply(Poly2.const(1)) == Poly2.const(E0)


def test_heisenberg():
    assert commutator(d1(), mult(W1)) == identity()
    assert commutator(d1(), d2()).is_zero()


def test_raising_lowering_commutator():
    lhs = commutator(generator_op("Jminus1"), generator_op("Jplus1", 3))
    rhs = generator_op("J0N", 3) + generator_op("J0_11")
    for m in [(a, b) for a in range(5) for b in range(5 - a)]:
        P = Poly2.monomial(*m)
        assert lhs.apply(P) == rhs.apply(P)


def test_matrix_examples():
    M = matrix_on_PN(d1(), 1)
    assert M.rows() == [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
    E = matrix_on_PN(mult(W1) * d1(), 2)
    assert [E[i, i] for i in range(6)] == [0, 1, 0, 2, 1, 0]
    matrix_on_PN(generator_op("Jplus1", 2), 2)
    with pytest.raises(InvarianceViolation) as info:
        matrix_on_PN(generator_op("Jplus1", 2), 3)
    assert info.value.excess.degree() == 4


def test_degree_nonincreasing():
    assert is_degree_nonincreasing(d1(), 4) == (True, None)
    ok, witness = is_degree_nonincreasing(mult(W1), 3)
    assert not ok and witness == ((0, 0), W1)
    p = cat.complete_params("S211", {"k1": Fraction(1, 3), "k2": Fraction(2, 5), "k3": Fraction(-1, 2), "a4": 7})
    assert is_degree_nonincreasing(cat.build_h("S211", p)[1], 8)[0]


def test_order_cap():
    with pytest.raises(OrderOverflowError):
        d1(3).compose(d2(2))


@given(polys(3), polys(3), polys(3))
@settings(max_examples=30, deadline=None)
def test_compose_is_application_order(a, b, p):
    A = mult(a) * d1() + d2()
    B = mult(b) * d2() + mult(a)
    assert A.compose(B).apply(p) == A.apply(B.apply(p))


@given(polys(3), polys(3))
@settings(max_examples=30, deadline=None)
def test_commutator_antisymmetric(a, b):
    A = mult(a) * d1()
    B = mult(b) * d2() + d1()
    assert commutator(A, B) == -commutator(B, A)


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=1, max_size=5)))
@settings(max_examples=40, deadline=None)
def test_nullspace_matches_sympy(rows):
    r = sympy_rank(rows)
    assert rank(rows) == r
    basis = nullspace(rows)
    assert len(basis) == len(rows[0]) - r
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in rows)
