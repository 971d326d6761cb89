import time
from fractions import Fraction

import pytest

from qes_workbench import catalog as cat
from qes_workbench.diffops import commutator, identity
from qes_workbench.gl3 import Gl3Expression, check_commutator_table, decompose, generator_op, to_diffop
from qes_workbench.polys import W1, W2, Poly2


def test_generator_examples():
    assert generator_op("J0_12") == generator_op("J0_12", 5)
    assert generator_op("J0_12").apply(W2) == W1
    assert generator_op("J0N", 3).apply(W1 * W2) == -(W1 * W2)
    assert generator_op("Jplus1", 2).apply(Poly2.const(1)) == -2 * W1


@pytest.mark.parametrize("a, b, expected", [
    ("Jminus1", "J0_11", {"Jminus1": 1}),
    ("J0_12", "J0_21", {"J0_11": 1, "J0_22": -1}),
    ("Jminus1", "Jminus2", {}),
])
def test_named_commutators(a, b, expected):
    c = commutator(generator_op(a), generator_op(b))
    assert decompose(c) == {k: Fraction(v) for k, v in expected.items()}


def test_table_closes():
    t0 = time.perf_counter()
    for N in (0, 1, Fraction(5, 2)):
        rep = check_commutator_table(N, 5)
        assert rep["ok"] and rep["n_pairs"] == 36
    assert time.perf_counter() - t0 < 5


def test_identity_expression():
    assert to_diffop(Gl3Expression().add_const(1)) == identity()


@pytest.mark.parametrize("system, params", [
    ("S1111", {"k1": Fraction(1, 3), "k2": Fraction(2, 5), "k3": Fraction(3, 7), "a4": 2}),
    ("S211", {"k1": Fraction(1, 3), "k2": Fraction(2, 5), "k3": Fraction(-1, 2), "a4": 2}),
    ("S0", {"k2": Fraction(1, 3), "k3": Fraction(1, 5), "k4": Fraction(-1, 2), "a1": 1}),
    ("A", {"k3": Fraction(1, 4), "a4": 3}),
])
def test_gl3_forms(system, params):
    ok, diff = cat.verify_gl3_form(system, params)
    assert ok, diff.pretty()


def test_perturbed_form_fails():
    p = {"k2": Fraction(1, 3), "k3": Fraction(1, 5), "k4": Fraction(-1, 2), "a1": 1}
    ok, diff = cat.verify_gl3_form("S0", p, perturb={"J0_12": Fraction(1, 7)})
    assert not ok and not diff.is_zero()


def test_printed_1111_form_differs():
    p = {"k1": Fraction(1, 3), "k2": Fraction(2, 5), "k3": Fraction(3, 7), "a4": 2}
    ok, _ = cat.verify_gl3_form("S1111", p, printed=True)
    assert not ok
