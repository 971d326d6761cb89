import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qes_workbench import catalog as cat
from qes_workbench import stackel as stk
from qes_workbench.moments import Weighted
from qes_workbench.scalars import gauss

from oracles import e16_energy, s4_printed, sphere_sympy
from strategies import gaussians

F = Fraction
pos = st.fractions(min_value=F(1, 10), max_value=3, max_denominator=10)


def test_cst_targets():
    p = cat.complete_params("S211", {"k1": F(1, 3), "k2": F(2, 5), "k3": F(-1, 2), "a4": 5})
    e1 = stk.cst("S211", p, "a4")
    assert e1.target == "E1" and e1.eigenvalue == -5 and e1.U(0.3, 0.8) == 1
    e16 = stk.cst("S211", p, "a3")
    assert e16.target == "E16" and e16.eigenvalue == p["a3"]
    assert abs(e16.U(0.3, 0.8) - (0.09 + 0.64)) < 1e-15
    s4 = stk.cst("S211", p, "b2")
    assert s4.spectral_param == "-b2"
    assert s4.eigenvalue == -(p["a1"] + p["a2"]) / 2


def test_e16_spot_values():
    assert stk.e16_eigenvalue(F(1, 4), F(1, 4), 12, 2) == 1
    assert stk.e16_eigenvalue_k3_route(F(1, 4), F(1, 4), 12, 2) == 1
    assert stk.e16_eigenvalue(F(1, 3), F(1, 5), 0, 4) == 0


def test_e16_nonlinear_in_N():
    r = [stk.e16_eigenvalue(F(1, 3), F(1, 5), 7, N) for N in range(4)]
    assert r[1] / r[0] != r[2] / r[1]


@given(pos, pos, st.fractions(min_value=-20, max_value=20, max_denominator=7), st.integers(0, 6))
@settings(max_examples=50)
def test_e16_routes_agree(k1, k2, a4, N):
    a = stk.e16_eigenvalue(k1, k2, a4, N)
    assert a == stk.e16_eigenvalue_k3_route(k1, k2, a4, N) == e16_energy(k1, k2, a4, N)


def test_same_kernel():
    rng = random.Random(4)
    pts = [(rng.uniform(0.2, 1.5), rng.uniform(0.2, 1.5)) for _ in range(10)]
    for N in range(3):
        assert stk.same_kernel_residual(F(1, 3), F(2, 5), F(3), N, pts) < 1e-10


def test_s4_printed_examples():
    assert stk.s4_eigenvalue(0, 1, 4, 0) == 0
    assert stk.s4_eigenvalue(2, 1, 0, 1) == F(-4, 25) - F(15, 4)


@given(st.fractions(min_value=-3, max_value=3, max_denominator=7),
       st.fractions(min_value=F(1, 7), max_value=3, max_denominator=7),
       st.fractions(min_value=-9, max_value=9, max_denominator=7), st.integers(0, 4))
@settings(max_examples=50)
def test_s4_printed_formula_exact(b1, k3, a4, N):
    if 6 - a4 / (2 * k3) + 4 * N == 0:
        return
    assert stk.s4_eigenvalue(b1, k3, a4, N) == s4_printed(b1, k3, a4, N)


@given(pos, pos, st.fractions(min_value=F(-3), max_value=F(-1, 5), max_denominator=5), st.integers(0, 3))
@settings(max_examples=40)
def test_s4_derived_matches_parameter_map(k1, k2, k3, N):
    if k1 + k2 == F(1, 2):
        # T = 2 - 4(k1 + k2) vanishes together with b1: the closed form reads 0/0 there
        return
    prm = stk.s4_params(k1, k2, k3, N)
    assert stk.s4_eigenvalue_derived(prm["b1"], k3, prm["a4"], N) == prm["b2"]
    if prm["b1"] == 0:
        assert stk.s4_eigenvalue(prm["b1"], k3, prm["a4"], N) == prm["b2"]


def test_s4_kernel_residuals():
    pts = [(0.7, 0.4), (1.1, 0.35), (0.5, 0.9)]
    prm = stk.s4_params(1, F(1, 4), -1, 0)
    assert prm["b2"] == F(-7, 8)
    assert stk.s4_kernel_residual(1, F(1, 4), -1, 0, prm["b2"], pts) < 1e-12
    printed = stk.s4_eigenvalue(prm["b1"], -1, prm["a4"], 0)
    assert printed == F(-43, 8)
    assert stk.s4_kernel_residual(1, F(1, 4), -1, 0, printed, pts) > 1e-3


@pytest.mark.parametrize("x, y", [(1, 1), (2, 3)])
def test_sphere_points(x, y):
    assert stk.sphere_embedding_check(x, y) == 0


@given(gaussians, gaussians)
@settings(max_examples=40)
def test_sphere_gaussian_rationals(x, y):
    if x * y == 0:
        with pytest.raises(cat.SingularPointError):
            stk.sphere_embedding_check(x, y)
        return
    assert stk.sphere_embedding_check(x, y) == 0


def test_sphere_oracle_and_printed_variant():
    import sympy
    assert sphere_sympy(sympy.Rational(2, 3), 1 + sympy.I) == 1
    assert stk.sphere_embedding_check(2, 3, variant="printed") != 0


def test_transformed_inner_product():
    p = {"k1": F(1, 3), "k2": F(2, 5), "k3": F(-1, 2), "a4": 6}
    ip = stk.transformed_inner_product("S211", p, "E16")
    assert isinstance(ip.family, Weighted)
    base = stk.transformed_inner_product("S211", p, "E1")
    assert ip.family.rel(0, 0) == base.family.rel(1, 0) + base.family.rel(0, 1)
    with pytest.raises(cat.CatalogError):
        stk.transformed_inner_product("S211", p, "S4")
