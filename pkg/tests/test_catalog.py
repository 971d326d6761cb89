import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qes_workbench import catalog as cat
from qes_workbench import spectra as sp
from qes_workbench.diffops import commutator
from qes_workbench.polys import W1, W2, Poly2

from oracles import gauge_residual_fd

F = Fraction
K211 = {"k1": F(1, 3), "k2": F(2, 5), "k3": F(-1, 2)}


def test_fourteen_systems():
    rows = {s: (solv, set(sep)) for s, solv, sep in cat.list_systems()}
    assert len(rows) == 14
    assert rows["S1111"] == ("ES", {"spherical", "elliptic"})
    assert rows["D"] == ("none", {"cartesian", "parabolic"})
    assert rows["S4"] == ("explicit-polynomial", {"semi-hyperbolic"})


def test_aliases_and_unknown():
    assert cat.get_system("[211]").id == "S211"
    with pytest.raises(cat.UnknownSystem):
        cat.get_system("G")


def test_potential_examples():
    assert cat.potential("S211", {"a1": 1, "a2": 1, "a3": 1, "a4": 0})(1, 1) == 0
    x, y = F(2, 3), F(-5, 7)
    assert cat.potential("C", {"a3": 0, "a4": 1})(x, y) == -(x * x + y * y)
    assert cat.potential("S0", {"a1": 5, "a2": 1, "a3": 2, "a4": 3})(0, 0) == 5


def test_potential_singular():
    V = cat.potential("S211", dict(K211, a4=1))
    with pytest.raises(cat.SingularPointError):
        V(0, 1)


def test_parameter_conflict():
    with pytest.raises(cat.ParameterMismatch):
        cat.complete_params("S211", dict(K211, a1=5))


def test_h211_on_w1():
    a4 = F(7)
    _, h = cat.build_h("S211", dict(K211, a4=a4))
    k1, k2, k3 = K211["k1"], K211["k2"], K211["k3"]
    E0 = 4 * k3 * (1 + 2 * k1 + 2 * k2) + a4
    assert h.apply(W1) == Poly2.const(2 * (4 * k1 + 1)) + W1 * (8 * k3 + E0)


def test_c_ground_state():
    k4 = F(-1, 2)
    p = cat.complete_params("C", {"k4": k4, "a1": -4 * k4, "gauge": 1})
    assert cat.build_h("C", p)[1].apply(Poly2.const(1)).is_zero()


def test_1111_ground_state_and_L1():
    p = sp.impose_constraint("S1111", {"k1": F(1, 3), "k2": F(2, 5), "k3": F(3, 7)}, 0)
    K = p["k1"] + p["k2"] + p["k3"]
    assert p["a4"] == -2 * K * (2 * K + 1)
    assert cat.build_h("S1111", p)[1].apply(Poly2.const(1)).is_zero()
    L1 = {s.name: s for s in cat.build_symmetries("S1111", p)}["L1"]
    assert L1.apply(Poly2.const(1)).is_zero()


def test_211_L1_on_constant():
    L1 = {s.name: s for s in cat.build_symmetries("S211", dict(K211, a4=1))}["L1"]
    assert L1.apply(Poly2.const(1)) == Poly2.const(2 * K211["k3"] * (1 + 2 * K211["k1"]))


def test_A_commutator_is_polynomial():
    sy = {s.name: s for s in cat.build_symmetries("A", {"k3": F(1, 4), "a4": 1})}
    c = commutator(sy["L2"].op, sy["J"].op)
    assert c.is_polynomial() and c.order() <= 2


@pytest.mark.parametrize("system", ["B", "C", "D", "E", "F", "X1", "X2"])
def test_frame_symmetries_commute(system):
    from cli_defaults import level_params
    p = level_params(system, 1)
    H = cat.frame_hamiltonian(system, p)
    for s in cat.build_symmetries(system, p):
        assert commutator(s.op, H).is_zero(), s.name


def test_gauge_examples():
    p = sp.impose_constraint("S211", K211, 0)
    assert cat.verify_gauge_transform("S211", p, Poly2.const(1), (F(3, 5), F(4, 7))) < 1e-10
    p0 = cat.complete_params("S0", {"k2": F(1, 3), "k3": F(1, 5), "k4": F(-1, 2), "a1": 2})
    assert cat.verify_gauge_transform("S0", p0, W1, (0.3, -1.1)) < 1e-10
    wrong = cat.GaugeFactor(exp_num=Poly2({(1, 0): F(-1, 3), (0, 1): F(-1, 3)}),
                            powers=((W1, F(1, 6)), (W2, F(2, 5))))
    assert cat.verify_gauge_transform("S211", p, Poly2.const(1), (0.6, 0.57), gauge=wrong) > 1e-2


@given(st.fractions(min_value=F(1, 10), max_value=3, max_denominator=10),
       st.fractions(min_value=F(1, 10), max_value=3, max_denominator=10),
       st.fractions(min_value=-3, max_value=F(-1, 10), max_denominator=10),
       st.integers(0, 3))
@settings(max_examples=15, deadline=None)
def test_211_gauge_matches_finite_differences(k1, k2, k3, N):
    p = sp.impose_constraint("S211", {"k1": k1, "k2": k2, "k3": k3}, N)
    P = W1 ** 2 - W1 * W2 * F(1, 3) + W2
    jet = cat.verify_gauge_transform("S211", p, P, (0.7, 0.45))
    fd = gauge_residual_fd(cat.get_system("S211"), p, P, 0.7, 0.45)
    assert jet < 1e-12 and fd < 1e-7


def test_exceptional_reduced_operator():
    p = cat.complete_params("X1", {"lam": F(1, 3), "a2": 0})
    op = cat.reduced_operator("X1", p)
    assert op.apply(Poly2.const(1)).is_zero()
    euler = cat.reduced_operator("X1", dict(p, a2=-4 * p["lam"] * 2), variant="euler")
    assert euler.apply(W1 ** 2).is_zero()


def test_catalog_json_is_complete():
    doc = cat.catalog_json("S211", dict(K211, a4=3))
    assert doc["id"] == "S211" and "operator" in doc and doc["symmetries"]
