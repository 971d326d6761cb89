import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qes_workbench import catalog as cat
from qes_workbench import spectra as sp
from qes_workbench.diffops import InvarianceViolation, matrix_on_space
from qes_workbench.gl3 import generator_op
from qes_workbench.polys import W1, W2, Poly2, RectangleSpace, TotalDegreeSpace
from qes_workbench.scalars import I

from oracles import dirichlet_moment, quad_2d, sympy_rank

F = Fraction
K1111 = {"k1": F(1, 3), "k2": F(2, 5), "k3": F(3, 7)}
K211 = {"k1": F(1, 3), "k2": F(2, 5), "k3": F(-1, 2)}


def test_constraint_examples():
    assert sp.solve_constraint("S211", {"k1": F(1, 4), "k2": F(1, 4), "k3": F(-1, 2)}, 2) == 12
    K = sum(K1111.values())
    assert sp.solve_constraint("S1111", K1111, 0) == -2 * K * (2 * K + 1)
    assert sp.solve_constraint("A", {"k3": F(1, 4)}, 1) == F(-15, 4)


def test_no_constraint_for_F():
    p = sp.impose_constraint("F", {"k1": F(1, 3), "k4": F(2, 5)}, 2)
    assert "a4" not in p or p["a4"] is not None


def test_kernel_examples():
    p = sp.impose_constraint("S1111", K1111, 0)
    assert sp.kernel_basis("S1111", p, 0) == [Poly2.const(1)]
    assert len(sp.kernel_basis("S211", K211, 1)) == 2
    kc = sp.kernel_basis("C", {"k4": F(-1, 2), "gauge": 1}, 1)
    assert all(P.coeff((0, 0)) == 0 or P.degree() == 1 for P in kc)
    assert Poly2.const(1) not in kc


@pytest.mark.parametrize("system, params", [
    ("S1111", K1111), ("S211", K211), ("S31", {"k2": F(1, 3), "k3": F(-1, 2), "k4": F(2, 5)}),
    ("S0", {"k2": F(1, 3), "k3": F(1, 5), "k4": F(-1, 2)}), ("A", {"k3": F(1, 4)}),
])
def test_kernel_dimension_against_sympy(system, params):
    for N in range(4):
        p, _, h, space = sp.constrained_h(system, params, N)
        rows = matrix_on_space(h, space).rows()
        assert len(rows) - sympy_rank(rows) == N + 1
        for P in sp.kernel_basis(system, params, N):
            assert h.apply(P).is_zero()


def test_symmetry_spectra():
    p = sp.impose_constraint("S1111", K1111, 1)
    r = sp.symmetry_spectrum("S1111", p, 1, "L1")
    assert len(r.eigenvalues) == 2 and abs(r.eigenvalues[0] - r.eigenvalues[1]) > 1e-3
    pa = sp.impose_constraint("A", {"k3": F(1, 4)}, 2)
    J = sp.symmetry_spectrum("A", pa, 2, "J", sector="space")
    m = sorted(round(abs(v.imag)) for v in J.eigenvalues)
    assert m == [0, 0, 1, 1, 2, 2]
    assert max(abs(v.real) for v in J.eigenvalues) < 1e-12


def test_laurent_symmetry_rejected():
    p = sp.impose_constraint("S22", {"k1": F(1, 3), "k2": F(2, 5), "k3": F(1, 2)}, 1)
    with pytest.raises(sp.NotInvariant):
        sp.symmetry_spectrum("S22", p, 1, "L2")


def test_gram_examples():
    p = sp.impose_constraint("S1111", {"k1": F(1, 2), "k2": F(1, 2), "k3": F(1, 2)}, 1)
    G = sp.gram_matrix("S1111", p, 1)
    want = math.gamma(1.5) ** 3 / math.gamma(4.5)
    assert abs(G[0, 0] - want) < 1e-14 * want
    ip0 = sp.inner_product("S0", sp.impose_constraint("S0", {"k2": F(1, 3), "k3": F(1, 5), "k4": F(-1, 2)}, 1))
    assert ip0.family.rel(1, 1) == ip0.family.rel(1, 0) * ip0.family.rel(0, 1)
    ip = sp.inner_product("S211", sp.impose_constraint("S211", K211, 1))
    k1, k3 = K211["k1"], K211["k3"]
    assert ip.family.rel(1, 0) == (2 * k1 + F(1, 2)) / (-2 * k3)


def test_dirichlet_moment_against_quadrature():
    p = sp.impose_constraint("S1111", K1111, 1)
    ip = sp.inner_product("S1111", p)
    al, be, ga = (float(2 * p[k] + F(1, 2)) for k in ("k1", "k2", "k3"))
    for a, b in [(0, 0), (1, 0), (1, 2)]:
        assert abs(ip.moment(a, b) - dirichlet_moment(al, be, ga, a, b)) < 1e-12
    num = quad_2d(lambda u, v: u ** (al - 1) * v ** (be - 1) * (1 - u - v) ** (ga - 1), 1, 1,
                  0, 1, 0, lambda u: 1 - u)
    assert abs(num - ip.moment(1, 1)) < 1e-6 * abs(num)


@pytest.mark.parametrize("system, params, N", [
    ("S211", K211, 4), ("S1111", K1111, 3), ("C", {"k4": F(-1, 2), "gauge": 1}, 3),
])
def test_selfadjoint(system, params, N):
    assert sp.selfadjointness_check(system, params, N) < 1e-10


def test_pt_not_selfadjoint():
    p = sp.impose_constraint("S211", {"k1": F(1, 4), "k2": F(1, 4), "k3": F(-2)}, 2)
    op = sp.pt_extension("S211", p, 2, 1, I / 2)["operator"]
    assert sp.selfadjointness_check("S211", p, 2, op=op) > 1e-2


def test_physical_range_enforced():
    with pytest.raises(cat.PhysicalRangeError):
        sp.inner_product("S211", sp.impose_constraint("S211", dict(K211, k3=F(1, 2)), 1))


def test_separation_examples():
    p = dict(K211, c=F(3, 2))
    sep = sp.separation_operator("S211", "elliptic", p, 2, variant="printed")
    assert sep.op.coeff(2, 0) == -4 * W1 * (W1 - 1)
    assert sep.op.coeff(0, 0) == W1 * (-8 * K211["k3"] * F(9, 4) * 2)
    vals, vecs = sp.lambda_spectrum(sp.separation_operator("S211", "elliptic", p, 2))
    assert len(vals) == 3
    for U in vecs:
        assert sp.reconstruction_residual(sp.separation_operator("S211", "elliptic", p, 2), U) < 1e-8
    s31 = sp.separation_operator("S31", "parabolic", {"k2": F(1, 3), "k3": F(-1, 2), "k4": F(2, 5)}, 0)
    assert s31.op.apply(Poly2.const(1)).is_zero()
    assert np.allclose(sp.lambda_spectrum(s31)[0], [0])


def test_A_elliptic_invariant():
    for N in range(4):
        sep = sp.separation_operator("A", "elliptic", {"k3": F(1, 4), "r": F(3)}, N)
        matrix_on_space(sep.op, RectangleSpace(N, 0))


def test_s22_polar_pair():
    base = {"k1": F(1, 3), "k2": F(2, 5), "k3": F(1, 2)}
    for m in range(3):
        S = sp.lambda_spectrum(sp.separation_operator("S22", "polar-S", base, m))[0]
        T = sp.lambda_spectrum(sp.separation_operator("S22", "polar-T", base, m))[0]
        assert np.allclose(sorted(S.real), sorted(T.real))


def test_printed_elliptic_does_not_reconstruct():
    sep = sp.separation_operator("S211", "elliptic", dict(K211, c=F(3, 2)), 2, variant="printed")
    _, vecs = sp.lambda_spectrum(sep)
    assert max(sp.reconstruction_residual(sep, U) for U in vecs) > 1e-3


def test_qes_extension():
    p = sp.impose_constraint("S211", K211, 2)
    _, h = cat.build_h("S211", p)
    assert sp.qes_extension("S211", p, 2, 0) == h
    op = sp.qes_extension("S211", p, 2, F(3, 2))
    matrix_on_space(op, TotalDegreeSpace(2))
    with pytest.raises(InvarianceViolation):
        matrix_on_space(op, TotalDegreeSpace(3))


@given(st.integers(0, 5), st.sampled_from([F(1, 2), F(1), F(2)]), st.sampled_from([F(1, 3), F(1, 2), F(1)]))
@settings(max_examples=15, deadline=None)
def test_pt_swap_identity(N, alpha, b):
    p = sp.impose_constraint("S211", {"k1": F(1, 4), "k2": F(1, 4), "k3": F(-2)}, N)
    rep = sp.pt_extension("S211", p, N, alpha, b * I)
    assert rep["swap_conjugation_identity"]


def test_pt_beta_zero_matches_qes():
    p = sp.impose_constraint("S211", {"k1": F(1, 4), "k2": F(1, 4), "k3": F(-2)}, 3)
    a = sp.pt_extension("S211", p, 3, 1, 0)["eigenvalues"]
    M = matrix_on_space(sp.qes_extension("S211", p, 3, 1), TotalDegreeSpace(3)).to_numpy()
    assert np.allclose(a, sp.sorted_eigen(M)[0])


def test_pt_real_spectrum_sample():
    p = sp.impose_constraint("S211", {"k1": F(1, 4), "k2": F(1, 4), "k3": F(-2)}, 3)
    assert sp.pt_extension("S211", p, 3, 1, I)["max_abs_imag"] < 1e-8


def test_pt_physical_form():
    p = {"k1": F(1, 4), "k2": F(1, 4), "k3": F(-2), "a4": 0}
    rep = sp.pt_physical_form(p, 2, 0, 0)
    assert rep["residual_derived"] < 1e-10 and rep["residual_printed"] < 1e-10
    rep = sp.pt_physical_form(p, 2, 1, I)
    assert rep["residual_derived"] < 1e-10
    assert rep["residual_printed"] > 1e-4


def test_spectrum_report():
    doc = sp.spectrum_report("S211", {"k1": F(1, 4), "k2": F(1, 4), "k3": F(-1, 2)}, 2, "L1")
    assert doc["constraint_value"] == "12" and doc["kernel_dim"] == 3
    assert doc["gram_asymmetry"] < 1e-10
