import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qes_workbench import classical as cl

from oracles import harmonic_x

INIT = cl.ClassicalState(1.0, 0.7, 0.3, -0.2)


@pytest.fixture(scope="module")
def e1_run():
    h = cl.hamiltonian("HE1", 0.3, 0.5, -0.4)
    return cl.integrate(h, INIT, 5.0)


def test_harmonic_limit():
    h = cl.hamiltonian("HE1", 0, 0, -1)
    tr = cl.integrate(h, INIT, 3.0, min_steps=2000)
    assert np.max(np.abs(tr.z[0] - harmonic_x(-1, INIT.x, INIT.p_x, tr.t))) < 1e-8


def test_conservation(e1_run):
    assert e1_run.n_steps >= 10_000
    assert max(e1_run.drifts().values()) < 1e-9
    assert not e1_run.truncated


@given(st.tuples(st.floats(0.5, 2), st.floats(0.5, 2), st.floats(-1, 1), st.floats(-1, 1)))
@settings(max_examples=25, deadline=None)
def test_brackets_vanish(z):
    for h in (cl.hamiltonian("HE1", 0.3, 0.5, -0.4), cl.hamiltonian("HE16", 0.3, 0.5, -0.4, 2.0)):
        assert abs(cl.poisson_bracket(h.H, h.L1, z)) < 1e-8
        assert abs(cl.poisson_bracket(h.H, h.L2, z)) < 1e-8


def test_bracket_detects_non_invariant():
    h = cl.hamiltonian("HE1", 0.3, 0.5, -0.4)
    z = (1.0, 0.7, 0.3, -0.2)
    # {H, x} = -dH/dpx with {f, g} = f_q g_p - f_p g_q
    assert abs(cl.poisson_bracket(h.H, lambda u: u[0], z) + 2 * z[2]) < 1e-10


def test_free_motion_angular_momentum():
    h = cl.hamiltonian("HE1")
    tr = cl.integrate(h, INIT, 2.0, min_steps=500)
    L2 = tr.invariant_series()["L2"]
    assert np.max(np.abs(L2 - (INIT.x * INIT.p_y - INIT.y * INIT.p_x) ** 2)) < 1e-12


def test_coincidence(e1_run):
    rep = cl.trajectory_coincidence(e1_run)
    assert rep["distance"] < 1e-6 and rep["pointwise_gap"] < 1e-8
    assert abs(rep["E_E16"] - (-0.4)) < 1e-12
    assert rep["max_L_difference"] < 1e-8
    bad = cl.trajectory_coincidence(e1_run, a4_shift=1.0)
    assert bad["distance"] > 1e-2


def test_clock(e1_run):
    assert cl.tau_quadrature_check(e1_run) < 1e-6


def test_boundedness():
    att = cl.integrate(cl.hamiltonian("HE1", 0, 0, -1), INIT, 4.0, min_steps=1000)
    rep = cl.integrate(cl.hamiltonian("HE1", 0, 0, 1), INIT, 4.0, min_steps=1000)
    assert cl.is_bounded(att, 3.0) and not cl.is_bounded(rep, 3.0)


def test_wall_truncation():
    h = cl.hamiltonian("HE1", 0.01, 0.5, 0.0)
    tr = cl.integrate(h, cl.ClassicalState(0.05, 1.0, -3.0, 0.0), 1.0, min_steps=100, wall=0.04)
    assert tr.truncated or np.min(np.abs(tr.z[0])) > 0.04
    with pytest.raises(cl.SingularityError):
        cl.integrate(h, cl.ClassicalState(0.0, 1.0, 0.0, 0.0), 1.0)


def test_complex_params_rejected():
    with pytest.raises(ValueError):
        cl.HamiltonianSpec("HE1", a1=1j)


def test_csv_columns(e1_run):
    text = cl.trajectory_csv(e1_run, stride=2000)
    head = text.splitlines()[0]
    assert head == "t,tau,x,y,p_x,p_y,H,L1,L2"
    assert len(text.splitlines()) == 1 + len(range(0, e1_run.z.shape[1], 2000))
