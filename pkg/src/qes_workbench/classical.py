"""Classical [211] / E1 / E16 dynamics with a co-integrated second clock.

E1 is integrated in ``t`` with ``dtau/dt = x^2 + y^2``; E16 is integrated in
``tau`` with ``dt/dtau = 1/(x^2 + y^2)``.  Poisson brackets use
``{f, g} = f_q g_p - f_p g_q``, so ``dz/dt = {z, H}``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.optimize import minimize_scalar
from scipy.spatial import cKDTree

__all__ = [
    "HamiltonianSpec",
    "ClassicalState",
    "Trajectory",
    "SingularityError",
    "hamiltonian",
    "constants_of_motion",
    "poisson_bracket",
    "integrate",
    "harmonic_closed_form",
    "stackel_partner",
    "trajectory_coincidence",
    "tau_quadrature_check",
    "is_bounded",
    "trajectory_csv",
]


class SingularityError(ValueError):
    pass


@dataclass(frozen=True)
class ClassicalState:
    x: float
    y: float
    p_x: float
    p_y: float
    t: float = 0.0
    tau: float = 0.0

    @property
    def z(self) -> np.ndarray:
        return np.array([self.x, self.y, self.p_x, self.p_y], dtype=float)

    @classmethod
    def parse(cls, text: str) -> "ClassicalState":
        vals = [float(v) for v in text.split(",")]
        if len(vals) != 4:
            raise ValueError("initial state must be x,y,px,py")
        return cls(*vals)


@dataclass(frozen=True)
class HamiltonianSpec:
    id: str  # H211 | HE1 | HE16
    a1: float = 0.0
    a2: float = 0.0
    a3: float = 0.0
    a4: float = 0.0

    def __post_init__(self):
        if self.id not in ("H211", "HE1", "HE16"):
            raise ValueError(f"unknown Hamiltonian {self.id!r}")
        for v in (self.a1, self.a2, self.a3, self.a4):
            if isinstance(v, complex) or not math.isfinite(float(v)):
                raise ValueError("classical parameters must be real")

    @property
    def singular_walls(self) -> bool:
        return self.a1 != 0 or self.a2 != 0 or self.id == "HE16"

    def W(self, x, y):
        return self.a1 / x ** 2 + self.a2 / y ** 2

    def H(self, z) -> float:
        x, y, px, py = z
        kin = px * px + py * py
        if self.id == "HE16":
            return (kin + self.W(x, y) + self.a4) / (x * x + y * y)
        h = kin + self.W(x, y) - self.a3 * (x * x + y * y)
        return h + self.a4 if self.id == "H211" else h

    def effective_a3(self, z) -> float:
        # the E16 invariants are the E1 ones with a3 replaced by the E16 energy
        return self.H(z) if self.id == "HE16" else self.a3

    def L1(self, z) -> float:
        x, y, px, py = z
        return px * px + self.a1 / x ** 2 - self.effective_a3(z) * x * x

    def L2(self, z) -> float:
        x, y, px, py = z
        return (x * py - y * px) ** 2 + self.a1 * y * y / x ** 2 + self.a2 * x * x / y ** 2

    def invariants(self) -> list[tuple[str, Callable]]:
        return [("H", self.H), ("L1", self.L1), ("L2", self.L2)]

    def rhs(self, z) -> np.ndarray:
        x, y, px, py = z
        s = x * x + y * y
        dWx = -2 * self.a1 / x ** 3
        dWy = -2 * self.a2 / y ** 3
        if self.id == "HE16":
            F = px * px + py * py + self.W(x, y) + self.a4
            return np.array([
                2 * px / s,
                2 * py / s,
                -dWx / s + F * 2 * x / s ** 2,
                -dWy / s + F * 2 * y / s ** 2,
            ])
        return np.array([2 * px, 2 * py, -dWx + 2 * self.a3 * x, -dWy + 2 * self.a3 * y])


def hamiltonian(id: str, a1=0.0, a2=0.0, a3=0.0, a4=0.0) -> HamiltonianSpec:
    return HamiltonianSpec(id, float(a1), float(a2), float(a3), float(a4))


def constants_of_motion(h: HamiltonianSpec, s: ClassicalState | Sequence[float]) -> tuple[float, float, float]:
    z = s.z if isinstance(s, ClassicalState) else np.asarray(s, dtype=float)
    if z[0] == 0 or z[1] == 0:
        if h.singular_walls:
            raise SingularityError("state lies on a singular axis")
    return h.H(z), h.L1(z), h.L2(z)


def _grad(f, z, step):
    g = np.zeros(4)
    for i in range(4):
        e = np.zeros(4)
        e[i] = step * max(1.0, abs(z[i]))
        g[i] = (-f(z + 2 * e) + 8 * f(z + e) - 8 * f(z - e) + f(z - 2 * e)) / (12 * e[i])
    return g


def poisson_bracket(f: Callable, g: Callable, z, step: float = 2e-4) -> float:
    """Fourth-order central-difference ``{f, g}``."""
    z = np.asarray(z, dtype=float)
    df, dg = _grad(f, z, step), _grad(g, z, step)
    return float(df[0] * dg[2] + df[1] * dg[3] - df[2] * dg[0] - df[3] * dg[1])


@dataclass
class Trajectory:
    spec: HamiltonianSpec
    t: np.ndarray
    tau: np.ndarray
    z: np.ndarray  # shape (4, n)
    clock: str  # integration variable: "t" or "tau"
    truncated: bool
    n_steps: int
    method: str
    rtol: float
    atol: float
    sol: object = field(repr=False, default=None)

    def states(self) -> list[ClassicalState]:
        return [ClassicalState(*self.z[:, i], t=self.t[i], tau=self.tau[i]) for i in range(self.z.shape[1])]

    def invariant_series(self) -> dict[str, np.ndarray]:
        return {name: np.array([fn(self.z[:, i]) for i in range(self.z.shape[1])])
                for name, fn in self.spec.invariants()}

    def drifts(self) -> dict[str, float]:
        out = {}
        for name, vals in self.invariant_series().items():
            out[name] = float(np.max(np.abs(vals - vals[0])) / (1 + abs(vals[0])))
        return out

    def at(self, clock_value: float) -> np.ndarray:
        """Dense-output state (x, y, px, py, other clock) at the integration clock."""
        return self.sol(clock_value)

    def summary(self) -> dict:
        return {
            "hamiltonian": self.spec.id,
            "params": {"a1": self.spec.a1, "a2": self.spec.a2, "a3": self.spec.a3, "a4": self.spec.a4},
            "clock": self.clock,
            "n_steps": self.n_steps,
            "truncated": self.truncated,
            "integrator": {"method": self.method, "rtol": self.rtol, "atol": self.atol},
            "t_end": float(self.t[-1]),
            "tau_end": float(self.tau[-1]),
            "drift": self.drifts(),
        }


def integrate(h: HamiltonianSpec, initial: ClassicalState, t_end: float, tol: float = 1e-12,
              min_steps: int = 10_000, wall: float = 1e-6) -> Trajectory:
    """Integrate Hamilton's equations with DOP853 and co-integrate the other clock.

    For HE16 ``t_end`` is measured on the tau clock.  Approaching ``|x|`` or
    ``|y|`` below ``wall`` stops the run and sets ``truncated``.
    """
    z0 = initial.z
    if h.singular_walls and (abs(z0[0]) <= wall or abs(z0[1]) <= wall):
        raise SingularityError("initial point lies on a singular axis")
    e16 = h.id == "HE16"

    def f(_, u):
        dz = h.rhs(u[:4])
        s = u[0] * u[0] + u[1] * u[1]
        return np.append(dz, 1.0 / s if e16 else s)

    events = []
    if h.singular_walls:
        def hit_x(_, u):
            return abs(u[0]) - wall

        def hit_y(_, u):
            return abs(u[1]) - wall

        for ev in (hit_x, hit_y):
            ev.terminal = True
        events = [hit_x, hit_y]

    start = initial.tau if e16 else initial.t
    other = initial.t if e16 else initial.tau
    atol = tol * 1e-2
    sol = solve_ivp(f, (start, start + t_end), np.append(z0, other), method="DOP853",
                    rtol=tol, atol=atol, max_step=t_end / min_steps, dense_output=True,
                    events=events or None)
    if sol.status == -1:
        raise RuntimeError(sol.message)
    truncated = sol.status == 1
    clock, oth = sol.t, sol.y[4]
    t, tau = (oth, clock) if e16 else (clock, oth)
    return Trajectory(h, t, tau, sol.y[:4], "tau" if e16 else "t", truncated,
                      len(sol.t) - 1, "DOP853", tol, atol, sol.sol)


def harmonic_closed_form(a3: float, initial: ClassicalState, t) -> np.ndarray:
    """(x, y) for a1 = a2 = 0: x'' = 4 a3 x."""
    t = np.asarray(t, dtype=float)
    out = []
    for q0, p0 in ((initial.x, initial.p_x), (initial.y, initial.p_y)):
        v0 = 2 * p0
        if a3 < 0:
            w = 2 * math.sqrt(-a3)
            out.append(q0 * np.cos(w * t) + v0 / w * np.sin(w * t))
        elif a3 > 0:
            w = 2 * math.sqrt(a3)
            out.append(q0 * np.cosh(w * t) + v0 / w * np.sinh(w * t))
        else:
            out.append(q0 + v0 * t)
    return np.array(out)


def stackel_partner(e1: HamiltonianSpec, initial: ClassicalState, a4_shift: float = 0.0) -> HamiltonianSpec:
    """E16 partner of E1: a4 = -E_E1 at the initial point, so E_E16 = a3."""
    if e1.id != "HE1":
        raise ValueError("the partner is built from an HE1 spec")
    a4 = -e1.H(initial.z) + a4_shift
    return HamiltonianSpec("HE16", e1.a1, e1.a2, e1.a3, a4)


def _curve_distance(src: np.ndarray, dst: Trajectory) -> float:
    """max over src points of the distance to the dense dst curve in (x, y)."""
    pts = dst.z[:2].T
    tree = cKDTree(pts)
    clock = dst.tau if dst.clock == "tau" else dst.t
    worst = 0.0
    _, idx = tree.query(src.T)
    for p, j in zip(src.T, idx):
        lo = clock[max(j - 1, 0)]
        hi = clock[min(j + 1, len(clock) - 1)]
        if hi <= lo:
            d = float(np.hypot(*(pts[j] - p)))
        else:
            # search over the offset from the nearest sample so the bounded
            # solver's relative tolerance does not scale with the clock value
            c0 = clock[j]
            res = minimize_scalar(lambda d: float(np.sum((dst.at(c0 + d)[:2] - p) ** 2)),
                                  bounds=(lo - c0, hi - c0), method="bounded", options={"xatol": 1e-15})
            d = math.sqrt(max(res.fun, 0.0))
        worst = max(worst, d)
    return worst


def trajectory_coincidence(e1_traj: Trajectory, a4_shift: float = 0.0, tol: float = 1e-12,
                           stride: int = 50) -> dict:
    """Integrate the E16 partner from the same phase point and compare curves.

    Reports the symmetric point-set distance in (x, y), the pointwise gap
    between the E16 state at tau and the E1 state at t(tau), and the
    largest difference of L1, L2 across the two clocks.
    """
    e1 = e1_traj.spec
    init = ClassicalState(*e1_traj.z[:, 0])
    e16 = stackel_partner(e1, init, a4_shift)
    tau_end = float(e1_traj.tau[-1])
    tr = integrate(e16, init, tau_end, tol=tol, min_steps=max(e1_traj.n_steps, 1000))
    a = e1_traj.z[:2, ::stride]
    b = tr.z[:2, ::stride]
    dist = max(_curve_distance(b, e1_traj), _curve_distance(a, tr))
    t_hi = float(e1_traj.t[-1])
    gap = 0.0
    for i in range(0, tr.z.shape[1], stride):
        ti = tr.t[i]
        if ti > t_hi:
            break
        gap = max(gap, float(np.max(np.abs(e1_traj.at(ti)[:4] - tr.z[:, i]))))
    l0 = [e1.L1(e1_traj.z[:, 0]), e1.L2(e1_traj.z[:, 0])]
    ser = tr.invariant_series()
    dl = max(float(np.max(np.abs(ser["L1"] - l0[0]))), float(np.max(np.abs(ser["L2"] - l0[1]))))
    return {
        "distance": dist,
        "pointwise_gap": gap,
        "max_L_difference": dl,
        "E_E1": -e16.a4 + a4_shift,
        "E_E16": float(ser["H"][0]),
        "partial": bool(e1_traj.truncated or tr.truncated),
        "e16": tr,
    }


def tau_quadrature_check(traj: Trajectory) -> float:
    """max |tau(t) - tau(0) - int_0^t (x^2+y^2) dt| using adaptive quadrature on the dense output."""
    if traj.clock == "t":
        def s(c):
            u = traj.at(c)
            return u[0] ** 2 + u[1] ** 2
        ref_clock, other = traj.t, traj.tau
    else:
        def s(c):
            u = traj.at(c)
            return 1.0 / (u[0] ** 2 + u[1] ** 2)
        ref_clock, other = traj.tau, traj.t
    checks = np.linspace(0, len(ref_clock) - 1, 11).astype(int)[1:]
    worst, acc, prev = 0.0, 0.0, ref_clock[0]
    for i in checks:
        acc += quad(s, prev, ref_clock[i], epsabs=1e-13, epsrel=1e-13, limit=500)[0]
        prev = ref_clock[i]
        worst = max(worst, abs(acc - (other[i] - other[0])))
    return worst


def is_bounded(traj: Trajectory, radius: float) -> bool:
    return bool(np.all(np.hypot(traj.z[0], traj.z[1]) <= radius))


def trajectory_csv(traj: Trajectory, stride: int = 1) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "tau", "x", "y", "p_x", "p_y", "H", "L1", "L2"])
    ser = traj.invariant_series()
    for i in range(0, traj.z.shape[1], stride):
        row = [traj.t[i], traj.tau[i], *traj.z[:, i], ser["H"][i], ser["L1"][i], ser["L2"][i]]
        w.writerow([f"{v:.15e}" for v in row])
    return buf.getvalue()
