"""Command-line front end: ``qes-workbench <command> ...``.

Exit codes: 0 success, 1 a named check failed, 2 usage error.
Parameters are passed as exact strings (``--k3 -1/2``, ``--beta 1/2i``).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import catalog as cat
from . import classical as cl
from . import spectra as sp
from . import stackel as st
from .diffops import InvarianceViolation, commutator, matrix_on_space
from .gl3 import check_commutator_table
from .polys import Poly2
from .scalars import parse_scalar, scalar_to_json

PARAM_NAMES = ("k1", "k2", "k3", "k4", "a1", "a2", "a3", "a4", "b1", "b2", "n1", "n2",
               "lam", "lambda", "A", "c", "r", "alpha", "beta", "gauge", "variant_a1")

# generic exact sample points inside each system's admissible range
DEFAULT_PARAMS: dict[str, dict[str, str]] = {
    "S1111": {"k1": "1/3", "k2": "2/5", "k3": "3/7"},
    "S211": {"k1": "1/3", "k2": "2/5", "k3": "-1/2"},
    "S22": {"k1": "1/3", "k2": "2/5", "k3": "1/2"},
    "S31": {"k2": "1/3", "k3": "-1/2", "k4": "2/5"},
    "S4": {"k4": "1/2", "a2": "1/3", "a3": "2/5"},
    "S0": {"k2": "1/3", "k3": "1/5", "k4": "-1/2"},
    "X1": {"lam": "1/3", "a1": "2/5"},
    "X2": {"lam": "1/3", "a2": "2/5"},
    "A": {"k3": "1/4"},
    "B": {"A": "1/3"},
    "C": {"k4": "-1/2"},
    "D": {"a1": "1/3", "a2": "2/5"},
    "E": {"a1": "1/3", "a3": "2/5"},
    "F": {"k1": "1/3", "k4": "2/5"},
}

HERMITIAN = ("S1111", "S211", "S31", "S0", "A", "C")
TOL = 1e-9


class UsageError(Exception):
    pass


def _seed() -> int:
    return int(os.environ.get("QES_WORKBENCH_SEED", "0"))


def _join_values(argv: Sequence[str]) -> list[str]:
    # "--k3 -1/2" would be read as an option; glue it to its flag
    out, i, argv = [], 0, list(argv)
    while i < len(argv):
        a = argv[i]
        if a.startswith("--") and a[2:] in PARAM_NAMES + ("init",) and i + 1 < len(argv) and "=" not in a:
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def _params(ns, system: str | None = None, defaults: bool = True) -> dict:
    given = {}
    for name in PARAM_NAMES:
        v = getattr(ns, name.replace("lambda", "lambda_"), None)
        if v is None:
            continue
        if name == "variant_a1":
            given[name] = v
            continue
        try:
            given["lam" if name == "lambda" else name] = parse_scalar(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"cannot parse --{name} {v!r}: {exc}") from exc
    if system is not None and defaults and not set(given) & set(cat.get_system(system).inputs):
        # no system inputs given: fall back to the sample point, keep extras like --c
        return {**{k: parse_scalar(v) for k, v in DEFAULT_PARAMS[system].items()}, **given}
    return given


def _sys(name: str) -> str:
    try:
        return cat.get_system(name).id
    except cat.UnknownSystem as exc:
        raise UsageError(str(exc)) from exc


def _jsonable(o):
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.bool_,)):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, complex):
        return {"re": o.real, "im": o.imag}
    if isinstance(o, Fraction) or hasattr(o, "re"):
        return scalar_to_json(o)
    raise TypeError(f"not JSON serialisable: {type(o).__name__}")


def _emit(doc, ns) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2, default=_jsonable) + "\n"
    _write(text, ns)


def _write(text: str, ns) -> None:
    if getattr(ns, "out", None):
        with open(ns.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check(name: str, ok: bool, **info) -> dict:
    return {"anchor": name, "passed": bool(ok), **info}


def _points(rng: random.Random, n: int):
    return [(rng.uniform(0.3, 1.4), rng.uniform(0.3, 1.4)) for _ in range(n)]


# --------------------------------------------------------------------------- commands


def cmd_list(ns) -> int:
    rows = [{"id": s, "label": cat.get_system(s).label, "solvability": solv, "separable": list(sep)}
            for s, solv, sep in cat.list_systems()]
    if ns.format == "json":
        _emit({"systems": rows}, ns)
    else:
        lines = [f"{'id':6} {'label':8} {'type':22} separable"]
        for r in rows:
            lines.append(f"{r['id']:6} {r['label']:8} {r['solvability']:22} {', '.join(r['separable'])}")
        _write("\n".join(lines) + "\n", ns)
    return 0


def cmd_operator(ns) -> int:
    s = _sys(ns.system)
    p = _params(ns, s)
    if ns.matrix is not None:
        p, pref, h, space = sp.constrained_h(s, p, ns.matrix)
        doc = cat.catalog_json(s, p)
        M = matrix_on_space(h, space)
        doc["matrix"] = {
            "N": ns.matrix,
            "space": space.label(),
            "basis": [list(m) for m in M.basis],
            "entries": [[scalar_to_json(v) for v in row] for row in M.rows()],
        }
    else:
        doc = cat.catalog_json(s, p)
    _emit(doc, ns)
    return 0


def _gl3_checks(systems, N) -> list[dict]:
    out = []
    table = check_commutator_table(N)
    out.append(_check("gl3.commutators", table["ok"], N=table["N"], pairs=table["n_pairs"],
                      mismatches=table["mismatches"]))
    for s in systems:
        if cat.get_system(s).gl3 is None:
            continue
        p = _level_params(s, 2)
        ok, diff = cat.verify_gl3_form(s, p)
        out.append(_check(f"gl3.form.{s}", ok, difference=None if ok else diff.pretty()))
    return out


def _params_default(s):
    return {k: parse_scalar(v) for k, v in DEFAULT_PARAMS[s].items()}


def _level_params(s, N: int) -> dict:
    """Default parameters with every derived quantity fixed at level N."""
    spec = cat.get_system(s)
    if spec.h is not None:
        return sp.impose_constraint(s, _params_default(s), N)
    return cat.complete_params(s, _params_default(s))


def _invariance_checks(systems, N) -> list[dict]:
    out = []
    for s in systems:
        spec = cat.get_system(s)
        base = _params_default(s)
        if spec.h is not None:
            for n in range(N + 1):
                try:
                    p, pref, h, space = sp.constrained_h(s, base, n)
                    matrix_on_space(h, space)
                    ok, info = True, {}
                except InvarianceViolation as exc:
                    ok, info = False, {"error": str(exc)}
                out.append(_check(f"invariance.{s}.N{n}", ok, **info))
                if spec.spectral is not None and s != "F" and ok:
                    k = len(sp.kernel_basis(s, base, n))
                    expect = (n + 1) if s not in ("S22", "S4") else None
                    if expect is not None:
                        out.append(_check(f"kernel.{s}.N{n}", k == expect, dim=k, expected=expect))
            p = sp.impose_constraint(s, base, N)
            for sym in cat.build_symmetries(s, p):
                if sym.frame != "w":
                    continue
                try:
                    sp.symmetry_spectrum(s, p, N, sym.name)
                    out.append(_check(f"symmetry.{s}.{sym.name}", True))
                except sp.NotInvariant as exc:
                    out.append({"anchor": f"symmetry.{s}.{sym.name}", "passed": None, "skipped": str(exc)})
        if spec.hamiltonian is not None:
            p = _level_params(s, N)
            H = cat.frame_hamiltonian(s, p)
            for sym in cat.build_symmetries(s, p):
                if sym.frame == "w":
                    continue
                out.append(_check(f"symmetry.{s}.{sym.name}", commutator(sym.op, H).is_zero(), frame=sym.frame))
    return out


def _gauge_checks(systems, rng) -> list[dict]:
    out = []
    for s in systems:
        spec = cat.get_system(s)
        if spec.gauge is None:
            continue
        p = _level_params(s, 2)
        if s in ("X1", "X2"):
            P = Poly2({(0, 0): 1, (1, 0): Fraction(2, 3), (2, 0): Fraction(-1, 5)})
        else:
            P = Poly2({(0, 0): 1, (1, 0): Fraction(2, 3), (0, 1): Fraction(-1, 5), (1, 1): Fraction(3, 7)})
        worst = max(cat.verify_gauge_transform(s, p, P, pt) for pt in _points(rng, 10))
        out.append(_check(f"gauge.{s}", worst < TOL, residual=worst))
    return out


def _adjoint_checks(systems, N) -> list[dict]:
    out = []
    for s in systems:
        if s not in HERMITIAN:
            continue
        asym = sp.selfadjointness_check(s, _level_params(s, N), N)
        out.append(_check(f"adjoint.{s}", asym < 1e-10, asymmetry=asym))
    return out


def cmd_check(ns) -> int:
    systems = [_sys(x) for x in ns.sys] if ns.sys else list(cat.SYSTEM_IDS)
    rng = random.Random(_seed())
    N = ns.N
    checks = []
    if ns.what in ("gl3", "all"):
        checks += _gl3_checks(systems, parse_scalar(ns.gl3_N) if ns.gl3_N else N)
    if ns.what in ("invariance", "all"):
        checks += _invariance_checks(systems, N)
    if ns.what in ("gauge", "all"):
        checks += _gauge_checks(systems, rng)
    if ns.what in ("adjoint", "all"):
        checks += _adjoint_checks(systems, N)
    failed = [c["anchor"] for c in checks if c["passed"] is False]
    _emit({"check": ns.what, "seed": _seed(), "checks": checks, "failed": failed, "passed": not failed}, ns)
    return 1 if failed else 0


def cmd_spectrum(ns) -> int:
    s = _sys(ns.system)
    p = _params(ns, s)
    doc = sp.spectrum_report(s, p, ns.N, ns.symmetry)
    _emit(doc, ns)
    return 0


def cmd_separate(ns) -> int:
    s = _sys(ns.system)
    p = _params(ns, s)
    try:
        sep = sp.separation_operator(s, ns.coords, p, ns.N, variant=ns.variant)
    except KeyError as exc:
        raise UsageError(str(exc)) from exc
    vals, vecs = sp.lambda_spectrum(sep)
    doc = sep.to_json()
    doc["lambda"] = [{"re": float(v.real), "im": float(v.imag)} for v in vals]
    checks = [_check("separate.count", len(vals) == ns.N + 1, count=len(vals))]
    if sep.symmetric is not None:
        res = [sp.reconstruction_residual(sep, U) for U in vecs]
        doc["reconstruction_residuals"] = res
        checks.append(_check("separate.reconstruction", max(res) < 1e-8))
    doc["checks"] = checks
    _emit(doc, ns)
    return 0 if all(c["passed"] for c in checks) else 1


def cmd_stackel(ns) -> int:
    s = _sys(ns.system)
    if s != "S211":
        raise UsageError("Stäckel targets E1, E16 and S4 are built from S211")
    p = _params(ns, s, defaults=False)
    N = ns.N
    rng = random.Random(_seed())
    pts = _points(rng, 8)
    checks = []
    if ns.target == "S4":
        k1, k2, k3 = (p.get(n) for n in ("k1", "k2", "k3"))
        if None in (k1, k2, k3):
            raise UsageError("stackel --target S4 needs --k1 --k2 --k3 (S4 sign convention)")
        prm = st.s4_params(k1, k2, k3, N)
        b2d = st.s4_eigenvalue_derived(prm["b1"], k3, prm["a4"], N)
        b2p = st.s4_eigenvalue(prm["b1"], k3, prm["a4"], N)
        res = st.s4_kernel_residual(k1, k2, k3, N, b2d, pts)
        checks.append(_check("stackel.S4.b2_consistent", b2d == prm["b2"], b2=b2d))
        checks.append(_check("stackel.S4.kernel", res < TOL, residual=res))
        sphere = []
        for _ in range(5):
            x = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            y = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            sphere.append(st.sphere_embedding_check(x, y) == 0)
        checks.append(_check("stackel.S4.sphere", all(sphere)))
        doc = {"target": "S4", "params": prm, "b2_derived": b2d, "b2_printed_formula": b2p,
               "printed_formula_kernel_residual": st.s4_kernel_residual(k1, k2, k3, N, b2p, pts),
               "helmholtz": st.cst(s, cat.complete_params(s, {"k1": k1, "k2": k2, "k3": -k3, "a4": prm["a4"]}), "b2").to_json()}
    else:
        k1, k2 = p.get("k1"), p.get("k2")
        if k1 is None or k2 is None:
            raise UsageError(f"stackel --target {ns.target} needs --k1 --k2 and --a4 or --k3")
        if "a4" in p:
            a4 = p["a4"]
            k3 = st.e16_k3(k1, k2, a4, N)
        elif "k3" in p:
            k3 = p["k3"]
            a4 = sp.solve_constraint(s, {"k1": k1, "k2": k2, "k3": k3}, N)
        else:
            raise UsageError("give --a4 or --k3")
        full = sp.impose_constraint(s, {"k1": k1, "k2": k2, "k3": k3}, N)
        split = "a3" if ns.target == "E16" else "a4"
        hs = st.cst(s, full, split)
        doc = {"target": ns.target, "N": N, "helmholtz": hs.to_json(), "a4": a4, "k3": k3}
        if ns.target == "E16":
            e1 = st.e16_eigenvalue(k1, k2, a4, N)
            e2 = st.e16_eigenvalue_k3_route(k1, k2, a4, N)
            res = st.same_kernel_residual(k1, k2, a4, N, pts)
            doc.update({"a3": e1, "a3_via_k3": e2, "same_kernel_residual": res})
            checks.append(_check("stackel.E16.two_routes", e1 == e2))
            checks.append(_check("stackel.E16.kernel", res < TOL, residual=res))
        else:
            doc["energy"] = hs.eigenvalue
            checks.append(_check("stackel.E1.energy", hs.eigenvalue == -a4))
    doc["checks"] = checks
    _emit(doc, ns)
    return 0 if all(c["passed"] for c in checks) else 1


def _real_param(ns, name: str) -> float | None:
    # classical runs are floating point: accept decimals as well as exact strings
    v = getattr(ns, name)
    if v is None:
        return None
    try:
        return float(v)
    except ValueError:
        pass
    try:
        c = complex(parse_scalar(v))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse --{name} {v!r}") from exc
    if c.imag != 0:
        raise UsageError("classical parameters must be real")
    return c.real


def cmd_classical(ns) -> int:
    try:
        init = cl.ClassicalState.parse(ns.init)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    a = {n: _real_param(ns, n) for n in ("a1", "a2", "a3", "a4")}
    if ns.which == "E16" and a["a4"] is None:
        raise UsageError("classical E16 needs --a4")
    a = {k: (0.0 if v is None else v) for k, v in a.items()}
    h = cl.hamiltonian("HE16" if ns.which == "E16" else "HE1", **a)
    try:
        tr = cl.integrate(h, init, ns.tmax, tol=ns.tol, min_steps=ns.steps)
    except cl.SingularityError as exc:
        raise UsageError(str(exc)) from exc
    if ns.format == "csv":
        _write(cl.trajectory_csv(tr, ns.stride), ns)
        return 0
    summary = tr.summary()
    drift = max(summary["drift"].values())
    checks = [_check("classical.conservation", drift < 1e-8, drift=drift)]
    tq = cl.tau_quadrature_check(tr)
    checks.append(_check("classical.clock", tq < 1e-6, residual=tq))
    doc = {"trajectory": summary}
    if ns.which == "pair":
        co = cl.trajectory_coincidence(tr)
        e16 = co.pop("e16")
        doc["e16"] = e16.summary()
        doc["coincidence"] = co
        checks.append(_check("classical.coincidence", co["distance"] < 1e-6 and not co["partial"],
                             distance=co["distance"]))
    doc["checks"] = checks
    _emit(doc, ns)
    return 0 if all(c["passed"] for c in checks) else 1


# --------------------------------------------------------------------------- parser


def _add_params(sp_):
    for name in PARAM_NAMES:
        sp_.add_argument(f"--{name}", dest=name.replace("lambda", "lambda_"), default=None, metavar="Q")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qes-workbench", description="Conformal Laplace superintegrable systems workbench")
    ap.add_argument("--out", help="write output to this file instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("list", help="catalog table")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_list)

    s = sub.add_parser("operator", help="operator descriptor for one system")
    s.add_argument("system")
    s.add_argument("--matrix", type=int, metavar="N")
    _add_params(s)
    s.set_defaults(func=cmd_operator)

    s = sub.add_parser("check", help="run verification suites")
    s.add_argument("what", choices=("gl3", "invariance", "gauge", "adjoint", "all"))
    s.add_argument("--sys", nargs="*", default=None)
    s.add_argument("--N", type=int, default=2)
    s.add_argument("--gl3-N", dest="gl3_N", default=None, help="N for the commutator table (rational)")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("spectrum", help="constraint, kernel and spectra at level N")
    s.add_argument("system")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--symmetry")
    _add_params(s)
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("separate", help="one-variable separation spectrum")
    s.add_argument("system")
    s.add_argument("--coords", required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--variant", choices=("derived", "printed"), default="derived")
    _add_params(s)
    s.set_defaults(func=cmd_separate)

    s = sub.add_parser("stackel", help="Stäckel transforms of S211")
    s.add_argument("system")
    s.add_argument("--target", choices=("E1", "E16", "S4"), required=True)
    s.add_argument("--N", type=int, default=0)
    _add_params(s)
    s.set_defaults(func=cmd_stackel)

    s = sub.add_parser("classical", help="classical trajectories")
    s.add_argument("which", choices=("E1", "E16", "pair"))
    s.add_argument("--init", required=True, help="x,y,px,py")
    s.add_argument("--tmax", type=float, required=True)
    s.add_argument("--tol", type=float, default=1e-12)
    s.add_argument("--steps", type=int, default=10_000)
    s.add_argument("--stride", type=int, default=1)
    s.add_argument("--format", choices=("json", "csv"), default="json")
    _add_params(s)
    s.set_defaults(func=cmd_classical)
    return ap


def run(argv: Sequence[str] | None = None) -> int:
    argv = _join_values(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return ns.func(ns)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except cat.CatalogError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = 0
    sys.exit(code)
