"""Randomized verification suites driven by a seed.

Each suite returns a list of :class:`~peakonflow.poisson.Check` records.
The CLI ``verify`` command runs them and exits non-zero if any fails.
"""

from __future__ import annotations

import math
from typing import Iterable, Optional

import numpy as np

from . import sampling
from .discrete_string import (
    PeakonState, from_peakons, mixed_spectrum, to_peakons, weyl_e0, weyl_omega0,
)
from .herglotz import RationalHerglotz, boole_identities, moments
from .inverse_spectral import E0, OMEGA0, from_chart, reconstruct
from .peakon_ode import integrate
from .poisson import Check, PoissonPoint, jacobi_residual, verify_ah, verify_canonical
from .spectral_flow import (
    C_CHART, F_CHART, HamiltonianSpec, chart, evolve, hamiltonian_direct,
    hamiltonian_spectral, trace_coefficients,
)


def _rel(a, b) -> float:
    a, b = float(a), float(b)
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale else 0.0


def _tol(default: float, override: Optional[float]) -> float:
    return default if override is None else override


# --- Boole identities -------------------------------------------------------

def boole_checks(f: RationalHerglotz, C, tol: float, label: dict) -> list:
    report = boole_identities(f, C)
    out = []
    for name, pair in (("first", report.first), ("second", report.second),
                       ("product", report.product)):
        if pair is None:
            continue
        lhs, rhs = pair
        out.append(Check(f"boole-{name}", label, float(lhs), float(rhs), _rel(lhs, rhs), tol))
    return out


def boole_from_roots(f: RationalHerglotz, C: float, roots, tol: float) -> list:
    """Check the first two Boole identities with caller-supplied level roots.

    Used to validate recorded (function, level, roots) triples: if the
    residues were altered after the roots were computed, the identities fail.
    """
    ff = f.to_float() if f.exact else f
    poles = [float(g) for g in ff.poles]
    roots = [float(x) for x in roots]
    if len(roots) != len(poles):
        return [Check("boole-record", {"level": C}, float(len(roots)), float(len(poles)),
                      math.inf, tol)]
    c = float(C) - float(ff.alpha)
    m = moments(ff, (0, 1))
    first = (c * math.fsum(g - x for g, x in zip(poles, roots)), m[0])
    second = (c * c * math.fsum(g * g - x * x for g, x in zip(poles, roots)),
              2 * m[1] * c - m[0] ** 2)
    label = {"level": float(C), "n": len(poles)}
    return [Check("boole-first", label, first[0], first[1], _rel(*first), tol),
            Check("boole-second", label, second[0], second[1], _rel(*second), tol)]


def suite_boole(rng, count: int = 60, max_n: int = 10, tol: Optional[float] = None) -> list:
    tol = _tol(1e-12, tol)
    out = []
    for k in range(count):
        n = int(rng.integers(1, max_n + 1))
        f = sampling.exact_herglotz(rng, n)
        C = sampling.level_for(rng, f)
        out += boole_checks(f, C, tol, {"sample": k, "n": n, "exact": True})
        if k % 2 == 0:
            out += boole_checks(f.to_float(), float(C), tol,
                                {"sample": k, "n": n, "exact": False})
    return out


# --- trace formulas and Hamiltonians ---------------------------------------

def trace_check(state: PeakonState, a: float, b: float, tol: float, label: dict) -> list:
    lam = mixed_spectrum(from_peakons(state), a, b)
    s1 = math.fsum(1.0 / x for x in lam)
    s2 = math.fsum(1.0 / (x * x) for x in lam)
    t1, t2 = trace_coefficients(state, a, b).inverse_power_sums()
    return [Check("trace-first", label, s1, t1, _rel(s1, t1), tol),
            Check("trace-second", label, s2, t2, _rel(s2, t2), tol)]


def suite_trace(rng, count: int = 30, max_n: int = 6, tol: Optional[float] = None) -> list:
    tol = _tol(1e-10, tol)
    out = trace_check(PeakonState((0.0,), (1.0,)), -1.0, 1.0, tol, {"anchor": "unit peakon"})
    anchor = out[0]
    out.append(Check("trace-anchor", {"a": -1, "b": 1}, anchor.lhs, 4.0 / 3.0,
                     _rel(anchor.lhs, 4.0 / 3.0), tol))
    for k in range(count):
        state = sampling.peakon_state(rng, int(rng.integers(1, max_n + 1)))
        while True:
            a, b = rng.uniform(-2, 2, 2)
            if abs(a + 4 * b) >= 0.1:
                break
        out += trace_check(state, float(a), float(b), tol, {"sample": k, "n": state.n,
                                                             "a": float(a), "b": float(b)})
    return out


def chart_parameters(l0: float) -> list:
    """The three C and three F values used by the dual-Hamiltonian and
    canonical-relation suites; a degenerate F = -1/4 is nudged away."""
    f3 = -1.0 / (2.0 * l0)
    if f3 == -0.25:
        f3 = -0.2 / l0
    return [(C_CHART, 0.0), (C_CHART, l0 / 2.0), (C_CHART, -1.0),
            (F_CHART, 0.0), (F_CHART, 1.0), (F_CHART, f3)]


def suite_hamiltonians(rng, count: int = 10, max_n: int = 6, tol: Optional[float] = None) -> list:
    tol = _tol(1e-10, tol)
    out = []
    for k in range(count):
        state = sampling.peakon_state(rng, int(rng.integers(1, max_n + 1)))
        string = from_peakons(state)
        for kind, par in chart_parameters(float(string.gaps[0])):
            ch = chart(string, kind, par)
            for which in (("H1", "H2") if kind == C_CHART else ("T1", "T2")):
                d = hamiltonian_direct(state, which, par)
                s = hamiltonian_spectral(string, which, par, ch)
                out.append(Check(f"hamiltonian-{which}", {"sample": k, "n": state.n,
                                                          "parameter": par}, d, s, _rel(d, s), tol))
    return out


# --- inverse problem --------------------------------------------------------

def suite_roundtrip(rng, count: int = 30, max_n: int = 8, tol: Optional[float] = None) -> list:
    tol = _tol(1e-10, tol)
    out = []
    for k in range(count):
        n = int(rng.integers(0, max_n + 1))
        d = sampling.exact_string(rng, n)
        back = reconstruct(weyl_omega0(d), OMEGA0)
        out.append(Check("roundtrip-exact", {"sample": k, "n": n}, 0.0, 0.0,
                         0.0 if back == d else 1.0, 0.0))
        d = sampling.float_string(rng, n)
        for flavor, f in ((OMEGA0, weyl_omega0(d)), (E0, weyl_e0(d))):
            back = reconstruct(f, flavor)
            err = max((_rel(a, b) for a, b in zip(back.gaps + back.masses, d.gaps + d.masses)),
                      default=0.0)
            out.append(Check(f"roundtrip-float-{flavor}", {"sample": k, "n": n}, err, 0.0, err, tol))
    return out


# --- Poisson structure ------------------------------------------------------

def _poisson_point(rng, n: int) -> PoissonPoint:
    return PoissonPoint.from_string(sampling.positive_string(rng, n))


def _away_from(rng, poles, lo, hi):
    while True:
        x = float(rng.uniform(lo, hi))
        if x != 0 and all(abs(x - g) > 0.05 * max(abs(g), 1.0) for g in poles):
            return x


def suite_ah(rng, count: int = 20, max_n: int = 6, tol: Optional[float] = None) -> list:
    tol = _tol(1e-12, tol)
    out = []
    for k in range(count):
        pt = _poisson_point(rng, int(rng.integers(0, max_n + 1)))
        flip_poles = [-1.0 / g for g in pt.lambdas]
        x, y = _away_from(rng, pt.lambdas, -3, 3), _away_from(rng, pt.lambdas, -3, 3)
        xf, yf = _away_from(rng, flip_poles, -5, 5), _away_from(rng, flip_poles, -5, 5)
        if x == y or xf == yf:
            continue
        while True:
            coeffs = tuple(float(v) for v in rng.uniform(-2, 2, 4))
            if abs(coeffs[0] * coeffs[3] - coeffs[1] * coeffs[2]) > 0.1:
                break
        for kw, a, b in (({}, x, y), ({"flipped": True}, xf, yf),
                         ({"mobius": coeffs}, x, y), ({"mobius": coeffs, "flipped": True}, xf, yf)):
            out.append(verify_ah(pt, a, b, tolerance=tol, **kw))
    return out


def suite_jacobi(rng, count: int = 10, max_n: int = 4, tol: Optional[float] = None) -> list:
    tol = _tol(1e-8, tol)
    out = []
    for k in range(count):
        pt = _poisson_point(rng, int(rng.integers(1, max_n + 1)))
        m = 2 * pt.n
        worst = max(abs(jacobi_residual(pt, i, j, l))
                    for i in range(m) for j in range(m) for l in range(m))
        out.append(Check("jacobi", {"sample": k, "n": pt.n}, worst, 0.0, worst, tol))
    return out


def suite_canonical(rng, count: int = 2, max_n: int = 4, tol: Optional[float] = None) -> list:
    tol = _tol(1e-6, tol)
    out = []
    for k in range(count):
        string = sampling.positive_string(rng, int(rng.integers(1, max_n + 1)))
        pt = PoissonPoint.from_string(string)
        for kind, par in chart_parameters(float(string.gaps[0])):
            report = verify_canonical(pt, kind, par, tolerance=tol)
            out += report["checks"]
    return out


# --- dynamics ---------------------------------------------------------------

def spectral_trajectory(state: PeakonState, spec: HamiltonianSpec, times) -> list:
    """Peakon states at ``times`` obtained by linear flow on the chart and
    reconstruction."""
    ch = chart(from_peakons(state), spec.kind, spec.parameter)
    return [to_peakons(from_chart(evolve(ch, spec, t - state.t)), t) for t in times]


def suite_dynamics(rng, count: int = 2, n: int = 3, t_final: float = 5.0,
                   tol: Optional[float] = None) -> list:
    tol_ode, tol_shift = _tol(1e-6, tol), _tol(1e-9, tol)
    out = []
    times = np.linspace(0.0, t_final, 6)
    for k in range(count):
        state = sampling.peakon_state(rng, n)
        ode = integrate(state, t_final, t_eval=times)
        spec = spectral_trajectory(state, HamiltonianSpec.h2(0.0), times)
        err = max(abs(a - b) for j, s in enumerate(spec) for a, b in zip(s.q, ode.q[j]))
        out.append(Check("dynamics-h2-vs-ode", {"sample": k, "n": n}, err, 0.0, err, tol_ode))
        shifted = spectral_trajectory(state, HamiltonianSpec.h1(0.0), times)
        err = max(abs(a - (b + t)) for s, t in zip(shifted, times) for a, b in zip(s.q, state.q))
        out.append(Check("dynamics-h1-translation", {"sample": k, "n": n}, err, 0.0, err,
                         tol_shift))
    return out


SUITES = {
    "boole": suite_boole,
    "trace": suite_trace,
    "hamiltonians": suite_hamiltonians,
    "roundtrip": suite_roundtrip,
    "ah": suite_ah,
    "jacobi": suite_jacobi,
    "canonical": suite_canonical,
    "dynamics": suite_dynamics,
}


def run_suites(names: Iterable[str], seed: int = 0, tol: Optional[float] = None) -> list:
    """Run the named suites in order from one seeded generator."""
    rng = sampling.rng_from(seed)
    out = []
    for name in names:
        if name not in SUITES:
            raise KeyError(name)
        out += SUITES[name](rng, tol=tol)
    return out
