"""Spectral charts, trace formulas and linear evolution of spectral data.

Two families of charts are built from a positive string:

* C-chart: roots of ``Omega_0 = C`` (zeros of ``psi - C phi``), actions
  ``I = -1/root``, angles ``log|phi(2, root)|`` and the residues of
  ``-1/(Omega_0 - C)``;
* F-chart: roots of ``E_0 = F`` (zeros of ``phi + F psi``), actions
  ``J = -1/root``, angles ``log|psi(2, root)|`` and the residues of
  ``-1/(E_0 - F)``.

A Hamiltonian ``h = sum_m c_m sum_n I_n**m`` moves every angle at the
constant rate ``dh/dI_n`` and scales each residue by ``exp`` of the
angle increment.  With ``c_1 = -1`` the residues decay like ``exp(-t)``
(translation); with ``c_2 = 1/4`` they decay like ``exp(-t/(2 lam))``,
the peakon flow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .discrete_string import DiscreteString, PeakonState, weyl_e0, weyl_omega0
from .errors import (
    ChartMismatchError,
    DegenerateBoundaryError,
    DomainError,
    InadmissibleParameterError,
    InputError,
)
from .herglotz import level_roots, mobius_shift_invert

C_CHART = "C"
F_CHART = "F"


@dataclass(frozen=True)
class SpectralChart:
    """Roots, actions, angles and residues of one chart.

    Angles and residues are stored as their values at extraction plus a
    list of per-flow increments; summing with ``math.fsum`` makes the
    result independent of the order in which flows were applied.
    """
    kind: str
    parameter: float
    roots: tuple
    actions: tuple
    base_angles: tuple
    base_residues: tuple
    increments: tuple = ()
    diagnostics: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.kind not in (C_CHART, F_CHART):
            raise InputError(f"unknown chart kind {self.kind!r}")
        n = len(self.roots)
        if not (len(self.actions) == len(self.base_angles) == len(self.base_residues) == n):
            raise InputError("chart arrays differ in length")

    @property
    def n(self) -> int:
        return len(self.roots)

    def _shift(self, k: int) -> float:
        return math.fsum(inc[k] for inc in self.increments)

    @property
    def angles(self) -> tuple:
        return tuple(math.fsum([a] + [inc[k] for inc in self.increments])
                     for k, a in enumerate(self.base_angles))

    @property
    def residues(self) -> tuple:
        return tuple(r * math.exp(self._shift(k)) for k, r in enumerate(self.base_residues))

    @property
    def chart_constant(self) -> float:
        """Constant term of the chart's Weyl-type function, fixed by its
        value at zero: ``-1/(4 - C)`` (C-chart) or ``4/(1 + 4F)`` (F-chart)."""
        res = self.residues
        s = math.fsum(r / x for r, x in zip(res, self.roots))
        if self.kind == C_CHART:
            return -1.0 / (4.0 - self.parameter) - s
        return 4.0 / (1.0 + 4.0 * self.parameter) - s

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "parameter": self.parameter,
            "roots": list(self.roots),
            "actions": list(self.actions),
            "angles": list(self.angles),
            "residues": list(self.residues),
            "chart_constant": self.chart_constant,
            "diagnostics": dict(self.diagnostics),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SpectralChart":
        try:
            roots = tuple(float(x) for x in data["roots"])
            residues = tuple(float(x) for x in data["residues"])
            actions = tuple(float(x) for x in data.get("actions", [-1.0 / r for r in roots]))
            angles = tuple(float(x) for x in data.get("angles", [0.0] * len(roots)))
            return cls(data["kind"], float(data["parameter"]), roots, actions, angles,
                       residues, (), dict(data.get("diagnostics", {})))
        except (KeyError, TypeError, ZeroDivisionError) as exc:
            raise InputError(f"malformed chart: {exc}") from exc

    def rows(self) -> list:
        """CSV rows ``(n, root, action, angle, residue)``."""
        return [(k + 1, x, a, th, r) for k, (x, a, th, r)
                in enumerate(zip(self.roots, self.actions, self.angles, self.residues))]


def check_admissible(string: DiscreteString, kind: str, parameter: float) -> None:
    l0 = float(string.gaps[0])
    if kind == C_CHART:
        if parameter >= l0:
            raise InadmissibleParameterError(
                f"C={parameter!r} must be below the left gap l0={l0!r}")
    elif kind == F_CHART:
        if parameter <= -1.0 / l0:
            raise InadmissibleParameterError(
                f"F={parameter!r} must exceed -1/l0={-1.0 / l0!r}")
    else:
        raise InputError(f"unknown chart kind {kind!r}")


def chart(string: DiscreteString, kind: str, parameter: float) -> SpectralChart:
    """Extract the C- or F-chart of a positive string."""
    if not string.positive:
        raise DomainError("charts need a positive string")
    parameter = float(parameter)
    check_admissible(string, kind, parameter)
    l0 = float(string.gaps[0])
    if string.n == 0:
        return SpectralChart(kind, parameter, (), (), (), (), (), _diagnostics(kind, parameter, l0))
    if kind == C_CHART:
        # phi(2, lam) = prod(1 - lam/mu_j) over the poles mu_j of Omega_0
        source = weyl_omega0(string).to_float()
        scale = 1.0
    else:
        # psi(2, lam) = 4 prod(1 - lam/lam_j) over the poles lam_j of E_0
        if parameter == -0.25:
            raise DegenerateBoundaryError("F = -1/4 puts a root at zero")
        source = weyl_e0(string).to_float()
        scale = 4.0
    lr = level_roots(source, parameter)
    roots = lr.roots
    if any(x == 0 for x in roots):
        raise DegenerateBoundaryError("root at zero")
    shifted = mobius_shift_invert(source, parameter)
    log_poles = math.fsum(math.log(g) for g in source.poles)
    angles = tuple(math.log(scale) + math.fsum(math.log(abs(d)) for d in dist) - log_poles
                   for dist in lr.distances)
    return SpectralChart(kind, parameter, tuple(roots), tuple(-1.0 / x for x in roots),
                         angles, tuple(shifted.residues), (),
                         _diagnostics(kind, parameter, l0))


def _diagnostics(kind, parameter, l0) -> dict:
    if kind == C_CHART:
        ups = (4.0 - l0) / (l0 - parameter)
        return {"l0": l0, "upsilon_at_zero": ups,
                "lower_bound": -4.0 / ups if ups else -math.inf}
    return {"l0": l0, "upsilon_at_zero": (4.0 - l0) / (4.0 * (l0 * parameter + 1.0))}


def consistency_residual(ch: SpectralChart) -> float:
    """Largest relative mismatch of ``residue = exp(angle) / |d/dlam (psi - C phi)|``
    (or ``phi + F psi`` for the F-chart) at the chart roots."""
    # psi - C phi = (4 - C) prod(1 - lam/chi_j); phi + F psi = (1 + 4F) prod(...)
    worst = 0.0
    if ch.kind == C_CHART:
        value_at_zero = 4.0 - ch.parameter
    else:
        value_at_zero = 1.0 + 4.0 * ch.parameter
    roots = ch.roots
    for k, (x, th, r) in enumerate(zip(roots, ch.angles, ch.residues)):
        d = value_at_zero / x
        for j, y in enumerate(roots):
            if j != k:
                d *= (y - x) / y
        worst = max(worst, abs(math.exp(th) / abs(d) - r) / r)
    return worst


# --- Hamiltonians ----------------------------------------------------------

@dataclass(frozen=True)
class HamiltonianSpec:
    """``h(I) = sum_m coeffs[m] * sum_n I_n**m`` on a given chart."""
    kind: str
    parameter: float
    coeffs: Mapping[int, float]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {int(m): float(c) for m, c in self.coeffs.items()})
        object.__setattr__(self, "parameter", float(self.parameter))
        if self.kind not in (C_CHART, F_CHART):
            raise InputError(f"unknown chart kind {self.kind!r}")

    @classmethod
    def h1(cls, C=0.0):
        return cls(C_CHART, C, {1: -1.0})

    @classmethod
    def h2(cls, C=0.0):
        return cls(C_CHART, C, {2: 0.25})

    @classmethod
    def t1(cls, F=0.0):
        return cls(F_CHART, F, {1: -1.0})

    @classmethod
    def t2(cls, F=0.0):
        return cls(F_CHART, F, {2: 0.25})

    def value(self, actions) -> float:
        return math.fsum(c * a ** m for m, c in self.coeffs.items() for a in actions)

    def velocities(self, actions) -> tuple:
        """Angle velocities ``dh/dI_n``."""
        return tuple(math.fsum(c * m * a ** (m - 1) for m, c in self.coeffs.items())
                     for a in actions)

    def to_json(self) -> dict:
        return {"chart": {"kind": self.kind, "parameter": self.parameter},
                "coeffs": {str(m): c for m, c in sorted(self.coeffs.items())}}

    @classmethod
    def from_json(cls, data: dict) -> "HamiltonianSpec":
        try:
            ch = data["chart"]
            return cls(ch["kind"], ch.get("parameter", 0.0),
                       {int(m): c for m, c in data["coeffs"].items()})
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed Hamiltonian spec: {exc}") from exc


def _check_same_chart(ch: SpectralChart, spec: HamiltonianSpec):
    if ch.kind != spec.kind or ch.parameter != spec.parameter:
        raise ChartMismatchError(
            f"Hamiltonian lives on {spec.kind}({spec.parameter}), chart is "
            f"{ch.kind}({ch.parameter})")


def hamiltonian_value(ch: SpectralChart, spec: HamiltonianSpec) -> float:
    _check_same_chart(ch, spec)
    return spec.value(ch.actions)


def evolve(ch: SpectralChart, spec: HamiltonianSpec, t: float) -> SpectralChart:
    """Flow for time ``t``: roots fixed, angles advance linearly."""
    _check_same_chart(ch, spec)
    if t == 0:
        return ch
    inc = tuple(v * t for v in spec.velocities(ch.actions))
    return SpectralChart(ch.kind, ch.parameter, ch.roots, ch.actions, ch.base_angles,
                         ch.base_residues, ch.increments + (inc,), ch.diagnostics)


# --- trace formulas --------------------------------------------------------

@dataclass(frozen=True)
class AtomicIntegrals:
    """Integrals of the peakon momentum ``m = sum 2 p_n delta(x - q_n)``."""
    mass: float          # int m
    weighted: float      # int m (1 + exp(-x))
    energy: float        # int m v
    cross: float         # int exp(-x) m D^{-1} m, atom excluded at itself


def atomic_integrals(state: PeakonState) -> AtomicIntegrals:
    q, p = state.q, state.p
    n = len(q)
    mass = 2.0 * math.fsum(p)
    weighted = 2.0 * math.fsum(pk * (1.0 + math.exp(-qk)) for qk, pk in zip(q, p))
    energy = 2.0 * math.fsum(p[i] * p[j] * math.exp(-abs(q[i] - q[j]))
                             for i in range(n) for j in range(n))
    cross = math.fsum(2.0 * p[i] * math.exp(-q[i]) * (math.fsum(p[:i]) - math.fsum(p[i + 1:]))
                      for i in range(n))
    return AtomicIntegrals(mass, weighted, energy, cross)


@dataclass(frozen=True)
class TraceCoefficients:
    """Low-order Taylor coefficients at 0 of ``a phi(2, lam) + b psi(2, lam)``
    expressed through the peakon data."""
    I0: float
    I1: float
    I2: float
    a: float
    b: float

    def inverse_power_sums(self) -> tuple:
        """``(sum 1/lam_k, sum 1/lam_k**2)`` over the mixed spectrum."""
        if self.I0 == 0:
            raise DegenerateBoundaryError("a + 4b = 0")
        r = self.I1 / self.I0
        return -r, r * r - 2.0 * self.I2 / self.I0


def trace_coefficients(state: PeakonState, a: float, b: float) -> TraceCoefficients:
    w = atomic_integrals(state)
    i1 = a * (-w.weighted) + b * (-4.0 * w.mass)
    i2 = (a * (0.5 * w.mass ** 2 - 2.0 * w.cross - w.energy)
          + b * (2.0 * w.mass ** 2 - 4.0 * w.energy))
    return TraceCoefficients(a + 4.0 * b, i1, i2, float(a), float(b))


def hamiltonian_direct(state: PeakonState, which: str, parameter: float) -> float:
    """``H1``/``H2`` (C-chart) or ``T1``/``T2`` (F-chart) from peakon data."""
    w = atomic_integrals(state)
    M, A, V, K = w.mass, w.weighted, w.energy, w.cross
    x = float(parameter)
    if which == "H1":
        return (-x * A + 4.0 * M) / (4.0 - x)
    if which == "H2":
        s = (x * A - 4.0 * M) ** 2 / (4.0 - x) ** 2
        s += 2.0 / (4.0 - x) * ((x - 4.0) / 2.0 * M ** 2 - 2.0 * x * K + (4.0 - x) * V)
        return 0.25 * s
    g = 1.0 + 4.0 * x
    if which == "T1":
        return (A + 4.0 * x * M) / g
    if which == "T2":
        s = (A + 4.0 * x * M) ** 2 / g ** 2
        s -= 2.0 / g * (g / 2.0 * M ** 2 - 2.0 * K - g * V)
        return 0.25 * s
    raise InputError(f"unknown Hamiltonian {which!r}")


DIRECT_SPECS = {
    "H1": HamiltonianSpec.h1,
    "H2": HamiltonianSpec.h2,
    "T1": HamiltonianSpec.t1,
    "T2": HamiltonianSpec.t2,
}


def hamiltonian_spectral(string: DiscreteString, which: str, parameter: float,
                         ch: Optional[SpectralChart] = None) -> float:
    spec = DIRECT_SPECS[which](parameter)
    ch = ch or chart(string, spec.kind, parameter)
    return hamiltonian_value(ch, spec)
