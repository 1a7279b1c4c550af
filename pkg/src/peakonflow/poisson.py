"""Poisson structure on the spectral coordinates ``(lam, rho)`` of ``E_0``.

Coordinates are ordered ``u = (lam_1..lam_N, rho_1..rho_N)`` where

    E_0(x) = -1/4 + sum_k rho_k (1/(lam_k - x) - 1/lam_k).

The constant term is not a coordinate: it is fixed by ``E_0(0) = -1/4``.
The structure constants are

    {rho_k, rho_n} = 2 lam_k lam_n rho_k rho_n / (lam_n - lam_k)   (k != n)
    {rho_k, lam_n} = lam_k^2 rho_k delta_kn
    {lam_k, lam_n} = 0

and the bracket of two functionals is ``grad A . B(u) . grad B``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .discrete_string import DiscreteString, weyl_e0
from .errors import GradientConsistencyError, InputError
from .herglotz import RationalHerglotz

RHO_RHO = "rho-rho"
RHO_LAM = "rho-lam"
LAM_LAM = "lam-lam"

FD_STEP = 1e-5
# chart quantities pass through reconstruction, whose ~1e-12 noise would
# dominate central differences at FD_STEP
CHART_FD_STEP = 1e-4


@dataclass(frozen=True)
class PoissonPoint:
    lambdas: tuple
    rhos: tuple

    def __post_init__(self):
        lam = tuple(float(x) for x in self.lambdas)
        rho = tuple(float(x) for x in self.rhos)
        if len(lam) != len(rho):
            raise InputError("lambdas and rhos differ in length")
        if any(x <= 0 for x in lam) or any(b <= a for a, b in zip(lam, lam[1:])):
            raise InputError("lambdas must be positive and strictly increasing")
        if any(r <= 0 for r in rho):
            raise InputError("rhos must be positive")
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "rhos", rho)

    @property
    def n(self) -> int:
        return len(self.lambdas)

    @property
    def coords(self) -> np.ndarray:
        return np.array(self.lambdas + self.rhos, dtype=float)

    @classmethod
    def from_coords(cls, u) -> "PoissonPoint":
        u = list(u)
        n = len(u) // 2
        return cls(tuple(u[:n]), tuple(u[n:]))

    @classmethod
    def from_string(cls, string: DiscreteString) -> "PoissonPoint":
        e0 = weyl_e0(string)
        return cls(tuple(float(x) for x in e0.poles), tuple(float(x) for x in e0.residues))

    def e0(self) -> RationalHerglotz:
        """``E_0`` with its constant resolved from the normalization at zero."""
        alpha = -0.25 - math.fsum(r / x for x, r in zip(self.lambdas, self.rhos))
        return RationalHerglotz(alpha, self.lambdas, self.rhos)

    def to_json(self) -> dict:
        return {"lambdas": list(self.lambdas), "rhos": list(self.rhos)}

    @classmethod
    def from_json(cls, data: dict) -> "PoissonPoint":
        try:
            return cls(tuple(data["lambdas"]), tuple(data["rhos"]))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed Poisson point: {exc}") from exc


def structure_matrix(u) -> np.ndarray:
    """``B[i, j] = {u_i, u_j}``; works on complex input for complex-step use."""
    u = np.asarray(u)
    n = len(u) // 2
    lam, rho = u[:n], u[n:]
    B = np.zeros((2 * n, 2 * n), dtype=u.dtype)
    for k in range(n):
        B[n + k, k] = lam[k] ** 2 * rho[k]
        B[k, n + k] = -B[n + k, k]
        for j in range(n):
            if j != k:
                B[n + k, n + j] = 2 * lam[k] * lam[j] * rho[k] * rho[j] / (lam[j] - lam[k])
    return B


def bracket_coords(pt: PoissonPoint, i: int, j: int, which: str) -> float:
    """Structure constant ``{rho_i, rho_j}``, ``{rho_i, lam_j}`` or ``{lam_i, lam_j}``
    (0-based indices)."""
    n = pt.n
    if not (0 <= i < n and 0 <= j < n):
        raise InputError(f"index out of range for N={n}")
    offsets = {RHO_RHO: (n, n), RHO_LAM: (n, 0), LAM_LAM: (0, 0)}
    if which not in offsets:
        raise InputError(f"unknown bracket kind {which!r}")
    a, b = offsets[which]
    return float(structure_matrix(pt.coords)[a + i, b + j])


# --- functionals ------------------------------------------------------------

class Functional:
    """A scalar function of the coordinates with an analytic or
    finite-difference gradient.

    Parameters
    ----------
    evaluate : callable
        Maps a coordinate vector to a float.
    gradient : callable, optional
        Analytic gradient; finite differences are used when omitted.
    step : float
        Relative finite-difference step.
    accuracy : float
        Relative accuracy of ``evaluate``; sets the roundoff floor below
        which the Richardson consistency check is skipped.
    """

    def __init__(self, evaluate: Callable, gradient: Optional[Callable] = None,
                 step: float = FD_STEP, name: str = "",
                 accuracy: float = float(np.finfo(float).eps)):
        self.evaluate = evaluate
        self.analytic = gradient
        self.step = step
        self.name = name
        self.accuracy = accuracy

    def __call__(self, u) -> float:
        return self.evaluate(np.asarray(u, dtype=float))

    def gradient(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        if self.analytic is not None:
            return np.asarray(self.analytic(u), dtype=float)
        return fd_gradient(self.evaluate, u, self.step, accuracy=self.accuracy)

    def __mul__(self, other: "Functional") -> "Functional":
        def ev(u):
            return self.evaluate(u) * other.evaluate(u)

        grad = None
        if self.analytic is not None and other.analytic is not None:
            def grad(u):
                return (self.evaluate(u) * np.asarray(other.analytic(u))
                        + other.evaluate(u) * np.asarray(self.analytic(u)))
        return Functional(ev, grad, self.step, f"({self.name})*({other.name})")


def fd_gradient(f: Callable, u: np.ndarray, step: float = FD_STEP,
                ratio_band: tuple = (2.0, 8.0),
                accuracy: float = float(np.finfo(float).eps)) -> np.ndarray:
    """Central differences with one Richardson extrapolation per coordinate.

    The differences at ``h``, ``h/2`` and ``h/4`` must shrink by a factor
    near 4 (second-order truncation) unless they are already at roundoff
    level; otherwise :class:`GradientConsistencyError` is raised.
    """
    grad = np.empty_like(u)
    f0 = abs(f(u))
    for i in range(len(u)):
        h = step * max(abs(u[i]), 1e-3)

        def central(hh):
            up, dn = u.copy(), u.copy()
            up[i] += hh
            dn[i] -= hh
            return (f(up) - f(dn)) / (2 * hh)

        d1, d2, d3 = central(h), central(h / 2), central(h / 4)
        e1, e2 = d1 - d2, d2 - d3
        # differences this small are roundoff, not truncation
        noise = 64 * accuracy * max(f0, 1.0) / (h / 4)
        if abs(e1) > noise:
            ratio = e1 / e2 if e2 != 0 else math.inf
            if not ratio_band[0] <= ratio <= ratio_band[1]:
                raise GradientConsistencyError(
                    f"finite-difference gradient inconsistent in coordinate {i}: "
                    f"Richardson ratio {ratio!r} (differences {d1!r}, {d2!r}, {d3!r})")
        grad[i] = (4 * d3 - d2) / 3
    return grad


def coordinate(index: int, n: int) -> Functional:
    """The coordinate ``u[index]`` (``lam_k`` is ``k``, ``rho_k`` is ``n + k``)."""
    unit = np.zeros(2 * n)
    unit[index] = 1.0
    return Functional(lambda u: float(u[index]), lambda u: unit, name=f"u{index}")


def _e0_value_grad(u, x):
    n = len(u) // 2
    lam, rho = u[:n], u[n:]
    value = -0.25 + float(np.sum(rho * (1.0 / (lam - x) - 1.0 / lam)))
    grad = np.concatenate([rho * (1.0 / lam ** 2 - 1.0 / (lam - x) ** 2),
                           1.0 / (lam - x) - 1.0 / lam])
    return value, grad


def e0_functional(x: float, *, flipped: bool = False, analytic: bool = True,
                  step: float = FD_STEP) -> Functional:
    """``u -> E_0(x)`` (or ``E_0`` at ``lam = -1/x`` when ``flipped``)."""
    if x == 0:
        raise InputError("evaluation point must be nonzero")
    arg = -1.0 / x if flipped else float(x)
    return Functional(lambda u: _e0_value_grad(u, arg)[0],
                      (lambda u: _e0_value_grad(u, arg)[1]) if analytic else None,
                      step, f"E0({x})")


def mobius_functional(x: float, coeffs: tuple, *, flipped: bool = False,
                      analytic: bool = True, step: float = FD_STEP) -> Functional:
    """``(a E_0 + b)/(c E_0 + d)`` at ``x`` for ``coeffs = (a, b, c, d)``."""
    a, b, c, d = (float(v) for v in coeffs)
    det = a * d - b * c
    if det == 0:
        raise InputError("Mobius coefficients must have ad - bc != 0")
    base = e0_functional(x, flipped=flipped)

    def ev(u):
        e = base.evaluate(u)
        return (a * e + b) / (c * e + d)

    def grad(u):
        e = base.evaluate(u)
        return det / (c * e + d) ** 2 * base.analytic(u)

    return Functional(ev, grad if analytic else None, step, f"mobius E0({x})")


def bracket(pt: PoissonPoint, A: Functional, B: Functional) -> float:
    u = pt.coords
    ga, gb = A.gradient(u), B.gradient(u)
    return float(ga @ structure_matrix(u) @ gb)


# --- verification -----------------------------------------------------------

@dataclass(frozen=True)
class Check:
    check: str
    params: dict
    lhs: float
    rhs: float
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)

    def to_json(self) -> dict:
        return {"check": self.check, "params": self.params, "lhs": self.lhs, "rhs": self.rhs,
                "residual": self.residual, "tolerance": self.tolerance, "pass": self.passed}


def verify_ah(pt: PoissonPoint, x: float, y: float, *, mobius: Optional[tuple] = None,
              flipped: bool = False, analytic: bool = True, tolerance: float = 1e-12) -> Check:
    """Compare ``{F(x), F(y)}`` with ``xy/(x-y) (F(x)-F(y))^2``, or with
    ``(F(x)-F(y))^2/(x-y)`` in the flipped parameter, for ``F = E_0`` or a
    Mobius image of it.  The residual is relative to ``max(|lhs|, |rhs|, 1)``."""
    if x == y:
        raise InputError("evaluation points coincide")
    if mobius is None:
        fx, fy = e0_functional(x, flipped=flipped, analytic=analytic), \
            e0_functional(y, flipped=flipped, analytic=analytic)
    else:
        fx = mobius_functional(x, mobius, flipped=flipped, analytic=analytic)
        fy = mobius_functional(y, mobius, flipped=flipped, analytic=analytic)
    lhs = bracket(pt, fx, fy) if pt.n else 0.0
    u = pt.coords
    diff = fx(u) - fy(u)
    rhs = diff * diff / (x - y) if flipped else x * y / (x - y) * diff * diff
    residual = abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1.0)
    return Check("ah-bracket", {"x": x, "y": y, "mobius": list(mobius) if mobius else None,
                                "flipped": flipped, "analytic": analytic, "n": pt.n},
                 lhs, rhs, residual, tolerance)


def jacobi_residual(pt: PoissonPoint, i: int, j: int, k: int, h: float = 1e-30) -> float:
    """``{u_i,{u_j,u_k}} + {u_j,{u_k,u_i}} + {u_k,{u_i,u_j}}`` with the inner
    brackets differentiated by complex step."""
    u = pt.coords
    m = len(u)
    B = structure_matrix(u)
    dB = np.empty((m, m, m))  # dB[l] = d B / d u_l
    for l in range(m):
        z = u.astype(complex)
        z[l] += 1j * h
        dB[l] = structure_matrix(z).imag / h

    def outer(a, b, c):
        return sum(B[a, l] * dB[l, b, c] for l in range(m))

    return float(outer(i, j, k) + outer(j, k, i) + outer(k, i, j))


def chart_functionals(pt: PoissonPoint, kind: str, parameter: float,
                      step: float = CHART_FD_STEP) -> tuple:
    """Actions and angles of the chart as functionals of ``(lam, rho)``,
    realized through reconstruction of the string."""
    from .inverse_spectral import E0, reconstruct
    from .spectral_flow import chart

    n = pt.n
    cache = {}
    # reconstruction carries ~1e-12 relative error into every chart quantity
    accuracy = 1e-11

    def chart_at(u):
        key = u.tobytes()
        if key not in cache:
            e0 = PoissonPoint.from_coords(u).e0()
            cache[key] = chart(reconstruct(e0, E0), kind, parameter)
        return cache[key]

    actions = [Functional(lambda u, k=k: float(chart_at(u).actions[k]), None, step, f"I{k + 1}",
                          accuracy)
               for k in range(n)]
    angles = [Functional(lambda u, k=k: float(chart_at(u).angles[k]), None, step,
                         f"theta{k + 1}", accuracy)
              for k in range(n)]
    return actions, angles


def verify_canonical(pt: PoissonPoint, kind: str, parameter: float,
                     tolerance: float = 1e-6, step: float = CHART_FD_STEP) -> dict:
    """Brackets among chart actions and angles.

    Returns the matrices ``{I_k, I_n}``, ``{theta_k, theta_n}``,
    ``{theta_k, I_n}`` and the largest deviation of each from its canonical
    value (0, 0 and the identity)."""
    actions, angles = chart_functionals(pt, kind, parameter, step)
    u = pt.coords
    B = structure_matrix(u)
    gI = [f.gradient(u) for f in actions]
    gT = [f.gradient(u) for f in angles]
    II = np.array([[a @ B @ b for b in gI] for a in gI])
    TT = np.array([[a @ B @ b for b in gT] for a in gT])
    TI = np.array([[a @ B @ b for b in gI] for a in gT])
    n = pt.n
    res = {"II": float(np.max(np.abs(II))) if n else 0.0,
           "theta_theta": float(np.max(np.abs(TT))) if n else 0.0,
           "theta_I": float(np.max(np.abs(TI - np.eye(n)))) if n else 0.0}
    checks = [Check(f"canonical-{name}", {"kind": kind, "parameter": parameter, "n": n},
                    value, 0.0, value, tolerance) for name, value in res.items()]
    return {"residuals": res, "II": II.tolist(), "theta_theta": TT.tolist(),
            "theta_I": TI.tolist(), "checks": checks,
            "passed": all(c.passed for c in checks)}
