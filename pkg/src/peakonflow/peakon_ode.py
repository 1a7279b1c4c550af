"""Direct integration of the peakon system and closed-form two-peakon motion.

The Hamiltonian is ``H = 1/2 sum_ij p_i p_j exp(-|q_i - q_j|)``.  Between
collisions the ordering of positions is fixed, so the right-hand side is
evaluated with ``sign(q_i - q_j) = sign(i - j)`` and stays smooth; a
terminal event stops the integration when two neighbours come within
``collision_eps``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .discrete_string import PeakonState
from .errors import CollisionError, DomainError, InputError, StepFailureError

PURE = "pure-peakon"
MIXED = "peakon-antipeakon"


def hamiltonian(state: PeakonState) -> float:
    q, p = np.asarray(state.q), np.asarray(state.p)
    if q.size == 0:
        return 0.0
    kernel = np.exp(-np.abs(q[:, None] - q[None, :]))
    return 0.5 * float(p @ kernel @ p)


def total_momentum(state: PeakonState) -> float:
    return math.fsum(state.p)


def _rhs_factory(n: int):
    order = np.sign(np.arange(n)[:, None] - np.arange(n)[None, :]).astype(float)

    def rhs(t, y):
        q, p = y[:n], y[n:]
        kernel = np.exp(-np.abs(q[:, None] - q[None, :]))
        qdot = kernel @ p
        pdot = p * ((order * kernel) @ p)
        return np.concatenate([qdot, pdot])
    return rhs


@dataclass(frozen=True)
class IntegrationControls:
    rtol: float = 1e-10
    atol: float = 1e-12
    max_step: float = math.inf
    collision_eps: float = 1e-8

    def __post_init__(self):
        for name in ("rtol", "atol", "max_step", "collision_eps"):
            if not getattr(self, name) > 0:
                raise InputError(f"{name} must be positive")

    @classmethod
    def from_json(cls, data: dict) -> "IntegrationControls":
        known = {k: float(v) for k, v in data.items()
                 if k in ("rtol", "atol", "max_step", "collision_eps")}
        return cls(**known)


@dataclass
class Trajectory:
    t: np.ndarray
    q: np.ndarray          # shape (len(t), N)
    p: np.ndarray
    H: np.ndarray
    P: np.ndarray
    collided: bool = False
    collision_time: Optional[float] = None
    notes: dict = field(default_factory=dict)

    def state(self, k: int) -> PeakonState:
        return PeakonState(tuple(self.q[k]), tuple(self.p[k]), float(self.t[k]))

    def states(self):
        return [self.state(k) for k in range(len(self.t))]

    @property
    def final(self) -> PeakonState:
        return self.state(len(self.t) - 1)

    def max_relative_drift(self) -> dict:
        out = {}
        for name, series in (("H", self.H), ("P", self.P)):
            ref = abs(series[0]) or 1.0
            out[name] = float(np.max(np.abs(series - series[0])) / ref)
        return out

    def header(self) -> list:
        n = self.q.shape[1] if self.q.ndim == 2 else 0
        return (["t"] + [f"q{k + 1}" for k in range(n)] + [f"p{k + 1}" for k in range(n)]
                + ["H", "P"])

    def rows(self) -> list:
        return [[float(self.t[k])] + [float(x) for x in self.q[k]]
                + [float(x) for x in self.p[k]] + [float(self.H[k]), float(self.P[k])]
                for k in range(len(self.t))]


def _energy(q, p):
    kernel = np.exp(-np.abs(q[:, None] - q[None, :]))
    return 0.5 * float(p @ kernel @ p)


def integrate(state: PeakonState, t_final: float,
              controls: Optional[IntegrationControls] = None,
              t_eval: Optional[Sequence[float]] = None) -> Trajectory:
    """Integrate from ``state.t`` to ``t_final`` with an embedded RK 5(4) method.

    Raises
    ------
    CollisionError
        Two neighbours came within ``controls.collision_eps``; the partial
        trajectory (ending at the collision) is attached.
    StepFailureError
        The integrator gave up.
    """
    controls = controls or IntegrationControls()
    n = state.n
    t0 = state.t
    if not math.isfinite(t_final):
        raise InputError("t_final must be finite")
    if t_eval is not None:
        t_eval = np.asarray(t_eval, dtype=float)
        lo, hi = min(t0, t_final), max(t0, t_final)
        if np.any((t_eval < lo) | (t_eval > hi)):
            raise InputError("t_eval outside the integration interval")
    y0 = np.array(state.q + state.p, dtype=float)

    if n == 0 or t_final == t0:
        ts = np.array([t0]) if t_eval is None else np.asarray(t_eval, dtype=float)
        q = np.tile(np.array(state.q), (len(ts), 1)).reshape(len(ts), n)
        p = np.tile(np.array(state.p), (len(ts), 1)).reshape(len(ts), n)
        h = hamiltonian(state)
        return Trajectory(ts, q, p, np.full(len(ts), h), np.full(len(ts), total_momentum(state)))

    events = []
    for k in range(n - 1):
        def gap(t, y, k=k):
            return y[k + 1] - y[k] - controls.collision_eps
        gap.terminal = True
        gap.direction = -1
        events.append(gap)

    sol = solve_ivp(_rhs_factory(n), (t0, t_final), y0, method="RK45",
                    rtol=controls.rtol, atol=controls.atol, max_step=controls.max_step,
                    t_eval=t_eval, events=events or None)
    if sol.status == -1:
        raise StepFailureError(sol.message)
    ts, ys = sol.t, sol.y.T
    collided = sol.status == 1
    collision_time = None
    if collided:
        hit = [e for e in sol.t_events if len(e)]
        collision_time = float(hit[0][0])
        ye = [y for y in sol.y_events if len(y)][0][0]
        ts = np.append(ts, collision_time)
        ys = np.vstack([ys, ye]) if len(ys) else ye[None, :]
    q, p = ys[:, :n], ys[:, n:]
    H = np.array([_energy(qq, pp) for qq, pp in zip(q, p)])
    P = p.sum(axis=1)
    traj = Trajectory(ts, q, p, H, P, collided, collision_time)
    if collided:
        raise CollisionError(f"peakons collided at t={collision_time!r}", traj)
    if np.any(np.diff(q, axis=1) <= 0):
        raise StepFailureError("ordering of positions was lost")
    return traj


# --- two peakons in closed form --------------------------------------------

@dataclass(frozen=True)
class TwoPeakonParams:
    """Asymptotic velocities ``pbar1 > pbar2``, the branch constant
    (``beta`` for two peakons, ``zeta`` for a peakon-antipeakon pair) and the
    initial position sum ``Q0``.  Label 1 is the left particle."""
    pbar1: float
    pbar2: float
    branch_const: float
    Q0: float
    branch: str
    t0: float = 0.0

    def __post_init__(self):
        if not self.pbar1 > self.pbar2:
            raise InputError("need pbar1 > pbar2 (equal velocities are excluded)")
        if not self.branch_const > 0:
            raise InputError("branch constant must be positive")
        if self.branch == PURE and not self.pbar2 > 0:
            raise InputError("pure branch needs pbar2 > 0")
        if self.branch == MIXED and not (self.pbar1 > 0 > self.pbar2):
            raise InputError("mixed branch needs pbar1 > 0 > pbar2")
        if self.branch not in (PURE, MIXED):
            raise InputError(f"unknown branch {self.branch!r}")

    @property
    def A(self) -> float:
        return self.pbar1 - self.pbar2

    @property
    def P(self) -> float:
        return self.pbar1 + self.pbar2

    @property
    def energy(self) -> float:
        return 0.5 * (self.pbar1 ** 2 + self.pbar2 ** 2)

    @property
    def eigenvalues(self) -> tuple:
        return 1.0 / (2.0 * self.pbar1), 1.0 / (2.0 * self.pbar2)

    @property
    def collision_time(self) -> Optional[float]:
        """Time at which ``zeta exp(A t) = 1`` (mixed branch only)."""
        if self.branch != MIXED:
            return None
        return self.t0 - math.log(self.branch_const) / self.A


def two_peakon_params(state: PeakonState) -> TwoPeakonParams:
    """Solve for asymptotic velocities and branch constant from a state."""
    if state.n != 2:
        raise InputError("need exactly two peakons")
    P = state.p[0] + state.p[1]
    H = hamiltonian(state)
    # pbar are the roots of z^2 - P z + (P^2 - 2H)/2
    disc = P * P - 2.0 * (P * P - 2.0 * H)
    if disc <= 0:
        raise DomainError("equal asymptotic velocities")
    root = math.sqrt(disc)
    pbar1 = (P + root) / 2.0 if P >= 0 else (P * P - 2.0 * H) / (P - root)
    pbar2 = (P - root) / 2.0 if P < 0 else (P * P - 2.0 * H) / (P + root)
    A = pbar1 - pbar2
    p0 = state.p[0] - state.p[1]
    Q0 = state.q[0] + state.q[1]
    if pbar2 > 0:
        return TwoPeakonParams(pbar1, pbar2, (A - p0) / (A + p0), Q0, PURE, state.t)
    if pbar1 > 0 > pbar2:
        return TwoPeakonParams(pbar1, pbar2, (p0 - A) / (p0 + A), Q0, MIXED, state.t)
    raise DomainError("both asymptotic velocities negative: mirror image of the pure branch")


def two_peakon_closed_form(params: TwoPeakonParams, t: float) -> PeakonState:
    pb1, pb2, c, A, P = params.pbar1, params.pbar2, params.branch_const, params.A, params.P
    s = t - params.t0
    e = c * math.exp(A * s)
    if params.branch == PURE:
        p = A * (1.0 - e) / (1.0 + e)
        q = math.log(A * A * e / ((pb1 + pb2 * e) * (pb2 + pb1 * e)))
        Q = (params.Q0 + P * s - math.log((pb1 + pb2 * e) / (pb2 + pb1 * e))
             + math.log((pb1 + c * pb2) / (pb2 + c * pb1)))
    else:
        if e >= 1.0:
            raise CollisionError(f"t={t!r} is at or past the collision time "
                                 f"{params.collision_time!r}")
        p = A * (1.0 + e) / (1.0 - e)
        q = math.log(A * A * e / ((pb1 * e - pb2) * (pb1 - pb2 * e)))
        Q = (params.Q0 + P * s - math.log((pb1 - pb2 * e) / (pb1 - pb2 * c))
             + math.log((pb2 - pb1 * e) / (pb2 - pb1 * c)))
    return PeakonState(((Q + q) / 2.0, (Q - q) / 2.0), ((P + p) / 2.0, (P - p) / 2.0), t)


def two_peakon_residues(params: TwoPeakonParams, t: float) -> tuple:
    """Closed-form residues of ``E_0`` at ``1/(2 pbar1)`` and ``1/(2 pbar2)``."""
    pb1, pb2, c, A = params.pbar1, params.pbar2, params.branch_const, params.A
    s = t - params.t0
    # the closed forms are written for Q0 at time 0; shift the clock
    eQ = math.exp(-params.Q0)
    if params.branch == PURE:
        R = math.sqrt(eQ / c * (pb2 + c * pb1) / (pb1 + c * pb2))
        return (R / (8 * A) * math.exp(-pb1 * s), R * c / (8 * A) * math.exp(-pb2 * s))
    D = math.sqrt(eQ / c * (pb1 * c - pb2) / (pb1 - pb2 * c))
    return (D / (8 * A) * math.exp(-pb1 * s), -D * c / (8 * A) * math.exp(-pb2 * s))


def predict_collision_time(state: PeakonState) -> Optional[float]:
    """Collision time of a peakon-antipeakon pair from its spectral data.

    Residues of ``E_0`` at ``lam_k`` decay like ``exp(-t/(2 lam_k))`` and the
    first mass blows up exactly when ``s_1 = sum rho_k`` vanishes, so the
    collision time is the root of ``sum rho_k exp(-(t - t0)/(2 lam_k))``.
    Returns ``None`` when the pair separates in forward time.
    """
    from scipy.optimize import brentq

    from .discrete_string import from_peakons, weyl_e0

    if state.n != 2:
        raise InputError("collision prediction needs exactly two particles")
    if state.positive or all(x < 0 for x in state.p):
        return None
    e0 = weyl_e0(from_peakons(state))
    lam, rho = e0.poles, e0.residues
    rates = [1.0 / (2.0 * x) for x in lam]
    if rho[0] * rho[1] >= 0:
        return None
    # s1(t) = rho0 e^{-r0 s} + rho1 e^{-r1 s} = 0  <=>  s = log(-rho1/rho0)/(r1 - r0)
    ratio = -rho[1] / rho[0]
    s = math.log(ratio) / (rates[1] - rates[0])
    if s < 0:
        return None

    def s1(x):
        return rho[0] * math.exp(-rates[0] * x) + rho[1] * math.exp(-rates[1] * x)

    if s1(0.0) * s1(2 * s + 1.0) < 0:
        s = brentq(s1, 0.0, 2 * s + 1.0, xtol=1e-15)
    return state.t + s
