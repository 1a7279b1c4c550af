import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from peakonflow import sampling
from peakonflow.discrete_string import PeakonState, from_peakons, weyl_e0
from peakonflow.errors import CollisionError, DomainError, InputError
from peakonflow.peakon_ode import (
    MIXED, PURE, IntegrationControls, TwoPeakonParams, hamiltonian, integrate,
    predict_collision_time, total_momentum, two_peakon_closed_form, two_peakon_params,
    two_peakon_residues,
)


def test_hamiltonian_examples():
    assert hamiltonian(PeakonState((0.0,), (1.0,))) == 0.5
    assert hamiltonian(PeakonState((0.0, 10.0), (1.0, 1.0))) == pytest.approx(1 + math.exp(-10), rel=1e-15)
    assert hamiltonian(PeakonState((), ())) == 0.0
    assert total_momentum(PeakonState((0.0, 1.0), (0.5, 0.25))) == 0.75


def test_single_peakon_moves_at_constant_speed():
    traj = integrate(PeakonState((0.5,), (1.5,)), 3.0)
    assert traj.final.q[0] == pytest.approx(0.5 + 4.5, abs=1e-9)
    assert traj.final.p[0] == 1.5


def test_zero_length_and_empty_integration():
    s = PeakonState((0.0, 1.0), (1.0, 0.5))
    traj = integrate(s, 0.0)
    assert len(traj.t) == 1 and tuple(traj.q[0]) == s.q
    assert integrate(PeakonState((), ()), 2.0).q.shape == (1, 0)


def test_two_peakon_closed_form_matches_ode():
    state = PeakonState((-1.0, 0.5), (1.5, 0.7))
    params = two_peakon_params(state)
    assert params.branch == PURE
    times = np.linspace(0.0, 10.0, 21)
    traj = integrate(state, 10.0, t_eval=times)
    for k, t in enumerate(times):
        exact = two_peakon_closed_form(params, t)
        assert np.max(np.abs(np.subtract(exact.q, traj.q[k]))) <= 1e-8
        assert np.max(np.abs(np.subtract(exact.p, traj.p[k]))) <= 1e-8


def test_closed_form_recovers_initial_state_and_asymptotics():
    state = PeakonState((0.2, 1.1), (0.4, 1.3))
    params = two_peakon_params(state)
    back = two_peakon_closed_form(params, 0.0)
    assert back.q == pytest.approx(state.q, abs=1e-12)
    assert back.p == pytest.approx(state.p, abs=1e-12)
    late = two_peakon_closed_form(params, 60.0)
    # p1 - p2 tends to -A: the faster peakon ends up on the right
    assert late.p[0] - late.p[1] == pytest.approx(-params.A, rel=1e-10)
    assert sorted(late.p) == pytest.approx([params.pbar2, params.pbar1], rel=1e-10)


def test_residues_follow_exponential_law():
    state = PeakonState((-0.3, 0.9), (1.2, 0.5))
    params = two_peakon_params(state)
    lam = params.eigenvalues
    for t in (0.0, 1.0, 4.0):
        f = weyl_e0(from_peakons(two_peakon_closed_form(params, t)))
        order = np.argsort(lam)
        got = dict(zip(f.poles, f.residues))
        expected = two_peakon_residues(params, t)
        for k in order:
            pole = min(got, key=lambda g: abs(g - lam[k]))
            assert pole == pytest.approx(lam[k], rel=1e-10)
            assert got[pole] == pytest.approx(expected[k], rel=1e-9)


def test_peakon_antipeakon_collision():
    state = PeakonState((-1.0, 1.0), (1.0, -0.8))
    params = two_peakon_params(state)
    assert params.branch == MIXED
    tc = params.collision_time
    with pytest.raises(CollisionError) as info:
        integrate(state, tc + 5.0)
    traj = info.value.trajectory
    assert traj.collided and traj.collision_time < tc
    assert abs(predict_collision_time(traj.final) - tc) <= 1e-6
    assert abs(predict_collision_time(state) - tc) <= 1e-10
    with pytest.raises(CollisionError):
        two_peakon_closed_form(params, tc)
    # before the collision the closed form and the ODE agree
    mid = integrate(state, tc / 2)
    exact = two_peakon_closed_form(params, tc / 2)
    assert np.subtract(exact.q, mid.final.q) == pytest.approx([0, 0], abs=1e-8)


def test_separating_pair_has_no_collision():
    state = PeakonState((-1.0, 1.0), (-0.8, 1.0))
    assert predict_collision_time(state) is None
    assert predict_collision_time(PeakonState((-1.0, 1.0), (1.0, 0.5))) is None


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_energy_and_momentum_conserved(seed):
    state = sampling.peakon_state(sampling.rng_from(seed), 5)
    drift = integrate(state, 10.0).max_relative_drift()
    assert drift["H"] <= 1e-10
    assert drift["P"] <= 1e-10


def test_controls_and_parameter_validation():
    with pytest.raises(InputError):
        IntegrationControls(rtol=0.0)
    c = IntegrationControls.from_json({"rtol": "1e-8", "ignored": 3})
    assert c.rtol == 1e-8 and c.atol == 1e-12
    with pytest.raises(InputError):
        integrate(PeakonState((0.0,), (1.0,)), math.inf)
    with pytest.raises(InputError):
        integrate(PeakonState((0.0,), (1.0,)), 1.0, t_eval=[2.0])
    with pytest.raises(InputError):
        TwoPeakonParams(1.0, 1.0, 1.0, 0.0, PURE)
    with pytest.raises(InputError):
        TwoPeakonParams(1.0, -1.0, 1.0, 0.0, PURE)
    with pytest.raises(DomainError):
        two_peakon_params(PeakonState((0.0, 1.0), (-1.0, -0.5)))
