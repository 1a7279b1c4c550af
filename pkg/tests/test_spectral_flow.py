import math

import pytest
from hypothesis import given, settings, strategies as st

from peakonflow import sampling
from peakonflow.discrete_string import DiscreteString, PeakonState, from_peakons
from peakonflow.errors import ChartMismatchError, DegenerateBoundaryError, InadmissibleParameterError
from peakonflow.spectral_flow import (
    C_CHART, F_CHART, HamiltonianSpec, SpectralChart, chart, consistency_residual, evolve,
    hamiltonian_direct, hamiltonian_spectral, trace_coefficients,
)

UNIT_STATE = PeakonState((0.0,), (1.0,))
UNIT = from_peakons(UNIT_STATE)


def test_one_peakon_charts():
    ch = chart(UNIT, C_CHART, 0.0)
    assert ch.roots == (0.5,) and ch.actions == (-2.0,)
    assert ch.angles == (0.0,) and ch.residues == pytest.approx((0.125,), rel=1e-15)
    assert chart(UNIT, C_CHART, 1.0).roots == pytest.approx((0.75,), rel=1e-15)
    f = chart(UNIT, F_CHART, 0.0)
    assert f.roots == pytest.approx((0.25,), rel=1e-15) and f.actions == pytest.approx((-4.0,))
    assert f.angles == pytest.approx((math.log(2.0),), rel=1e-15)


def test_admissibility():
    with pytest.raises(InadmissibleParameterError):
        chart(UNIT, C_CHART, 2.5)
    with pytest.raises(InadmissibleParameterError):
        chart(UNIT, C_CHART, 2.0)
    with pytest.raises(InadmissibleParameterError):
        chart(UNIT, F_CHART, -0.5)
    with pytest.raises(DegenerateBoundaryError):
        chart(UNIT, F_CHART, -0.25)


def test_empty_chart():
    ch = chart(DiscreteString((4.0,), ()), C_CHART, 0.0)
    assert ch.n == 0 and ch.chart_constant == -0.25


def test_h2_flow_residue_law():
    ch = chart(UNIT, C_CHART, 0.0)
    for t in (0.0, 1.0, 5.0):
        rho = evolve(ch, HamiltonianSpec.h2(0.0), t).residues[0]
        assert rho == pytest.approx(math.exp(-t) / 8, rel=1e-12)


def test_flow_rejects_other_chart():
    with pytest.raises(ChartMismatchError):
        evolve(chart(UNIT, C_CHART, 0.0), HamiltonianSpec.t2(0.0), 1.0)


def test_flows_commute_exactly():
    s = sampling.positive_string(sampling.rng_from(1), 3)
    ch = chart(s, C_CHART, 0.0)
    h1, h2 = HamiltonianSpec.h1(0.0), HamiltonianSpec.h2(0.0)
    a = evolve(evolve(ch, h1, 0.7), h2, 1.3)
    b = evolve(evolve(ch, h2, 1.3), h1, 0.7)
    assert a.angles == b.angles and a.residues == b.residues


def test_trace_examples():
    assert trace_coefficients(UNIT_STATE, 0, 1).inverse_power_sums()[0] == pytest.approx(2.0)
    assert trace_coefficients(UNIT_STATE, -1, 1).inverse_power_sums()[0] == pytest.approx(4 / 3)
    empty = trace_coefficients(PeakonState((), ()), 1.0, 2.0)
    assert (empty.I0, empty.I1, empty.I2) == (9.0, 0.0, 0.0)


def test_hamiltonian_examples():
    assert hamiltonian_direct(UNIT_STATE, "H1", 0.0) == pytest.approx(2.0)
    assert hamiltonian_spectral(UNIT, "H1", 0.0) == pytest.approx(2.0)
    assert hamiltonian_direct(UNIT_STATE, "H2", 0.0) == pytest.approx(1.0)
    assert hamiltonian_spectral(UNIT, "H2", 0.0) == pytest.approx(1.0)
    assert hamiltonian_direct(UNIT_STATE, "H1", 1.0) == pytest.approx(4 / 3)


def test_chart_json_round_trip():
    ch = chart(UNIT, F_CHART, 1.0)
    back = SpectralChart.from_json(ch.to_json())
    assert back.roots == ch.roots and back.residues == ch.residues


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6))
def test_chart_consistency(seed, n):
    rng = sampling.rng_from(seed)
    s = sampling.positive_string(rng, n)
    l0 = float(s.gaps[0])
    for kind, par in ((C_CHART, l0 / 2), (F_CHART, 0.5)):
        ch = chart(s, kind, par)
        assert all(r > 0 for r in ch.residues)
        assert all(b > a > 0 for a, b in zip(ch.roots, ch.roots[1:]))
        assert consistency_residual(ch) <= 1e-10
