from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from peakonflow import sampling
from peakonflow.discrete_string import DiscreteString, from_peakons, weyl_e0, weyl_omega0
from peakonflow.errors import NormalizationError, ReconstructionError
from peakonflow.herglotz import RationalHerglotz
from peakonflow.inverse_spectral import E0, OMEGA0, from_chart, peel, reconstruct
from peakonflow.spectral_flow import chart

UNIT = DiscreteString((F(2), F(2)), (F(2),))


def test_reconstruct_examples():
    assert reconstruct(RationalHerglotz(F(2), [F(1, 4)], [F(1, 2)])) == UNIT
    assert reconstruct(RationalHerglotz.constant(F(4))) == DiscreteString((F(4),), ())
    assert reconstruct(RationalHerglotz(F(-1, 2), [F(1, 2)], [F(1, 8)]), E0) == UNIT


def test_peel_two_levels():
    gaps, masses = peel((F(4), F(-8)), (F(1), F(-4)))
    assert gaps == [2, 2] and masses == [2]


def test_rejects_bad_data():
    with pytest.raises(ReconstructionError):
        reconstruct(RationalHerglotz(F(6), [F(1, 4)], [F(-1, 2)], signed=True))
    with pytest.raises(ReconstructionError):
        # normalized (value 4 at zero) but with a negative pole
        reconstruct(RationalHerglotz(F(6), [F(-1, 4)], [F(1, 2)]))
    with pytest.raises(NormalizationError):
        reconstruct(RationalHerglotz(F(3), [F(1, 4)], [F(1, 2)]))
    with pytest.raises(NormalizationError):
        reconstruct(RationalHerglotz(2.0, [0.25], [0.5 + 1e-8]))


def test_from_chart_examples():
    s = from_peakons(sampling.peakon_state(sampling.rng_from(3), 1))
    for kind, par in (("C", 0.0), ("F", 0.0)):
        back = from_chart(chart(DiscreteString((2.0, 2.0), (2.0,)), kind, par))
        assert back.gaps == pytest.approx((2.0, 2.0), rel=1e-14)
        assert back.masses == pytest.approx((2.0,), rel=1e-14)
    back = from_chart(chart(s, "C", -1.0))
    assert back.masses == pytest.approx(s.masses, rel=1e-10)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 8))
def test_exact_round_trip(seed, n):
    d = sampling.exact_string(sampling.rng_from(seed), n)
    assert reconstruct(weyl_omega0(d)) == d
    assert reconstruct(weyl_e0(d), E0) == d


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6))
def test_chart_round_trip(seed, n):
    rng = sampling.rng_from(seed)
    d = sampling.positive_string(rng, n)
    l0 = float(d.gaps[0])
    for kind, par in (("C", float(rng.uniform(-3, l0 * 0.99))),
                      ("F", float(rng.uniform(-0.99 / l0, 3)))):
        if kind == "F" and abs(par + 0.25) < 1e-6:
            continue
        back = from_chart(chart(d, kind, par))
        for a, b in zip(back.gaps + back.masses, d.gaps + d.masses):
            assert abs(a - b) <= 1e-8 * abs(b)
