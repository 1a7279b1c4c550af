import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from peakonflow import sampling
from peakonflow.discrete_string import PeakonState, from_peakons
from peakonflow.errors import GradientConsistencyError, InputError
from peakonflow.poisson import (
    LAM_LAM, RHO_LAM, RHO_RHO, Functional, PoissonPoint, bracket, bracket_coords, coordinate,
    e0_functional, fd_gradient, jacobi_residual, verify_ah, verify_canonical,
)

ONE = PoissonPoint((0.5,), (0.125,))
TWO = PoissonPoint((0.5, 1.0), (0.125, 0.25))


def test_structure_constant_examples():
    assert bracket_coords(ONE, 0, 0, LAM_LAM) == 0.0
    assert bracket_coords(ONE, 0, 0, RHO_LAM) == 1 / 32
    assert bracket_coords(ONE, 0, 0, RHO_RHO) == 0.0
    # 2 (1/2)(1)(1/8)(1/4) / (1 - 1/2)
    assert bracket_coords(TWO, 0, 1, RHO_RHO) == pytest.approx(1 / 16, rel=1e-15)
    assert bracket_coords(TWO, 1, 0, RHO_RHO) == pytest.approx(-1 / 16, rel=1e-15)
    with pytest.raises(InputError):
        bracket_coords(TWO, 0, 2, RHO_RHO)


def test_bracket_of_coordinates():
    n = TWO.n
    for k in range(n):
        for j in range(n):
            assert bracket(TWO, coordinate(k, n), coordinate(j, n)) == 0.0
    assert bracket(ONE, coordinate(1, 1), coordinate(0, 1)) == 1 / 32
    f = e0_functional(-1.0)
    assert bracket(TWO, f, f) == pytest.approx(0.0, abs=1e-18)


def test_flipped_coordinates_have_the_flipped_brackets():
    # rho'_k = rho_k / lam_k^2 and lam'_k = -1/lam_k
    pt = PoissonPoint.from_string(from_peakons(PeakonState((-1.0, 0.3, 1.4), (0.6, 1.1, 0.4))))
    n = pt.n

    def rho_p(k):
        def grad(u):
            g = np.zeros(2 * n)
            g[k] = -2 * u[n + k] / u[k] ** 3
            g[n + k] = 1 / u[k] ** 2
            return g
        return Functional(lambda u: u[n + k] / u[k] ** 2, grad)

    def lam_p(k):
        def grad(u):
            g = np.zeros(2 * n)
            g[k] = 1 / u[k] ** 2
            return g
        return Functional(lambda u: -1 / u[k], grad)

    u = pt.coords
    for k in range(n):
        for j in range(n):
            rr = bracket(pt, rho_p(k), rho_p(j))
            expected = 0.0 if k == j else 2 * rho_p(k)(u) * rho_p(j)(u) / (lam_p(j)(u) - lam_p(k)(u))
            assert rr == pytest.approx(expected, rel=1e-12, abs=1e-15)
            rl = bracket(pt, rho_p(k), lam_p(j))
            assert rl == pytest.approx(rho_p(k)(u) if k == j else 0.0, rel=1e-12, abs=1e-15)


def test_ah_examples():
    assert verify_ah(ONE, -1, -2).residual <= 1e-12
    assert verify_ah(ONE, -1, -2, analytic=False, tolerance=1e-6).passed
    assert verify_ah(ONE, 0.3, 1.7, mobius=(1.0, 2.0, -0.5, 3.0)).passed
    empty = verify_ah(PoissonPoint((), ()), -1, -2)
    assert empty.lhs == 0.0 and empty.rhs == 0.0
    with pytest.raises(InputError):
        verify_ah(ONE, 1.0, 1.0)


def test_fd_gradient_rejects_noisy_functions():
    # a kink inside the stencil breaks second-order convergence
    def kinked(u):
        return float(abs(u[0] - 1.0) + u[1])
    with pytest.raises(GradientConsistencyError):
        fd_gradient(kinked, np.array([1.0 + 3e-6, 2.0]))
    g = fd_gradient(lambda u: float(np.exp(u[0]) * u[1]), np.array([0.3, 2.0]))
    assert g == pytest.approx([2 * math.exp(0.3), math.exp(0.3)], rel=1e-10)


def test_canonical_examples():
    r = verify_canonical(ONE, "C", 0.0)
    assert abs(r["theta_I"][0][0] - 1.0) <= 1e-6
    pt = PoissonPoint.from_string(from_peakons(PeakonState((-0.5, 0.8), (1.0, 0.6))))
    r = verify_canonical(pt, "C", 0.0)
    assert r["residuals"]["II"] <= 1e-8
    assert verify_canonical(pt, "F", 1.0)["passed"]


def _random_functional(rng, n):
    a = rng.normal(size=2 * n)
    b = rng.normal(size=2 * n)
    return Functional(lambda u: float(np.sin(a @ u) + b @ u),
                      lambda u: np.cos(a @ u) * a + b)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 5))
def test_bracket_algebra(seed, n):
    rng = sampling.rng_from(seed)
    pt = PoissonPoint.from_string(sampling.positive_string(rng, n))
    A, B, C = (_random_functional(rng, n) for _ in range(3))
    ab, ba = bracket(pt, A, B), bracket(pt, B, A)
    scale = max(abs(ab), 1.0)
    assert abs(ab + ba) <= 1e-12 * scale
    two_a_plus_c = Functional(lambda u: 2 * A(u) + C(u),
                              lambda u: 2 * A.gradient(u) + C.gradient(u))
    lin = bracket(pt, two_a_plus_c, B) - 2 * ab - bracket(pt, C, B)
    assert abs(lin) <= 1e-12 * max(scale, abs(bracket(pt, C, B)))
    u = pt.coords
    leib = bracket(pt, A * B, C) - A(u) * bracket(pt, B, C) - B(u) * bracket(pt, A, C)
    assert abs(leib) <= 1e-10 * max(1.0, abs(A(u) * bracket(pt, B, C)))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_jacobi_identity(seed, n):
    pt = PoissonPoint.from_string(sampling.positive_string(sampling.rng_from(seed), n))
    m = 2 * n
    worst = max(abs(jacobi_residual(pt, i, j, k))
                for i in range(m) for j in range(m) for k in range(m))
    assert worst <= 1e-8


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 5))
def test_ah_identity_random(seed, n):
    rng = sampling.rng_from(seed)
    pt = PoissonPoint.from_string(sampling.positive_string(rng, n))
    x, y = -float(rng.uniform(0.1, 3)), -float(rng.uniform(3.1, 6))
    assert verify_ah(pt, x, y).passed
    assert verify_ah(pt, x, y, flipped=True).passed


def test_ah_fd_residual_shrinks_with_step():
    pt = PoissonPoint.from_string(from_peakons(PeakonState((-0.5, 0.8), (1.0, 0.6))))
    errs = []
    for step in (4e-2, 2e-2, 1e-2):
        fx = Functional(e0_functional(-1.0).evaluate, None, step)
        fy = Functional(e0_functional(-2.0).evaluate, None, step)
        lhs = bracket(pt, fx, fy)
        errs.append(abs(lhs - verify_ah(pt, -1.0, -2.0).rhs))
    # one Richardson step on central differences: fourth order
    assert errs[0] / errs[1] > 10 and errs[1] / errs[2] > 10
