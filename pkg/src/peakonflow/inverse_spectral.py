"""Reconstruction of a discrete string from its Weyl function.

The Weyl function of a string with gaps ``l_0..l_N`` and masses
``m_1..m_N`` is the continued fraction

    Omega_0 = l_0 + 1/(-lam m_1 + 1/(l_1 + 1/(-lam m_2 + ... + 1/l_N)))

and peeling it off one level at a time recovers the string.  Peeling runs
on the numerator/denominator pair in exact rational arithmetic.  Floating
input is lifted to rationals losslessly (every binary float is a
rational), so the only error left is the rounding of the final output.
"""

from __future__ import annotations

from fractions import Fraction

from . import polynomial as P
from .discrete_string import DiscreteString
from .errors import NormalizationError, ReconstructionError
from .herglotz import RationalHerglotz, _expand, evaluate, negate_invert

OMEGA0 = "omega0"
E0 = "e0"

NORMALIZATION_TOL = 1e-10


def _exact_pair(f: RationalHerglotz):
    """Exact ``(num, den)`` of ``f``; floats are converted without rounding."""
    if f.exact:
        return f.fraction
    return _expand(Fraction(f.alpha), Fraction(f.slope),
                   tuple(Fraction(g) for g in f.poles),
                   tuple(Fraction(n) for n in f.residues))


def check_weyl_data(f: RationalHerglotz, flavor: str = OMEGA0) -> None:
    """Raise unless ``f`` could be the Weyl function of a positive string."""
    if flavor not in (OMEGA0, E0):
        raise ValueError(f"unknown flavor {flavor!r}")
    if f.slope != 0:
        raise ReconstructionError("Weyl function has a linear term")
    if any(n <= 0 for n in f.residues):
        raise ReconstructionError("Weyl data has a non-positive residue")
    if any(g <= 0 for g in f.poles):
        raise ReconstructionError("Weyl data has a non-positive pole")
    target = Fraction(4) if flavor == OMEGA0 else Fraction(-1, 4)
    value = evaluate(f, 0)
    if f.exact:
        if value != target:
            raise NormalizationError(f"value at 0 is {value}, expected {target}")
    elif abs(value - float(target)) > NORMALIZATION_TOL * abs(float(target)):
        raise NormalizationError(f"value at 0 is {value!r}, expected {float(target)}")


def peel(num, den) -> tuple[list, list]:
    """Gaps and masses of ``num/den`` by exact continued-fraction peeling."""
    num, den = P.to_fraction(num), P.to_fraction(den)
    gaps, masses = [], []
    while True:
        if P.degree(num) != P.degree(den):
            raise ReconstructionError("degree mismatch during peeling")
        gap = P.leading(num) / P.leading(den)
        if gap <= 0:
            raise ReconstructionError(f"non-positive gap {gap} at level {len(gaps)}")
        gaps.append(gap)
        rest = P.sub(num, P.scale(den, gap))
        if not rest:
            if P.degree(den) != 0:
                raise ReconstructionError("peeling terminated early")
            return gaps, masses
        quot, rem = P.divmod_poly(den, rest)
        if P.degree(quot) != 1:
            raise ReconstructionError("degree mismatch during peeling")
        b, a = quot
        if -a <= 0:
            raise ReconstructionError(f"non-positive mass {-a} at level {len(masses) + 1}")
        if b <= 0:
            raise ReconstructionError(f"non-positive gap at level {len(gaps)}")
        masses.append(-a)
        num, den = rest, P.add(P.scale(rest, b), rem)


def reconstruct(f: RationalHerglotz, flavor: str = OMEGA0) -> DiscreteString:
    """The string whose ``Omega_0`` (or ``E_0``, per ``flavor``) is ``f``.

    Floating input is accepted when its normalization at zero holds to
    ``NORMALIZATION_TOL``; the constant term absorbs the residual so the
    gaps sum to 4.
    """
    check_weyl_data(f, flavor)
    omega = negate_invert(f) if flavor == E0 else f
    num, den = _exact_pair(omega)
    if not f.exact:
        # absorb the normalization residual into the constant term
        excess = P.evaluate(num, 0) / P.evaluate(den, 0) - 4
        num = P.sub(num, P.scale(den, excess))
    gaps, masses = peel(num, den)
    if f.exact:
        return DiscreteString(tuple(gaps), tuple(masses))
    return DiscreteString(tuple(float(g) for g in gaps), tuple(float(m) for m in masses))


def from_chart(chart) -> DiscreteString:
    """Rebuild the string from a spectral chart (roots, residues, parameter)."""
    from .spectral_flow import C_CHART

    if chart.kind == C_CHART:
        e0c = RationalHerglotz(chart.chart_constant, chart.roots, chart.residues)
        omega = negate_invert(e0c).shifted(chart.parameter)
    else:
        omega_f = RationalHerglotz(chart.chart_constant, chart.roots, chart.residues)
        e0 = negate_invert(omega_f).shifted(chart.parameter)
        omega = negate_invert(e0)
    return reconstruct(omega, OMEGA0)
