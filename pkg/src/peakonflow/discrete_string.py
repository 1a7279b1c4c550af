"""Discrete strings on [-2, 2] and their correspondence with peakon states.

A peakon at position ``q`` with momentum ``p`` becomes a point mass
``m = 2 p cosh(q/2)**2`` at ``xi = 2 tanh(q/2)``.  All conversions are
written in terms of the distances ``L = 2 + xi`` and ``R = 2 - xi`` to the
ends of the interval, which stay accurate for peakons far from the origin.

The string's boundary data are polynomials in the spectral parameter,
obtained by propagating ``(f, f')`` across gaps and masses with the
transfer matrices

* gap ``l``:  ``(f, f') -> (f + l f', f')``
* mass ``m``: ``(f, f') -> (f, f' - lam m f)``

starting from ``(1, 0)`` (``phi``) and ``(0, 1)`` (``psi``) at the left end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from scipy.special import expit

from . import polynomial as P
from .errors import (
    BoundaryMassError,
    CoincidentPositionError,
    DegenerateBoundaryError,
    InputError,
    NonRealSpectrumError,
)
from .herglotz import RationalHerglotz, format_number, parse_number

GAP_SUM_TOL = 1e-12


@dataclass(frozen=True)
class PeakonState:
    """Peakon positions ``q`` (strictly increasing) and momenta ``p``."""
    q: tuple
    p: tuple
    t: float = 0.0

    def __post_init__(self):
        q, p = tuple(float(x) for x in self.q), tuple(float(x) for x in self.p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "t", float(self.t))
        if len(q) != len(p):
            raise InputError("q and p differ in length")
        if not all(math.isfinite(x) for x in q + p):
            raise InputError("non-finite peakon data")
        if any(b <= a for a, b in zip(q, q[1:])):
            raise CoincidentPositionError("positions must be strictly increasing")
        if any(x == 0 for x in p):
            raise InputError("momenta must be nonzero")

    @property
    def n(self) -> int:
        return len(self.q)

    @property
    def positive(self) -> bool:
        """True for pure peakon data (all momenta positive)."""
        return all(x > 0 for x in self.p)

    def to_json(self) -> dict:
        return {"q": list(self.q), "p": list(self.p), "t": self.t}

    @classmethod
    def from_json(cls, data: dict) -> "PeakonState":
        try:
            return cls(tuple(data["q"]), tuple(data["p"]), data.get("t", 0.0))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed peakon state: {exc}") from exc


@dataclass(frozen=True)
class DiscreteString:
    """Point masses on [-2, 2] separated by ``gaps`` (``len(masses) + 1`` of them).

    Rational gaps and masses make an exact string whose gaps must sum to
    exactly 4.  Floating strings within ``GAP_SUM_TOL`` of 4 are
    renormalized by adjusting the largest gap; ``adjustment`` records the
    change.
    """
    gaps: tuple
    masses: tuple
    adjustment: float = field(default=0.0, compare=False)

    def __post_init__(self):
        gaps, masses = tuple(self.gaps), tuple(self.masses)
        if len(gaps) != len(masses) + 1:
            raise InputError("need exactly one more gap than masses")
        exact = all(isinstance(v, Rational) for v in gaps + masses)
        conv = Fraction if exact else float
        gaps = tuple(conv(v) for v in gaps)
        masses = tuple(conv(v) for v in masses)
        if not all(math.isfinite(v) for v in gaps + masses):
            raise InputError("non-finite string data")
        if gaps[0] <= 0 or gaps[-1] <= 0:
            raise BoundaryMassError("end gaps must be positive (no mass at +-2)")
        if any(g <= 0 for g in gaps[1:-1]):
            raise CoincidentPositionError("interior gaps must be positive")
        if any(m == 0 for m in masses):
            raise InputError("masses must be nonzero")
        adjustment = 0.0
        if exact:
            if sum(gaps) != 4:
                raise InputError(f"gaps sum to {sum(gaps)}, not 4")
        else:
            total = math.fsum(gaps)
            if abs(total - 4.0) > GAP_SUM_TOL:
                raise InputError(f"gaps sum to {total!r}, not 4")
            if total != 4.0:
                k = max(range(len(gaps)), key=lambda i: gaps[i])
                adjustment = 4.0 - total
                gaps = gaps[:k] + (gaps[k] + adjustment,) + gaps[k + 1:]
        object.__setattr__(self, "gaps", gaps)
        object.__setattr__(self, "masses", masses)
        object.__setattr__(self, "adjustment", adjustment)

    @property
    def n(self) -> int:
        return len(self.masses)

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.gaps + self.masses)

    @property
    def positive(self) -> bool:
        return all(m > 0 for m in self.masses)

    @property
    def left_lengths(self) -> tuple:
        """Distance from the left end to each mass."""
        if self.exact:
            return tuple(sum(self.gaps[:k + 1]) for k in range(self.n))
        return tuple(math.fsum(self.gaps[:k + 1]) for k in range(self.n))

    @property
    def right_lengths(self) -> tuple:
        """Distance from each mass to the right end."""
        if self.exact:
            return tuple(sum(self.gaps[k + 1:]) for k in range(self.n))
        return tuple(math.fsum(self.gaps[k + 1:]) for k in range(self.n))

    @property
    def positions(self) -> tuple:
        return tuple(x - 2 for x in self.left_lengths)

    def to_json(self) -> dict:
        return {"gaps": [format_number(g) for g in self.gaps],
                "masses": [format_number(m) for m in self.masses]}

    @classmethod
    def from_json(cls, data: dict) -> "DiscreteString":
        try:
            return cls(tuple(parse_number(v) for v in data["gaps"]),
                       tuple(parse_number(v) for v in data["masses"]))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed string: {exc}") from exc


@dataclass(frozen=True)
class CharacteristicData:
    """Boundary values at the right end, as polynomials in ``lam``
    (coefficient tuples, lowest degree first)."""
    phi: tuple
    psi: tuple
    phi_prime: tuple
    psi_prime: tuple

    def wronskian(self) -> tuple:
        return P.sub(P.mul(self.phi, self.psi_prime), P.mul(self.psi, self.phi_prime))


def from_peakons(state: PeakonState) -> DiscreteString:
    q = state.q
    if not q:
        return DiscreteString((4.0,), ())
    left = [4.0 * float(expit(x)) for x in q]
    right = [4.0 * float(expit(-x)) for x in q]
    masses = [8.0 * p / (a * b) for p, a, b in zip(state.p, left, right)]
    gaps = [left[0]]
    for a, b in zip(q, q[1:]):
        gap = 2.0 * math.sinh(0.5 * (b - a)) / (math.cosh(0.5 * a) * math.cosh(0.5 * b))
        if gap <= 0 or not math.isfinite(gap):
            raise CoincidentPositionError(f"string positions of q={a!r}, {b!r} coincide")
        gaps.append(gap)
    gaps.append(right[-1])
    return DiscreteString(tuple(gaps), tuple(masses))


def to_peakons(string: DiscreteString, t: float = 0.0) -> PeakonState:
    left = [float(x) for x in string.left_lengths]
    right = [float(x) for x in string.right_lengths]
    if any(x <= 0 for x in left + right):
        raise BoundaryMassError("mass at an end of the interval")
    q = tuple(math.log(a / b) for a, b in zip(left, right))
    p = tuple(float(m) * a * b / 8.0 for m, a, b in zip(string.masses, left, right))
    return PeakonState(q, p, t)


def characteristic(string: DiscreteString, *, lift: bool = False) -> CharacteristicData:
    """Right-end boundary polynomials; ``lift=True`` converts floating data
    to exact rationals first (without rounding)."""
    exact = string.exact or lift
    conv = Fraction if exact else float
    gaps = [conv(g) for g in string.gaps]
    masses = [conv(m) for m in string.masses]
    one = conv(1)
    zero = one * 0

    def propagate(f, fp):
        f, fp = (f,), (fp,)
        for k, gap in enumerate(gaps):
            f = P.add(f, P.scale(fp, gap))
            if k < len(masses):
                fp = P.sub(fp, P.shift(P.scale(f, masses[k]), 1))
        return P.trim(f), P.trim(fp)

    phi, phi_p = propagate(one, zero)
    psi, psi_p = propagate(zero, one)
    return CharacteristicData(phi, psi, phi_p, psi_p)


def evaluate_boundary(string: DiscreteString, lam: float) -> dict:
    """``phi(2, lam)``, ``psi(2, lam)`` and their ``lam``-derivatives,
    propagating numbers rather than polynomials."""
    lam = float(lam)
    gaps = [float(g) for g in string.gaps]
    masses = [float(m) for m in string.masses]
    out = {}
    for name, start in (("phi", (1.0, 0.0)), ("psi", (0.0, 1.0))):
        f, fp = start
        df = dfp = 0.0  # derivatives in lam
        for k, gap in enumerate(gaps):
            f, df = f + gap * fp, df + gap * dfp
            if k < len(masses):
                m = masses[k]
                fp, dfp = fp - lam * m * f, dfp - m * f - lam * m * df
        out[name] = f
        out["d" + name] = df
    return out


def _weyl(string: DiscreteString, num_of, den_of) -> RationalHerglotz:
    # Floating strings are lifted to exact rationals, so poles and residues
    # come out correctly rounded from certified Sturm isolation.
    ch = characteristic(string, lift=True)
    f = RationalHerglotz.from_fraction(num_of(ch), den_of(ch), signed=not string.positive)
    return f if string.exact else f.to_float()


def weyl_omega0(string: DiscreteString) -> RationalHerglotz:
    """``psi(2, lam) / phi(2, lam)`` in pole/residue form."""
    return _weyl(string, lambda ch: ch.psi, lambda ch: ch.phi)


def weyl_e0(string: DiscreteString) -> RationalHerglotz:
    """``-phi(2, lam) / psi(2, lam)`` in pole/residue form."""
    return _weyl(string, lambda ch: P.scale(ch.phi, -1), lambda ch: ch.psi)


def mixed_spectrum(string: DiscreteString, a, b) -> list:
    """Real roots of ``a*phi(2, lam) + b*psi(2, lam)``, ascending."""
    if a == 0 and b == 0:
        raise DegenerateBoundaryError("boundary parameters (0, 0)")
    if a + 4 * b == 0:
        raise DegenerateBoundaryError("a + 4b = 0 puts a root at lam = 0")
    if string.n == 0:
        return []
    ch = characteristic(string, lift=True)
    poly = P.add(P.scale(ch.phi, Fraction(a)), P.scale(ch.psi, Fraction(b)))
    roots = P.real_roots(poly)
    if string.positive and len(roots) != P.degree(poly):
        raise NonRealSpectrumError("spectrum of a positive string must be real")
    return roots


def dirichlet_spectrum(string: DiscreteString) -> list:
    return mixed_spectrum(string, 0, 1)


def neumann_spectrum(string: DiscreteString) -> list:
    """Roots of ``phi(2, lam)``."""
    return mixed_spectrum(string, 1, 0)


def interlaces(lower: Sequence, upper: Sequence) -> bool:
    """``0 < lower[0] < upper[0] < lower[1] < upper[1] < ...``"""
    if len(lower) != len(upper):
        return False
    merged = [x for pair in zip(lower, upper) for x in pair]
    return all(x > 0 for x in merged) and all(b > a for a, b in zip(merged, merged[1:]))
