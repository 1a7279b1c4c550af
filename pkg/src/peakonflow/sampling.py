"""Seeded random test data: strings, peakon states and rational Herglotz
functions.  Everything is driven by a ``numpy.random.Generator`` so a seed
fixes the whole sample."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .discrete_string import DiscreteString, PeakonState, from_peakons
from .herglotz import RationalHerglotz


def rng_from(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _fraction(rng, lo: int, hi: int, den: int = 16) -> Fraction:
    return Fraction(int(rng.integers(lo * den, hi * den + 1)), den)


def exact_string(rng, n: int) -> DiscreteString:
    """Rational gaps summing to 4 and rational positive masses."""
    weights = [int(rng.integers(1, 21)) for _ in range(n + 1)]
    total = sum(weights)
    gaps = tuple(Fraction(4 * w, total) for w in weights)
    masses = tuple(Fraction(int(rng.integers(1, 81)), int(rng.integers(1, 17))) for _ in range(n))
    return DiscreteString(gaps, masses)


def float_string(rng, n: int) -> DiscreteString:
    weights = rng.uniform(0.2, 1.0, n + 1)
    gaps = list(4.0 * weights / weights.sum())
    gaps[-1] = 4.0 - float(np.sum(gaps[:-1]))
    masses = rng.uniform(0.1, 5.0, n)
    return DiscreteString(tuple(float(g) for g in gaps), tuple(float(m) for m in masses))


def peakon_state(rng, n: int, *, spread: float = 3.0, min_gap: float = 0.2,
                 positive: bool = True) -> PeakonState:
    while True:
        q = np.sort(rng.uniform(-spread, spread, n))
        if n < 2 or np.min(np.diff(q)) >= min_gap:
            break
    p = rng.uniform(0.2, 2.0, n)
    if not positive:
        p *= rng.choice([-1.0, 1.0], n)
    return PeakonState(tuple(float(x) for x in q), tuple(float(x) for x in p))


def positive_string(rng, n: int) -> DiscreteString:
    return from_peakons(peakon_state(rng, n))


def exact_herglotz(rng, n: int) -> RationalHerglotz:
    """Rational alpha, distinct rational poles and positive rational residues."""
    poles = set()
    while len(poles) < n:
        poles.add(_fraction(rng, -6, 6))
    poles = sorted(poles)
    residues = [Fraction(int(rng.integers(1, 65)), int(rng.integers(1, 17))) for _ in range(n)]
    return RationalHerglotz(_fraction(rng, -4, 4), poles, residues)


def level_for(rng, f: RationalHerglotz) -> Fraction:
    while True:
        c = _fraction(rng, -8, 8, 8)
        if c != f.alpha:
            return c
