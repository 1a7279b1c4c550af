"""Rational Herglotz functions ``alpha + slope*x + sum(nu_k / (gamma_k - x))``.

A function is either *floating* (pole/residue data are floats) or *exact*
(rational data, backed by a numerator/denominator pair of ``Fraction``
polynomials).  Exact functions obtained by inversion usually have
irrational poles; for those the pole/residue lists are float
approximations derived from the exact fraction, while ``alpha``, ``slope``,
evaluation at rational points, inversions and moments stay exact.

Level sets ``f(x) = C`` are solved by safeguarded Newton iteration on
brackets given by consecutive poles.  Each root is located relative to a
neighbouring pole (``root = pole + offset``), which keeps pole-root
differences accurate when a root sits close to a pole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Optional, Sequence

from . import polynomial as P
from .errors import (
    ConvergenceError,
    DomainError,
    InputError,
    LevelEqualsAlphaError,
    NonRealSpectrumError,
    PoleEvaluationError,
    ZeroFunctionError,
)

_EPS = 2.0 ** -52

BELOW_POLES = "below-poles"
ABOVE_POLES = "above-poles"


def _is_rational(x) -> bool:
    return isinstance(x, Rational)


def parse_number(value):
    """JSON scalar -> number; ``"p/q"`` strings become ``Fraction``."""
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, bool):
        raise InputError("boolean is not a number")
    if isinstance(value, int):
        return Fraction(value)
    return float(value)


def format_number(value):
    if isinstance(value, Fraction):
        return str(value)
    return float(value)


class RationalHerglotz:
    """Finite R-function ``alpha + slope*x + sum(nu_k / (gamma_k - x))``.

    Parameters
    ----------
    alpha : float or Fraction
        Constant term (value at infinity when ``slope == 0``).
    poles : sequence
        Strictly increasing poles.
    residues : sequence
        Residues, positive unless ``signed=True``.
    slope : float or Fraction, default 0
        Nonnegative linear coefficient.
    signed : bool, default False
        Allow residues of either sign (peakon-antipeakon data).  Such
        functions are not Herglotz; level-set operations refuse them.

    Instances are immutable.  Passing only rationals (``int`` or
    ``Fraction``) produces an exact function.
    """

    def __init__(self, alpha=0, poles: Sequence = (), residues: Sequence = (),
                 slope=0, *, signed: bool = False):
        poles, residues = tuple(poles), tuple(residues)
        if len(poles) != len(residues):
            raise InputError("poles and residues differ in length")
        values = (alpha, slope) + poles + residues
        exact = all(_is_rational(v) for v in values)
        conv = Fraction if exact else float
        self._alpha = conv(alpha)
        self._slope = conv(slope)
        self._poles = tuple(conv(g) for g in poles)
        self._residues = tuple(conv(n) for n in residues)
        self._exact = exact
        self._signed = bool(signed)
        self._fraction = None
        _validate(self._alpha, self._slope, self._poles, self._residues, self._signed)

    @classmethod
    def constant(cls, value) -> "RationalHerglotz":
        return cls(value)

    @classmethod
    def from_fraction(cls, num: Sequence, den: Sequence, *,
                      signed: bool = False) -> "RationalHerglotz":
        """Exact function ``num(x) / den(x)`` with rational coefficients.

        The fraction is reduced and the denominator made monic.  Poles are
        the real roots of the denominator (isolated with Sturm sequences);
        residues follow from ``nu = -num(gamma) / den'(gamma)``.
        """
        num, den = P.to_fraction(num), P.to_fraction(den)
        if not den:
            raise ZeroFunctionError("zero denominator")
        if not num:
            return cls(Fraction(0))
        g = P.gcd(num, den)
        if P.degree(g) > 0:
            num = P.divmod_poly(num, g)[0]
            den = P.divmod_poly(den, g)[0]
        lc = P.leading(den)
        num, den = P.scale(num, 1 / lc), P.scale(den, 1 / lc)
        if P.degree(num) > P.degree(den) + 1:
            raise InputError("numerator degree exceeds denominator degree + 1")
        quot, _ = P.divmod_poly(num, den)
        quot = tuple(quot) + (Fraction(0),) * (2 - len(quot))
        self = cls.__new__(cls)
        self._alpha, self._slope = quot[0], quot[1]
        self._exact = True
        self._signed = bool(signed)
        self._fraction = (num, den)
        if self._slope < 0 and not signed:
            raise InputError("negative slope: not a Herglotz function")
        if P.degree(den) == 0:
            self._poles, self._residues = (), ()
        return self

    # --- data -----------------------------------------------------------

    @property
    def alpha(self):
        return self._alpha

    @property
    def slope(self):
        return self._slope

    @property
    def exact(self) -> bool:
        return self._exact

    @property
    def signed(self) -> bool:
        return self._signed

    @property
    def poles(self) -> tuple:
        if not hasattr(self, "_poles"):
            self._compute_partial_fractions()
        return self._poles

    @property
    def residues(self) -> tuple:
        if not hasattr(self, "_residues"):
            self._compute_partial_fractions()
        return self._residues

    @property
    def n_poles(self) -> int:
        if self._fraction is not None:
            return P.degree(self._fraction[1])
        return len(self._poles)

    @property
    def is_constant(self) -> bool:
        return self.n_poles == 0 and self._slope == 0

    @property
    def has_exact_poles(self) -> bool:
        return self._exact and all(isinstance(g, Fraction) for g in self.poles)

    def _compute_partial_fractions(self):
        num, den = self._fraction
        dden = P.derivative(den)
        intervals = P.isolate_real_roots(den)
        if len(intervals) != P.degree(den):
            raise NonRealSpectrumError("denominator has non-real or repeated roots")

        num_form, dden_form = P.integer_form(num), P.integer_form(dden)

        def residue(x):
            return -P.evaluate_exact(num_form, x) / P.evaluate_exact(dden_form, x)

        def stable(a, b):
            # residue known to ~2**-56 relative across the whole interval
            ra, rb = residue(a), residue(b)
            return ra * rb > 0 and abs(ra - rb) <= 2.0 ** -56 * abs(ra)

        poles, residues, all_exact = [], [], True
        for a, b in intervals:
            a, b = P.refine_root(den, a, b, accept=stable)
            mid = (a + b) / 2
            # recover rational poles exactly when the float root is a good guess
            r = Fraction(float(mid)).limit_denominator(10 ** 12) if a != b else a
            if a == b or P.evaluate(den, r) == 0:
                poles.append(r)
                residues.append(residue(r))
            else:
                all_exact = False
                poles.append(mid)
                residues.append(residue(mid))
        if all_exact:
            self._poles = tuple(poles)
            self._residues = tuple(residues)
        else:
            self._poles = tuple(float(g) for g in poles)
            self._residues = tuple(float(n) for n in residues)
        _validate(self._alpha, self._slope, self._poles, self._residues, self._signed)

    @property
    def fraction(self) -> tuple:
        """``(num, den)`` coefficient tuples (lowest degree first), den monic."""
        if self._fraction is None:
            self._fraction = _expand(self._alpha, self._slope, self._poles, self._residues)
        return self._fraction

    # --- convenience ----------------------------------------------------

    def __call__(self, x):
        return evaluate(self, x)

    def shifted(self, c) -> "RationalHerglotz":
        """``f + c``."""
        if self._exact and _is_rational(c) and self._fraction is not None:
            num, den = self._fraction
            return RationalHerglotz.from_fraction(
                P.add(num, P.scale(den, Fraction(c))), den, signed=self._signed)
        if self._exact and not _is_rational(c):
            c = float(c)
            return RationalHerglotz(float(self._alpha) + c, [float(g) for g in self.poles],
                                    [float(n) for n in self.residues], float(self._slope),
                                    signed=self._signed)
        return RationalHerglotz(self._alpha + c, self.poles, self.residues, self._slope,
                                signed=self._signed)

    def to_float(self) -> "RationalHerglotz":
        return RationalHerglotz(float(self._alpha), [float(g) for g in self.poles],
                                [float(n) for n in self.residues], float(self._slope),
                                signed=self._signed)

    def without_slope(self) -> "RationalHerglotz":
        if self._exact and self._fraction is not None and self._slope != 0:
            num, den = self._fraction
            return RationalHerglotz.from_fraction(
                P.sub(num, P.shift(P.scale(den, self._slope), 1)), den, signed=self._signed)
        return RationalHerglotz(self._alpha, self.poles, self.residues, 0, signed=self._signed)

    def _key(self):
        if self._exact:
            return ("exact",) + self.fraction
        return ("float", self._alpha, self._slope, self._poles, self._residues)

    def __eq__(self, other):
        if not isinstance(other, RationalHerglotz):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        kind = "exact" if self._exact else "float"
        s = f", slope={self._slope!r}" if self._slope else ""
        return (f"RationalHerglotz({kind}, alpha={self._alpha!r}{s}, "
                f"poles={self.poles!r}, residues={self.residues!r})")

    def to_json(self) -> dict:
        out = {"alpha": format_number(self._alpha)}
        if self._slope:
            out["slope"] = format_number(self._slope)
        if self._exact and not self.has_exact_poles:
            num, den = self.fraction
            out["numerator"] = [str(c) for c in num]
            out["denominator"] = [str(c) for c in den]
        out["poles"] = [format_number(g) for g in self.poles]
        out["residues"] = [format_number(n) for n in self.residues]
        return out

    @classmethod
    def from_json(cls, data: dict, *, signed: bool = False) -> "RationalHerglotz":
        if "numerator" in data:
            return cls.from_fraction([Fraction(c) for c in data["numerator"]],
                                     [Fraction(c) for c in data["denominator"]],
                                     signed=signed)
        return cls(parse_number(data.get("alpha", 0)),
                   [parse_number(v) for v in data.get("poles", [])],
                   [parse_number(v) for v in data.get("residues", [])],
                   parse_number(data.get("slope", 0)), signed=signed)


def _validate(alpha, slope, poles, residues, signed):
    for v in (alpha, slope) + tuple(poles) + tuple(residues):
        if not math.isfinite(v):
            raise InputError("non-finite value in Herglotz data")
    if any(b <= a for a, b in zip(poles, poles[1:])):
        raise InputError("poles must be strictly increasing")
    if signed:
        if any(n == 0 for n in residues):
            raise InputError("residues must be nonzero")
    else:
        if any(n <= 0 for n in residues):
            raise InputError("residues must be positive")
        if slope < 0:
            raise InputError("slope must be nonnegative")


def _expand(alpha, slope, poles, residues):
    """Numerator/denominator of the pole-residue form, den monic."""
    den = P.from_roots(poles)
    num = P.mul((alpha, slope), den)
    for k, (g, n) in enumerate(zip(poles, residues)):
        others = P.from_roots(poles[:k] + poles[k + 1:])
        num = P.sub(num, P.scale(others, n))
    return P.trim(num), den


# --- evaluation ----------------------------------------------------------

def evaluate(f: RationalHerglotz, x):
    """``f(x)``; exact when ``f`` is exact and ``x`` rational."""
    if f.exact and _is_rational(x):
        x = Fraction(x)
        num, den = f.fraction
        d = P.evaluate(den, x)
        if d == 0:
            raise PoleEvaluationError(f"x={x} is a pole")
        return P.evaluate(num, x) / d
    x = float(x)
    poles = f.poles
    scale = max([1.0, abs(x)] + [abs(g) for g in poles])
    for g in poles:
        if abs(g - x) <= 4 * _EPS * scale:
            raise PoleEvaluationError(f"x={x} is a pole")
    total = float(f.alpha) + float(f.slope) * x
    for g, n in zip(poles, f.residues):
        total += n / (g - x)
    return total


def derivative_at(f: RationalHerglotz, x: float) -> float:
    return float(f.slope) + sum(n / (g - x) ** 2 for g, n in zip(f.poles, f.residues))


def moments(f: RationalHerglotz, orders: Sequence[int] = (-1, 0, 1)) -> dict:
    """``s_n = sum(nu_k * gamma_k**n)``; exact for exact functions."""
    out = {}
    if f.exact and not f.has_exact_poles:
        num, den = f.fraction
        rem = P.sub(num, P.mul((f.alpha, f.slope), den))
        pos = [n for n in orders if n >= 0]
        if pos:
            K = max(pos) + 1
            quot = P.divmod_poly(P.shift(rem, K), den)[0]
            quot = tuple(quot) + (Fraction(0),) * (K + 1 - len(quot))
            for n in pos:
                out[n] = -quot[K - n - 1]
        for n in orders:
            if n < 0:
                if n != -1:
                    raise DomainError("only s_-1 is supported among negative orders")
                d0 = P.evaluate(den, 0)
                if d0 == 0:
                    raise DomainError("pole at zero: s_-1 undefined")
                out[n] = P.evaluate(rem, 0) / d0
        return out
    for n in orders:
        if n < 0 and any(g == 0 for g in f.poles):
            raise DomainError("pole at zero: negative moment undefined")
        out[n] = sum(r * g ** n for g, r in zip(f.poles, f.residues)) if f.poles else 0
    return out


# --- level sets ----------------------------------------------------------

@dataclass(frozen=True)
class LevelRoots:
    """Solutions of ``f(x) = level``.

    ``offsets[k] = gamma_k - chi_k`` pairs each root with the pole on the
    side given by ``side``; ``distances[k][j] = gamma_j - chi_k`` covers all
    poles.  Both are computed from pole-anchored offsets, without
    cancellation.
    """
    level: float
    roots: tuple
    side: Optional[str]
    offsets: Optional[tuple] = None
    distances: Optional[tuple] = None


@dataclass(frozen=True)
class _Root:
    x: float
    anchor: Optional[int]
    delta: float


def _newton_bracketed(g, dg, lo, hi, x0):
    """Root of increasing ``g`` in (lo, hi) with g(lo) < 0 < g(hi) (ends may
    be open poles).  Newton steps, bisection when a step leaves the bracket
    or stalls."""
    x = x0
    last_width = hi - lo
    for _ in range(400):
        gx = g(x)
        if gx == 0.0:
            return x
        if gx < 0:
            lo = x
        else:
            hi = x
        d = dg(x)
        xn = x - gx / d if d > 0 and math.isfinite(d) else 0.5 * (lo + hi)
        if not (lo < xn < hi):
            xn = 0.5 * (lo + hi)
        elif hi - lo > 0.5 * last_width and abs(xn - x) > 0.25 * (hi - lo):
            # slow progress: bisect instead
            xn = 0.5 * (lo + hi)
        last_width = hi - lo
        if abs(xn - x) <= 2 * _EPS * abs(xn) or xn == x:
            return xn
        if hi - lo <= 2 * _EPS * max(abs(lo), abs(hi)):
            return xn
        x = xn
    raise ConvergenceError("level root iteration did not converge")


def _solve_level(f: RationalHerglotz, level, *, interior_only=False) -> list[_Root]:
    if f.signed:
        raise DomainError("level sets need a Herglotz function (positive residues)")
    poles = [float(g) for g in f.poles]
    res = [float(n) for n in f.residues]
    alpha, beta, C = float(f.alpha), float(f.slope), float(level)
    n = len(poles)
    if n == 0:
        if beta > 0:
            return [_Root((C - alpha) / beta, None, (C - alpha) / beta)]
        return []

    def make(anchor_idx):
        a = poles[anchor_idx]
        d = [g - a for g in poles]
        d[anchor_idx] = 0.0
        base = alpha + beta * a - C

        def g(delta):
            s = base + beta * delta
            for dj, nu in zip(d, res):
                s += nu / (dj - delta)
            return s

        def dg(delta):
            s = beta
            for dj, nu in zip(d, res):
                s += nu / (dj - delta) ** 2
            return s
        return g, dg

    roots: list[_Root] = []
    left_ok = beta > 0 or C > alpha
    right_ok = beta > 0 or C < alpha
    if interior_only:
        left_ok = right_ok = False

    if left_ok:
        g, dg = make(0)
        step = max(1.0, abs(poles[0]))
        lo = -step
        while g(lo) >= 0:
            lo *= 2
            if not math.isfinite(lo):
                raise ConvergenceError("no lower bracket")
        delta = _newton_bracketed(g, dg, lo, 0.0, 0.5 * lo)
        roots.append(_Root(poles[0] + delta, 0, delta))

    for k in range(n - 1):
        width = poles[k + 1] - poles[k]
        g, dg = make(k)
        if g(0.5 * width) > 0:
            delta = _newton_bracketed(g, dg, 0.0, 0.5 * width, 0.25 * width)
            roots.append(_Root(poles[k] + delta, k, delta))
        else:
            g, dg = make(k + 1)
            delta = _newton_bracketed(g, dg, -0.5 * width, 0.0, -0.25 * width)
            roots.append(_Root(poles[k + 1] + delta, k + 1, delta))

    if right_ok:
        g, dg = make(n - 1)
        step = max(1.0, abs(poles[-1]))
        hi = step
        while g(hi) <= 0:
            hi *= 2
            if not math.isfinite(hi):
                raise ConvergenceError("no upper bracket")
        delta = _newton_bracketed(g, dg, 0.0, hi, 0.5 * hi)
        roots.append(_Root(poles[-1] + delta, n - 1, delta))
    return roots


def _pair_offsets(poles, roots: list[_Root], side) -> tuple:
    """``gamma_k - chi_k`` with chi_k paired to gamma_k by interlacing side."""
    out = []
    for k, r in enumerate(roots):
        if r.anchor == k:
            out.append(-r.delta)
        else:
            out.append((poles[k] - poles[r.anchor]) - r.delta)
    return tuple(out)


def level_roots(f: RationalHerglotz, level) -> LevelRoots:
    """All real solutions of ``f(x) = level``, ascending.

    Without a slope term there are N roots interlacing the N poles: below
    each pole when ``level > alpha``, above each pole when ``level < alpha``.
    With a positive slope there are N + 1 roots.
    """
    if f.n_poles == 0 and float(f.slope) == 0:
        raise LevelEqualsAlphaError("constant function has no level roots") \
            if level == f.alpha else DomainError("constant function has no level roots")
    if f.slope == 0 and level == f.alpha:
        raise LevelEqualsAlphaError("level equals alpha; one root escapes to infinity")
    roots = _solve_level(f, level)
    poles = [float(g) for g in f.poles]
    distances = tuple(
        tuple(((g - poles[r.anchor]) if j != r.anchor else 0.0) - r.delta
              if r.anchor is not None else g - r.x
              for j, g in enumerate(poles))
        for r in roots)
    if f.slope != 0:
        return LevelRoots(float(level), tuple(r.x for r in roots), None, None, distances)
    side = BELOW_POLES if level > f.alpha else ABOVE_POLES
    return LevelRoots(float(level), tuple(r.x for r in roots), side,
                      _pair_offsets(poles, roots, side), distances)


# --- transforms ----------------------------------------------------------

def negate_invert(f: RationalHerglotz) -> RationalHerglotz:
    """Pole/residue form of ``-1/f``.

    Poles of the result are the zeros of ``f`` (a level set at 0); each
    residue is ``1/f'(zero)``.
    """
    if f.exact:
        num, den = f.fraction
        if not num:
            raise ZeroFunctionError("-1/f of the zero function")
        return RationalHerglotz.from_fraction(P.scale(den, -1), num, signed=f.signed)
    if f.signed:
        num, den = (P.to_fraction(c) for c in f.fraction)
        if not num:
            raise ZeroFunctionError("-1/f of the zero function")
        return RationalHerglotz.from_fraction(P.scale(den, -1), num, signed=True).to_float()
    alpha, beta = float(f.alpha), float(f.slope)
    n = f.n_poles
    if n == 0:
        if beta > 0:
            return RationalHerglotz(0.0, [-alpha / beta], [1.0 / beta])
        if alpha == 0:
            raise ZeroFunctionError("-1/f of the zero function")
        return RationalHerglotz(-1.0 / alpha)
    zeros = _solve_level(f, 0.0, interior_only=(beta == 0 and alpha == 0))
    poles, res = f.poles, f.residues
    new_res = []
    for z in zeros:
        if z.anchor is None:
            d = beta
        else:
            a = poles[z.anchor]
            d = beta + sum(nu / ((g - a if j != z.anchor else 0.0) - z.delta) ** 2
                           for j, (g, nu) in enumerate(zip(poles, res)))
        new_res.append(1.0 / d)
    new_poles = [z.x for z in zeros]
    if beta > 0:
        return RationalHerglotz(0.0, new_poles, new_res)
    if alpha != 0:
        return RationalHerglotz(-1.0 / alpha, new_poles, new_res)
    s = moments(f, (0, 1))
    return RationalHerglotz(-s[1] / s[0] ** 2, new_poles, new_res, 1.0 / s[0])


def mobius_shift_invert(f: RationalHerglotz, s) -> RationalHerglotz:
    """``-1/(f - s)``; its poles are the level set ``f = s``."""
    return negate_invert(f.shifted(-s))


def flip_parameter(f: RationalHerglotz) -> RationalHerglotz:
    """Rewrite ``f`` in the variable ``x' = -1/x``.

    Poles map to ``-1/gamma``, residues to ``nu/gamma**2`` and the constant
    to ``f(0)``.  A slope term becomes a pole at 0.  The map is an
    involution.
    """
    if f.exact:
        num, den = f.fraction
        if P.evaluate(den, 0) == 0:
            raise DomainError("pole at zero")
        d = max(P.degree(num), P.degree(den))
        return RationalHerglotz.from_fraction(_flip_poly(num, d), _flip_poly(den, d),
                                              signed=f.signed)
    poles, res = f.poles, f.residues
    if any(g == 0 for g in poles):
        raise DomainError("pole at zero")
    alpha = float(f.alpha) + sum(n / g for g, n in zip(poles, res))
    pairs = [(-1.0 / g, n / g ** 2) for g, n in zip(poles, res)]
    if f.slope:
        pairs.append((0.0, float(f.slope)))
    pairs.sort()
    return RationalHerglotz(alpha, [p for p, _ in pairs], [r for _, r in pairs],
                            signed=f.signed)


def _flip_poly(p, d):
    """``x**d * p(-1/x)``."""
    out = [Fraction(0)] * (d + 1)
    for i, c in enumerate(p):
        out[d - i] = c * (-1) ** i
    return P.trim(out)


# --- identities ----------------------------------------------------------

@dataclass(frozen=True)
class BooleReport:
    level: object
    first: tuple
    second: tuple
    product: Optional[tuple]

    def residuals(self) -> dict:
        out = {}
        for name in ("first", "second", "product"):
            pair = getattr(self, name)
            if pair is None:
                continue
            lhs, rhs = pair
            out[name] = abs(lhs - rhs) / max(abs(rhs), abs(lhs), 1e-300)
        return out


def boole_identities(f: RationalHerglotz, C) -> BooleReport:
    """Both sides of the three level-set identities for ``Y = f - alpha``
    at level ``c = C - alpha``:

    * ``c * sum(gamma - chi) = s0``
    * ``c**2 * sum(gamma**2 - chi**2) = 2*s1*c - s0**2``
    * ``prod(gamma / chi) = c / (c - s_-1)``

    The product identity is reported only when no pole or root is zero
    (otherwise ``product`` is None).  Exact functions with rational ``C``
    are checked exactly through symmetric functions of the roots.
    """
    if f.slope != 0:
        raise DomainError("identities need a function without slope")
    if f.n_poles == 0:
        z = Fraction(0) if f.exact else 0.0
        return BooleReport(C - f.alpha if f.exact else float(C) - float(f.alpha),
                           (z, z), (z, z), None)
    if f.exact and _is_rational(C):
        return _boole_exact(f, Fraction(C))
    c = float(C) - float(f.alpha)
    if c == 0:
        raise DomainError("identities need C != alpha")
    lr = level_roots(f.to_float() if f.exact else f, C)
    poles = [float(g) for g in f.poles]
    off = lr.offsets
    m = moments(f.to_float() if f.exact else f, (0, 1))
    s0, s1 = m[0], m[1]
    first = (c * math.fsum(off), s0)
    second = (c * c * math.fsum(o * (2 * g - o) for g, o in zip(poles, off)),
              2 * s1 * c - s0 * s0)
    product = None
    if all(g != 0 for g in poles) and all(x != 0 for x in lr.roots):
        sm1 = sum(n / g for g, n in zip(poles, f.residues))
        if c != sm1:
            prod = 1.0
            for g, o in zip(poles, off):
                prod /= (1.0 - o / g)
            product = (prod, c / (c - sm1))
    return BooleReport(c, first, second, product)


def _boole_exact(f: RationalHerglotz, C: Fraction) -> BooleReport:
    num, den = f.fraction
    c = C - f.alpha
    if c == 0:
        raise DomainError("identities need C != alpha")
    N = P.degree(den)
    T = P.sub(num, P.scale(den, C))  # zeros are the level roots
    m = moments(f, (-1, 0, 1)) if P.evaluate(den, 0) != 0 else moments(f, (0, 1))
    s0, s1 = m[0], m[1]
    pg1, pg2 = P.newton_power_sums(den, 2)
    px1, px2 = P.newton_power_sums(T, 2)
    first = (c * (pg1 - px1), s0)
    second = (c * c * (pg2 - px2), 2 * s1 * c - s0 * s0)
    product = None
    if -1 in m and T[0] != 0 and c != m[-1]:
        # prod(roots) = (-1)^N a_0 / a_N
        prod_g = (-1) ** N * den[0] / den[-1]
        prod_x = (-1) ** N * T[0] / T[-1]
        product = (prod_g / prod_x, c / (c - m[-1]))
    return BooleReport(c, first, second, product)


@dataclass(frozen=True)
class NYDiagnostics:
    ks_sum: float
    ny_sum: Optional[float]


def ny_diagnostics(f: RationalHerglotz, C) -> NYDiagnostics:
    """Finite-N versions of the summability quantities attached to level
    roots: ``sum|gamma - chi|`` and ``sum(gamma/chi - 1)`` (level above
    alpha) or ``sum(chi/gamma - 1)`` (level below alpha).  ``ny_sum`` is None
    unless all poles and roots are positive."""
    if f.n_poles == 0:
        return NYDiagnostics(0.0, 0.0)
    ff = f.to_float() if f.exact else f
    lr = level_roots(ff, C)
    poles = ff.poles
    ks = math.fsum(abs(o) for o in lr.offsets)
    ny = None
    if all(g > 0 for g in poles) and all(x > 0 for x in lr.roots):
        if lr.side == BELOW_POLES:
            ny = math.fsum(o / x for o, x in zip(lr.offsets, lr.roots))
        else:
            ny = math.fsum(-o / g for o, g in zip(lr.offsets, poles))
    return NYDiagnostics(ks, ny)
