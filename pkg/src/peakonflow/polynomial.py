"""Dense univariate polynomials as coefficient tuples, lowest degree first.

The same routines serve exact (``Fraction``/``int``) and floating
coefficients.  Real-root isolation uses Sturm sequences and is exact; it
is only meant for exact input (floats are converted losslessly).
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Sequence

Poly = tuple


def poly(coeffs: Sequence) -> Poly:
    return trim(tuple(coeffs))


def trim(p: Sequence) -> Poly:
    p = tuple(p)
    n = len(p)
    while n > 0 and p[n - 1] == 0:
        n -= 1
    return p[:n]


def degree(p: Poly) -> int:
    """Degree of ``p``; the zero polynomial has degree -1."""
    return len(trim(p)) - 1


def leading(p: Poly):
    p = trim(p)
    if not p:
        raise ZeroDivisionError("zero polynomial has no leading coefficient")
    return p[-1]


def add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = out[i] + c
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return trim(out)


def scale(a: Poly, s) -> Poly:
    return trim(c * s for c in a)


def sub(a: Poly, b: Poly) -> Poly:
    return add(a, scale(b, -1))


def mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] = out[i + j] + ca * cb
    return trim(out)


def shift(a: Poly, k: int) -> Poly:
    """Multiply by ``x**k``."""
    if not trim(a):
        return ()
    return tuple([0] * k) + tuple(a)


def evaluate(p: Poly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Poly) -> Poly:
    return trim(i * c for i, c in enumerate(p) if i > 0)


def divmod_poly(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    a, b = list(trim(a)), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db, lb = len(b) - 1, b[-1]
    if len(a) - 1 < db:
        return (), trim(a)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] / lb if not _is_exact(a[k + db], lb) else Fraction(a[k + db]) / lb
        q[k] = c
        for j, cb in enumerate(b):
            a[k + j] = a[k + j] - c * cb
        a[k + db] = 0
    return trim(q), trim(a[:db])


def _is_exact(*values) -> bool:
    return all(isinstance(v, Rational) for v in values)


def is_exact(p: Poly) -> bool:
    return _is_exact(*p)


def to_fraction(p: Poly) -> Poly:
    return trim(Fraction(c) for c in p)


def to_float(p: Poly) -> Poly:
    return trim(float(c) for c in p)


def monic(p: Poly) -> Poly:
    lc = leading(p)
    if _is_exact(lc):
        lc = Fraction(lc)
    return trim(c / lc for c in p)


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the rationals (primitive integer remainder sequence)."""
    a, b = integer_form(a)[0], integer_form(b)[0]
    a, b = trim(a), trim(b)
    while b:
        a, b = b, _primitive(_pseudo_remainder(a, b)[0])
    return monic(to_fraction(a)) if a else ()


def from_roots(roots: Sequence, lead=1) -> Poly:
    """``lead * prod(x - r)``."""
    p: Poly = (lead,)
    for r in roots:
        p = mul(p, (-r, 1))
    return p


def newton_power_sums(p: Poly, count: int) -> list:
    """Power sums ``sum(r**k)`` over the roots of ``p`` for k = 1..count.

    Computed from the coefficients by Newton's identities, so exact input
    gives exact output even when the roots are irrational.
    """
    p = trim(p)
    n = len(p) - 1
    lc = Fraction(p[-1]) if is_exact(p) else p[-1]
    # e_k with sign: a_{n-k}/a_n = (-1)^k e_k
    e = [1] + [(-1) ** k * p[n - k] / lc for k in range(1, n + 1)]
    sums = []
    for k in range(1, count + 1):
        acc = 0
        for i in range(1, min(k, n + 1)):
            acc += (-1) ** (i - 1) * e[i] * sums[k - i - 1]
        if k <= n:
            acc += (-1) ** (k - 1) * k * e[k]
        sums.append(acc)
    return sums


# --- real root isolation ---------------------------------------------------
#
# Sign evaluations dominate the cost of isolation, so exact polynomials are
# scaled to integer coefficients once and evaluated homogeneously at
# x = n/d, which needs no gcd reductions.

def integer_form(p: Poly) -> tuple[tuple, int]:
    """``(ints, scale)`` with ``p = ints / scale`` and ``scale > 0``."""
    p = to_fraction(p)
    scale = 1
    for c in p:
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    return tuple(int(c * scale) for c in p), scale


def _homogeneous(ints: tuple, n: int, d: int) -> int:
    """``d**deg * p(n/d)`` for integer coefficients."""
    acc = 0
    dpow = 1
    for c in reversed(ints):
        acc = acc * n + c * dpow
        dpow *= d
    return acc


def _hsign(ints: tuple, x: Fraction) -> int:
    return _sign(_homogeneous(ints, x.numerator, x.denominator))


def evaluate_exact(form: tuple[tuple, int], x: Fraction) -> Fraction:
    ints, scale = form
    deg = len(ints) - 1
    return Fraction(_homogeneous(ints, x.numerator, x.denominator),
                    scale * x.denominator ** max(deg, 0))


def _pseudo_remainder(a: tuple, b: tuple) -> tuple[tuple, int]:
    """``lc(b)**k * a mod b`` in integers; returns the remainder and ``k``."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    k = 0
    while len(a) - 1 >= db and a:
        c, off = a[-1], len(a) - 1 - db
        a = [x * lb for x in a]
        for j, cb in enumerate(b):
            a[off + j] -= c * cb
        k += 1
        a = list(trim(a))
    return tuple(a), k


def _primitive(p: tuple) -> tuple:
    """Divide by the positive content."""
    if not p:
        return p
    g = math.gcd(*p)
    return tuple(c // g for c in p)


def _sturm_int(p: tuple) -> list[tuple]:
    seq = [p, trim(i * c for i, c in enumerate(p) if i > 0)]
    while seq[-1] and len(seq[-1]) > 1:
        a, b = seq[-2], seq[-1]
        r, k = _pseudo_remainder(a, b)
        if not r:
            break
        # r = lc(b)**k * rem(a, b); the chain needs -rem up to a positive factor
        sign = -1 if (b[-1] < 0 and k % 2) else 1
        seq.append(tuple(-sign * c for c in _primitive(r)))
    return [q for q in seq if q]


def sturm_sequence(p: Poly) -> list[Poly]:
    """Sturm chain of an exact polynomial (integer-scaled, positive factors
    removed; signs are what matter)."""
    return _sturm_int(integer_form(p)[0])


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(seq: list, x) -> int:
    x = Fraction(x)
    signs = [_hsign(s, x) for s in seq]
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def squarefree_part(p: Poly) -> Poly:
    p = to_fraction(p)
    g = gcd(p, derivative(p))
    if degree(g) <= 0:
        return p
    return divmod_poly(p, g)[0]


def isolate_real_roots(p: Poly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(a, b]`` each holding exactly one distinct real
    root of ``p``; degenerate intervals ``a == b`` mark exact roots."""
    p = to_fraction(p)
    if degree(p) < 1:
        return []
    seq = sturm_sequence(p)
    if len(seq[-1]) > 1:
        # the chain ends in gcd(p, p'): repeated roots, restart squarefree
        p = squarefree_part(p)
        seq = sturm_sequence(p)
    lc = leading(p)
    bound = 1 + max(abs(Fraction(c) / lc) for c in p[:-1])
    bound = Fraction(2) ** max(0, int(bound).bit_length())
    pi = seq[0]
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound, _variations(seq, -bound), _variations(seq, bound))]
    while stack:
        a, b, va, vb = stack.pop()
        count = va - vb
        if count == 0:
            continue
        if count == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        vm = _variations(seq, mid)
        if _hsign(pi, mid) == 0:
            out.append((mid, mid))
            # (a, mid] counts mid itself; shrink to keep disjointness
            eps = (b - a) / 1024
            while _variations(seq, mid - eps) - vm != 1 or _variations(seq, mid + eps) != vm:
                eps /= 2
            stack.append((a, mid - eps, va, _variations(seq, mid - eps)))
            stack.append((mid + eps, b, _variations(seq, mid + eps), vb))
            continue
        stack.append((a, mid, va, vm))
        stack.append((mid, b, vm, vb))
    out.sort()
    return out


def refine_root(p: Poly, a: Fraction, b: Fraction, rel_tol: float = 2.0 ** -60,
                accept=None) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval ``(a, b]`` of a squarefree exact ``p``
    by bisection until it is narrower than ``rel_tol`` relative (and, if
    given, ``accept(a, b)`` holds)."""
    if a == b:
        return a, b
    ints = integer_form(p)[0]
    a, b = Fraction(a), Fraction(b)
    # endpoints as integers over a shared denominator
    den = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
    lo, hi = int(a * den), int(b * den)
    tol = Fraction(rel_tol)
    fa = _sign(_homogeneous(ints, lo, den))
    while True:
        width = hi - lo
        small = (width * tol.denominator <= tol.numerator * max(abs(lo), abs(hi))
                 or width * 2 ** 1074 <= den)
        if small and (accept is None or accept(Fraction(lo, den), Fraction(hi, den))):
            return Fraction(lo, den), Fraction(hi, den)
        lo, hi, den = 2 * lo, 2 * hi, 2 * den
        mid = (lo + hi) // 2
        fm = _sign(_homogeneous(ints, mid, den))
        if fm == 0:
            return Fraction(mid, den), Fraction(mid, den)
        if fm == fa:
            lo = mid
        else:
            hi = mid


def real_roots(p: Poly, rel_tol: float = 2.0 ** -60) -> list[float]:
    """All distinct real roots of an exact polynomial, ascending, as floats.

    Each root is isolated with Sturm sequences and refined by exact
    bisection to ``rel_tol``.
    """
    sq = squarefree_part(p)
    roots = []
    for a, b in isolate_real_roots(sq):
        a, b = refine_root(sq, a, b, rel_tol)
        roots.append(float((a + b) / 2))
    return roots
