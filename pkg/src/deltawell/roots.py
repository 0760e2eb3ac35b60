"""Bracketed scalar root finding, the I0 = K0 crossing, and pole location.

find_root is Brent's method: inverse-quadratic or secant steps guarded
by bisection, so convergence is guaranteed for any continuous function
with a sign change.  crossing_u0 wraps it for the equation
I0(r) = K0(r), first asserting uniqueness by a monotonicity scan of
the difference.  pole_scan localizes the single sign change of a
resolvent denominator on a grid before polishing it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bessel

_EPS = 2.220446049250313e-16
_MAX_ITER = 200


@dataclass(frozen=True)
class Bracket:
    """An interval [lo, hi] whose endpoint values straddle zero."""

    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("bracket needs lo < hi")
        if not (self.f_lo * self.f_hi < 0.0
                or self.f_lo == 0.0 or self.f_hi == 0.0):
            raise ValueError(
                "no sign change on [%g, %g]: f values %g, %g"
                % (self.lo, self.hi, self.f_lo, self.f_hi)
            )

    @classmethod
    def from_function(cls, f, lo, hi):
        return cls(lo, hi, f(lo), f(hi))


def find_root(f, bracket, tol):
    """Brent root polish inside a valid bracket, to bracket width tol."""
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    a, fa = bracket.lo, bracket.f_lo
    b, fb = bracket.hi, bracket.f_hi
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    c, fc = a, fa
    d = e = b - a
    for _ in range(_MAX_ITER):
        if (fb > 0.0) == (fc > 0.0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2.0 * _EPS * abs(b) + 0.5 * tol
        xm = 0.5 * (c - b)
        if abs(xm) <= tol1 or fb == 0.0:
            return b
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * xm * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0.0:
                q = -q
            p = abs(p)
            if 2.0 * p < min(3.0 * xm * q - abs(tol1 * q), abs(e * q)):
                e = d
                d = p / q
            else:
                d = e = xm
        else:
            d = e = xm
        a, fa = b, fb
        b += d if abs(d) > tol1 else math.copysign(tol1, xm)
        fb = f(b)
    raise RuntimeError("find_root failed to converge in %d iterations"
                       % _MAX_ITER)


_SCAN_POINTS = 1000
_scan_passed = False


def _uniqueness_scan():
    """Assert I0 - K0 is strictly increasing with one sign change.

    Runs once per process on a 1000-point grid over (0.01, 10]; turns
    the uniqueness argument for the crossing into an executable check.
    """
    global _scan_passed
    if _scan_passed:
        return
    grid = np.linspace(0.01, 10.0, _SCAN_POINTS)
    diff = bessel._i0_grid(grid) - bessel._k0_grid(grid)
    if not np.all(np.diff(diff) > 0.0):
        raise RuntimeError("I0 - K0 is not strictly increasing on the scan grid")
    crossings = np.count_nonzero(np.diff(diff > 0.0))
    if crossings != 1:
        raise RuntimeError(
            "expected one sign change of I0 - K0, scan found %d" % crossings
        )
    _scan_passed = True


def crossing_u0(tol, bracket=(0.1, 1.0)):
    """The unique positive solution of I0(u) = K0(u), near 0.43228."""
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    _uniqueness_scan()

    def f(r):
        return bessel.bessel_i(0, r) - bessel.bessel_k(0, r)

    lo, hi = bracket
    return find_root(f, Bracket.from_function(f, lo, hi), tol)


def pole_scan(denominator, b_range, tol, samples=257):
    """Locate the single zero of a denominator on b_range.

    Scans a uniform grid and rejects the input with diagnostics unless
    exactly one sign change (or exact grid zero) is present, then
    polishes with find_root.
    """
    lo, hi = b_range
    if not lo < hi:
        raise ValueError("b_range needs lo < hi")
    xs = np.linspace(lo, hi, samples)
    fs = [denominator(float(x)) for x in xs]
    exact = [float(xs[i]) for i, v in enumerate(fs) if v == 0.0]
    flips = [i for i in range(samples - 1)
             if fs[i] * fs[i + 1] < 0.0]
    count = len(exact) + len(flips)
    if count != 1:
        spots = exact + [0.5 * (float(xs[i]) + float(xs[i + 1])) for i in flips]
        raise ValueError(
            "pole_scan needs exactly one sign change on [%g, %g]; "
            "found %d near %s" % (lo, hi, count, spots)
        )
    if exact:
        return exact[0]
    i = flips[0]
    br = Bracket(float(xs[i]), float(xs[i + 1]), fs[i], fs[i + 1])
    return find_root(denominator, br, tol)
