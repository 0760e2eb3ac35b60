"""Just enough numerical distribution theory for delta-well work.

A distribution here is a piecewise-smooth regular part plus finitely
many delta atoms (1D points, or the origin point and circle layers in
2D).  Brackets against compactly supported bump test functions are
evaluated by quadrature for the regular part and by sifting for the
atoms; a circle layer is the uniform line measure on its circle, so
the unit layer at radius R integrates a constant c to 2*pi*R*c.

Distributional derivatives are produced by jump extraction: the atom
weight at a breakpoint is the jump of the first (radial) derivative,
taken from the pieces' analytic derivatives and cross-checked against
one-sided finite differences.  Value-discontinuous inputs are
rejected; dipole atoms are out of scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .quadrature import integrate_finite, integrate_radial2d

# mass of exp(-1/(1-u^2)) over [-1, 1]; pinned at high precision and
# re-derived by quadrature in the test suite
BUMP_MASS_1D = 0.4439938161680794378230489

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)

def _profile(u):
    """The canonical bump profile exp(-1/(1-u^2)) on |u| < 1, else 0."""
    if u * u >= 1.0:
        return 0.0
    return math.exp(-1.0 / (1.0 - u * u))


def _profile_d1(u):
    if u * u >= 1.0:
        return 0.0
    w = 1.0 - u * u
    return -2.0 * u / (w * w) * math.exp(-1.0 / w)


def _profile_d2(u):
    if u * u >= 1.0:
        return 0.0
    w = 1.0 - u * u
    c1 = -2.0 * u / (w * w)
    c1p = -2.0 / (w * w) - 8.0 * u * u / (w * w * w)
    return (c1 * c1 + c1p) * math.exp(-1.0 / w)




@dataclass(frozen=True)
class BumpTestFunction:
    """Scaled translate of the canonical bump, with analytic derivatives.

    center is a scalar (1D) or a length-2 point (2D); the function is
    amplitude * exp(-1/(1 - |x-center|^2/radius^2)) inside the ball of
    the given radius and identically zero outside.
    """

    center: tuple
    radius: float
    amplitude: float = 1.0

    def __post_init__(self):
        c = self.center
        if isinstance(c, (int, float)):
            c = (float(c),)
        else:
            c = tuple(float(v) for v in c)
        if len(c) not in (1, 2):
            raise ValueError("center must be 1D or 2D, got %r" % (self.center,))
        object.__setattr__(self, "center", c)
        if not self.radius > 0.0:
            raise ValueError("radius must be positive")

    @property
    def dim(self):
        return len(self.center)

    def _offset(self, x):
        if self.dim == 1:
            if isinstance(x, (tuple, list)):
                (x,) = x
            return (float(x) - self.center[0],)
        px, py = x
        return (float(px) - self.center[0], float(py) - self.center[1])

    def value(self, x):
        d = self._offset(x)
        u = math.hypot(*d) / self.radius
        return self.amplitude * _profile(u)

    def gradient(self, x):
        d = self._offset(x)
        s = math.hypot(*d)
        if s == 0.0:
            return 0.0 if self.dim == 1 else (0.0, 0.0)
        u = s / self.radius
        scale = self.amplitude * _profile_d1(u) / (self.radius * s)
        if self.dim == 1:
            return scale * d[0]
        return (scale * d[0], scale * d[1])

    def laplacian(self, x):
        d = self._offset(x)
        s = math.hypot(*d)
        u = s / self.radius
        r2 = self.radius * self.radius
        if self.dim == 1:
            return self.amplitude * _profile_d2(u) / r2
        if u < 1e-12:
            return self.amplitude * 2.0 * _profile_d2(0.0) / r2
        return self.amplitude * (_profile_d2(u) + _profile_d1(u) / u) / r2

    def support(self):
        """(lo, hi) in 1D; (r_lo, r_hi) of the enclosing annulus in 2D."""
        if self.dim == 1:
            return (self.center[0] - self.radius, self.center[0] + self.radius)
        rc = math.hypot(*self.center)
        return (max(0.0, rc - self.radius), rc + self.radius)


@dataclass(frozen=True)
class SmoothPiece:
    """One smooth piece on [lo, hi] with optional analytic derivatives."""

    lo: float
    hi: float
    value: Callable[[float], float]
    deriv: Optional[Callable[[float], float]] = None
    second: Optional[Callable[[float], float]] = None

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("piece needs lo < hi")


def _validate_partition(pieces, lo, hi):
    if not pieces:
        raise ValueError("need at least one piece")
    if pieces[0].lo != lo or pieces[-1].hi != hi:
        raise ValueError("pieces must cover [%g, %g]" % (lo, hi))
    for left, right in zip(pieces, pieces[1:]):
        if left.hi != right.lo:
            raise ValueError("pieces must be contiguous")


def _piece_at(pieces, x, side=1):
    # side < 0 resolves a breakpoint to the piece on its left
    for p in pieces:
        if p.lo < x < p.hi:
            return p
        if x == p.lo and side > 0:
            return p
        if x == p.hi and side < 0:
            return p
    if x <= pieces[0].lo:
        return pieces[0]
    return pieces[-1]


class _PiecewiseBase:
    def breakpoints(self):
        return tuple(p.hi for p in self.pieces[:-1])

    def value(self, x, side=1):
        return _piece_at(self.pieces, x, side).value(x)

    def deriv(self, x, side=1):
        p = _piece_at(self.pieces, x, side)
        if p.deriv is None:
            raise ValueError("piece has no analytic derivative")
        return p.deriv(x)

    def second(self, x, side=1):
        p = _piece_at(self.pieces, x, side)
        if p.second is None:
            raise ValueError("piece has no analytic second derivative")
        return p.second(x)


@dataclass(frozen=True)
class Piecewise1D(_PiecewiseBase):
    """Piecewise-smooth function partitioning the whole real line."""

    pieces: tuple

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        _validate_partition(self.pieces, -math.inf, math.inf)


@dataclass(frozen=True)
class RadialPiecewise(_PiecewiseBase):
    """Piecewise-smooth radial profile partitioning [0, inf)."""

    pieces: tuple

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        _validate_partition(self.pieces, 0.0, math.inf)
        for bp in self.breakpoints():
            if bp <= 0.0:
                raise ValueError("radial breakpoints must be positive")


POINT = "point"
CIRCLE = "circle"


@dataclass(frozen=True)
class DeltaAtom:
    """weight * delta at a 1D point / the 2D origin, or a circle layer.

    Circle layers follow the line-measure convention: the unit layer at
    radius R has total mass 2*pi*R.
    """

    kind: str
    weight: float
    location: float = 0.0

    def __post_init__(self):
        if self.kind not in (POINT, CIRCLE):
            raise ValueError("kind must be %r or %r" % (POINT, CIRCLE))
        if self.kind == CIRCLE and not self.location > 0.0:
            raise ValueError("circle layer needs positive radius")


@dataclass(frozen=True)
class DistributionSum:
    """Regular piecewise part plus delta atoms, in dimension 1 or 2."""

    dim: int
    regular: object  # Piecewise1D, RadialPiecewise, or None
    atoms: tuple = ()

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ValueError("dim must be 1 or 2")
        object.__setattr__(self, "atoms", tuple(self.atoms))
        if self.regular is not None:
            want = Piecewise1D if self.dim == 1 else RadialPiecewise
            if not isinstance(self.regular, want):
                raise ValueError("regular part must be %s" % want.__name__)
        seen = set()
        for atom in self.atoms:
            if self.dim == 1 and atom.kind == CIRCLE:
                raise ValueError("circle layers are 2D only")
            if self.dim == 2 and atom.kind == POINT and atom.location != 0.0:
                raise ValueError("2D point atoms sit at the origin")
            key = (atom.kind, atom.location)
            if key in seen:
                raise ValueError("duplicate atom at %r" % (key,))
            seen.add(key)


# --- jump extraction ------------------------------------------------------

_STENCIL = (-25.0, 48.0, -36.0, 16.0, -3.0)


def _one_sided_slope(value, x0, h, sign):
    """4th-order one-sided derivative at x0 using offsets {1,2,3,4}*h."""
    acc = _STENCIL[0] * value(x0)
    for j in range(1, 5):
        acc += _STENCIL[j] * value(x0 + sign * j * h)
    return sign * acc / (12.0 * h)


def derivative_jump_fd(value, x0, scale):
    """Finite-difference estimate of f'(x0+) - f'(x0-) for continuous f."""
    h = 1e-3 * scale
    right = _one_sided_slope(value, x0, h, +1.0)
    left = _one_sided_slope(value, x0, h, -1.0)
    return right - left


def _checked_jump(f, bp, scale, where):
    left = f.deriv(bp, side=-1)
    right = f.deriv(bp, side=+1)
    jump = right - left
    fd = derivative_jump_fd(f.value, bp, scale)
    ref = max(1.0, abs(jump))
    if abs(fd - jump) > 1e-6 * ref:
        raise ValueError(
            "analytic jump %.12g and finite-difference jump %.12g disagree "
            "at %s" % (jump, fd, where)
        )
    return jump


def _check_continuity(f, bp, where):
    lo = f.value(bp, side=-1)
    hi = f.value(bp, side=+1)
    if abs(hi - lo) > 1e-8 * max(1.0, abs(lo), abs(hi)):
        raise ValueError(
            "value jump %g at %s: discontinuous inputs would need dipole "
            "atoms, which are unsupported" % (hi - lo, where)
        )


def distributional_second_derivative_1d(f: Piecewise1D, fd_scale=None) -> DistributionSum:
    """Second derivative of a continuous piecewise-smooth f on R.

    The regular part is the classical f'' off the breakpoints; each
    breakpoint contributes a point atom weighted by the derivative jump
    there.  Atoms with zero jump are dropped.  fd_scale sets the step
    of the finite-difference cross-check and should match the length
    scale on which f varies (default: max(1, |breakpoint|)).
    """
    atoms = []
    for bp in f.breakpoints():
        _check_continuity(f, bp, "x = %g" % bp)
        scale = fd_scale if fd_scale is not None else max(1.0, abs(bp))
        jump = _checked_jump(f, bp, scale, "x = %g" % bp)
        slope_scale = max(1.0, abs(f.deriv(bp, side=-1)), abs(f.deriv(bp, side=+1)))
        if abs(jump) > 1e-12 * slope_scale:
            atoms.append(DeltaAtom(POINT, jump, bp))
    regular = Piecewise1D(tuple(
        SmoothPiece(p.lo, p.hi, p.second) for p in f.pieces
    ))
    return DistributionSum(1, regular, tuple(atoms))


def distributional_laplacian_radial(f: RadialPiecewise, dim=2) -> DistributionSum:
    """Distributional Laplacian of a continuous radial profile in 2D.

    Off the breakpoints this is f'' + f'/r; each breakpoint R becomes a
    circle layer whose weight is the radial-derivative jump at R.
    """
    if dim != 2:
        raise ValueError("only the 2D radial Laplacian is supported")
    atoms = []
    for bp in f.breakpoints():
        _check_continuity(f, bp, "r = %g" % bp)
        jump = _checked_jump(f, bp, bp, "r = %g" % bp)
        slope_scale = max(1.0, abs(f.deriv(bp, side=-1)), abs(f.deriv(bp, side=+1)))
        if abs(jump) > 1e-12 * slope_scale:
            atoms.append(DeltaAtom(CIRCLE, jump, bp))

    def lap_piece(p):
        def lap(r, _p=p):
            if r <= 0.0:
                return 2.0 * _p.second(0.0)
            return _p.second(r) + _p.deriv(r) / r
        return lap

    regular = RadialPiecewise(tuple(
        SmoothPiece(p.lo, p.hi, lap_piece(p)) for p in f.pieces
    ))
    return DistributionSum(2, regular, tuple(atoms))


# --- brackets -------------------------------------------------------------

def ring_average(fn, r, tol=1e-11):
    """Average of a 2D scalar function over the circle of radius r.

    Adaptive in the angle: a fixed trapezoid rule would lose digits
    whenever fn has compact angular support on the ring.
    """
    result = integrate_finite(
        lambda t: fn((r * math.cos(t), r * math.sin(t))),
        0.0, 2.0 * math.pi, tol,
    )
    return result.value / (2.0 * math.pi)


def _arc_halfwidth(r, dc, rho):
    # half-width of the angular window in which the origin-centred ring
    # of radius r meets the closed disc of radius rho centred at
    # distance dc; dc > 0
    arg = (r * r + dc * dc - rho * rho) / (2.0 * r * dc)
    if arg >= 1.0:
        return 0.0
    if arg <= -1.0:
        return math.pi
    return math.acos(arg)


def _bump_ring_average(phi, r, tol=1e-13):
    cx, cy = phi.center
    dc = math.hypot(cx, cy)
    if r == 0.0:
        return phi.value((0.0, 0.0))
    if dc == 0.0:
        return phi.value((r, 0.0))
    half = _arc_halfwidth(r, dc, phi.radius)
    if half == 0.0:
        return 0.0
    inv_rho = 1.0 / phi.radius

    def along(t):
        d = math.sqrt(r * r + dc * dc - 2.0 * r * dc * math.cos(t))
        return _profile(d * inv_rho)

    window = integrate_finite(along, 0.0, half, tol).value
    return phi.amplitude * window / math.pi


def _circle_integral(phi, radius):
    # integral of phi over the circle with respect to arc length
    if phi.center == (0.0, 0.0):
        return 2.0 * math.pi * radius * phi.value((radius, 0.0))
    return 2.0 * math.pi * radius * _bump_ring_average(phi, radius)


def bracket(T: DistributionSum, phi: BumpTestFunction, tol=1e-10) -> float:
    """Schwartz bracket <T, phi> by quadrature plus atom sifting."""
    if T.dim != phi.dim:
        raise ValueError("dimension mismatch: T is %dD, phi is %dD"
                         % (T.dim, phi.dim))
    total = 0.0
    if T.regular is not None:
        lo, hi = phi.support()
        if hi > lo:
            bps = [b for b in T.regular.breakpoints() if lo < b < hi]
            if T.dim == 1:
                total += integrate_finite(
                    lambda x: T.regular.value(x) * phi.value(x),
                    lo, hi, tol, breakpoints=bps,
                ).value
            else:
                centred = phi.center == (0.0, 0.0)

                def integrand(r):
                    avg = (phi.value((r, 0.0)) if centred
                           else _bump_ring_average(phi, r))
                    return T.regular.value(r) * avg * 2.0 * math.pi * r

                lo = max(lo, 0.0)
                total += integrate_finite(integrand, lo, hi, tol,
                                          breakpoints=bps).value
    for atom in T.atoms:
        if atom.kind == POINT:
            at = atom.location if T.dim == 1 else (0.0, 0.0)
            total += atom.weight * phi.value(at)
        else:
            total += atom.weight * _circle_integral(phi, atom.location)
    return total


# --- mollifier sequence ---------------------------------------------------

def _mollified_truncation(psi, n, eps):
    """psi cut off at radius n, convolved with a width-eps 1D mollifier.

    The radial profile is extended evenly to the line, truncated,
    convolved, and read back at r >= 0; for even profiles this is the
    smooth approximation the density argument needs.
    """
    kink_list = [0.0, float(n), -float(n)]
    for bp in psi.breakpoints():
        kink_list += [bp, -bp]
    kinks = sorted(kink_list)

    def truncated(s):
        a = abs(s)
        return psi.value(a) if a <= n else 0.0

    def phi_n(r):
        lo, hi = r - eps, r + eps
        cuts = [lo] + [k for k in kinks if lo < k < hi] + [hi]
        acc = 0.0
        for a, b in zip(cuts, cuts[1:]):
            mid = 0.5 * (a + b)
            half = 0.5 * (b - a)
            for t, w in zip(_GL_NODES, _GL_WEIGHTS):
                s = mid + half * t
                u = (r - s) / eps
                acc += w * half * _profile(u) * truncated(s)
        return acc / (eps * BUMP_MASS_1D)

    return phi_n


def mollifier_sequence_check(psi: RadialPiecewise, n_values, tol=1e-6):
    """L2(R^2) distances between psi and its mollified truncations.

    For each n the comparison function is psi cut at radius n and
    convolved with a mollifier of width 1/n.  Callers assert that the
    returned distances decrease toward zero.
    """
    distances = []
    for n in n_values:
        if not n > 0:
            raise ValueError("n values must be positive")
        eps = 1.0 / float(n)
        phi_n = _mollified_truncation(psi, float(n), eps)
        bps = set(psi.breakpoints())
        bps.update((float(n) - eps, float(n), float(n) + eps))

        def diff_sq(r, _phi_n=phi_n):
            d = _phi_n(r) - psi.value(r)
            return d * d

        dist2 = integrate_radial2d(diff_sq, sorted(bps), tol).value
        distances.append(math.sqrt(max(dist2, 0.0)))
    return distances


# --- fundamental solution -------------------------------------------------

def fundamental_solution_check(b, phi: BumpTestFunction, tol=1e-8):
    """Bracket of (1/(2*pi)) K0(b|x|) with (-laplacian + b^2) phi.

    Returns a number that the fundamental-solution property says equals
    phi(0); the 1/(2*pi) normalization is fixed by exactly this check.
    """
    from .bessel import bessel_k

    if not b > 0.0:
        raise ValueError("b must be positive")
    if phi.dim != 2:
        raise ValueError("fundamental solution check is 2D")
    centred = phi.center == (0.0, 0.0)

    def source_avg(r):
        if centred:
            return -phi.laplacian((r, 0.0)) + b * b * phi.value((r, 0.0))
        return ring_average(
            lambda x: -phi.laplacian(x) + b * b * phi.value(x), r,
            tol=tol * 1e-3,
        )

    lo, hi = phi.support()
    lo = max(lo, 0.0)
    if hi <= lo:
        return 0.0

    def integrand(r):
        # below the kernel's domain floor the r dr measure kills the
        # log singularity; the truncation error is ~1e-15 * |phi|
        if b * r < 1e-8:
            return 0.0
        return bessel_k(0, b * r) * source_avg(r) * r

    return integrate_finite(integrand, lo, hi, tol).value
