"""Acceptance suite: one test and one printed PASS/FAIL line per criterion.

Each criterion is checked at its stated tolerance against the closed
forms and frozen references; nothing here is loosened to make a run
green.  Verdict lines land in the terminal summary via conftest.
"""

import math
import time

import numpy as np
import pytest

from conftest import criterion

from deltawell import bessel, roots, well1d, well2d
from deltawell.distributions import (
    BumpTestFunction,
    Piecewise1D,
    SmoothPiece,
    bracket,
    distributional_second_derivative_1d,
    mollifier_sequence_check,
)
from deltawell.quadrature import integrate_finite, integrate_semiinfinite

_T0 = time.perf_counter()


def test_01_matching_constant_digits_and_speed():
    with criterion("01 matching constant: 7 digits, under 1 ms"):
        u0 = roots.crossing_u0(1e-12)
        assert format(u0, ".7g") == "0.4322837"
        cold = []
        for _ in range(5):
            roots._scan_passed = False
            t0 = time.perf_counter()
            roots.crossing_u0(1e-12)
            cold.append(time.perf_counter() - t0)
        warm = []
        for _ in range(100):
            t0 = time.perf_counter()
            roots.crossing_u0(1e-12)
            warm.append(time.perf_counter() - t0)
        assert min(cold) < 1e-3
        assert min(warm) < 1e-3


def test_02_1d_five_estimators_on_parameter_grid():
    with criterion("02 1d estimators on 27-point grid: 1e-8, under 5 s"):
        t0 = time.perf_counter()
        for hbar in (0.5, 1.0, 2.0):
            for mass in (0.5, 1.0, 2.0):
                for alpha in (0.5, 1.0, 2.0):
                    p = well1d.Params1D(hbar=hbar, mass=mass, alpha=alpha)
                    exact = -mass * alpha * alpha / (2.0 * hbar * hbar)
                    for er in well1d.all_energy_reports(p):
                        assert abs(er.energy - exact) <= 1e-8 * abs(exact), \
                            er.method
        assert time.perf_counter() - t0 < 5.0


def test_03_2d_normalization_on_parameter_grid():
    with criterion("03 2d normalization, 24 combinations: 1e-8, under 10 s"):
        t0 = time.perf_counter()
        for hbar in (0.5, 2.0):
            for mass in (0.5, 2.0):
                for alpha in (0.5, 2.0):
                    for radius in (0.5, 1.0, 2.0):
                        p = well2d.Params2D(hbar=hbar, mass=mass,
                                            alpha=alpha, R=radius)
                        assert abs(well2d.norm_check(p) - 1.0) <= 1e-8
        assert time.perf_counter() - t0 < 10.0


def test_04_beta_sq_quadrature_identity():
    with criterion("04 beta^2 quadrature identity: 1e-10, under 1 s"):
        t0 = time.perf_counter()
        u0 = well2d.matching_constant()
        b = 1.0
        R = u0 / b
        inner = integrate_finite(
            lambda r: bessel.bessel_i(0, b * r) ** 2 * r, 0.0, R, 1e-14
        ).value
        outer = integrate_semiinfinite(
            lambda r: bessel.bessel_k(0, b * r) ** 2 * r, R, 1e-14
        ).value
        got = 2.0 * math.pi * (inner + outer)
        want = math.pi * R * R * well2d.beta_sq(u0)
        assert abs(got - want) <= 1e-10 * abs(want)
        assert time.perf_counter() - t0 < 1.0


def test_05_helmholtz_residual_over_radii():
    with criterion("05 helmholtz residual at 50 radii: 1e-6"):
        for p in (well2d.Params2D(),
                  well2d.Params2D(hbar=1.3, mass=0.8, alpha=0.7, R=2.0)):
            radii = [r for r in np.linspace(0.05 * p.R, 10.0 * p.R, 50)
                     if abs(r - p.R) > 1.5e-3 * p.R]
            residuals = well2d.helmholtz_residual(p, radii)
            assert max(abs(v) for v in residuals) <= 1e-6


def test_06_continuity_at_matching_circle():
    with criterion("06 continuity at R: 1e-13 relative"):
        for p in (well2d.Params2D(),
                  well2d.Params2D(R=0.5),
                  well2d.Params2D(hbar=2.0, mass=0.5, alpha=3.0, R=4.0)):
            assert well2d.continuity_defect(p) <= 1e-13


def test_07_resolvent_structure():
    with criterion("07 resolvent: G(0)=1 exact, transform 1e-8, pole 1e-10"):
        p = well1d.Params1D()
        assert well1d.greens_g0(p, 2.0) == 1.0
        b = 2.0
        for x in (0.0, 0.15, 0.3, 0.5, 0.8, 1.0, 1.5, 2.0, 2.5, 3.0):
            direct = well1d.greens_function(p, b, x)
            via_hat = well1d.greens_inverse_transform(p, b, x, tol=1e-9)
            assert abs(via_hat - direct) <= 1e-8
        for q in (p, well1d.Params1D(hbar=0.5, mass=2.0, alpha=0.7)):
            expected = q.mass * q.alpha / (q.hbar * q.hbar)
            got = well1d.energy_resolvent_pole(q).b
            assert abs(got - expected) <= 1e-10 * max(1.0, expected)


def test_08_fourier_identity_pairs():
    with criterion("08 fourier identity at 10 (a, x) pairs: 1e-8"):
        pairs = ((0.5, 0.0), (0.5, 1.3), (1.0, 0.0), (1.0, 0.4),
                 (1.0, 2.0), (1.7, 0.9), (2.0, 0.25), (2.0, 1.0),
                 (3.0, 0.1), (0.8, 3.0))
        for a, x in pairs:
            assert abs(well1d.fourier_identity_check(a, x)) <= 1e-8


def _random_kinked(rng):
    c = rng.uniform(-0.5, 0.5)
    l0, l1, l2, l3, r1, r2, r3 = rng.uniform(-1.0, 1.0, 7)
    r0 = (l0 + l1 * c + l2 * c * c + l3 * c ** 3
          - r1 * c - r2 * c * c - r3 * c ** 3)

    def cubic(a0, a1, a2, a3, lo, hi):
        return SmoothPiece(
            lo, hi,
            lambda x: a0 + a1 * x + a2 * x * x + a3 * x ** 3,
            lambda x: a1 + 2.0 * a2 * x + 3.0 * a3 * x * x,
            lambda x: 2.0 * a2 + 6.0 * a3 * x,
        )

    return Piecewise1D((cubic(l0, l1, l2, l3, -math.inf, c),
                        cubic(r0, r1, r2, r3, c, math.inf)))


def test_09_distributional_duality_and_cusp_atoms():
    with criterion("09 duality on 10 random pairs 1e-8, cusp atoms 1e-10"):
        rng = np.random.default_rng(90)
        for _ in range(10):
            f = _random_kinked(rng)
            phi = BumpTestFunction((rng.uniform(-1.0, 1.0),),
                                   rng.uniform(0.5, 2.0))
            lhs = bracket(distributional_second_derivative_1d(f), phi,
                          tol=1e-11)
            lo, hi = phi.support()
            bps = [bp for bp in f.breakpoints() if lo < bp < hi]
            rhs = integrate_finite(
                lambda x: f.value(x) * phi.laplacian(x),
                lo, hi, 1e-11, breakpoints=bps,
            ).value
            assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(rhs))
        for b in (0.5, 1.0, 2.0):
            T = distributional_second_derivative_1d(well1d.psi_1d_pieces(b))
            assert len(T.atoms) == 1
            assert abs(T.atoms[0].weight + 2.0 * b * math.sqrt(b)) <= 1e-10


def test_10_jump_convention_audit():
    with criterion("10 jump audit: fd 1e-6, forced combination 1e-8"):
        for p in (well2d.Params2D(),
                  well2d.Params2D(hbar=1.3, mass=0.8, alpha=0.7, R=2.0)):
            jw = well2d.jump_weight(p)
            assert abs(jw.analytic - jw.finite_difference) \
                <= 1e-6 * abs(jw.analytic)
            # both conventions travel with the result and differ in sign
            assert jw.analytic < 0.0 < jw.paper_combination
            forced = well2d.c_spectrum_bracket(
                p, jump_convention=well2d.JUMP_PAPER)
            closed = well2d.c_spectrum_paper(p)
            assert abs(forced.energy - closed) <= 1e-8 * abs(closed)


def test_11_scaling_laws_by_ratio():
    with criterion("11 scaling laws alpha^2, R^-2, hbar^-2: 1e-12"):
        base = well2d.Params2D(hbar=1.1, mass=0.9, alpha=1.3, R=0.8)
        e0 = well2d.c_spectrum_paper(base)

        def scaled(**kw):
            fields = dict(hbar=base.hbar, mass=base.mass,
                          alpha=base.alpha, R=base.R)
            fields.update(kw)
            return well2d.c_spectrum_paper(well2d.Params2D(**fields))

        assert abs(scaled(alpha=2.0 * base.alpha) / e0 - 4.0) <= 1e-12
        assert abs(scaled(R=2.0 * base.R) / e0 - 0.25) <= 1e-12
        assert abs(scaled(hbar=2.0 * base.hbar) / e0 - 0.25) <= 1e-12


def test_12_mollifier_distances_decrease():
    with criterion("12 mollifier distances strictly decrease, n=4..32"):
        psi = well2d.Psi2D.build(well2d.Params2D())
        distances = mollifier_sequence_check(
            psi.representation, (4, 8, 16, 32))
        assert len(distances) == 4
        for earlier, later in zip(distances, distances[1:]):
            assert later < earlier


def test_suite_runtime_budget():
    with criterion("-- full suite under 60 s"):
        assert time.perf_counter() - _T0 < 60.0
