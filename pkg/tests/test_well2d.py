import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from deltawell import bessel, well2d
from deltawell.distributions import BumpTestFunction
from deltawell.quadrature import integrate_finite, integrate_semiinfinite
from deltawell.well2d import (
    CSpectrumResult,
    FamilySpreadError,
    NoSolutionError,
    Params2D,
    Psi2D,
    beta_sq,
    c_spectrum_bracket,
    c_spectrum_curve,
    c_spectrum_paper,
    continuity_defect,
    default_wide_family,
    helmholtz_residual,
    jump_weight,
    matching_constant,
    norm_check,
    psi_c,
    psi_c_radial,
)

mp.mp.dps = 40

# 40-digit references for the matching problem
U0_REF = 0.4322837065911856106
BETA_SQ_REF = 3.901851880163463618967389
K1_MINUS_I1 = 1.766430494458598406507468
K1_PLUS_I1 = 2.208890693635449585211359
EC_UNIT = -0.01623592931840389696891815
EC_DERIVED_UNIT = -0.01038297499301030623499443
CONVENTION_ENERGY_RATIO = 0.6395060479378228641182063


def test_matching_constant_digits():
    u0 = matching_constant()
    assert u0 == pytest.approx(U0_REF, abs=1e-14)
    # the defining property itself
    assert bessel.bessel_i(0, u0) == pytest.approx(
        bessel.bessel_k(0, u0), rel=1e-14)


def test_matching_constant_against_live_oracle():
    ref = float(mp.findroot(
        lambda u: mp.besseli(0, u) - mp.besselk(0, u), 0.43))
    assert matching_constant() == pytest.approx(ref, abs=1e-15)


def test_crossing_is_unique_on_dense_grid():
    # one sign change of I0 - K0 across 10^4 samples of (0, 10)
    grid = np.linspace(1e-3, 10.0, 10_000)
    diff = bessel._i0_grid(grid) - bessel._k0_grid(grid)
    assert np.count_nonzero(np.diff(np.signbit(diff))) == 1


def test_beta_sq_reference_values():
    assert beta_sq(matching_constant()) == pytest.approx(
        BETA_SQ_REF, rel=1e-15)
    k1 = 0.6019072301972345747375
    i1 = 0.5651591039924850272077
    assert beta_sq(1.0) == pytest.approx(k1 * k1 - i1 * i1, rel=1e-13)
    with pytest.raises(ValueError):
        beta_sq(0.0)


def test_normalization_pieces_sum_to_closed_form():
    # 2 pi [ int_0^R I0(br)^2 r dr + int_R^inf K0(br)^2 r dr ]
    # = pi R^2 beta^2 when b R = u0
    u0 = matching_constant()
    for b in (1.0, 0.5):
        R = u0 / b
        inner = integrate_finite(
            lambda r: bessel.bessel_i(0, b * r) ** 2 * r, 0.0, R, 1e-14).value
        outer = integrate_semiinfinite(
            lambda r: bessel.bessel_k(0, b * r) ** 2 * r, R, 1e-14).value
        got = 2.0 * math.pi * (inner + outer)
        want = math.pi * R * R * beta_sq(u0)
        assert abs(got - want) / want <= 1e-10


def test_params_validation_and_derived_fields():
    with pytest.raises(ValueError):
        Params2D(R=0.0)
    with pytest.raises(ValueError):
        Params2D(alpha=0.0)
    with pytest.raises(ValueError):
        Params2D(mass=-1.0)
    p = Params2D(R=2.5)
    assert p.b * p.R == matching_constant()
    assert p.norm_constant == pytest.approx(
        1.0 / (math.sqrt(math.pi) * 2.5 * math.sqrt(BETA_SQ_REF)),
        rel=1e-15)
    # negative coupling is allowed
    Params2D(alpha=-1.0)


def test_profile_values():
    p = Params2D()
    n = p.norm_constant
    assert psi_c_radial(p, 0.0) == n
    assert psi_c(p, (0.3, 0.4)) == psi_c_radial(p, 0.5)
    assert psi_c_radial(p, 0.5) == n * bessel.bessel_i(0, p.b * 0.5)
    assert psi_c_radial(p, 2.0) == n * bessel.bessel_k(0, p.b * 2.0)
    with pytest.raises(ValueError):
        psi_c_radial(p, -1.0)


def test_continuity_at_matching_circle():
    for p in (Params2D(), Params2D(R=0.3), Params2D(R=7.0),
              Params2D(hbar=2.0, mass=0.5, alpha=-1.5, R=3.7)):
        assert continuity_defect(p) <= 1e-13
        inside = Psi2D.build(p).representation.value(p.R, side=-1)
        outside = Psi2D.build(p).representation.value(p.R, side=+1)
        assert abs(inside - outside) <= 1e-13 * abs(inside)


def test_norm_spot_checks():
    for p in (Params2D(), Params2D(R=0.5), Params2D(hbar=0.5, mass=2.0)):
        assert abs(norm_check(p, 1e-8) - 1.0) <= 1e-8


def test_representation_derivatives_match_finite_differences():
    p = Params2D()
    rep = Psi2D.build(p).representation
    for r in (0.2, 0.8, 1.3, 3.0):
        h = 1e-6
        fd1 = (rep.value(r + h) - rep.value(r - h)) / (2.0 * h)
        assert rep.deriv(r) == pytest.approx(fd1, rel=1e-8)
        h = 1e-4  # second difference loses 2 h-digits to roundoff
        fd2 = (rep.value(r + h) - 2.0 * rep.value(r)
               + rep.value(r - h)) / (h * h)
        assert rep.second(r) == pytest.approx(fd2, rel=1e-6)


def test_inside_second_derivative_series_guard():
    # the I0 - I1/x combination must stay smooth through the series
    # switch at x = 1e-4
    p = Params2D(R=1.0)
    rep = Psi2D.build(p).representation
    n, b = p.norm_constant, p.b
    for r in (1e-5 / b, 9.9e-5 / b, 1.1e-4 / b, 1e-3 / b):
        x = b * r
        ref = float(n * b * b * (mp.besseli(0, x) - mp.besseli(1, x) / x))
        assert rep.second(r) == pytest.approx(ref, rel=1e-12)
    assert rep.second(0.0) == pytest.approx(0.5 * n * b * b, rel=1e-12)


def test_helmholtz_residuals_small():
    p = Params2D()
    radii = [r for r in np.linspace(0.05, 10.0, 50)
             if abs(r - 1.0) > 1.5e-3]
    res = helmholtz_residual(p, radii)
    assert max(abs(x) for x in res) <= 1e-6


def test_helmholtz_guard_band():
    p = Params2D()
    with pytest.raises(ValueError):
        helmholtz_residual(p, [1.0005])
    with pytest.raises(ValueError):
        helmholtz_residual(p, [1e-5])


def test_jump_weight_conventions():
    p = Params2D()
    jw = jump_weight(p)
    scale = p.norm_constant * p.b
    assert jw.analytic / scale == pytest.approx(-K1_PLUS_I1, rel=1e-13)
    assert jw.paper_combination / scale == pytest.approx(
        K1_MINUS_I1, rel=1e-13)
    assert jw.analytic < 0.0
    assert abs(jw.finite_difference - jw.analytic) <= 1e-6 * abs(jw.analytic)


def test_closed_form_energy_pinned():
    assert c_spectrum_paper(Params2D()) == pytest.approx(EC_UNIT, rel=1e-14)


def test_closed_form_scaling_laws():
    base = c_spectrum_paper(Params2D())
    assert c_spectrum_paper(Params2D(alpha=3.0)) / base \
        == pytest.approx(9.0, rel=1e-13)
    assert c_spectrum_paper(Params2D(R=2.0)) / base \
        == pytest.approx(0.25, rel=1e-13)
    assert c_spectrum_paper(Params2D(hbar=2.0)) / base \
        == pytest.approx(0.25, rel=1e-13)


def test_bracket_solve_both_conventions():
    p = Params2D()
    derived = c_spectrum_bracket(p)
    paper = c_spectrum_bracket(p, jump_convention="paper")
    assert derived.convention == "derived"
    assert paper.convention == "paper"
    assert derived.energy == pytest.approx(EC_DERIVED_UNIT, rel=1e-8)
    assert paper.energy == pytest.approx(EC_UNIT, rel=1e-8)
    assert derived.family_spread <= 1e-6
    # the two conventions differ by ((K1-I1)/(K1+I1))^2
    assert derived.energy / paper.energy == pytest.approx(
        CONVENTION_ENERGY_RATIO, rel=1e-9)


def test_bracket_reproduces_closed_form():
    for p in (Params2D(), Params2D(alpha=2.0, R=0.7),
              Params2D(hbar=1.3, mass=0.6, alpha=-1.1, R=2.0)):
        got = c_spectrum_bracket(p, jump_convention="paper")
        want = c_spectrum_paper(p)
        assert abs(got.energy - want) / abs(want) <= 1e-8
        assert got.b_star > 0.0


def test_bracket_rejects_zero_coupling():
    with pytest.raises(NoSolutionError):
        c_spectrum_bracket(Params2D(), alpha=0.0)


def test_bracket_rejects_unknown_convention():
    with pytest.raises(ValueError):
        c_spectrum_bracket(Params2D(), jump_convention="midpoint")


def test_bracket_family_requirements():
    p = Params2D()
    with pytest.raises(ValueError):
        c_spectrum_bracket(p, phi_family=())
    with pytest.raises(ValueError):
        # misses the origin
        c_spectrum_bracket(
            p, phi_family=[BumpTestFunction((5.0, 0.0), 1.0)])
    with pytest.raises(ValueError):
        # misses the circle
        c_spectrum_bracket(
            p, phi_family=[BumpTestFunction((0.0, 0.0), 0.5)])


def test_narrow_family_spread_error_carries_both_conventions():
    p = Params2D()
    narrow = [BumpTestFunction((0.0, 0.0), 1.3),
              BumpTestFunction((0.0, 0.0), 4.0)]
    with pytest.raises(FamilySpreadError) as err:
        c_spectrum_bracket(p, phi_family=narrow)
    exc = err.value
    assert isinstance(exc.derived, CSpectrumResult)
    assert isinstance(exc.paper, CSpectrumResult)
    assert exc.derived.family_spread > 1e-6
    assert exc.derived.energy / exc.paper.energy == pytest.approx(
        CONVENTION_ENERGY_RATIO, rel=1e-12)


def test_wide_family_converges_with_width():
    # the spread is governed by (R/rho)^2 of the narrowest member
    p = Params2D()
    wide = c_spectrum_bracket(p, phi_family=default_wide_family(p))
    wider = c_spectrum_bracket(
        p, phi_family=default_wide_family(p, factors=(1e7, 3e7, 1e8)))
    assert wider.family_spread < wide.family_spread


def test_negative_coupling_keeps_energy_negative():
    p = Params2D(alpha=-2.0)
    res = c_spectrum_bracket(p)
    assert res.b_star > 0.0
    assert res.energy < 0.0
    assert res.energy == pytest.approx(
        c_spectrum_bracket(Params2D(alpha=2.0)).energy, rel=1e-12)


def test_curve_follows_inverse_square():
    p = Params2D()
    curve = c_spectrum_curve(p, [0.5, 1.0, 2.0])
    assert [r for r, _ in curve] == [0.5, 1.0, 2.0]
    assert curve[0][1] / curve[1][1] == pytest.approx(4.0, rel=1e-13)
    assert curve[2][1] / curve[1][1] == pytest.approx(0.25, rel=1e-13)
    with pytest.raises(ValueError):
        c_spectrum_curve(p, [0.0])


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=1e-3, max_value=8.0),
       st.floats(min_value=1e-3, max_value=8.0))
def test_profile_monotone_per_piece(r_small, r_big):
    # I0 rises toward the matching circle, K0 falls beyond it: the
    # profile peaks at r = R, not at the origin
    p = Params2D()
    lo, hi = sorted((r_small, r_big))
    if hi <= p.R:
        assert psi_c_radial(p, hi) >= psi_c_radial(p, lo)
    if lo >= p.R:
        assert psi_c_radial(p, hi) <= psi_c_radial(p, lo)
    assert psi_c_radial(p, p.R) >= psi_c_radial(p, lo)


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=0.3, max_value=4.0),
       st.floats(min_value=0.3, max_value=3.0),
       st.floats(min_value=0.3, max_value=3.0))
def test_closed_form_dimensional_collapse(R, alpha, hbar):
    # E^C R^2 hbar^2 / (m alpha^2) is the same number for all params
    ref = c_spectrum_paper(Params2D()) / 1.0
    p = Params2D(hbar=hbar, mass=1.0, alpha=alpha, R=R)
    collapsed = c_spectrum_paper(p) * R * R * hbar * hbar / (alpha * alpha)
    assert collapsed == pytest.approx(ref, rel=1e-12)
