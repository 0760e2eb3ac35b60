import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from deltawell.quadrature import (
    QuadResult,
    QuadratureError,
    integrate_finite,
    integrate_radial2d,
    integrate_semiinfinite,
)


def test_monomial_exactness():
    # a single 15-point panel integrates monomials up to degree 22
    for n in range(23):
        res = integrate_finite(lambda x, n=n: x ** n, 0.0, 1.0, 1e-13)
        assert res.value == pytest.approx(1.0 / (n + 1), rel=5e-15)


def test_closed_forms():
    assert integrate_finite(math.sin, 0.0, math.pi, 1e-12).value \
        == pytest.approx(2.0, rel=1e-13)
    assert integrate_finite(math.exp, 0.0, 1.0, 1e-12).value \
        == pytest.approx(math.e - 1.0, rel=1e-13)
    assert integrate_finite(lambda x: 1.0 / (1.0 + x * x), -1.0, 1.0,
                            1e-12).value \
        == pytest.approx(math.pi / 2.0, rel=1e-13)


def test_reversed_and_empty_interval_rejected():
    with pytest.raises(ValueError):
        integrate_finite(math.exp, 1.0, 0.0, 1e-12)
    with pytest.raises(ValueError):
        integrate_finite(math.exp, 2.0, 2.0, 1e-12)


def test_semiinfinite():
    assert integrate_semiinfinite(lambda x: math.exp(-x), 0.0, 1e-12).value \
        == pytest.approx(1.0, rel=1e-12)
    assert integrate_semiinfinite(lambda x: math.exp(-x * x), 0.0,
                                  1e-12).value \
        == pytest.approx(0.5 * math.sqrt(math.pi), rel=1e-12)
    # shifted lower limit
    assert integrate_semiinfinite(lambda x: math.exp(-x), 3.0, 1e-12).value \
        == pytest.approx(math.exp(-3.0), rel=1e-11)


def test_radial2d_gaussian():
    res = integrate_radial2d(lambda r: math.exp(-r * r), (), 1e-12)
    assert res.value == pytest.approx(math.pi, rel=1e-12)


def test_radial2d_with_breakpoint():
    # piecewise-constant disc: area of the unit disc
    res = integrate_radial2d(lambda r: 1.0 if r <= 1.0 else 0.0, (1.0,),
                             1e-12)
    assert res.value == pytest.approx(math.pi, rel=1e-10)


def test_breakpoint_hint_handles_kink():
    got = integrate_finite(abs, -1.0, 1.0, 1e-13, breakpoints=(0.0,))
    assert got.value == pytest.approx(1.0, rel=1e-14)
    # without the hint the kink still converges, just with more panels
    blind = integrate_finite(abs, -1.0, 1.0, 1e-10)
    assert blind.value == pytest.approx(1.0, rel=1e-9)
    assert blind.evaluations > got.evaluations


def test_determinism():
    def f(x):
        return math.sin(3.0 * x) * math.exp(-x * x)

    a = integrate_finite(f, -2.0, 5.0, 1e-11)
    b = integrate_finite(f, -2.0, 5.0, 1e-11)
    assert a.value == b.value
    assert a.error_estimate == b.error_estimate
    assert a.evaluations == b.evaluations


def test_tightening_tol_does_not_hurt():
    def f(x):
        return math.sqrt(abs(x - 0.3))

    exact = (0.7 ** 1.5 + 0.3 ** 1.5) / 1.5
    loose = integrate_finite(f, 0.0, 1.0, 1e-4)
    tight = integrate_finite(f, 0.0, 1.0, 1e-10)
    assert abs(tight.value - exact) <= abs(loose.value - exact) + 1e-15
    assert abs(tight.value - exact) <= 1e-10


def test_error_estimate_is_honest():
    cases = [
        (lambda x: math.exp(-x) * math.cos(5.0 * x), 0.0, 4.0),
        (lambda x: 1.0 / (1.0 + 25.0 * x * x), -1.0, 1.0),
    ]
    import mpmath as mp
    mp.mp.dps = 30
    refs = [
        float(mp.quad(lambda t: mp.e ** (-t) * mp.cos(5 * t), [0, 4])),
        float(mp.quad(lambda t: 1 / (1 + 25 * t * t), [-1, 1])),
    ]
    for (f, a, b), ref in zip(cases, refs):
        res = integrate_finite(f, a, b, 1e-10)
        assert abs(res.value - ref) <= max(res.error_estimate, 1e-14)


def test_failure_carries_best_result():
    # 1/x is not integrable at 0; the failure must still expose the
    # best estimate so far
    with pytest.raises(QuadratureError) as err:
        integrate_finite(lambda x: 1.0 / x, 1e-300, 1.0, 1e-10,
                         max_panels=50)
    best = err.value.best
    assert isinstance(best, QuadResult)
    assert best.evaluations > 0
    assert best.error_estimate > 1e-10


def test_result_validation():
    with pytest.raises(ValueError):
        QuadResult(1.0, -1.0, 15)
    with pytest.raises(ValueError):
        QuadResult(1.0, 0.0, 0)
    with pytest.raises(ValueError):
        integrate_finite(math.sin, 0.0, 1.0, 0.0)


def test_evaluation_counts_are_panel_multiples():
    res = integrate_finite(math.cos, 0.0, 1.0, 1e-12)
    assert res.evaluations % 15 == 0


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=-5.0, max_value=5.0),
       st.floats(min_value=0.1, max_value=10.0),
       st.floats(min_value=0.3, max_value=4.0))
def test_gaussian_translation_invariance(mu, span, sigma):
    # integral of a normal density over [mu - span*sigma, mu + span*sigma]
    # depends only on span
    def dens(x):
        z = (x - mu) / sigma
        return math.exp(-0.5 * z * z) / (sigma * math.sqrt(2.0 * math.pi))

    got = integrate_finite(dens, mu - span * sigma, mu + span * sigma,
                           1e-11).value
    want = math.erf(span / math.sqrt(2.0))
    assert got == pytest.approx(want, abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0.2, max_value=5.0))
def test_exponential_scale_families(rate):
    got = integrate_semiinfinite(lambda x: math.exp(-rate * x), 0.0, 1e-11)
    assert got.value == pytest.approx(1.0 / rate, rel=1e-10)
