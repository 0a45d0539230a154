"""Series polylogarithms against frozen oracle values and the quadrature route.

Reference numbers were produced with 30-digit arbitrary precision
arithmetic before being locked in here.
"""

import math

import pytest

from atombath.specfun import (
    QuadratureError,
    ZETA_2,
    ZETA_3,
    bose_einstein_integral,
    bose_tail,
    polylog,
)


def test_polylog_closed_form_order_one():
    assert polylog(1, 0.3) == pytest.approx(-math.log(0.7), rel=1e-15)
    assert polylog(1, 0.0) == 0.0


def test_polylog_frozen_values():
    # mpmath.polylog references
    assert polylog(2, 0.5) == pytest.approx(5.822405264650125e-01, rel=1e-14)
    assert polylog(2, math.exp(-1)) == pytest.approx(4.087542873488962e-01, rel=1e-14)
    assert polylog(3, 0.9) == pytest.approx(1.049658950186439e00, rel=1e-14)
    assert polylog(3, math.exp(-1)) == pytest.approx(3.869954242101997e-01, rel=1e-14)


def test_polylog_at_one():
    assert polylog(2, 1.0) == pytest.approx(math.pi ** 2 / 6.0, rel=1e-15)
    assert polylog(3, 1.0) == pytest.approx(ZETA_3, rel=1e-15)
    assert ZETA_2 == pytest.approx(math.pi ** 2 / 6.0, rel=1e-16)


def test_polylog_near_one_falls_back_smoothly():
    # within ~1e-7 of 1 the cap is hit and the limit value is returned;
    # the true value differs from zeta by O(|z-1| log|z-1|)
    assert polylog(3, 0.999999) == pytest.approx(1.202055258232363, rel=1e-9)
    assert polylog(2, 1.0 - 1e-12) == pytest.approx(ZETA_2, rel=1e-10)


def test_polylog_tiny_argument():
    # leading term dominates: Li_s(z) = z + z^2/2^s + ...
    assert polylog(2, 1e-9) == pytest.approx(1e-9, rel=1e-8)
    assert polylog(3, 1e-9) == pytest.approx(1e-9, rel=1e-8)


def test_polylog_domain_errors():
    with pytest.raises(ValueError):
        polylog(4, 0.5)
    with pytest.raises(ValueError):
        polylog(2, -0.1)
    with pytest.raises(ValueError):
        polylog(2, 1.5)
    with pytest.raises(ValueError):
        polylog(1, 1.0)


def test_polylog_monotone_in_argument():
    for s in (1, 2, 3):
        values = [polylog(s, z) for z in (0.0, 0.1, 0.3, 0.6, 0.9, 0.99)]
        assert all(a < b for a, b in zip(values, values[1:]))


def test_bose_tail_endpoints():
    assert bose_tail(0.0) == 2.0 * ZETA_3
    # exp(-x) underflows past ~745
    assert bose_tail(800.0) == 0.0


def test_bose_tail_frozen_values():
    assert bose_tail(0.1) == pytest.approx(2.399278389883960, rel=1e-13)
    assert bose_tail(0.5) == pytest.approx(2.298648657150781, rel=1e-13)
    assert bose_tail(1.0) == pytest.approx(2.050174568505274, rel=1e-13)
    assert bose_tail(3.0) == pytest.approx(8.623509835838028e-01, rel=1e-13)
    assert bose_tail(10.0) == pytest.approx(5.538905313094990e-03, rel=1e-13)


def test_bose_tail_deep_suppression():
    # dominated by the first image term 10202 e^-100
    assert bose_tail(100.0) == pytest.approx(10202.0 * math.exp(-100.0), rel=1e-12)
    assert bose_tail(100.0) < 1e-39


def test_bose_tail_strictly_decreasing():
    xs = [0.0, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0]
    values = [bose_tail(x) for x in xs]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert bose_tail(1e-8) < 2.0 * ZETA_3


def test_bose_tail_matches_direct_quadrature():
    from scipy.integrate import quad

    for x in (0.1, 0.5, 1.0, 3.0, 10.0):
        ref, err = quad(
            lambda t: t * t / math.expm1(t), x, 60.0 + x,
            epsabs=1e-13, epsrel=1e-13, limit=300,
        )
        assert err < 1e-11 * max(1.0, ref)
        assert bose_tail(x) == pytest.approx(ref, rel=1e-10)


def test_bose_tail_rejects_negative():
    with pytest.raises(ValueError):
        bose_tail(-0.5)


def test_bose_einstein_integral_matches_polylog():
    for s, x in [(1, 0.0), (1, -0.1), (1, -1.0), (2, 0.0), (2, -0.5), (2, -5.0)]:
        assert bose_einstein_integral(s, x) == pytest.approx(
            polylog(s + 1, math.exp(x)), rel=1e-10
        )


def test_bose_einstein_integral_at_zero_fugacity():
    assert bose_einstein_integral(1, 0.0) == pytest.approx(ZETA_2, rel=1e-10)
    assert bose_einstein_integral(2, 0.0) == pytest.approx(ZETA_3, rel=1e-10)


def test_bose_einstein_integral_domain_errors():
    with pytest.raises(ValueError):
        bose_einstein_integral(3, -1.0)
    with pytest.raises(ValueError):
        bose_einstein_integral(1, 0.5)


def test_quadrature_error_is_runtime_error():
    assert issubclass(QuadratureError, RuntimeError)
