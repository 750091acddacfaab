"""Special-function implementations against scipy / mpmath oracles."""

import math

import mpmath
import numpy as np
import pytest
import scipy.special

from bohrconv.exceptions import DomainError, ValidityError
from bohrconv.specfun import (
    HypergeometricParams,
    dilog,
    gauss_value,
    hypergeometric_coeffs,
    lambert_w,
    pochhammer,
)


def test_lambert_w_defining_identity():
    grid = np.concatenate([
        np.linspace(-math.exp(-1.0) + 1e-12, -1e-4, 50),
        np.linspace(-1e-4, 5.0, 60),
        np.logspace(1, 5, 20),
    ])
    for x in grid:
        w = lambert_w(float(x))
        assert w >= -1.0
        assert abs(w * math.exp(w) - x) <= 1e-12 * max(1.0, abs(x))


def test_lambert_w_matches_scipy():
    for x in (-0.36, -0.2, -0.05, 0.0, 0.3, 1.0, math.e, 10.0, 1e4):
        expected = float(scipy.special.lambertw(x, 0).real)
        assert lambert_w(x) == pytest.approx(expected, abs=1e-12)


def test_lambert_w_special_points_and_domain():
    assert lambert_w(0.0) == 0.0
    assert lambert_w(math.e) == pytest.approx(1.0, abs=1e-13)
    assert lambert_w(-math.exp(-1.0)) == pytest.approx(-1.0, abs=1e-7)
    with pytest.raises(DomainError):
        lambert_w(-math.exp(-1.0) - 1e-9)
    with pytest.raises(DomainError):
        lambert_w(float("nan"))


def test_dilog_matches_mpmath():
    for x in np.linspace(0.0, 1.0, 41):
        expected = float(mpmath.polylog(2, float(x)))
        assert dilog(float(x)) == pytest.approx(expected, abs=1e-12)


def test_dilog_endpoints_and_domain():
    assert dilog(0.0) == 0.0
    assert dilog(1.0) == pytest.approx(math.pi ** 2 / 6.0, abs=1e-15)
    assert dilog(-1e-16) == 0.0  # rounding clamp
    with pytest.raises(DomainError):
        dilog(-0.1)
    with pytest.raises(DomainError):
        dilog(1.1)


def test_pochhammer_matches_mpmath():
    for a in (0.5, 1.0, 2.5, -0.3):
        for n in (0, 1, 2, 5, 10):
            assert pochhammer(a, n) == pytest.approx(float(mpmath.rf(a, n)),
                                                     rel=1e-13)
    assert pochhammer(3.0, 0) == 1.0
    with pytest.raises(ValueError):
        pochhammer(1.0, -1)


def test_hypergeometric_params_guard():
    with pytest.raises(ValueError):
        HypergeometricParams(-1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        HypergeometricParams(1.0, -1.5, 1.0)
    p = HypergeometricParams(0.5, 1.5, 2.5)
    assert (p.a, p.b, p.c) == (0.5, 1.5, 2.5)


def test_hypergeometric_coeffs_match_pochhammer_formula():
    params = HypergeometricParams(0.5, 1.5, 2.5)
    table = hypergeometric_coeffs(params, 20)
    for n in range(21):
        expected = float(mpmath.rf(0.5, n) * mpmath.rf(1.5, n)
                         / (mpmath.rf(2.5, n) * mpmath.factorial(n)))
        assert table[n] == pytest.approx(expected, rel=1e-13)


def test_hypergeometric_coeffs_guards():
    with pytest.raises(ValueError):
        hypergeometric_coeffs(HypergeometricParams(1, 1, 1), -1)
    with pytest.raises(ValidityError):
        hypergeometric_coeffs(HypergeometricParams(-0.5, 1.0, 1.0), 4)
    # a numerator zero terminates the table at the constant term
    table = hypergeometric_coeffs(HypergeometricParams(0.0, 1.0, 1.0), 6)
    np.testing.assert_allclose(table, [1.0, 0, 0, 0, 0, 0, 0])


def test_gauss_value_matches_mpmath():
    cases = [(0.5, 1.5, 2.5), (1.0, 1.0, 2.0), (0.25, 2.0, 3.5)]
    for a, b, c in cases:
        params = HypergeometricParams(a, b, c)
        for x in (0.0, 0.2, 0.5, 0.8):
            expected = float(mpmath.hyp2f1(a, b, c, x))
            assert gauss_value(params, x) == pytest.approx(expected, rel=1e-12)


def test_gauss_value_log_identity():
    # F(1, 1, 2; x) = -log(1 - x) / x
    params = HypergeometricParams(1.0, 1.0, 2.0)
    for x in (0.1, 0.3, 0.582811643865804):
        assert gauss_value(params, x) == pytest.approx(-math.log1p(-x) / x,
                                                       rel=1e-13)


def test_gauss_value_divergence_guard():
    with pytest.raises(ValidityError):
        gauss_value(HypergeometricParams(2.0, 3.0, 1.0), 1.0)
