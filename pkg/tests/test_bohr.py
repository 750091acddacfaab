"""Closed-form radii and Bohr-Bombieri functions against independent oracles.

Every frozen constant below was reproduced from a formula-independent route
(mpmath special functions, scipy's Lambert W, or bisection against the
defining equation) before being asserted; the bisection cross-checks re-solve
m(r, a) = 1 with the m-function written out inline rather than through the
package's radius formulas.
"""

import math

import mpmath
import numpy as np
import pytest
import scipy.special

from bohrconv.bohr import (
    CESARO_BOUND_LIMIT,
    RadiusResult,
    bombieri_derivative_with_a,
    bombieri_hypotheses,
    bombieri_id0,
    bombieri_id0_with_a,
    bombieri_integral_with_a,
    bombieri_lacunary_with_a,
    bombieri_value,
    cesaro_bombieri_bound,
    convergence_radius_bound,
    integral_r_of_a,
    integral_threshold,
    pair_bombieri,
    profile_radius,
    radius_derivative_pair,
    radius_derivative_pair_with_a,
    radius_hypergeometric,
    radius_id0,
    radius_integral_lower,
    radius_integral_upper,
    radius_integral_with_a,
    radius_lacunary_with_a,
    radius_with_coefficient,
    shift_pair_lower_bound,
)
from bohrconv.exceptions import (
    BracketError,
    NoRootError,
    NotApplicableError,
    OpenProblemError,
    ValidityError,
)
from bohrconv.kernels import (
    Kernel,
    KernelPair,
    derivative_kernel,
    derivative_pair,
    dilation_kernel,
    geometric_kernel,
    id0_pair,
    inf_ratio,
    integral_pair,
    lacunary_gap_kernel,
    lacunary_pair,
    polynomial_kernel,
    shift_kernel,
)
from bohrconv.specfun import HypergeometricParams


def test_exception_hierarchy():
    for exc in (OpenProblemError, NotApplicableError):
        assert issubclass(exc, ValidityError)
    assert issubclass(BracketError, NoRootError)


# ----------------------------------------------------------------------
# identity pair
# ----------------------------------------------------------------------


def test_radius_id0_formula_and_domain():
    for a in (0.55, 0.75, 1.0):
        assert radius_id0(a) == pytest.approx(1.0 / (1.0 + 2.0 * a),
                                              rel=1e-15)
    with pytest.raises(ValidityError):
        radius_id0(0.5)
    with pytest.raises(ValidityError):
        radius_id0(1.1)


def test_radius_id0_agrees_with_inline_bisection():
    for a in np.linspace(0.55, 0.99, 9):
        a = float(a)
        result = radius_with_coefficient(
            lambda r, s: s + (1.0 - s * s) * r / (1.0 - s * r), a,
            bracket=(0.01, 0.9))
        assert result.value == pytest.approx(radius_id0(a), abs=1e-10)
        assert result.residual <= 1e-10
        assert dict(result.hypotheses)["a > r at the root"]


def test_bombieri_id0_with_a_values():
    a, r = 0.8, 0.2
    assert bombieri_id0_with_a(r, a) == pytest.approx(
        a + (1.0 - a * a) * r / (1.0 - a * r), rel=1e-15)
    # unit value exactly on the radius curve
    assert bombieri_id0_with_a(radius_id0(a), a) == pytest.approx(1.0,
                                                                  abs=1e-14)
    # a = 1 returns the rescaled limit 2r/(1-r), crossing 1 at r = 1/3
    assert bombieri_id0_with_a(0.25, 1.0) == pytest.approx(2.0 / 3.0)
    assert bombieri_id0_with_a(1.0 / 3.0, 1.0) == pytest.approx(1.0,
                                                                abs=1e-15)
    with pytest.raises(ValidityError):
        bombieri_id0_with_a(0.5, 0.0)
    with pytest.raises(ValidityError):
        bombieri_id0_with_a(1.5, 0.8)  # a r >= 1


def test_bombieri_id0_unconstrained():
    assert bombieri_id0(0.0) == 1.0
    assert bombieri_id0(1.0 / 3.0) == 1.0
    # frozen: (3 - sqrt(8 (1 - 1/4))) / (1/2)
    assert bombieri_id0(0.5) == pytest.approx(1.1010205144336442, abs=1e-14)
    assert bombieri_id0(1.0 / math.sqrt(2.0)) == pytest.approx(
        math.sqrt(2.0), abs=1e-12)
    grid = np.linspace(0.05, 1.0 / math.sqrt(2.0), 40)
    values = [bombieri_id0(float(r)) for r in grid]
    assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))
    with pytest.raises(OpenProblemError):
        bombieri_id0(0.75)
    with pytest.raises(ValidityError):
        bombieri_id0(-0.1)


def test_cesaro_bound():
    assert cesaro_bombieri_bound(0.0) == 1.0
    # frozen at the top of the stated range; mpmath recomputation inline
    top = CESARO_BOUND_LIMIT
    assert cesaro_bombieri_bound(top) == pytest.approx(1.4292357238889195,
                                                       abs=1e-14)
    for r in (0.1, 0.35, top):
        expected = float(-mpmath.log(1 - mpmath.mpf(r)) / mpmath.mpf(r))
        assert cesaro_bombieri_bound(r) == pytest.approx(expected, rel=1e-13)
    with pytest.raises(ValidityError):
        cesaro_bombieri_bound(top + 1e-3)
    with pytest.raises(ValidityError):
        cesaro_bombieri_bound(-0.2)


# ----------------------------------------------------------------------
# derivative pairs
# ----------------------------------------------------------------------


def test_radius_derivative_pair_closed_forms():
    assert radius_derivative_pair(0) == pytest.approx(1.0 / 3.0, abs=1e-15)
    assert radius_derivative_pair(1) == pytest.approx(
        1.0 - math.sqrt(2.0 / 3.0), abs=1e-15)
    # frozen decimal of the m = 1 radius
    assert radius_derivative_pair(1) == pytest.approx(0.18350341907227397,
                                                      abs=1e-15)
    with pytest.raises(ValidityError):
        radius_derivative_pair(-1)


def test_bombieri_derivative_with_a():
    # frozen value at (m, r, a) = (1, 0.15, 0.9)
    assert bombieri_derivative_with_a(1, 0.15, 0.9) == pytest.approx(
        0.9710381235590899, abs=1e-14)
    m, r, a = 2, 0.1, 0.7
    expected = a + (1.0 / a - a) * ((1.0 - a * r) ** (-(m + 1)) - 1.0)
    assert bombieri_derivative_with_a(m, r, a) == pytest.approx(expected,
                                                                rel=1e-15)
    # a = 1 rescaled limit crosses 1 exactly at the full radius
    root = radius_derivative_pair(2)
    assert bombieri_derivative_with_a(2, root, 1.0) == pytest.approx(
        1.0, abs=1e-13)
    with pytest.raises(ValidityError):
        bombieri_derivative_with_a(-1, 0.1, 0.9)


def test_radius_derivative_pair_with_a():
    for m in (0, 1, 2, 3):
        for a in (0.6, 0.8, 1.0):
            result = radius_derivative_pair_with_a(m, a)
            q = ((1.0 + a) / (1.0 + 2.0 * a)) ** (1.0 / (m + 1))
            assert result.value == pytest.approx((1.0 - q) / a, rel=1e-14)
            assert result.residual <= 1e-12
            assert all(ok for _, ok in result.hypotheses)
    # bisection cross-check on the inline m-function
    for m in (1, 3):
        for a in (0.7, 0.95):
            result = radius_with_coefficient(
                lambda r, s, _m=m: s + (1.0 / s - s)
                * ((1.0 - s * r) ** (-(_m + 1)) - 1.0), a,
                bracket=(0.01, 0.6))
            assert result.value == pytest.approx(
                radius_derivative_pair_with_a(m, a).value, abs=1e-10)


def test_radius_derivative_pair_with_a_validity_edge():
    # a^2 > 1 - ((1+a)/(1+2a))^{1/(m+1)} fails for small a at high order
    with pytest.raises(ValidityError):
        radius_derivative_pair_with_a(3, 0.15)
    with pytest.raises(ValidityError):
        radius_derivative_pair_with_a(1, 0.0)


# ----------------------------------------------------------------------
# antiderivative pair
# ----------------------------------------------------------------------


def test_integral_threshold_against_scipy():
    expected = math.sqrt(
        1.0 + 0.5 * float(scipy.special.lambertw(-2.0 * math.exp(-2.0),
                                                 0).real))
    assert integral_threshold() == pytest.approx(expected, abs=1e-13)
    assert integral_threshold() == pytest.approx(0.8926433386409266,
                                                 abs=1e-14)


def test_radius_integral_lower_is_dilog_root():
    value = radius_integral_lower()
    assert value == pytest.approx(0.8726642793950262, abs=1e-12)
    assert float(mpmath.polylog(2, value * value)) == pytest.approx(1.0,
                                                                    abs=1e-11)


def test_radius_integral_upper():
    r_min, a_min = radius_integral_upper()
    assert r_min == pytest.approx(0.883677156959276, abs=1e-9)
    assert a_min == pytest.approx(0.8123081689078993, abs=1e-7)
    # the minimizing a sits below the certification threshold, where the
    # unit-crossing curve runs above the diagonal
    assert r_min > a_min
    # a genuine minimum: neighbors on the curve lie above
    assert integral_r_of_a(a_min - 1e-3) > r_min
    assert integral_r_of_a(a_min + 1e-3) > r_min


def test_integral_r_of_a_solves_unit_equation():
    grid = list(np.linspace(0.3, 0.999, 12))
    # include the removable singularity at 2a^2 = 1 and its series branch
    grid += [1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0) + 1e-8]
    for a in grid:
        a = float(a)
        r = integral_r_of_a(a)
        assert bombieri_integral_with_a(r, a) == pytest.approx(1.0, abs=1e-10)
    assert integral_r_of_a(1.0) == 1.0
    with pytest.raises(ValidityError):
        integral_r_of_a(0.0)


def test_bombieri_integral_with_a():
    a, r = 0.9, 0.4
    x = a * r
    expected = x + (a * a - 1.0) / (a * a) * (math.log1p(-x) + x)
    assert bombieri_integral_with_a(r, a) == pytest.approx(expected,
                                                           rel=1e-14)
    assert bombieri_integral_with_a(0.5, 1.0) == 0.5
    with pytest.raises(ValidityError):
        bombieri_integral_with_a(0.5, -0.2)


def test_radius_integral_with_a_certification():
    threshold = integral_threshold()
    result = radius_integral_with_a(0.95)
    assert result.value == pytest.approx(integral_r_of_a(0.95), rel=1e-14)
    assert result.value < 0.95
    assert result.residual <= 1e-12
    with pytest.raises(ValidityError):
        radius_integral_with_a(threshold - 1e-3)
    with pytest.raises(ValidityError):
        radius_integral_with_a(1.2)


# ----------------------------------------------------------------------
# lacunary pairs (condensed closed form)
# ----------------------------------------------------------------------


def test_bombieri_lacunary_condenses_to_id0():
    for m in (1, 2, 3):
        for a, r in ((0.7, 0.3), (0.9, 0.55), (0.6, 0.2)):
            assert bombieri_lacunary_with_a(m, r, a) == pytest.approx(
                bombieri_id0_with_a(r ** m, a), rel=1e-15)
    # frozen value for the gap-2 pair
    assert bombieri_lacunary_with_a(2, 0.3, 0.9) == pytest.approx(
        0.91860718171926, abs=1e-13)
    # a = 1 rescaled limit crosses 1 at the full radius 3^{-1/m}
    assert bombieri_lacunary_with_a(3, 3.0 ** (-1.0 / 3.0), 1.0) == (
        pytest.approx(1.0, abs=1e-13))
    with pytest.raises(ValidityError):
        bombieri_lacunary_with_a(0, 0.3, 0.9)
    with pytest.raises(ValidityError):
        bombieri_lacunary_with_a(2, 1.0, 0.9)


def test_radius_lacunary_with_a():
    # frozen: (1 + 2 * 0.9)^(-1/2)
    assert radius_lacunary_with_a(2, 0.9).value == pytest.approx(
        0.5976143046671969, abs=1e-15)
    for m in (1, 2, 3):
        for a in (0.55, 0.75, 1.0):
            result = radius_lacunary_with_a(m, a)
            assert result.value == pytest.approx(
                (1.0 + 2.0 * a) ** (-1.0 / m), rel=1e-15)
            assert result.residual <= 1e-12
            assert all(ok for _, ok in result.hypotheses)
    # m = 1 is the identity-pair radius; a = 1 the full radius 3^{-1/m}
    assert radius_lacunary_with_a(1, 0.8).value == pytest.approx(
        radius_id0(0.8), rel=1e-15)
    assert radius_lacunary_with_a(3, 1.0).value == pytest.approx(
        3.0 ** (-1.0 / 3.0), rel=1e-15)
    with pytest.raises(ValidityError):
        radius_lacunary_with_a(2, 0.5)
    with pytest.raises(ValidityError):
        radius_lacunary_with_a(0, 0.9)


def test_radius_lacunary_agrees_with_inline_bisection():
    for m in (1, 2, 3):
        for a in np.linspace(0.52, 0.99, 6):
            a = float(a)
            hi = (a ** (1.0 / m)) * (1.0 - 1e-6)
            result = radius_with_coefficient(
                lambda r, s, _m=m: s + (1.0 - s * s) * r ** _m
                / (1.0 - s * r ** _m), a, bracket=(0.05, hi))
            assert result.value == pytest.approx(
                radius_lacunary_with_a(m, a).value, abs=1e-10)


# ----------------------------------------------------------------------
# master closed form and its certification
# ----------------------------------------------------------------------


def test_bombieri_hypotheses_report():
    pair = derivative_pair(2)
    report = bombieri_hypotheses(pair.h1, pair.h2, pair.l, 0.8, 0.2)
    names = [name for name, _ in report]
    assert names == [
        "h1 coefficients positive",
        "vanishing orders match",
        "0 <= r < 1",
        "0 < a <= 1",
        "a > r",
        "r <= inf coefficient ratio of h1",
        "r <= a * (inf coefficient ratio of h1)",
        "co-K witness available for h2",
        "co-K witness proof-backed",
    ]
    assert all(ok for _, ok in report)
    # the certified region is r <= a * inf-ratio, stricter than the infimum
    flags = dict(bombieri_hypotheses(pair.h1, pair.h2, pair.l, 0.5, 0.35))
    assert flags["r <= inf coefficient ratio of h1"]  # 0.35 <= 1/2
    assert not flags["r <= a * (inf coefficient ratio of h1)"]  # 0.35 > 1/4


def test_bombieri_value_matches_specialized_forms():
    cases = [
        (id0_pair(), lambda r, a: bombieri_id0_with_a(r, a)),
        (derivative_pair(1), lambda r, a: bombieri_derivative_with_a(1, r, a)),
        (derivative_pair(3), lambda r, a: bombieri_derivative_with_a(3, r, a)),
        (integral_pair(), lambda r, a: bombieri_integral_with_a(r, a)),
        (lacunary_pair(1), lambda r, a: bombieri_lacunary_with_a(1, r, a)),
    ]
    for pair, oracle in cases:
        ratio = inf_ratio(pair.h1).value
        for a in (0.6, 0.9):
            for r in (0.05, 0.95 * a * ratio):
                assert pair_bombieri(pair, a, r) == pytest.approx(
                    oracle(r, a), rel=1e-12)


def test_bombieri_value_certification_condition():
    # inside r <= inf-ratio but outside r <= a * inf-ratio the closed form
    # is refutable by samples, so the evaluation must refuse
    pair = derivative_pair(3)
    with pytest.raises(ValidityError, match=r"a \* \(inf"):
        pair_bombieri(pair, 0.5, 0.35)
    with pytest.raises(ValidityError, match="a > r"):
        pair_bombieri(id0_pair(), 0.2, 0.4)
    with pytest.raises(ValidityError, match="0 <= r < 1"):
        pair_bombieri(id0_pair(), 0.9, 1.2)


def test_bombieri_value_witness_handling():
    h1 = geometric_kernel()
    h2 = derivative_kernel(0)  # same all-ones coefficients, but no witness
    with pytest.raises(ValidityError, match="witness"):
        bombieri_value(h1, h2, 0, 0.8, 0.2)
    tolerated = bombieri_value(h1, h2, 0, 0.8, 0.2, require_witness=False)
    assert tolerated == pytest.approx(bombieri_id0_with_a(0.2, 0.8),
                                      rel=1e-12)


def test_bombieri_value_endpoint_degeneracy():
    # at a = 1 the raw master formula collapses to r^{m+l} c_m d_m
    pair = derivative_pair(2)
    assert pair_bombieri(pair, 1.0, 0.25) == pytest.approx(1.0, rel=1e-15)
    assert pair_bombieri(integral_pair(), 1.0, 0.25) == pytest.approx(
        0.25, rel=1e-15)
    assert pair_bombieri(lacunary_pair(2), 1.0, 0.25) == 1.0
    # at r = 0 a pair with m + l = 0 degenerates to the constant term a,
    # while a positive shift m + l > 0 kills the whole expression
    assert bombieri_value(pair.h1, pair.h2, pair.l, 0.9, 0.0) == (
        pytest.approx(0.9, rel=1e-15))
    ipair = integral_pair()
    assert bombieri_value(ipair.h1, ipair.h2, ipair.l, 0.9, 0.0) == 0.0


def test_pair_bombieri_gap_branch():
    pair = lacunary_pair(2)
    assert pair_bombieri(pair, 0.9, 0.3) == pytest.approx(
        bombieri_lacunary_with_a(2, 0.3, 0.9), rel=1e-15)
    with pytest.raises(ValidityError, match="a > r"):
        pair_bombieri(pair, 0.2, 0.5)  # a <= r^2
    with pytest.raises(ValidityError):
        pair_bombieri(pair, 1.3, 0.2)
    # the condensation shortcut is wired for the unit lacunary shape only
    odd = KernelPair(shift_kernel(3), lacunary_gap_kernel(2), l=0,
                     name="odd-shape", gap=2)
    with pytest.raises(ValidityError, match="unit lacunary shape"):
        pair_bombieri(odd, 0.9, 0.3)


def test_radius_with_coefficient_errors():
    with pytest.raises(ValidityError):
        radius_with_coefficient(bombieri_id0_with_a, 0.8, bracket=(0.5, 0.5))
    with pytest.raises(BracketError):
        radius_with_coefficient(bombieri_id0_with_a, 0.8,
                                bracket=(0.01, 0.05))


# ----------------------------------------------------------------------
# profile and hypergeometric radii
# ----------------------------------------------------------------------


def test_profile_radius_geometric_profile():
    assert profile_radius(lambda n, x: x ** n, 1.0) == pytest.approx(
        1.0 / 3.0, abs=1e-12)
    # p = 2 halves the tail weight: 1 = sum x^n / (1 - x) ... root 1/2
    assert profile_radius(lambda n, x: x ** n, 2.0) == pytest.approx(
        0.5, abs=1e-12)


def test_profile_radius_guards():
    with pytest.raises(ValidityError):
        profile_radius(lambda n, x: x ** n, 0.0)
    with pytest.raises(ValidityError):
        profile_radius(lambda n, x: -1.0 if n == 0 else x ** n, 1.0)
    with pytest.raises(ValidityError):
        profile_radius(lambda n, x: 1e13 if n else 1.0, 1.0)
    with pytest.raises(ValidityError):
        profile_radius(lambda n, x: 1.0, 1.0)  # tail sum never converges


def test_radius_hypergeometric():
    # F(1,1,1;x) = 1/(1-x): F - 1 = 1/2 at x = 1/3
    result = radius_hypergeometric(HypergeometricParams(1, 1, 1))
    assert result.value == pytest.approx(1.0 / 3.0, abs=1e-10)
    # frozen minimal root for (1,1,2): -log(1-x)/x = 3/2
    result = radius_hypergeometric(HypergeometricParams(1, 1, 2))
    assert result.value == pytest.approx(0.582811643865804, abs=1e-10)
    assert float(mpmath.hyp2f1(1, 1, 2, result.value)) == pytest.approx(
        1.5, abs=1e-10)
    with pytest.raises(NoRootError):
        radius_hypergeometric(HypergeometricParams(0, 1, 2))


# ----------------------------------------------------------------------
# convergence-radius bound and the shift-pair corollary
# ----------------------------------------------------------------------


def test_convergence_radius_bound():
    assert convergence_radius_bound(geometric_kernel()) == 1.0
    assert convergence_radius_bound(dilation_kernel(4.0)) == pytest.approx(4.0)
    assert convergence_radius_bound(dilation_kernel(0.5)) == pytest.approx(0.5)
    entire = Kernel(name="entire", m=0,
                    coeff=lambda n: 1.0 / math.factorial(min(n, 170)),
                    conv_radius=math.inf, positive=True)
    assert convergence_radius_bound(entire) == 0.0
    with pytest.raises(NotApplicableError):
        convergence_radius_bound(polynomial_kernel([1.0, 2.0]))
    with pytest.raises(ValueError):
        convergence_radius_bound(shift_kernel(0), l=-1)


def test_shift_pair_lower_bound():
    # m = 1: root of r^4 + r^2 = 1, i.e. r^2 = (sqrt(5) - 1)/2
    expected = math.sqrt((math.sqrt(5.0) - 1.0) / 2.0)
    assert shift_pair_lower_bound(1) == pytest.approx(expected, abs=1e-13)
    assert shift_pair_lower_bound(1) == pytest.approx(0.7861513777574238,
                                                      abs=1e-13)
    values = [shift_pair_lower_bound(m) for m in range(1, 30)]
    assert all(b > a for a, b in zip(values, values[1:]))
    with pytest.raises(ValidityError):
        shift_pair_lower_bound(0)


def test_radius_result_to_dict_shape():
    result = RadiusResult(value=0.5, method="closed_form", residual=1e-16,
                          bracket=(0.1, 0.9), hypotheses=(("cond", True),))
    data = result.to_dict()
    assert list(data) == ["value", "method", "residual", "bracket",
                          "hypotheses"]
    assert data["bracket"] == [0.1, 0.9]
    assert data["hypotheses"] == [{"name": "cond", "ok": True}]
