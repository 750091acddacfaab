"""Kernels, operators and their diagnostics against coefficient oracles."""

import math

import numpy as np
import pytest

from bohrconv.exceptions import ValidityError
from bohrconv.kernels import (
    Kernel,
    KernelPair,
    OperatorSpec,
    apply_operator,
    cesaro,
    derivative_kernel,
    derivative_pair,
    dilation_kernel,
    geometric_kernel,
    hadamard_kernel,
    hadamard_sum,
    hypergeometric_kernel,
    id0_pair,
    identity_spec,
    inf_ratio,
    integral_kernel,
    integral_pair,
    lacunary_gap_kernel,
    lacunary_pair,
    operator_from_json,
    operator_to_json,
    pair_sum,
    polynomial_kernel,
    radius_of_convergence,
    shift_kernel,
    support_gap,
)
from bohrconv.series import from_coeffs
from bohrconv.specfun import HypergeometricParams


# ----------------------------------------------------------------------
# coefficient oracles per built-in kernel
# ----------------------------------------------------------------------


def test_geometric_and_shift_coefficients():
    g = geometric_kernel()
    assert [g.coeff(n) for n in range(5)] == [1.0] * 5
    s = shift_kernel(3)
    assert [s.coeff(n) for n in range(6)] == [0, 0, 0, 1.0, 1.0, 1.0]
    with pytest.raises(ValueError):
        shift_kernel(-1)


def test_derivative_coefficients_are_binomials():
    for m in (0, 1, 2, 3):
        k = derivative_kernel(m)
        assert k.m == m
        for n in range(m, 20):
            assert k.coeff(n) == pytest.approx(math.comb(n, m), rel=1e-14)
        assert k.coeff(m - 1) == 0.0 if m else True
    with pytest.raises(ValueError):
        derivative_kernel(-1)


def test_integral_coefficients():
    k = integral_kernel()
    for n in range(10):
        assert k.coeff(n) == pytest.approx(1.0 / (n + 1))


def test_lacunary_support():
    for m in (1, 2, 3):
        k = lacunary_gap_kernel(m)
        assert k.m == m + 1
        support = [n for n in range(40) if k.coeff(n) != 0.0]
        assert support == [m + 1 + j * m for j in range(len(support))]
    with pytest.raises(ValueError):
        lacunary_gap_kernel(0)


def test_lacunary_witness_bookkeeping():
    # gap 1 slices contiguously: the witness z/(1-z) is a convex half-plane
    # map, so it is proof-backed; gaps >= 2 would need z^m/(1-z^m), whose
    # derivative vanishes at 0, and carry no witness at all.
    k1 = lacunary_gap_kernel(1)
    assert k1.cok is not None and k1.cok.proven
    assert k1.cok.b(0) == 0.0 and k1.cok.b(1) == 1.0 and k1.cok.b(7) == 1.0
    assert lacunary_gap_kernel(2).cok is None
    assert lacunary_gap_kernel(3).cok is None
    assert geometric_kernel().cok.proven
    assert derivative_kernel(2).cok is None


def test_dilation_and_polynomial_kernels():
    d = dilation_kernel(0.5)
    assert [d.coeff(n) for n in range(4)] == [1.0, 0.5, 0.25, 0.125]
    assert d.conv_radius == 2.0
    with pytest.raises(ValueError):
        dilation_kernel(0.0)
    p = polynomial_kernel([1.0, 2.0, 3.0], m=1)
    assert [p.coeff(n) for n in range(6)] == [0, 1.0, 2.0, 3.0, 0, 0]
    assert p.polynomial
    with pytest.raises(ValueError):
        polynomial_kernel([])


def test_hypergeometric_kernel_extends_its_table():
    k = hypergeometric_kernel(HypergeometricParams(1, 1, 2), table_size=8)
    # gamma_n = 1 / (n + 1) for (1, 1, 2); index 20 forces a table extension
    assert k.coeff(20) == pytest.approx(1.0 / 21.0, rel=1e-13)
    assert k.coeff(3) == pytest.approx(0.25, rel=1e-14)


def test_hadamard_kernel_products():
    h = hadamard_kernel(derivative_kernel(1), shift_kernel(1))
    for n in range(1, 10):
        assert h.coeff(n) == pytest.approx(float(n))
    with pytest.raises(ValueError):
        hadamard_kernel(geometric_kernel(), shift_kernel(1))


def test_kernel_series_and_array():
    k = derivative_kernel(1)
    arr = k.coeff_array(5)
    np.testing.assert_allclose(arr, [0, 1, 2, 3, 4, 5])
    np.testing.assert_allclose(k.series(5).coeffs, arr)


# ----------------------------------------------------------------------
# operator specs and pairs
# ----------------------------------------------------------------------


def test_operator_spec_shift_guard():
    OperatorSpec(shift_kernel(2), -2)
    with pytest.raises(ValueError):
        OperatorSpec(shift_kernel(2), -3)
    with pytest.raises(ValueError):
        Kernel(name="bad", m=-1, coeff=lambda n: 1.0, conv_radius=1.0,
               positive=True)


def test_kernel_pair_structure():
    with pytest.raises(ValueError):
        KernelPair(geometric_kernel(), shift_kernel(1), l=0, name="mixed")
    pair = derivative_pair(2)
    assert pair.m == 2
    assert pair.head_coeff() == 1.0
    assert pair.operator().kernel.name == "derivative"
    assert pair.operator().l == -2
    assert id0_pair().gap == 1
    assert lacunary_pair(3).gap == 3
    assert integral_pair().l == 1


def test_identity_spec():
    spec = identity_spec(2)
    assert spec.m == 2 and spec.l == 0
    assert spec.kernel.coeff(2) == 1.0 and spec.kernel.coeff(1) == 0.0


def test_apply_operator_termwise_oracle():
    rng = np.random.default_rng(3)
    coeffs = np.zeros(31, dtype=np.complex128)
    coeffs[2:] = rng.standard_normal(29) + 1j * rng.standard_normal(29)
    f = from_coeffs(coeffs)
    out = apply_operator(OperatorSpec(derivative_kernel(2), -2), f)
    assert out.order == 28
    expected = np.array([math.comb(n, 2) * coeffs[n] for n in range(2, 31)])
    np.testing.assert_allclose(out.coeffs, expected, rtol=1e-14)


def test_apply_operator_positive_shift():
    f = from_coeffs([1.0, 2.0, 3.0])
    out = apply_operator(OperatorSpec(integral_kernel(), 1), f)
    # antiderivative: a_n / (n + 1) moved to index n + 1
    np.testing.assert_allclose(out.coeffs, [0.0, 1.0, 1.0, 1.0])


def test_apply_operator_vanish_guard():
    f = from_coeffs([1.0, 2.0])
    with pytest.raises(ValueError):
        apply_operator(OperatorSpec(shift_kernel(1), 0), f)


def test_cesaro_prefix_mean_oracle():
    rng = np.random.default_rng(9)
    coeffs = rng.standard_normal(12) + 1j * rng.standard_normal(12)
    out = cesaro(from_coeffs(coeffs))
    for n in range(12):
        assert out.coeffs[n] == pytest.approx(coeffs[:n + 1].sum() / (n + 1),
                                              rel=1e-13)


# ----------------------------------------------------------------------
# diagnostics
# ----------------------------------------------------------------------


def test_inf_ratio_exact_values():
    r = inf_ratio(geometric_kernel())
    assert (r.value, r.exact) == (1.0, True)
    for m in (0, 1, 2, 3):
        r = inf_ratio(derivative_kernel(m))
        assert r.value == pytest.approx(2.0 / (m + 2.0))
        assert r.exact
    r = inf_ratio(dilation_kernel(0.5))
    assert (r.value, r.exact) == (2.0, True)
    # the antiderivative ratios (n+2)/(n+1) decrease to 1: the infimum is a
    # limit, not an attained minimum, but its exact value is still 1
    r = inf_ratio(integral_kernel())
    assert (r.value, r.exact) == (1.0, True)


def test_inf_ratio_scanned_estimate():
    k = hypergeometric_kernel(HypergeometricParams(1, 1, 2))
    r = inf_ratio(k)
    assert not r.exact
    assert r.horizon == 1024
    assert 1.0 < r.value < 1.01  # ratios (n+2)/(n+1) -> 1 from above


def test_inf_ratio_requires_positivity():
    with pytest.raises(ValidityError):
        inf_ratio(polynomial_kernel([1.0, 2.0]))
    with pytest.raises(ValidityError):
        inf_ratio(lacunary_gap_kernel(2))


def test_support_gap():
    assert support_gap(geometric_kernel()) == 1
    assert support_gap(derivative_kernel(3)) == 1
    assert support_gap(integral_kernel()) == 1
    assert support_gap(lacunary_gap_kernel(1)) == 1
    assert support_gap(lacunary_gap_kernel(2)) == 2
    assert support_gap(lacunary_gap_kernel(3)) == 3
    assert support_gap(polynomial_kernel([1.0, 0.0, 0.0, 2.0])) == 3
    assert support_gap(polynomial_kernel([2.0])) == 1  # single support point


def test_radius_of_convergence():
    assert radius_of_convergence(geometric_kernel()) == (1.0, True)
    assert radius_of_convergence(dilation_kernel(4.0)) == (0.25, True)
    value, exact = radius_of_convergence(polynomial_kernel([1.0, 2.0]))
    assert math.isinf(value) and exact
    # root-test estimate for a kernel without a declared radius
    k = Kernel(name="custom", m=0, coeff=lambda n: 0.5 ** n,
               conv_radius=None, positive=True)
    value, exact = radius_of_convergence(k)
    assert not exact
    assert value == pytest.approx(2.0, rel=1e-3)


def test_hadamard_sum_matches_closed_forms():
    pair = id0_pair()
    assert hadamard_sum(pair.h1, pair.h2, 0.3) == pytest.approx(1.0 / 0.7,
                                                               rel=1e-12)
    lac = lacunary_pair(2)
    x = 0.4
    assert hadamard_sum(lac.h1, lac.h2, x) == pytest.approx(
        x ** 3 / (1.0 - x ** 2), rel=1e-12)
    assert pair_sum(lac, x) == pytest.approx(x ** 3 / (1.0 - x ** 2),
                                             rel=1e-14)


def test_hadamard_sum_divergence_guard():
    g = geometric_kernel()
    with pytest.raises(ValidityError):
        hadamard_sum(g, g, 1.2)
    with pytest.raises(ValidityError):
        hadamard_sum(g, g, 1.0)


def test_pair_sum_without_closed_form():
    pair = KernelPair(geometric_kernel(), geometric_kernel(), l=0, name="raw")
    assert pair_sum(pair, 0.25) == pytest.approx(1.0 / 0.75, rel=1e-12)


# ----------------------------------------------------------------------
# JSON descriptors
# ----------------------------------------------------------------------


@pytest.mark.parametrize("spec", [
    OperatorSpec(geometric_kernel(), 0),
    OperatorSpec(shift_kernel(2), -2),
    OperatorSpec(derivative_kernel(3), -3),
    OperatorSpec(integral_kernel(), 1),
    OperatorSpec(lacunary_gap_kernel(2), -3),
    OperatorSpec(dilation_kernel(0.5), 0),
    OperatorSpec(hypergeometric_kernel(HypergeometricParams(1, 1, 2)), 0),
    OperatorSpec(polynomial_kernel([1.0, 2.0, 3.0], m=1), -1),
])
def test_operator_json_round_trip(spec):
    data = operator_to_json(spec)
    rebuilt = operator_from_json(data)
    assert rebuilt.kernel.name == spec.kernel.name
    assert rebuilt.kernel.m == spec.kernel.m
    assert rebuilt.l == spec.l
    for n in range(spec.kernel.m, spec.kernel.m + 24):
        assert rebuilt.kernel.coeff(n) == pytest.approx(spec.kernel.coeff(n),
                                                        rel=1e-13)


def test_operator_json_error_paths():
    with pytest.raises(ValueError):
        operator_from_json({"name": "mystery", "m": 0, "l": 0, "params": {}})
    data = operator_to_json(OperatorSpec(shift_kernel(2), -2))
    data["m"] = 5
    with pytest.raises(ValueError):
        operator_from_json(data)
