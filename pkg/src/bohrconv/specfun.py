"""Scalar special functions used by the radius formulas.

The module keeps its own small implementations so every constant the
package reports can be recomputed from first principles:

* ``lambert_w`` -- the real branch W >= -1 of the inverse of w e^w,
* ``dilog`` -- the dilogarithm Li_2 on [0, 1],
* ``pochhammer`` -- rising factorials (a)_n,
* ``hypergeometric_coeffs`` -- Gauss coefficients (a)_n (b)_n / ((c)_n (1)_n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, ValidityError

_BRANCH_POINT = -math.exp(-1.0)  # leftmost point of the W >= -1 branch
_PI2_OVER_6 = math.pi * math.pi / 6.0


def _w_branch_series(p: float) -> float:
    """Expansion of W around -1/e in p = sqrt(2 (e x + 1))."""
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0
           + p * (-43.0 / 540.0 + p * (769.0 / 17280.0)))))


def lambert_w(x: float) -> float:
    """Real branch W(x) >= -1 of the equation w e^w = x, for x >= -1/e.

    Near the branch point the series in sqrt(2 (e x + 1)) is used directly;
    elsewhere a log-based or small-argument guess is polished by Halley
    iteration until |w e^w - x| <= 1e-13 max(1, |x|).
    """
    x = float(x)
    if math.isnan(x):
        raise DomainError("lambert_w is undefined for NaN")
    if x < _BRANCH_POINT:
        if x >= _BRANCH_POINT - 1e-15:
            x = _BRANCH_POINT
        else:
            raise DomainError(f"lambert_w requires x >= -1/e, got {x}")
    if x == 0.0:
        return 0.0

    p = math.sqrt(max(0.0, 2.0 * (math.e * x + 1.0)))
    if p < 1e-3:
        # series error is O(p^6), far below the target tolerance
        return _w_branch_series(p)

    if x < -0.2:
        w = _w_branch_series(p)
    elif x < 3.0:
        w = math.log1p(x) * 0.8
    else:
        lx = math.log(x)
        w = lx - math.log(lx)

    target = 1e-14 * max(1.0, abs(x))
    for _ in range(80):
        ew = math.exp(w)
        fw = w * ew - x
        if abs(fw) <= target:
            break
        w1 = w + 1.0
        denom = ew * w1 - (w + 2.0) * fw / (2.0 * w1)
        step = fw / denom
        w -= step
        if abs(step) <= 1e-16 * (1.0 + abs(w)):
            break
    return max(w, -1.0)


def dilog(x: float) -> float:
    """Dilogarithm Li_2(x) = sum_n x^n / n^2 on [0, 1].

    The series is truncated once the geometric tail bound
    x^(M+1) / ((M+1)^2 (1-x)) drops below 1e-13 and summed smallest terms
    first, so the absolute error stays within 1e-12 on the whole range.
    """
    x = float(x)
    if not 0.0 <= x <= 1.0:
        if -1e-15 <= x < 0.0:
            x = 0.0
        elif 1.0 < x <= 1.0 + 1e-15:
            x = 1.0
        else:
            raise DomainError(f"dilog implemented on [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return _PI2_OVER_6
    m = 32
    while x ** (m + 1) / ((m + 1) ** 2 * (1.0 - x)) > 1e-13:
        m *= 2
        if m > 1 << 22:  # unreachable for x <= 1 - 1e-6; safety valve
            break
    n = np.arange(1, m + 1, dtype=np.float64)
    terms = x ** n / (n * n)
    return float(terms[::-1].sum())


def pochhammer(a: float, n: int) -> float:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1."""
    if n < 0:
        raise ValueError("pochhammer order must be non-negative")
    out = 1.0
    for k in range(n):
        out *= a + k
    return out


@dataclass(frozen=True)
class HypergeometricParams:
    """Parameter triple (a, b, c) of a Gauss hypergeometric function."""

    a: float  # first numerator parameter, > -1
    b: float  # second numerator parameter, > -1
    c: float  # denominator parameter, > -1

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            value = getattr(self, name)
            if not value > -1.0:
                raise ValueError(f"parameter {name} must exceed -1, got {value}")


def hypergeometric_coeffs(params: HypergeometricParams, count: int) -> np.ndarray:
    """First ``count + 1`` coefficients gamma_n = (a)_n (b)_n / ((c)_n (1)_n).

    Computed by the ratio recurrence gamma_{n+1} = gamma_n (a+n)(b+n) /
    ((c+n)(1+n)).  Parameter sets producing a negative coefficient, or a
    vanishing denominator with a surviving numerator, are rejected.
    """
    if count < 0:
        raise ValueError("coefficient count must be non-negative")
    out = np.zeros(count + 1, dtype=np.float64)
    out[0] = 1.0
    for n in range(count):
        num = (params.a + n) * (params.b + n)
        den = (params.c + n) * (1.0 + n)
        if num == 0.0:
            break  # all later coefficients vanish
        if den == 0.0:
            raise ValidityError(
                f"coefficient recurrence hits a zero denominator at n={n}")
        out[n + 1] = out[n] * num / den
        if out[n + 1] < 0.0:
            raise ValidityError(
                f"negative hypergeometric coefficient at n={n + 1}; "
                "parameters rejected")
    return out


def gauss_value(params: HypergeometricParams, x: float,
                tol: float = 1e-16, max_terms: int = 200_000) -> float:
    """Gauss series F(a,b,c;x) = sum gamma_n x^n by direct term recurrence.

    Terms are generated on the fly (term_{n+1} = term_n * ratio_n * x), the
    sum stops once a term drops below ``tol`` relative to the
    accumulated value, and growth past 1e12 is reported as divergence.
    """
    term = 1.0
    total = 0.0
    for n in range(max_terms):
        total += term
        num = (params.a + n) * (params.b + n)
        if num == 0.0:
            return total  # the series terminates here
        den = (params.c + n) * (1.0 + n)
        if den == 0.0:
            raise ValidityError(
                f"coefficient recurrence hits a zero denominator at n={n}")
        term *= x * num / den
        if abs(term) > 1e12:
            raise ValidityError(f"Gauss series diverges at x={x}")
        if abs(term) <= tol * max(abs(total), 1e-300):
            return total + term
    raise ValidityError(f"Gauss series did not converge at x={x}")
