"""Truncated power series arithmetic on the unit disk.

A :class:`TruncatedSeries` holds the first ``order + 1`` Taylor coefficients
of an analytic function f(z) = sum a_n z^n, optionally together with a
geometric bound on the discarded tail.  All values are immutable after
construction, so series can be shared freely.

The module provides the operations the rest of the package is built on:
Hadamard (coefficientwise) products, majorant sums M_r f = sum |a_n| r^n,
composition with functions vanishing at the origin, boundary sup-norm
estimation, and the disc automorphism family z^m (z + a) / (1 + a z) that
is extremal for every Bohr-type problem treated here.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

#: Truncation order used when callers do not pass one explicitly.
DEFAULT_ORDER = 256

#: Environment variable overriding :data:`DEFAULT_ORDER`.
ORDER_ENV = "BOHRCONV_ORDER"

#: Relative threshold below which a leading coefficient counts as zero.
VANISH_TOL = 1e-15

#: Radius of the circle used for boundary sup-norm estimates.
BOUNDARY_RADIUS = 1.0 - 1e-9


def default_order() -> int:
    """Return the default truncation order, honoring ``BOHRCONV_ORDER``."""
    raw = os.environ.get(ORDER_ENV)
    if raw is None:
        return DEFAULT_ORDER
    try:
        order = int(raw)
    except ValueError as exc:
        raise ValueError(f"{ORDER_ENV} must be an integer, got {raw!r}") from exc
    if order < 1:
        raise ValueError(f"{ORDER_ENV} must be positive, got {order}")
    return order


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """First ``order + 1`` Taylor coefficients of an analytic function.

    ``tail``, when present, is a pair ``(C, q)`` certifying ``|a_n| <= C q^n``
    for every coefficient beyond the truncation order; it lets majorant
    values carry an explicit truncation-error estimate.
    """

    coeffs: np.ndarray  # complex coefficients a_0 .. a_N
    tail: tuple[float, float] | None = None  # geometric tail bound (C, q)

    def __post_init__(self) -> None:
        arr = np.array(self.coeffs, dtype=np.complex128)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coefficients must form a non-empty 1-d sequence")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coefficients must all be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)
        if self.tail is not None:
            c, q = self.tail
            if c < 0 or q < 0:
                raise ValueError("tail bound (C, q) must be non-negative")

    @property
    def order(self) -> int:
        """Truncation order N."""
        return len(self.coeffs) - 1

    @property
    def vanish_order(self) -> int:
        """Index of the first coefficient that is not numerically zero.

        The threshold is relative to the largest coefficient modulus; an
        identically zero series reports 0.
        """
        mags = np.abs(self.coeffs)
        peak = float(mags.max())
        if peak == 0.0:
            return 0
        return int(np.argmax(mags > VANISH_TOL * peak))

    # ------------------------------------------------------------------
    # pointwise data
    # ------------------------------------------------------------------

    def evaluate(self, z: complex) -> complex:
        """Evaluate the truncated series at ``z`` by Horner's scheme."""
        return complex(np.polyval(self.coeffs[::-1], z))

    def majorant(self, r: float) -> float:
        """Majorant value M_r f = sum_n |a_n| r^n for ``r >= 0``."""
        if r < 0:
            raise ValueError("majorant radius must be non-negative")
        return float(np.polyval(np.abs(self.coeffs)[::-1], r))

    def tail_bound(self, r: float) -> float | None:
        """Bound on the discarded majorant tail, or None when unknown."""
        if self.tail is None:
            return None
        c, q = self.tail
        x = q * r
        if x >= 1.0:
            return None
        return c * x ** (self.order + 1) / (1.0 - x)

    def sup_norm_estimate(self, grid_points: int = 2048) -> float:
        """Max of |f| over ``grid_points`` equispaced points on a circle.

        The circle has radius ``1 - 1e-9``; the returned value is a lower
        bound for the sup norm on the closed unit disk that is sharp for the
        bounded functions sampled in this package.  Evaluation folds the
        coefficients modulo the grid size and applies one FFT, which gives
        the exact values of the truncated polynomial at all grid points.
        """
        if grid_points < 64:
            raise ValueError("grid_points must be at least 64")
        n = len(self.coeffs)
        scaled = self.coeffs * BOUNDARY_RADIUS ** np.arange(n)
        blocks = -(-n // grid_points)  # ceil division
        padded = np.zeros(blocks * grid_points, dtype=np.complex128)
        padded[:n] = scaled
        folded = padded.reshape(blocks, grid_points).sum(axis=0)
        return float(np.abs(np.fft.fft(folded)).max())

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        out = np.zeros(n, dtype=np.complex128)
        out[: len(self.coeffs)] += self.coeffs
        out[: len(other.coeffs)] += other.coeffs
        return TruncatedSeries(out)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return multiply(self, other)
        if isinstance(other, (int, float, complex)):
            return TruncatedSeries(self.coeffs * other)
        return NotImplemented

    __rmul__ = __mul__


# ----------------------------------------------------------------------
# constructors
# ----------------------------------------------------------------------


def from_coeffs(values: Sequence[complex],
                tail: tuple[float, float] | None = None) -> TruncatedSeries:
    """Build a series from an explicit coefficient sequence."""
    return TruncatedSeries(np.asarray(values, dtype=np.complex128), tail)


def zero_series(order: int) -> TruncatedSeries:
    """The zero function truncated at ``order``."""
    return TruncatedSeries(np.zeros(order + 1, dtype=np.complex128))


def monomial(exponent: int, order: int, coefficient: complex = 1.0) -> TruncatedSeries:
    """The monomial ``coefficient * z**exponent`` truncated at ``order``."""
    if exponent < 0 or exponent > order:
        raise ValueError("monomial exponent must lie in [0, order]")
    out = np.zeros(order + 1, dtype=np.complex128)
    out[exponent] = coefficient
    return TruncatedSeries(out, tail=(0.0, 0.0))


def geometric_series(order: int, ratio: complex = 1.0) -> TruncatedSeries:
    """Coefficients of 1 / (1 - ratio * z) truncated at ``order``."""
    coeffs = np.asarray(ratio, dtype=np.complex128) ** np.arange(order + 1)
    mag = abs(ratio)
    tail = (1.0, mag) if mag < 1.0 else None
    return TruncatedSeries(coeffs, tail)


def disc_automorphism(a: float, m: int = 0,
                      order: int | None = None) -> TruncatedSeries:
    """Series of z^m (z + a) / (1 + a z) for real ``0 <= a < 1``.

    The coefficient at index m is a and at index m + n, n >= 1, it equals
    (1 - a^2)(-a)^(n-1).  This family attains every closed-form Bohr
    quantity computed by the package.
    """
    if not 0.0 <= a < 1.0:
        raise ValueError("automorphism parameter must satisfy 0 <= a < 1")
    if m < 0:
        raise ValueError("vanishing order must be non-negative")
    n = default_order() if order is None else int(order)
    if n < m + 1:
        raise ValueError("order too small to hold the leading coefficients")
    out = np.zeros(n + 1, dtype=np.complex128)
    out[m] = a
    k = np.arange(1, n - m + 1)
    out[m + 1:] = (1.0 - a * a) * (-a) ** (k - 1)
    tail = ((1.0 - a * a) * a ** (-(m + 1)), a) if a > 0 else (0.0, 0.0)
    return TruncatedSeries(out, tail)


# ----------------------------------------------------------------------
# operations
# ----------------------------------------------------------------------


def hadamard(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Hadamard product (f * g)_n = a_n b_n, truncated at the shorter order."""
    n = min(len(f.coeffs), len(g.coeffs))
    tail = None
    if f.tail is not None and g.tail is not None:
        tail = (f.tail[0] * g.tail[0], f.tail[1] * g.tail[1])
    return TruncatedSeries(f.coeffs[:n] * g.coeffs[:n], tail)


def multiply(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the shorter of the two orders."""
    n = min(len(f.coeffs), len(g.coeffs))
    return TruncatedSeries(np.convolve(f.coeffs, g.coeffs)[:n])


def compose(g: TruncatedSeries, omega: TruncatedSeries) -> TruncatedSeries:
    """Series of g(omega(z)) for an inner function with omega(0) = 0.

    Coefficients through the shorter truncation order are exact; the
    computation runs Horner's scheme in the series algebra.
    """
    peak = float(np.abs(omega.coeffs).max())
    if abs(omega.coeffs[0]) > VANISH_TOL * max(1.0, peak):
        raise ValueError("inner series must vanish at the origin")
    n = min(g.order, omega.order)
    inner = omega.coeffs[: n + 1].copy()
    inner[0] = 0.0
    acc = np.zeros(n + 1, dtype=np.complex128)
    acc[0] = g.coeffs[n]
    for k in range(n - 1, -1, -1):
        acc = np.convolve(acc, inner)[: n + 1]
        acc[0] += g.coeffs[k]
    return TruncatedSeries(acc)


def evaluate(f: TruncatedSeries, z: complex) -> complex:
    """Functional form of :meth:`TruncatedSeries.evaluate`."""
    return f.evaluate(z)


def majorant(f: TruncatedSeries, r: float) -> float:
    """Functional form of :meth:`TruncatedSeries.majorant`."""
    return f.majorant(r)


def sup_norm_estimate(f: TruncatedSeries, grid_points: int = 2048) -> float:
    """Functional form of :meth:`TruncatedSeries.sup_norm_estimate`."""
    return f.sup_norm_estimate(grid_points)
