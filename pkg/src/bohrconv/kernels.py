"""Convolution kernels and the operators they induce.

A kernel h(z) = sum_{n >= m} c_n z^n acts on functions vanishing to order m
through the shifted Hadamard convolution

    (A_h^{m,l} f)(z) = z^l (h * f)(z) = sum_{n >= m} c_n a_n z^{n+l},

with m + l >= 0 so no negative powers appear.  The closed-form Bohr
machinery in :mod:`bohrconv.bohr` works with a *pair* of kernels (h1, h2)
whose Hadamard product drives the operator; h1 must have positive
coefficients and h2 carries a factorization witness b_n^2 = d_{n+m} whose
generating function lies in the closed convex hull of the convex-univalent
class.  Witnesses for the built-in kernels are proof-backed; user supplied
ones are only asserted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .exceptions import NotApplicableError, ValidityError
from .series import TruncatedSeries, default_order
from .specfun import HypergeometricParams, hypergeometric_coeffs

_SUM_TOL = 1e-16
_MAX_SUM_TERMS = 200_000


@dataclass(frozen=True, eq=False)
class CoKWitness:
    """Factorization witness b_n (n >= 1) with b_n^2 = d_{n+m}.

    ``proven`` distinguishes built-in witnesses backed by a proof from user
    assertions; the flag is surfaced in hypothesis reports but never checked
    algorithmically, since membership in the convex hull of the convex class
    is not finitely decidable from coefficients.
    """

    b: Callable[[int], float]
    proven: bool = False


@dataclass(frozen=True, eq=False)
class Kernel:
    """Coefficient functional of a convolution kernel.

    ``coeff(n)`` returns c_n (zero below the vanishing order ``m``);
    ``conv_radius`` is the radius of convergence (may be ``inf``);
    ``positive`` asserts c_n > 0 for every n >= m;
    ``inf_ratio_exact`` stores inf_{n > m} c_n / c_{n+1} when known
    analytically; ``polynomial`` marks kernels with finitely many nonzero
    coefficients; ``params`` feeds JSON serialization.
    """

    name: str
    m: int
    coeff: Callable[[int], float]
    conv_radius: float
    positive: bool
    inf_ratio_exact: float | None = None
    cok: CoKWitness | None = None
    polynomial: bool = False
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError("kernel vanishing order must be non-negative")

    def coeff_array(self, order: int) -> np.ndarray:
        """Coefficients c_0 .. c_order as a float array."""
        return np.array([self.coeff(n) for n in range(order + 1)], dtype=np.float64)

    def series(self, order: int | None = None) -> TruncatedSeries:
        """The kernel itself as a truncated series."""
        n = default_order() if order is None else int(order)
        return TruncatedSeries(self.coeff_array(n).astype(np.complex128))


@dataclass(frozen=True, eq=False)
class OperatorSpec:
    """Shifted convolution operator A_h^{m,l}: requires m + l >= 0."""

    kernel: Kernel
    l: int

    def __post_init__(self) -> None:
        if self.kernel.m + self.l < 0:
            raise ValueError(
                f"operator shift {self.l} drops below order 0 for a kernel "
                f"vanishing to order {self.kernel.m}")

    @property
    def m(self) -> int:
        return self.kernel.m


@dataclass(frozen=True, eq=False)
class KernelPair:
    """Kernel pair (h1, h2) with common vanishing order and operator shift l.

    ``conv_value``, when present, evaluates the Hadamard product series
    (h1 * h2)(x) = sum c_n d_n x^n in closed form.  ``gap`` is the common
    difference of the product-kernel support: a gap-g operator keeps only
    every g-th coefficient past the vanishing order, and for g >= 2 its
    Bohr problem condenses to the gap-1 problem of the sliced function
    (see :func:`bohrconv.bohr.pair_bombieri`).
    """

    h1: Kernel
    h2: Kernel
    l: int
    name: str
    conv_value: Callable[[float], float] | None = None
    product: Kernel | None = None
    gap: int = 1

    def __post_init__(self) -> None:
        if self.h1.m != self.h2.m:
            raise ValueError("paired kernels must share their vanishing order")
        if self.h1.m + self.l < 0:
            raise ValueError("pair shift drops below order 0")

    @property
    def m(self) -> int:
        return self.h1.m

    def head_coeff(self) -> float:
        """Leading product c_m d_m."""
        return self.h1.coeff(self.m) * self.h2.coeff(self.m)

    def operator(self) -> OperatorSpec:
        """The induced operator A_{h1 * h2}^{m,l}.

        Built-in pairs carry their product kernel explicitly (for each of
        them h2 is the all-ones mask on the support of h1, or vice versa),
        which keeps the operator JSON-serializable.
        """
        kernel = self.product or hadamard_kernel(self.h1, self.h2)
        return OperatorSpec(kernel, self.l)


# ----------------------------------------------------------------------
# built-in kernels
# ----------------------------------------------------------------------


def _binom(n: int, m: int) -> float:
    """Binomial coefficient by the guarded multiplicative recurrence."""
    if n < m:
        return 0.0
    out = 1.0
    for k in range(m):
        out = out * (n - k) / (k + 1)
    return out


def geometric_kernel() -> Kernel:
    """h(z) = 1 / (1 - z): the identity kernel on H_0."""
    return Kernel(
        name="geometric", m=0, coeff=lambda n: 1.0 if n >= 0 else 0.0,
        conv_radius=1.0, positive=True, inf_ratio_exact=1.0,
        cok=CoKWitness(lambda n: 1.0, proven=True), params={})


def shift_kernel(m: int) -> Kernel:
    """h(z) = z^m / (1 - z): the identity kernel on H_m."""
    if m < 0:
        raise ValueError("shift order must be non-negative")
    return Kernel(
        name="shift", m=m, coeff=lambda n, _m=m: 1.0 if n >= _m else 0.0,
        conv_radius=1.0, positive=True, inf_ratio_exact=1.0,
        cok=CoKWitness(lambda n: 1.0, proven=True), params={"m": m})


def derivative_kernel(m: int) -> Kernel:
    """h(z) = z^m / (1 - z)^(m+1), so c_n = binom(n, m).

    Convolving with this kernel and shifting by l = -m realizes the
    normalized m-th derivative f^(m) / m!.
    """
    if m < 0:
        raise ValueError("derivative order must be non-negative")
    return Kernel(
        name="derivative", m=m,
        coeff=lambda n, _m=m: _binom(n, _m),
        conv_radius=1.0, positive=True,
        inf_ratio_exact=2.0 / (m + 2.0), params={"m": m})


def integral_kernel() -> Kernel:
    """h(z) = -log(1 - z) / z, so c_n = 1 / (n + 1).

    Convolving with this kernel and shifting by l = +1 realizes the
    antiderivative vanishing at the origin.  The coefficient ratios
    (n + 2) / (n + 1) decrease to 1, so the infimum 1 is a limit rather
    than an attained minimum.
    """
    return Kernel(
        name="integral", m=0, coeff=lambda n: 1.0 / (n + 1.0),
        conv_radius=1.0, positive=True, inf_ratio_exact=1.0, params={})


def lacunary_gap_kernel(m: int) -> Kernel:
    """h(z) = z^(m+1) / (1 - z^m): support {m + 1 + k m, k >= 0}.

    A factorization witness must satisfy b_n^2 = d_{n + m + 1} (offset by
    the vanishing order m + 1), which forces b_n = 1 exactly for n = 0 mod
    m.  For m = 1 that is the half-plane map z/(1 - z), a convex map, so
    the witness is proof-backed.  For m >= 2 the witness series would be
    z^m/(1 - z^m), whose derivative at the origin is 0 instead of the 1
    every member of the closed convex hull of the convex class must have;
    no witness exists and ``cok`` is None.  The Bohr closed form for those
    gaps comes from the condensation argument in
    :func:`bohrconv.bohr.bombieri_lacunary_with_a` instead.
    """
    if m < 1:
        raise ValueError("lacunary gap must be at least 1")

    def coeff(n: int, _m: int = m) -> float:
        return 1.0 if n >= _m + 1 and (n - _m - 1) % _m == 0 else 0.0

    witness = CoKWitness(lambda n: 1.0 if n >= 1 else 0.0, proven=True)
    return Kernel(
        name="lacunary", m=m + 1, coeff=coeff,
        conv_radius=1.0, positive=(m == 1),
        inf_ratio_exact=1.0 if m == 1 else None,
        cok=witness if m == 1 else None, params={"m": m})


def dilation_kernel(factor: float) -> Kernel:
    """h(z) = 1 / (1 - factor * z): realizes f(z) -> f(factor * z)."""
    if factor <= 0:
        raise ValueError("dilation factor must be positive")
    return Kernel(
        name="dilation", m=0, coeff=lambda n, _s=factor: _s ** n,
        conv_radius=1.0 / factor, positive=True,
        inf_ratio_exact=1.0 / factor, params={"factor": factor})


def hypergeometric_kernel(params: HypergeometricParams,
                          table_size: int | None = None) -> Kernel:
    """Kernel with Gauss coefficients gamma_n = (a)_n (b)_n / ((c)_n (1)_n).

    Coefficients are tabulated by the ratio recurrence; requests beyond the
    table extend it on the fly.
    """
    size = max(default_order(), 1024) if table_size is None else table_size
    table = hypergeometric_coeffs(params, size)
    store = {"table": table}

    def coeff(n: int) -> float:
        tab = store["table"]
        if n >= len(tab):
            store["table"] = hypergeometric_coeffs(params, 2 * n)
            tab = store["table"]
        return float(tab[n])

    terminated = bool(np.any(table[1:] == 0.0)) and table[-1] == 0.0
    return Kernel(
        name="hypergeometric", m=0, coeff=coeff,
        conv_radius=math.inf if terminated else 1.0,
        positive=not terminated,
        polynomial=terminated,
        params={"a": params.a, "b": params.b, "c": params.c})


def polynomial_kernel(coeffs, m: int = 0) -> Kernel:
    """Kernel with finitely many coefficients c_m .. c_{m+len-1}."""
    values = [float(c) for c in coeffs]
    if not values:
        raise ValueError("polynomial kernel needs at least one coefficient")

    def coeff(n: int, _m: int = m, _v: tuple = tuple(values)) -> float:
        k = n - _m
        return _v[k] if 0 <= k < len(_v) else 0.0

    return Kernel(
        name="polynomial", m=m, coeff=coeff,
        conv_radius=math.inf, positive=False, polynomial=True,
        params={"m": m, "coeffs": values})


def hadamard_kernel(h1: Kernel, h2: Kernel) -> Kernel:
    """Coefficientwise product kernel of ``h1`` and ``h2``."""
    if h1.m != h2.m:
        raise ValueError("kernels must share their vanishing order")
    return Kernel(
        name=f"{h1.name}*{h2.name}", m=h1.m,
        coeff=lambda n, _a=h1.coeff, _b=h2.coeff: _a(n) * _b(n),
        conv_radius=h1.conv_radius * h2.conv_radius,
        positive=h1.positive and h2.positive,
        params={"h1": h1.name, "h2": h2.name})


# ----------------------------------------------------------------------
# built-in kernel pairs
# ----------------------------------------------------------------------


def id0_pair() -> KernelPair:
    """Identity pair on H_0: h1 = h2 = 1 / (1 - z), no shift."""
    return KernelPair(
        geometric_kernel(), geometric_kernel(), l=0, name="id0",
        conv_value=lambda x: 1.0 / (1.0 - x),
        product=geometric_kernel())


def derivative_pair(m: int) -> KernelPair:
    """Normalized m-th derivative pair: h1 = z^m/(1-z)^(m+1), h2 = z^m/(1-z)."""
    return KernelPair(
        derivative_kernel(m), shift_kernel(m), l=-m, name=f"derivative[{m}]",
        conv_value=lambda x, _m=m: x ** _m / (1.0 - x) ** (_m + 1),
        product=derivative_kernel(m))


def integral_pair() -> KernelPair:
    """Antiderivative pair: h1 = -log(1-z)/z, h2 = 1/(1-z), shift +1."""

    def conv(x: float) -> float:
        if x == 0.0:
            return 1.0
        return -math.log1p(-x) / x

    return KernelPair(integral_kernel(), geometric_kernel(), l=1,
                      name="integral", conv_value=conv,
                      product=integral_kernel())


def lacunary_pair(m: int) -> KernelPair:
    """Lacunary pair of gap m: h1 = z^(m+1)/(1-z), h2 = z^(m+1)/(1-z^m).

    Both kernels vanish to order m + 1 and the shift is -(m + 1); the
    induced operator keeps exactly the coefficients with index 1 mod m.
    For m >= 2 the pair has no factorization witness (see
    :func:`lacunary_gap_kernel`) and its closed form is the condensed one.
    """
    return KernelPair(
        shift_kernel(m + 1), lacunary_gap_kernel(m), l=-(m + 1),
        name=f"lacunary[{m}]",
        conv_value=lambda x, _m=m: x ** (_m + 1) / (1.0 - x ** _m),
        product=lacunary_gap_kernel(m), gap=m)


def identity_spec(m: int = 0) -> OperatorSpec:
    """The identity operator on H_m as an operator spec."""
    return OperatorSpec(shift_kernel(m), l=0)


# ----------------------------------------------------------------------
# operator application
# ----------------------------------------------------------------------


def apply_operator(spec: OperatorSpec, f: TruncatedSeries) -> TruncatedSeries:
    """Apply A_h^{m,l} to a series vanishing to order at least m."""
    m = spec.kernel.m
    if f.vanish_order < m and np.any(np.abs(f.coeffs) > 0):
        raise ValueError(
            f"series vanishes to order {f.vanish_order}, operator needs {m}")
    top = f.order
    out_order = max(top + spec.l, 0)
    out = np.zeros(out_order + 1, dtype=np.complex128)
    if top >= m:
        idx = np.arange(m, top + 1)
        weights = spec.kernel.coeff_array(top)[m:]
        out[idx + spec.l] = weights * f.coeffs[m:]
    return TruncatedSeries(out)


def cesaro(f: TruncatedSeries) -> TruncatedSeries:
    """Cesaro means: coefficient n becomes (a_0 + ... + a_n) / (n + 1)."""
    sums = np.cumsum(f.coeffs)
    return TruncatedSeries(sums / np.arange(1, len(f.coeffs) + 1))


# ----------------------------------------------------------------------
# kernel diagnostics
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class InfRatio:
    """Value of inf_{n > m} c_n / c_{n+1} with an exactness tag."""

    value: float
    exact: bool
    horizon: int | None = None


def inf_ratio(kernel: Kernel, horizon: int = 1024) -> InfRatio:
    """Infimum of consecutive coefficient ratios past the vanishing order.

    Returns the analytic value when the kernel carries one; otherwise scans
    ratios up to ``horizon`` and tags the result as an estimate.  Requires
    positive coefficients.
    """
    if not kernel.positive:
        raise ValidityError(
            f"kernel {kernel.name!r} lacks the positivity needed for "
            "coefficient-ratio bounds")
    if kernel.inf_ratio_exact is not None:
        return InfRatio(kernel.inf_ratio_exact, exact=True)
    best = math.inf
    prev = kernel.coeff(kernel.m + 1)
    if prev <= 0:
        raise ValidityError(f"kernel {kernel.name!r} has a non-positive "
                            f"coefficient at n={kernel.m + 1}")
    for n in range(kernel.m + 2, kernel.m + horizon + 1):
        cur = kernel.coeff(n)
        if cur <= 0:
            raise ValidityError(f"kernel {kernel.name!r} has a non-positive "
                                f"coefficient at n={n}")
        best = min(best, prev / cur)
        prev = cur
    return InfRatio(best, exact=False, horizon=horizon)


def support_gap(kernel: Kernel, horizon: int = 512) -> int:
    """Common difference of the kernel's coefficient support, scanned to ``horizon``.

    Returns the greatest common divisor of the spacings between nonzero
    coefficients in [m, m + horizon]; kernels with fewer than two support
    points in the window report 1 (no progression structure).
    """
    support = [n for n in range(kernel.m, kernel.m + horizon + 1)
               if kernel.coeff(n) != 0.0]
    if len(support) < 2:
        return 1
    return int(np.gcd.reduce(np.diff(support)))


def radius_of_convergence(kernel: Kernel, horizon: int = 2048) -> tuple[float, bool]:
    """Radius of convergence with an exactness flag.

    Built-in kernels report their analytic radius; otherwise the root test
    is applied over the tail half of a coefficient window and the result is
    tagged as an estimate.
    """
    if kernel.conv_radius is not None and (kernel.polynomial
                                           or kernel.conv_radius != 0.0):
        return kernel.conv_radius, True
    lo = max(kernel.m + 1, horizon // 2)
    worst = 0.0
    for n in range(lo, horizon + 1):
        c = abs(kernel.coeff(n))
        if c > 0:
            worst = max(worst, c ** (1.0 / n))
    if worst == 0.0:
        return math.inf, False
    return 1.0 / worst, False


def hadamard_sum(h1: Kernel, h2: Kernel, x: float) -> float:
    """Adaptive summation of (h1 * h2)(x) = sum_{n >= m} c_n d_n x^n.

    Stops after several consecutive negligible terms (robust to coefficient
    gaps) and guards against divergence.
    """
    m = min(h1.m, h2.m)
    total = 0.0
    xn = x ** m
    small = 0
    for n in range(m, m + _MAX_SUM_TERMS):
        term = h1.coeff(n) * h2.coeff(n) * xn
        total += term
        if abs(term) > 1e12:
            raise ValidityError(
                f"Hadamard series diverges at x={x}; terms exceed 1e12")
        if n > m + 32 and abs(term) <= _SUM_TOL * max(abs(total), 1e-300):
            small += 1
            if small >= 8:
                return total
        else:
            small = 0
        xn *= x
    raise ValidityError(f"Hadamard series did not converge at x={x}")


def pair_sum(pair: KernelPair, x: float) -> float:
    """Hadamard product value (h1 * h2)(x), closed form when available."""
    if pair.conv_value is not None:
        return pair.conv_value(x)
    return hadamard_sum(pair.h1, pair.h2, x)


# ----------------------------------------------------------------------
# JSON descriptors
# ----------------------------------------------------------------------

_KERNEL_BUILDERS: dict[str, Callable[..., Kernel]] = {
    "geometric": lambda: geometric_kernel(),
    "shift": lambda m: shift_kernel(int(m)),
    "derivative": lambda m: derivative_kernel(int(m)),
    "integral": lambda: integral_kernel(),
    "lacunary": lambda m: lacunary_gap_kernel(int(m)),
    "dilation": lambda factor: dilation_kernel(float(factor)),
    "hypergeometric": lambda a, b, c: hypergeometric_kernel(
        HypergeometricParams(float(a), float(b), float(c))),
    "polynomial": lambda m, coeffs: polynomial_kernel(coeffs, int(m)),
}


def operator_to_json(spec: OperatorSpec) -> dict:
    """Serializable descriptor {name, m, l, params} of an operator."""
    return {
        "name": spec.kernel.name,
        "m": spec.kernel.m,
        "l": spec.l,
        "params": dict(spec.kernel.params),
    }


def operator_from_json(data: dict) -> OperatorSpec:
    """Rebuild an operator from its JSON descriptor."""
    name = data["name"]
    builder = _KERNEL_BUILDERS.get(name)
    if builder is None:
        raise ValueError(f"unknown kernel name {name!r}")
    kernel = builder(**data.get("params", {}))
    if kernel.m != data["m"]:
        raise ValueError(
            f"descriptor order {data['m']} does not match kernel "
            f"{name!r} of order {kernel.m}")
    return OperatorSpec(kernel, int(data["l"]))
