"""Closed-form Bohr radii and Bohr-Bombieri functions for convolution pairs.

The central object is the fixed-coefficient Bohr-Bombieri function of the
operator A_{h1*h2}^{m,l} acting on functions f with ||f||_inf <= 1 and
|a_m| = a > r:

    m(r, a) = r^{m+l} c_m d_m a
              + (1/a - a) a^{-m} r^l ((h1*h2)(ar) - c_m d_m (ar)^m),

valid for r up to the infimum of consecutive coefficient ratios of h1.  The
value is attained by the disc automorphism z^m (z + a)/(1 + a z).  Radii
R(a) are the unit crossings of m(., a); specialized closed forms exist for
the identity, derivative, antiderivative and lacunary pairs, together with
two-sided bounds and profile/hypergeometric radii for related operators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .exceptions import NoRootError, NotApplicableError, OpenProblemError, ValidityError
from .kernels import Kernel, KernelPair, OperatorSpec, hadamard_sum, inf_ratio, radius_of_convergence
from .solvers import bisect, golden_min, scan_then_bisect
from .specfun import HypergeometricParams, dilog, gauss_value, hypergeometric_coeffs, lambert_w

# Upper end of the interval on which the Cesaro logarithmic majorant bound
# is stated; a documented range constant with no defining equation.
CESARO_BOUND_LIMIT = 0.5335

_HYPOTHESIS_TOL = 1e-12


@dataclass(frozen=True)
class RadiusResult:
    """A computed radius with its provenance and hypothesis report.

    ``residual`` is |m(value, a) - 1| (or the root-equation residual),
    ``bracket`` the enclosing interval when one was used, ``hypotheses`` a
    tuple of (condition, satisfied) pairs.  Radii may exceed 1; nothing is
    clamped.
    """

    value: float
    method: str  # closed_form | bisection | minimization
    residual: float
    bracket: tuple[float, float] | None
    hypotheses: tuple[tuple[str, bool], ...] = ()

    def to_dict(self) -> dict:
        """JSON-ready mapping with the canonical key order."""
        return {
            "value": self.value,
            "method": self.method,
            "residual": self.residual,
            "bracket": None if self.bracket is None else list(self.bracket),
            "hypotheses": [{"name": name, "ok": ok} for name, ok in self.hypotheses],
        }


# ----------------------------------------------------------------------
# master closed form
# ----------------------------------------------------------------------


def bombieri_hypotheses(h1: Kernel, h2: Kernel, l: int, a: float,
                        r: float) -> tuple[tuple[str, bool], ...]:
    """Hypothesis report for the master closed form, without evaluating it.

    The quadratic energy bound behind the closed form is applied at the
    point r/a, so certification needs r <= a * inf(c_n/c_{n+1}) and not
    merely r below the infimum itself; both conditions are reported.
    """
    orders_match = h1.m == h2.m
    positive = h1.positive
    ratio_ok = False
    quad_ok = False
    if positive:
        try:
            ratio = inf_ratio(h1).value
            ratio_ok = r <= ratio + _HYPOTHESIS_TOL
            quad_ok = a > 0.0 and r <= a * ratio + _HYPOTHESIS_TOL
        except ValidityError:
            positive = False
    return (
        ("h1 coefficients positive", positive),
        ("vanishing orders match", orders_match),
        ("0 <= r < 1", 0.0 <= r < 1.0),
        ("0 < a <= 1", 0.0 < a <= 1.0),
        ("a > r", a > r),
        ("r <= inf coefficient ratio of h1", ratio_ok),
        ("r <= a * (inf coefficient ratio of h1)", quad_ok),
        ("co-K witness available for h2", h2.cok is not None),
        ("co-K witness proof-backed", h2.cok is not None and h2.cok.proven),
    )


def bombieri_value(h1: Kernel, h2: Kernel, l: int, a: float, r: float, *,
                   conv: Callable[[float], float] | None = None,
                   require_witness: bool = True) -> float:
    """Fixed-coefficient Bohr-Bombieri value m(r, a) of A_{h1*h2}^{m,l}.

    ``conv`` may supply a closed form for x -> (h1*h2)(x); otherwise the
    product series is summed adaptively.  At a = 1 the value degenerates to
    r^{m+l} c_m d_m exactly.  Violated hypotheses raise ValidityError,
    including the certification condition r <= a * inf(c_n/c_{n+1}) (the
    formula is refutable beyond it); a missing co-K witness is tolerated
    only with ``require_witness=False`` (the report from
    :func:`bombieri_hypotheses` then flags it).
    """
    report = dict(bombieri_hypotheses(h1, h2, l, a, r))
    required = ["h1 coefficients positive", "vanishing orders match",
                "0 <= r < 1", "0 < a <= 1", "a > r",
                "r <= inf coefficient ratio of h1",
                "r <= a * (inf coefficient ratio of h1)"]
    if require_witness:
        required.append("co-K witness available for h2")
    failed = [name for name in required if not report[name]]
    if failed:
        raise ValidityError("hypothesis violated: " + "; ".join(failed))
    m = h1.m
    if m + l < 0:
        raise ValidityError("operator shift drops below order 0")
    head = h1.coeff(m) * h2.coeff(m)
    if r == 0.0:
        return head * a if m + l == 0 else 0.0
    if a == 1.0:
        return r ** (m + l) * head
    x = a * r
    total = conv(x) if conv is not None else hadamard_sum(h1, h2, x)
    tail = total - head * x ** m
    return (r ** (m + l) * head * a
            + (1.0 / a - a) * a ** (-m) * r ** l * tail)


def pair_bombieri(pair: KernelPair, a: float, r: float) -> float:
    """Certified closed form m(r, a) of a built-in pair.

    Pairs with contiguous support (gap 1) evaluate the master closed form
    through their exact product value.  Pairs of gap >= 2 have no
    factorization witness, so the master formula does not apply; their
    value is the condensed identity-pair form at x = r^gap (see
    :func:`bombieri_lacunary_with_a`), with the same a = 1 endpoint
    degeneracy r^{m+l} c_m d_m as the master formula.
    """
    if pair.gap >= 2:
        if pair.head_coeff() != 1.0 or pair.m + pair.l != 0:
            raise ValidityError(
                "gap condensation is implemented for the unit lacunary "
                "shape (head coefficient 1, shift l = -m)")
        if not 0.0 < a <= 1.0:
            raise ValidityError(
                f"fixed coefficient a must lie in (0, 1], got {a}")
        if not 0.0 <= r < 1.0:
            raise ValidityError(f"need 0 <= r < 1, got r={r}")
        if a == 1.0:
            return r ** (pair.m + pair.l) * pair.head_coeff()
        if a <= r ** pair.gap:
            raise ValidityError(
                f"the condensed closed form needs a > r^{pair.gap}; "
                f"got a={a}, r={r}")
        return bombieri_lacunary_with_a(pair.gap, r, a)
    return bombieri_value(pair.h1, pair.h2, pair.l, a, r,
                          conv=pair.conv_value)


# ----------------------------------------------------------------------
# specialized Bohr-Bombieri closed forms (the bisection oracles)
# ----------------------------------------------------------------------


def _check_ar(r: float, a: float) -> None:
    if not 0.0 < a <= 1.0:
        raise ValidityError(f"fixed coefficient a must lie in (0, 1], got {a}")
    if r < 0.0 or a * r >= 1.0:
        raise ValidityError(f"need 0 <= r and a*r < 1, got r={r}, a={a}")


def bombieri_id0_with_a(r: float, a: float) -> float:
    """m(r, a) = a + (1 - a^2) r / (1 - a r) for the identity pair.

    At a = 1 the raw value degenerates to the constant 1, so the rescaled
    limit (m(r, a) - 1)/(1 - a) + 1 = 2r/(1 - r) is returned instead; its
    unit crossing 1/3 continues the radius curve R(a) = 1/(1 + 2a) to the
    endpoint.
    """
    _check_ar(r, a)
    if a == 1.0:
        return 2.0 * r / (1.0 - r)
    return a + (1.0 - a * a) * r / (1.0 - a * r)


def bombieri_derivative_with_a(m: int, r: float, a: float) -> float:
    """m(r, a) = a + (1/a - a)((1 - ar)^{-(m+1)} - 1) for the m-th derivative pair.

    At a = 1 the rescaled limit 2((1 - r)^{-(m+1)} - 1) is returned; its
    unit crossing is the full radius 1 - (2/3)^{1/(m+1)}.
    """
    if m < 0:
        raise ValidityError("derivative order must be non-negative")
    _check_ar(r, a)
    grow = (1.0 - a * r) ** (-(m + 1)) - 1.0
    if a == 1.0:
        return 2.0 * grow
    return a + (1.0 / a - a) * grow


def bombieri_integral_with_a(r: float, a: float) -> float:
    """m(r, a) = ar + ((a^2 - 1)/a^2)(log(1 - ar) + ar) for the antiderivative pair.

    Non-degenerate at a = 1 (the value is then r, crossing 1 at r = 1).
    """
    _check_ar(r, a)
    if a == 1.0:
        return r
    x = a * r
    return x + (a * a - 1.0) / (a * a) * (math.log1p(-x) + x)


def bombieri_lacunary_with_a(m: int, r: float, a: float) -> float:
    """m(r, a) = a + (1 - a^2) x/(1 - ax), x = r^m, for the gap-m lacunary pair.

    The gap-m operator keeps only the coefficients a_{m+1+km}, and slicing
    any unit-ball sample to that progression writes it as z^{m+1} g(z^m)
    with g again in the unit ball and g(0) = a_{m+1}.  The weighted
    coefficient sum of the slice equals the identity-pair sum of g at
    x = r^m, so the problem condenses exactly to the identity pair:
    m(r, a) = m_id0(r^m, a), attained by z^{m+1}(z^m + a)/(1 + a z^m) and
    certified for a > r^m.  At a = 1 the rescaled limit 2x/(1 - x) is
    returned; its unit crossing is the full radius 3^{-1/m}.
    """
    if m < 1:
        raise ValidityError("lacunary gap must be at least 1")
    if r >= 1.0:
        raise ValidityError(f"need r < 1, got r={r}")
    return bombieri_id0_with_a(r ** m, a)


# ----------------------------------------------------------------------
# generic bisection radius
# ----------------------------------------------------------------------


def radius_with_coefficient(m_fun: Callable[[float, float], float], a: float,
                            bracket: tuple[float, float],
                            tol: float = 1e-13) -> RadiusResult:
    """Bisection root of m_fun(r, a) = 1 inside ``bracket``.

    ``m_fun`` must be continuous and increasing in r on the bracket with a
    sign change (or endpoint root) of m_fun - 1.  The hypothesis report
    records the self-consistency condition a > root.
    """
    lo, hi = bracket
    if not lo < hi:
        raise ValidityError(f"invalid bracket [{lo}, {hi}]")

    def level(r: float) -> float:
        return m_fun(r, a) - 1.0

    root = bisect(level, lo, hi, tol=tol)
    residual = abs(level(root))
    hypotheses = (
        ("a > r at the root", a > root or a == 1.0),
        ("root inside bracket", lo <= root <= hi),
    )
    return RadiusResult(value=root, method="bisection", residual=residual,
                        bracket=(lo, hi), hypotheses=hypotheses)


# ----------------------------------------------------------------------
# identity pair (Bombieri-Ricci)
# ----------------------------------------------------------------------


def radius_id0(a: float) -> float:
    """R(a) = 1/(1 + 2a) for the identity pair, proven for a in (1/2, 1]."""
    if not 0.5 < a <= 1.0:
        raise ValidityError(
            f"fixed coefficient a must lie in (1/2, 1]; R(a) is not "
            f"established below 1/2 (got {a})")
    return 1.0 / (1.0 + 2.0 * a)


def bombieri_id0(r: float) -> float:
    """Unconstrained Bohr-Bombieri function of the identity pair.

    Equals 1 for r <= 1/3 and (3 - sqrt(8(1 - r^2)))/r on [1/3, 1/sqrt(2)];
    beyond 1/sqrt(2) the function is an open problem and an error is raised.
    """
    if r < 0.0:
        raise ValidityError(f"radius must be non-negative, got {r}")
    if r > 1.0 / math.sqrt(2.0) + 1e-15:
        raise OpenProblemError(
            f"the identity-pair Bohr-Bombieri function is an open problem "
            f"for r > 1/sqrt(2) (got r={r})")
    if r <= 1.0 / 3.0:
        return 1.0
    return (3.0 - math.sqrt(8.0 * (1.0 - r * r))) / r


def cesaro_bombieri_bound(r: float) -> float:
    """Logarithmic upper bound (1/r) log(1/(1 - r)) for the Cesaro operator.

    Valid on (0, 0.5335]; the r -> 0 limit 1 is returned at r = 0.  This
    bounds the Cesaro Bohr-Bombieri function from above; it is not the
    function itself.
    """
    if r < 0.0 or r > CESARO_BOUND_LIMIT + 1e-15:
        raise ValidityError(
            f"the logarithmic bound is stated for r in (0, "
            f"{CESARO_BOUND_LIMIT}], got {r}")
    if r == 0.0:
        return 1.0
    return -math.log1p(-r) / r


# ----------------------------------------------------------------------
# derivative pairs
# ----------------------------------------------------------------------


def radius_derivative_pair(m: int) -> float:
    """Full Bohr radius 1 - (2/3)^{1/(m+1)} of the normalized m-th derivative."""
    if m < 0:
        raise ValidityError("derivative order must be non-negative")
    return 1.0 - (2.0 / 3.0) ** (1.0 / (m + 1))


def radius_derivative_pair_with_a(m: int, a: float) -> RadiusResult:
    """Fixed-coefficient radius (1/a)(1 - ((1+a)/(1+2a))^{1/(m+1)}).

    Requires the validity condition a^2 > 1 - ((1+a)/(1+2a))^{1/(m+1)}
    (equivalently a > R(a)); the auxiliary inequality R(a) <= 2/(2+m) is
    evaluated and recorded alongside.
    """
    if m < 0:
        raise ValidityError("derivative order must be non-negative")
    if not 0.0 < a <= 1.0:
        raise ValidityError(f"fixed coefficient a must lie in (0, 1], got {a}")
    q = ((1.0 + a) / (1.0 + 2.0 * a)) ** (1.0 / (m + 1))
    if not a * a > 1.0 - q:
        raise ValidityError(
            f"validity condition a^2 > 1 - ((1+a)/(1+2a))^(1/(m+1)) fails "
            f"at a={a}, m={m}")
    value = (1.0 - q) / a
    residual = abs(bombieri_derivative_with_a(m, value, a) - 1.0)
    hypotheses = (
        ("a^2 > 1 - ((1+a)/(1+2a))^(1/(m+1))", True),
        ("a > R(a)", a > value),
        ("R(a) <= 2/(2+m)", value <= 2.0 / (2.0 + m) + _HYPOTHESIS_TOL),
    )
    return RadiusResult(value=value, method="closed_form", residual=residual,
                        bracket=None, hypotheses=hypotheses)


# ----------------------------------------------------------------------
# antiderivative pair (Lambert-W branch)
# ----------------------------------------------------------------------


def integral_r_of_a(a: float) -> float:
    """Unit-crossing curve r(a) = (1/a)(1 - W(c/e)/c), c = (2a^2-1)/(1-a^2).

    Solves m(r, a) = 1 for the antiderivative pair via the substitution
    v = 1 - ar, which turns the equation into c v + log v = -1.  Since
    c + 1 = a^2/(1 - a^2) > 0 the Lambert-W argument c/e stays above the
    branch point -1/e for every a in (0, 1).  The removable singularity at
    2a^2 = 1 (c = 0) is crossed with the series W(y)/c = (1 - y + 1.5 y^2)/e,
    y = c/e; at a = 1 the limit of the curve is 1.
    """
    if not 0.0 < a <= 1.0:
        raise ValidityError(f"fixed coefficient a must lie in (0, 1], got {a}")
    if a == 1.0:
        return 1.0
    c = (2.0 * a * a - 1.0) / (1.0 - a * a)
    if abs(c) < 1e-6:
        y = c * math.exp(-1.0)
        v = math.exp(-1.0) * (1.0 - y + 1.5 * y * y)
    else:
        v = lambert_w(c * math.exp(-1.0)) / c
    return (1.0 - v) / a


@lru_cache(maxsize=1)
def integral_threshold() -> float:
    """The a with a = r(a): sqrt(1 + W(-2/e^2)/2), about 0.892643."""
    return math.sqrt(1.0 + 0.5 * lambert_w(-2.0 * math.exp(-2.0)))


def radius_integral_lower() -> float:
    """Lower bound for the antiderivative Bohr radius: the root of Li2(r^2) = 1."""
    return bisect(lambda r: dilog(r * r) - 1.0, 0.1, 0.999, tol=1e-14)


def radius_integral_upper() -> tuple[float, float]:
    """Upper bound min_a r(a), returned as (r_min, a_min).

    Coarse scan over (0, 1) followed by golden-section refinement; the scan
    confirms the minimizer lies inside the smooth bracket (0.7, 0.95), away
    from the removable point 1/sqrt(2).
    """
    grid = [0.05 + 0.005 * k for k in range(189)]
    values = [integral_r_of_a(x) for x in grid]
    k = min(range(len(grid)), key=values.__getitem__)
    lo = grid[max(k - 1, 0)]
    hi = grid[min(k + 1, len(grid) - 1)]
    if 0.7 < grid[k] < 0.95:
        lo, hi = max(lo, 0.7), min(hi, 0.95)
    a_min, r_min = golden_min(integral_r_of_a, lo, hi, tol=1e-10)
    return r_min, a_min


def radius_integral_with_a(a: float) -> RadiusResult:
    """Fixed-coefficient antiderivative radius R(a) = r(a), a above the threshold.

    The closed form certifies the radius only past the crossing a = r(a) at
    about 0.892643 (computed, not hard-coded); below it an error is raised.
    """
    threshold = integral_threshold()
    if not 0.0 < a <= 1.0:
        raise ValidityError(f"fixed coefficient a must lie in (0, 1], got {a}")
    if a <= threshold:
        raise ValidityError(
            f"a in ({threshold:.6f}..., 1] required for the certified "
            f"radius (the a = r(a) crossing); got {a}")
    value = integral_r_of_a(a)
    residual = abs(bombieri_integral_with_a(value, a) - 1.0)
    hypotheses = (
        (f"a > threshold {threshold:.6f}", True),
        ("a >= r(a)", a >= value - _HYPOTHESIS_TOL),
        ("Lambert-W argument above the branch point", True),
    )
    return RadiusResult(value=value, method="closed_form", residual=residual,
                        bracket=None, hypotheses=hypotheses)


# ----------------------------------------------------------------------
# lacunary pairs
# ----------------------------------------------------------------------


def radius_lacunary_with_a(m: int, a: float) -> RadiusResult:
    """Fixed-coefficient radius (1+2a)^{-1/m} of the gap-m lacunary pair.

    The condensed closed form m(r, a) = m_id0(r^m, a) crosses 1 exactly
    where r^m equals the identity-pair radius 1/(1+2a), so R(a) =
    (1+2a)^{-1/m} for a in (1/2, 1].  On that curve the coefficient
    constraint a > R(a)^m = 1/(1+2a) is precisely a > 1/2.  For m = 1 the
    value reduces to the identity-pair radius 1/(1+2a), and at a = 1 to
    the full radius 3^{-1/m}.
    """
    if m < 1:
        raise ValidityError("lacunary gap must be at least 1")
    if not 0.0 < a <= 1.0:
        raise ValidityError(f"fixed coefficient a must lie in (0, 1], got {a}")
    if not a > 0.5:
        raise ValidityError(
            f"fixed coefficient a must lie in (1/2, 1]; the condensed "
            f"constraint a > R(a)^m fails below 1/2 (got {a})")
    value = (1.0 + 2.0 * a) ** (-1.0 / m)
    residual = abs(bombieri_lacunary_with_a(m, value, a) - 1.0)
    hypotheses = (
        ("1/2 < a <= 1", True),
        ("a > R(a)^m", a > value ** m),
    )
    return RadiusResult(value=value, method="closed_form", residual=residual,
                        bracket=None, hypotheses=hypotheses)


# ----------------------------------------------------------------------
# profile and hypergeometric radii
# ----------------------------------------------------------------------


def profile_radius(phi: Callable[[int, float], float], p: float, *,
                   upper: float = 1.0, tol: float = 1e-13,
                   max_terms: int = 10_000) -> float:
    """Minimal positive root of phi_0(x) = (2/p) sum_{n>=1} phi_n(x).

    ``phi(n, x)`` evaluates the n-th profile function; the tail sum is
    accumulated adaptively (several consecutive negligible terms stop it).
    A dense scan locates the first sign change before bisection refines it.
    """
    if not 0.0 < p <= 2.0:
        raise ValidityError(f"profile exponent p must lie in (0, 2], got {p}")
    if not phi(0, 0.0) > 0.0:
        raise ValidityError("profile requires phi_0(0) > 0")

    def level(x: float) -> float:
        total = 0.0
        small = 0
        for n in range(1, max_terms):
            term = phi(n, x)
            total += term
            if abs(term) > 1e12:
                raise ValidityError(f"profile sum diverges at x={x}")
            if n > 8 and abs(term) <= 1e-16 * max(1.0, abs(total)):
                small += 1
                if small >= 8:
                    break
            else:
                small = 0
        else:
            raise ValidityError(f"profile sum did not converge at x={x}")
        return phi(0, x) - (2.0 / p) * total

    root, _ = scan_then_bisect(level, 0.0, upper - 1e-9, step=1e-3, tol=tol)
    return root


def radius_hypergeometric(params: HypergeometricParams,
                          tol: float = 1e-13) -> RadiusResult:
    """Minimal positive root of F(a,b,c;x) - 1 = 1/2 for nonnegative Gauss series.

    F is increasing with gamma_n >= 0, so |F - 1| = F - 1 on x > 0.  A
    degenerate constant series (gamma_n = 0 for n >= 1) has no root; a
    terminating polynomial series is scanned past 1 with a doubling upper
    limit (radii may exceed 1).
    """
    table = hypergeometric_coeffs(params, 64)
    if not (table[1:] > 0.0).any():
        raise NoRootError(
            "the Gauss series is constant; |F - 1| = 0 never reaches 1/2")
    terminated = bool(table[-1] == 0.0)

    def level(x: float) -> float:
        return gauss_value(params, x) - 1.5

    if terminated:
        # F is an increasing polynomial here, so a plain bisection on a
        # doubled bracket finds the unique (hence minimal) root.
        hi = 2.0
        while level(hi) < 0.0:
            hi *= 2.0
            if hi > 1e9:
                raise NoRootError("polynomial Gauss series never reaches 3/2")
        bracket = (0.0, hi)
        root = bisect(level, 0.0, hi, tol=tol)
    else:
        root, bracket = scan_then_bisect(level, 0.0, 1.0 - 1e-9,
                                         step=1e-3, tol=tol)
    residual = abs(level(root))
    hypotheses = (
        ("coefficients nonnegative", True),
        ("series terminates (polynomial)", terminated),
    )
    return RadiusResult(value=root, method="bisection", residual=residual,
                        bracket=bracket, hypotheses=hypotheses)


# ----------------------------------------------------------------------
# convergence-radius bound and shift-pair lower bound
# ----------------------------------------------------------------------


def convergence_radius_bound(kernel: Kernel, l: int = 0) -> float:
    """Upper bound 1/R_c(h) for the Bohr radius of the pair (A_h^{m,l}, id).

    A kernel with convergence radius R_c bounds the radius of the source
    operator through R * R_c <= 1.  Entire nonpolynomial kernels give the
    vacuous bound 0; polynomial kernels break the limsup argument and are
    rejected.
    """
    OperatorSpec(kernel, l)  # validates the m + l >= 0 shape
    if kernel.polynomial:
        raise NotApplicableError(
            f"kernel {kernel.name!r} has finitely many nonzero coefficients;"
            " the convergence-radius bound is not applicable")
    radius, _ = radius_of_convergence(kernel)
    if math.isinf(radius):
        return 0.0
    return 1.0 / radius


def shift_pair_lower_bound(m: int) -> float:
    """Unique positive root r_m of r^{4m} + r^2 = 1.

    r_m is a certified lower bound for the Bohr radius of the pair
    (S_{m,-m}, id) and hence for the normalized m-th derivative pair; the
    sequence increases to 1.
    """
    if m < 1:
        raise ValidityError("shift order must be at least 1")
    return bisect(lambda r: r ** (4 * m) + r * r - 1.0, 0.0, 1.0, tol=1e-14)
