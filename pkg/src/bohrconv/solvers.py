"""Scalar root finding and one-dimensional minimization helpers."""

from __future__ import annotations

from typing import Callable

from .exceptions import BracketError, NoRootError

_INV_PHI = 0.6180339887498949  # (sqrt(5) - 1) / 2
_ZERO_TOL = 1e-13


def bisect(f: Callable[[float], float], lo: float, hi: float,
           tol: float = 1e-14) -> float:
    """Root of ``f`` in [lo, hi] by bisection.

    Requires a sign change across the bracket; a value within ``_ZERO_TOL``
    of zero at either endpoint counts as a root at that endpoint.
    """
    if not lo < hi:
        raise BracketError(f"empty bracket [{lo}, {hi}]")
    flo = f(lo)
    fhi = f(hi)
    if abs(flo) <= _ZERO_TOL:
        return lo
    if abs(fhi) <= _ZERO_TOL:
        return hi
    if flo * fhi > 0:
        raise BracketError(f"no sign change on [{lo}, {hi}]")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0:
            hi = mid
        else:
            lo, flo = mid, fm
        if hi - lo <= tol * max(1.0, abs(hi)):
            break
    return 0.5 * (lo + hi)


def scan_then_bisect(f: Callable[[float], float], lo: float, hi: float,
                     step: float = 1e-3,
                     tol: float = 1e-14) -> tuple[float, tuple[float, float]]:
    """Minimal root of ``f`` on [lo, hi]: coarse scan, then bisection.

    Returns the root together with the scan cell that bracketed it.  Raises
    :class:`NoRootError` when the scan finds no sign change.
    """
    x = lo
    fx = f(x)
    if abs(fx) <= _ZERO_TOL:
        return x, (x, x)
    while x < hi:
        nxt = min(x + step, hi)
        fn = f(nxt)
        if abs(fn) <= _ZERO_TOL:
            return nxt, (x, nxt)
        if fx * fn < 0:
            return bisect(f, x, nxt, tol), (x, nxt)
        x, fx = nxt, fn
    raise NoRootError(f"no sign change found on [{lo}, {hi}]")


def golden_min(f: Callable[[float], float], lo: float, hi: float,
               tol: float = 1e-10) -> tuple[float, float]:
    """Golden-section minimizer of a unimodal ``f`` on [lo, hi]."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)
