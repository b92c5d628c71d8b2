"""Exponential integral and a bracketed scalar root finder.

Only the pieces the capacity solvers need are here: ``E1(x)`` for real
``x > 0``, its logarithm (usable far past the point where ``E1`` itself
underflows), an accurate difference ``E1(u) - E1(v)`` for nearby arguments,
and a safeguarded bisection/false-position root finder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

EULER_GAMMA = 0.57721566490153286060651209008240243

# Above this argument E1(x) < 1e-307 and is no longer representable reliably.
E1_MAX_ARG = 700.0

# Series below, continued fraction above.
_SWITCH = 1.0
_EPS = np.finfo(float).eps
_TINY = 1e-300

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


class E1UnderflowError(ArithmeticError):
    """E1(x) is too small to represent; use :func:`log_e1` instead."""


class BracketError(ValueError):
    """The supplied interval does not bracket a sign change."""


class ConvergenceError(RuntimeError):
    """The root finder ran out of iterations."""


@dataclass(frozen=True)
class Tolerance:
    """Stopping rule for :func:`find_root`.

    The search stops once the bracket is narrower than
    ``max(abs, rel * |x|)``.
    """

    rel: float = 1e-10
    abs: float = 1e-12
    max_iter: int = 200

    def __post_init__(self):
        if not self.rel > 0:
            raise ValueError(f"rel must be positive, got {self.rel}")
        if not self.abs >= 0:
            raise ValueError(f"abs must be non-negative, got {self.abs}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")


DEFAULT_TOL = Tolerance()


def _check_positive(x: float) -> float:
    x = float(x)
    if not x > 0:
        raise ValueError(f"E1 is defined here only for x > 0, got {x}")
    return x


def _ein_series(x: float) -> float:
    """Entire part Ein(x) = sum_{k>=1} (-1)^(k+1) x^k / (k k!)."""
    term = x
    total = x
    k = 1
    while True:
        k += 1
        term *= -x * (k - 1) / (k * k)
        total += term
        if abs(term) <= 1e-17 * abs(total):
            return total


def _e1_series(x: float) -> float:
    return -EULER_GAMMA - math.log(x) + _ein_series(x)


def _e1_cf_scaled(x: float) -> float:
    """Continued fraction for exp(x) * E1(x), modified Lentz, x > 1."""
    b = x + 1.0
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, 10_000):
        an = -float(i * i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) <= _EPS:
            return h
    raise ConvergenceError(f"E1 continued fraction did not converge at x={x}")


def e1(x: float) -> float:
    """Exponential integral ``E1(x) = int_x^inf exp(-y)/y dy`` for real x > 0.

    Raises:
        ValueError: if ``x <= 0``.
        E1UnderflowError: if ``x > 700``; call :func:`log_e1` there.
    """
    x = _check_positive(x)
    if x > E1_MAX_ARG:
        raise E1UnderflowError(
            f"E1({x}) underflows double precision; use log_e1 instead"
        )
    if x <= _SWITCH:
        return _e1_series(x)
    return math.exp(-x) * _e1_cf_scaled(x)


def log_e1(x: float) -> float:
    """Natural log of ``E1(x)``, finite for every x > 0."""
    x = _check_positive(x)
    if x <= _SWITCH:
        return math.log(_e1_series(x))
    return math.log(_e1_cf_scaled(x)) - x


def e1_or_zero(x: float) -> float:
    """``E1(x)``, flushed to 0.0 where it underflows."""
    x = _check_positive(x)
    if x > 750.0:
        return 0.0
    if x > E1_MAX_ARG:
        return math.exp(log_e1(x))
    return e1(x)


def e1_from_log(log_x: float) -> float:
    """``E1(exp(log_x))``, valid even when ``exp(log_x)`` underflows to zero."""
    if log_x < -700.0:
        # Ein(x) ~ x is far below rounding of -gamma - ln x here.
        return -EULER_GAMMA - log_x
    return e1_or_zero(math.exp(log_x))


def e1_diff(u: float, v: float) -> float:
    """``E1(u) - E1(v)`` for ``0 < u <= v`` without cancellation.

    Close arguments (``v <= 2u``) integrate ``exp(-y)/y`` over ``[u, v]``
    with fixed 24-point Gauss-Legendre, which is converged to rounding
    because the integrand's only singularity (y = 0) is far outside the
    Bernstein ellipse of the interval.
    """
    u = _check_positive(u)
    v = _check_positive(v)
    if v < u:
        return -e1_diff(v, u)
    if v == u:
        return 0.0
    if v <= 2.0 * u:
        half = 0.5 * (v - u)
        mid = 0.5 * (v + u)
        y = mid + half * _GL_NODES
        return float(half * np.sum(_GL_WEIGHTS * np.exp(-y) / y))
    return e1_or_zero(u) - e1_or_zero(v)


def find_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Tolerance = DEFAULT_TOL,
) -> float:
    """Root of ``f`` on a sign-changing bracket ``[lo, hi]``.

    Illinois-style false position, with a forced bisection whenever the
    bracket fails to halve over two steps. When the bracket is strictly
    positive (or strictly negative) and spans more than a factor of two the
    bisection midpoint is geometric, so brackets covering hundreds of
    decades still converge in a handful of steps.

    Raises:
        BracketError: if ``f(lo)`` and ``f(hi)`` have the same sign.
        ConvergenceError: if ``tol.max_iter`` is exhausted.
    """
    a, b = float(lo), float(hi)
    if a > b:
        a, b = b, a
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if math.isnan(fa) or math.isnan(fb) or (fa > 0) == (fb > 0):
        raise BracketError(
            f"no sign change on [{a}, {b}]: f(lo)={fa}, f(hi)={fb}"
        )

    side = 0
    width_before = b - a
    for it in range(tol.max_iter):
        width = b - a
        x_best = a if abs(fa) < abs(fb) else b
        if width <= max(tol.abs, tol.rel * abs(x_best)):
            return x_best

        if (a > 0 and b > 2.0 * a) or (b < 0 and a < 2.0 * b):
            x = math.copysign(math.sqrt(a * b), a)
        elif it % 2 == 1 and width > 0.5 * width_before:
            x = a + 0.5 * width
        else:
            x = (a * fb - b * fa) / (fb - fa)
            if not a < x < b:
                x = a + 0.5 * width
        if it % 2 == 1:
            width_before = width
        if x <= a or x >= b:
            # Bracket has collapsed to adjacent floats.
            return x_best

        fx = f(x)
        if fx == 0.0:
            return x
        if (fx > 0) == (fa > 0):
            a, fa = x, fx
            if side == -1:
                fb *= 0.5
            side = -1
        else:
            b, fb = x, fx
            if side == 1:
                fa *= 0.5
            side = 1

    raise ConvergenceError(
        f"find_root did not converge in {tol.max_iter} iterations; "
        f"bracket [{a}, {b}]"
    )
