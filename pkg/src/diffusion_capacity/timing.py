"""Symbol durations from the receiver threshold conditions.

With time in ``tau0`` units, concentration in ``S`` and rate ``F~`` the
three threshold conditions read::

    F~ E1(1/T01)                                  = 2   (L -> H reaches 2S)
    F~ [E1(1/(T01 + T10)) - E1(1/T10)]            = 1   (H -> L decays to S)
    F~ [E1(1/(T01 + T11)) - (1 - a) E1(1/T11)]    = 2   (H -> H back at 2S)

``T00`` is a free parameter (the receiver's sensing interval).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .diffusion import NormalizedParams
from .numerics import (
    EULER_GAMMA,
    Tolerance,
    e1_diff,
    e1_from_log,
    e1_or_zero,
    find_root,
    log_e1,
)

F_TILDE_MIN = 1e-3
F_TILDE_MAX = 1e6

_TIGHT = Tolerance(rel=1e-14, abs=1e-300, max_iter=400)
_T10_LOWER = 1e-9
_LOG_FLOAT_MAX = math.log(np.finfo(float).max)


class NoSolutionError(RuntimeError):
    """A timing equation has no root where one was expected."""


@dataclass(frozen=True)
class SymbolDurations:
    """Durations of the four symbols 00, 01, 10, 11 in tau0 units."""

    t00: float
    t01: float
    t10: float
    t11: float

    def __post_init__(self):
        for name in ("t00", "t01", "t10", "t11"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be positive and finite, got {value}")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.t00, self.t01, self.t10, self.t11)


def _check_f_tilde(f_tilde: float) -> float:
    f_tilde = float(f_tilde)
    if not f_tilde > 0:
        raise ValueError(f"f_tilde must be positive, got {f_tilde}")
    if not F_TILDE_MIN <= f_tilde <= F_TILDE_MAX:
        raise ValueError(
            f"f_tilde={f_tilde} is outside the supported range "
            f"[{F_TILDE_MIN:g}, {F_TILDE_MAX:g}]"
        )
    return f_tilde


def solve_t01(f_tilde: float) -> float:
    """Time for a full-rate pulse from an empty medium to reach 2S.

    Solved for ``y = ln(1/T01)``; ``E1(e^y) = 2/F~`` is strictly decreasing
    in ``y``. Below F~ ~ 2.8e-3 the answer exceeds the double range
    (``T01 ~ exp(2/F~)``) and an :class:`OverflowError` is raised.
    """
    f_tilde = _check_f_tilde(f_tilde)
    target = 2.0 / f_tilde
    log_target = math.log(target)

    def residual(y: float) -> float:
        if y > 0.0:
            return log_e1(math.exp(y)) - log_target
        return math.log(e1_from_log(y)) - log_target

    # E1(x) > -gamma - ln x for every x > 0, so the residual is positive here.
    y_lo = -EULER_GAMMA - target
    y_hi = 0.0
    while residual(y_hi) > 0:
        y_hi += 1.0
    y = find_root(residual, y_lo, y_hi, _TIGHT)
    if -y > _LOG_FLOAT_MAX:
        raise OverflowError(f"T01 = exp({-y:.1f}) overflows for f_tilde={f_tilde}")
    return math.exp(-y)


def t10_residual(t10: float, f_tilde: float, t01: float) -> float:
    """Concentration above S (units of S) at the end of a 10 symbol."""
    return f_tilde * e1_diff(1.0 / (t01 + t10), 1.0 / t10) - 1.0


def solve_t10(f_tilde: float, t01: float) -> float:
    """Waiting time after a 01 pulse until the concentration decays to S.

    After the pulse the concentration starts at 2S, rises to a single
    maximum, then decays monotonically to zero, so it crosses S once.
    """
    f_tilde = _check_f_tilde(f_tilde)
    if not t01 > 0:
        raise ValueError(f"t01 must be positive, got {t01}")

    def residual(log_t: float) -> float:
        return t10_residual(math.exp(log_t), f_tilde, t01)

    hi = max(t01, 1.0)
    while t10_residual(hi, f_tilde, t01) > 0:
        hi *= 2.0
        if hi > 1e300:
            raise NoSolutionError(
                f"no T10 crossing below 1e300 for f_tilde={f_tilde}, t01={t01}"
            )
    return math.exp(find_root(residual, math.log(_T10_LOWER), math.log(hi), _TIGHT))


def t11_residual(t11: float, f_tilde: float, t01: float, alpha: float) -> float:
    """Concentration minus 2S (units of S) at the end of an 11 symbol."""
    memory = e1_diff(1.0 / (t01 + t11), 1.0 / t11)
    return f_tilde * (memory + alpha * e1_or_zero(1.0 / t11)) - 2.0


def solve_t11(
    f_tilde: float,
    t01: float,
    alpha: float,
    t_min: float = 1e-6,
    t_max: float = 1e9,
    n_grid: int = 2000,
) -> float | None:
    """Smallest strictly positive T11 satisfying the 11-symbol condition.

    ``T11 -> 0`` is always a degenerate root. The residual leaves zero
    upwards, so a positive root is the first downward sign change, located
    on a log grid over ``[t_min, t_max]`` and refined by :func:`find_root`.
    Returns ``None`` if the residual never goes negative on the grid.
    """
    f_tilde = _check_f_tilde(f_tilde)
    if not t01 > 0:
        raise ValueError(f"t01 must be positive, got {t01}")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if alpha == 1.0:
        # Residual is E1(1/(t01+T)) - 2/F~ > 0 for all T > 0.
        return None

    def residual(log_t: float) -> float:
        return t11_residual(math.exp(log_t), f_tilde, t01, alpha)

    grid = np.linspace(math.log(t_min), math.log(t_max), n_grid)
    prev_y, prev_r = grid[0], residual(grid[0])
    for y in grid[1:]:
        r = residual(y)
        if prev_r > 0 >= r:
            return math.exp(find_root(residual, prev_y, y, _TIGHT))
        prev_y, prev_r = y, r
    return None


def raw_alpha(f_tilde: float, t01: float, t11: float) -> float:
    """Alpha solving the 11-symbol condition exactly, unclipped."""
    f_tilde = _check_f_tilde(f_tilde)
    for name, value in (("t01", t01), ("t11", t11)):
        if not value > 0:
            raise ValueError(f"{name} must be positive, got {value}")
    e_own = e1_or_zero(1.0 / t11)
    if e_own == 0.0:
        return math.inf
    # 1 - [E1(1/(t01+t11)) - 2/F~] / E1(1/t11)
    return (2.0 / f_tilde - e1_diff(1.0 / (t01 + t11), 1.0 / t11)) / e_own


def solve_alpha(f_tilde: float, t01: float, t11: float) -> float | None:
    """Emission fraction for an 11 symbol of length ``t11``, if in [0, 1]."""
    alpha = raw_alpha(f_tilde, t01, t11)
    if 0.0 <= alpha <= 1.0:
        return alpha
    return None


def solve_durations(params: NormalizedParams) -> SymbolDurations:
    """All four durations, taking ``T11 = T00``."""
    t01 = solve_t01(params.f_tilde)
    t10 = solve_t10(params.f_tilde, t01)
    return SymbolDurations(t00=params.t00, t01=t01, t10=t10, t11=params.t00)
