"""Capacity of the two-state discrete noiseless channel.

The number of admissible symbol sequences of total duration ``T`` grows like
``W**T``, where ``W > 1`` is the largest real root of::

    W^-(T01 + T10) + W^-T00 + W^-T11 - W^-(T00 + T11) = 1

Capacity is ``log2(W)`` bits per unit time. Both solvers work in
``z = ln W`` so that ``W`` barely above 1 (very long symbols) keeps full
relative precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import Tolerance, find_root
from .timing import SymbolDurations

_LN2 = math.log(2.0)
_TIGHT = Tolerance(rel=4 * np.finfo(float).eps, abs=0.0, max_iter=400)


@dataclass(frozen=True)
class CapacityResult:
    """Largest root ``w`` and the capacity it implies.

    Attributes:
        w: growth factor per unit time, > 1.
        capacity: bits per tau0.
        capacity_per_t00: bits per fundamental interval T00.
    """

    w: float
    capacity: float
    capacity_per_t00: float
    log_w: float


def _result(z: float, t00: float) -> CapacityResult:
    capacity = z / _LN2
    return CapacityResult(
        w=math.exp(z), capacity=capacity, capacity_per_t00=capacity * t00, log_w=z
    )


def _bracket_decreasing(g, start: float = 1.0) -> tuple[float, float]:
    lo = hi = start
    while g(lo) <= 0:
        lo *= 0.5
        if lo < 1e-320:
            raise ArithmeticError("could not bracket the capacity root from below")
    while g(hi) >= 0:
        hi *= 2.0
        if hi > 1e300:
            raise ArithmeticError("could not bracket the capacity root from above")
    return lo, hi


def _log1mexp(x: float) -> float:
    """ln(1 - exp(-x)) for x > 0."""
    if x < _LN2:
        return math.log(-math.expm1(-x))
    return math.log1p(-math.exp(-x))


def characteristic(w: float, d: SymbolDurations) -> float:
    """Left-hand side of the root equation minus 1 (zero at the solution)."""
    return (
        w ** -(d.t01 + d.t10) + w**-d.t00 + w**-d.t11 - w ** -(d.t00 + d.t11) - 1.0
    )


def solve_w(d: SymbolDurations) -> CapacityResult:
    """Largest real root for arbitrary positive (real) durations.

    Uses the factored form ``W^-(T01+T10) = (1 - W^-T00)(1 - W^-T11)``. In
    logs, ``-(T01+T10) z - ln(1-e^{-T00 z}) - ln(1-e^{-T11 z})`` is strictly
    decreasing in ``z`` from +inf to -inf, so the root is unique.
    """
    if not isinstance(d, SymbolDurations):
        d = SymbolDurations(*d)
    s = d.t01 + d.t10

    def g(z: float) -> float:
        return -s * z - _log1mexp(d.t00 * z) - _log1mexp(d.t11 * z)

    z = find_root(g, *_bracket_decreasing(g), _TIGHT)
    return _result(z, d.t00)


def solve_w_special(s: float) -> CapacityResult:
    """Root for ``T00 = T11 = 1`` and ``T01 + T10 = s``.

    Solves ``W^(s-2) (W - 1)^2 = 1``, i.e. ``(s - 2) z + 2 ln(e^z - 1) = 0``,
    which is increasing in ``z`` for every ``s > 0``.
    """
    s = float(s)
    if not s > 0:
        raise ValueError(f"s must be positive, got {s}")

    def g(z: float) -> float:
        return -((s - 2.0) * z + 2.0 * math.log(math.expm1(z)))

    z = find_root(g, *_bracket_decreasing(g), _TIGHT)
    return _result(z, 1.0)


@dataclass(frozen=True)
class BlockCounts:
    """Counts of admissible sequences by exact total duration, in log form.

    ``log_low[T]`` / ``log_high[T]`` are natural logs of the number of
    symbol sequences starting in L with total duration exactly ``T`` and
    ending in L / H; ``-inf`` means zero.
    """

    t_grid: np.ndarray
    log_low: np.ndarray
    log_high: np.ndarray

    @property
    def n_low(self) -> np.ndarray:
        return np.exp(self.log_low)

    @property
    def n_high(self) -> np.ndarray:
        return np.exp(self.log_high)

    @property
    def log_total(self) -> np.ndarray:
        return np.logaddexp(self.log_low, self.log_high)

    def growth_rate(self, t_lo: int, t_hi: int, cumulative: bool = True) -> float:
        """Bits per unit time, ``(log2 N(t_hi) - log2 N(t_lo)) / (t_hi - t_lo)``.

        With ``cumulative`` (the default) ``N(T)`` counts sequences of
        duration at most ``T``. Exact-duration counts vanish at lengths that
        are not reachable (e.g. all durations even), which the cumulative
        count avoids while keeping the same growth rate.
        """
        logs = np.logaddexp.accumulate(self.log_total) if cumulative else self.log_total
        return float((logs[t_hi] - logs[t_lo]) / (t_hi - t_lo) / _LN2)


def count_blocks(d, t_max: int) -> BlockCounts:
    """Dynamic program over exact durations for integer symbol lengths.

    ``N_L(T) = N_L(T - T00) + N_H(T - T10)`` and
    ``N_H(T) = N_L(T - T01) + N_H(T - T11)``, starting from one empty
    sequence in L.
    """
    durations = d.as_tuple() if isinstance(d, SymbolDurations) else tuple(d)
    if len(durations) != 4:
        raise ValueError("need four durations (t00, t01, t10, t11)")
    ints = []
    for value in durations:
        if float(value) != int(value) or int(value) < 1:
            raise ValueError(f"durations must be positive integers, got {durations}")
        ints.append(int(value))
    t00, t01, t10, t11 = ints
    if t_max < max(ints):
        raise ValueError(f"t_max={t_max} is shorter than the longest symbol")

    neg_inf = -math.inf
    low = [neg_inf] * (t_max + 1)
    high = [neg_inf] * (t_max + 1)
    low[0] = 0.0

    def at(arr, i):
        return arr[i] if i >= 0 else neg_inf

    for t in range(1, t_max + 1):
        low[t] = np.logaddexp(at(low, t - t00), at(high, t - t10))
        high[t] = np.logaddexp(at(low, t - t01), at(high, t - t11))

    return BlockCounts(
        t_grid=np.arange(t_max + 1),
        log_low=np.array(low, dtype=float),
        log_high=np.array(high, dtype=float),
    )
