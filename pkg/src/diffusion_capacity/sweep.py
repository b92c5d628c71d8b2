"""Capacity as a function of the normalized production rate."""

from __future__ import annotations

import logging
import math
from dataclasses import astuple, dataclass, fields

import numpy as np

from .capacity import solve_w
from .diffusion import NormalizedParams
from .simulator import InfeasibleAlphaError, effective_alpha
from .timing import SymbolDurations, solve_durations, solve_t11

log = logging.getLogger(__name__)

ALPHA_POLICIES = ("clamp", "zero")


@dataclass(frozen=True)
class SweepRow:
    f_tilde: float
    t01: float
    t10: float
    t11: float
    alpha_used: float
    w: float
    capacity: float
    capacity_per_t00: float

    @classmethod
    def column_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    @property
    def ok(self) -> bool:
        return math.isfinite(self.capacity)

    def values(self) -> tuple[float, ...]:
        return astuple(self)


def sweep_point(f_tilde: float, t00: float = 1.0, alpha_policy: str = "clamp") -> SweepRow:
    """Durations, alpha and capacity at one ``f_tilde``.

    ``"clamp"`` fixes T11 = T00 and uses the decode-safe alpha (``nan`` if
    none exists; the capacity does not depend on it). ``"zero"`` sets
    alpha = 0 and takes T11 from the 11-symbol condition.
    """
    if alpha_policy not in ALPHA_POLICIES:
        raise ValueError(f"alpha_policy must be one of {ALPHA_POLICIES}, got {alpha_policy!r}")
    d = solve_durations(NormalizedParams(f_tilde=f_tilde, t00=t00))
    if alpha_policy == "clamp":
        try:
            alpha, _ = effective_alpha(f_tilde, d)
        except InfeasibleAlphaError as exc:
            log.warning("%s", exc)
            alpha = math.nan
    else:
        alpha = 0.0
        t11 = solve_t11(f_tilde, d.t01, 0.0)
        if t11 is None:
            raise ArithmeticError(f"no positive T11 root for alpha=0 at f_tilde={f_tilde}")
        d = SymbolDurations(d.t00, d.t01, d.t10, t11)
    res = solve_w(d)
    return SweepRow(f_tilde, d.t01, d.t10, d.t11, alpha, res.w, res.capacity, res.capacity_per_t00)


def failed_row(f_tilde: float) -> SweepRow:
    nan = math.nan
    return SweepRow(f_tilde, nan, nan, nan, nan, nan, nan, nan)


def f_grid(f_min: float, f_max: float, step: float) -> np.ndarray:
    """``f_min, f_min + step, ...`` up to and including ``f_max`` (within 1e-9 steps)."""
    if not step > 0:
        raise ValueError(f"step must be positive, got {step}")
    if not f_max > f_min:
        raise ValueError(f"need f_min < f_max, got {f_min}, {f_max}")
    n = int(math.floor((f_max - f_min) / step + 1e-9))
    return f_min + step * np.arange(n + 1)


def sweep(
    f_values, t00: float = 1.0, alpha_policy: str = "clamp"
) -> list[SweepRow]:
    """One row per grid value; failures become all-``nan`` rows."""
    rows = []
    for f in f_values:
        f = float(f)
        try:
            rows.append(sweep_point(f, t00, alpha_policy))
        except (ArithmeticError, ValueError, RuntimeError) as exc:
            log.warning("f_tilde=%g failed: %s", f, exc)
            rows.append(failed_row(f))
    return rows


def best_row(rows: list[SweepRow]) -> SweepRow | None:
    good = [r for r in rows if r.ok]
    return max(good, key=lambda r: r.capacity_per_t00) if good else None
