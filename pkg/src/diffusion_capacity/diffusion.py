"""Closed-form concentration responses of a 2-D free diffusion medium.

Internally everything is in canonical units: time in ``tau0 = r^2 / (4 D)``,
concentration in multiples of the receiver sensitivity ``S`` and emission
rate in multiples of ``4 pi D S``. In those units a rectangular pulse of
rate ``A`` switched on at ``t = 0`` gives ``A * E1(1 / t)`` at the receiver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .numerics import e1_diff, e1_or_zero


@dataclass(frozen=True)
class PhysicalParams:
    """Raw description of the medium and the transmitter.

    Attributes:
        diff_coeff: diffusion coefficient D (length^2 / time).
        distance: transmitter-receiver separation r (length).
        sensitivity: receiver concentration sensitivity S.
        max_rate: maximum molecule production rate F (amount / time).
        alpha: fraction of ``max_rate`` used for a repeated 1.
        k_t00: fundamental interval T00 = k r^2 / D. The default 0.25 puts
            T00 at exactly one ``tau0``.
    """

    diff_coeff: float
    distance: float
    sensitivity: float
    max_rate: float
    alpha: float = 0.0
    k_t00: float = 0.25

    def __post_init__(self):
        for name in ("diff_coeff", "distance", "sensitivity", "max_rate", "k_t00"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")

    @property
    def tau0(self) -> float:
        """Time unit r^2 / (4 D) in physical time."""
        return self.distance**2 / (4.0 * self.diff_coeff)


@dataclass(frozen=True)
class NormalizedParams:
    f_tilde: float
    alpha: float = 0.0
    t00: float = 1.0

    def __post_init__(self):
        if not self.f_tilde > 0:
            raise ValueError(f"f_tilde must be positive, got {self.f_tilde}")
        if not self.t00 > 0:
            raise ValueError(f"t00 must be positive, got {self.t00}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")


@dataclass(frozen=True)
class Pulse:
    """Rectangular emission: constant ``amplitude`` on [start, start + duration)."""

    start: float
    duration: float
    amplitude: float

    def __post_init__(self):
        if not self.duration > 0:
            raise ValueError(f"pulse duration must be positive, got {self.duration}")
        if not self.amplitude >= 0:
            raise ValueError(f"pulse amplitude must be >= 0, got {self.amplitude}")

    @property
    def end(self) -> float:
        return self.start + self.duration


@dataclass(frozen=True)
class EmissionSchedule:
    """Sequential, non-overlapping pulses ordered by start time."""

    pulses: tuple[Pulse, ...] = field(default_factory=tuple)

    def __post_init__(self):
        pulses = tuple(self.pulses)
        object.__setattr__(self, "pulses", pulses)
        for prev, nxt in zip(pulses, pulses[1:]):
            # Relative slack: starts are accumulated sums of durations.
            if prev.end > nxt.start + 1e-12 * max(1.0, abs(nxt.start)):
                raise ValueError(
                    f"pulses overlap or are out of order: {prev} then {nxt}"
                )

    def __len__(self) -> int:
        return len(self.pulses)

    def __iter__(self):
        return iter(self.pulses)

    def __add__(self, other: "EmissionSchedule") -> "EmissionSchedule":
        return EmissionSchedule(self.pulses + other.pulses)


def impulse_response(dist: float, t: float, diff_coeff: float) -> float:
    """Green's function of the 2-D diffusion equation.

    ``g(dist, t) = exp(-dist^2 / (4 D t)) / (4 pi D t)``, in physical units.
    """
    if not t > 0:
        raise ValueError(f"impulse response needs t > 0, got {t}")
    if not diff_coeff > 0:
        raise ValueError(f"diff_coeff must be positive, got {diff_coeff}")
    if dist < 0:
        raise ValueError(f"dist must be non-negative, got {dist}")
    return math.exp(-dist * dist / (4.0 * diff_coeff * t)) / (4.0 * math.pi * diff_coeff * t)


def impulse_peak(dist: float, diff_coeff: float) -> tuple[float, float]:
    """Analytic (time, value) of the impulse-response maximum for dist > 0."""
    if not dist > 0:
        raise ValueError(f"dist must be positive, got {dist}")
    t_peak = dist * dist / (4.0 * diff_coeff)
    return t_peak, math.exp(-1.0) / (math.pi * dist * dist)


def pulse_response(t: float, pulse: Pulse) -> float:
    """Concentration at the receiver (units of S) at time ``t`` (tau0 units)."""
    elapsed = t - pulse.start
    if elapsed <= 0 or pulse.amplitude == 0:
        return 0.0
    if elapsed <= pulse.duration:
        return pulse.amplitude * e1_or_zero(1.0 / elapsed)
    since_end = elapsed - pulse.duration
    return pulse.amplitude * e1_diff(1.0 / elapsed, 1.0 / since_end)


def schedule_response(t: float, schedule: EmissionSchedule | Iterable[Pulse]) -> float:
    """Superposition of :func:`pulse_response` over every pulse."""
    return math.fsum(pulse_response(t, p) for p in schedule)


def normalize(p: PhysicalParams) -> NormalizedParams:
    """Collapse physical parameters to ``F~ = F / (4 pi D S)`` and T00 in tau0."""
    f_tilde = p.max_rate / (4.0 * math.pi * p.diff_coeff * p.sensitivity)
    # T00 = k r^2 / D = 4 k tau0.
    return NormalizedParams(f_tilde=f_tilde, alpha=p.alpha, t00=4.0 * p.k_t00)

