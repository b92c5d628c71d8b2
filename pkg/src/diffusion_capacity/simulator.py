"""Noiseless link simulation over the two-state channel.

Bits walk the L/H chain (``L`` until a 1 is sent) and become one of four
symbols. Only 01 and 11 emit molecules. Two concentration models are
available:

* ``trace_markov`` keeps one step of memory. In state H the residue in the
  medium is represented by a full-rate 01 pulse that ended when the
  current symbol started; in state L nothing is carried over. This is the
  model the symbol durations are solved against, so boundaries land on S
  and 2S exactly.
* ``trace_full`` superposes every pulse ever emitted.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .diffusion import EmissionSchedule, Pulse, pulse_response, schedule_response
from .timing import SymbolDurations, raw_alpha

DEFAULT_THRESHOLD = 1.5
DEFAULT_SAMPLES_PER_SYMBOL = 64


class InfeasibleAlphaError(ValueError):
    """Even full-rate emission cannot lift an 11 symbol back to 2S."""


class ChannelState(enum.Enum):
    L = "L"
    H = "H"


class SymbolKind(enum.Enum):
    S00 = "00"
    S01 = "01"
    S10 = "10"
    S11 = "11"

    @property
    def origin(self) -> ChannelState:
        return ChannelState.H if self.value[0] == "1" else ChannelState.L

    @property
    def bit(self) -> int:
        return int(self.value[1])


@dataclass(frozen=True)
class Symbol:
    kind: SymbolKind
    start: float
    duration: float
    amplitude: float

    @property
    def end(self) -> float:
        return self.start + self.duration

    @property
    def pulse(self) -> Pulse | None:
        if self.kind in (SymbolKind.S01, SymbolKind.S11):
            return Pulse(self.start, self.duration, self.amplitude)
        return None


class TraceSample(NamedTuple):
    t: float
    concentration: float


@dataclass(frozen=True)
class Trace:
    """Sampled concentration at the receiver.

    ``is_boundary`` marks the sample taken exactly at the end of each
    symbol, in symbol order.
    """

    t: np.ndarray
    concentration: np.ndarray
    is_boundary: np.ndarray

    def __iter__(self) -> Iterator[TraceSample]:
        for t, c in zip(self.t, self.concentration):
            yield TraceSample(float(t), float(c))

    def __len__(self) -> int:
        return len(self.t)

    @property
    def boundary_values(self) -> np.ndarray:
        return self.concentration[self.is_boundary]


def _as_bits(bits) -> list[int]:
    if isinstance(bits, str):
        if not bits or set(bits) - {"0", "1"}:
            raise ValueError(f"bit string must be non-empty and contain only 0/1, got {bits!r}")
        return [int(b) for b in bits]
    out = [int(b) for b in bits]
    if not out or any(b not in (0, 1) for b in out):
        raise ValueError("bits must be a non-empty sequence of 0/1")
    return out


def encode(
    bits, d: SymbolDurations, f_tilde: float, alpha: float
) -> tuple[list[Symbol], EmissionSchedule]:
    """Map bits to symbols and the emission schedule, starting in state L."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    table = {
        (ChannelState.L, 0): (SymbolKind.S00, d.t00, 0.0),
        (ChannelState.L, 1): (SymbolKind.S01, d.t01, f_tilde),
        (ChannelState.H, 0): (SymbolKind.S10, d.t10, 0.0),
        (ChannelState.H, 1): (SymbolKind.S11, d.t11, alpha * f_tilde),
    }
    state = ChannelState.L
    t = 0.0
    symbols = []
    for bit in _as_bits(bits):
        kind, duration, amplitude = table[state, bit]
        symbols.append(Symbol(kind, t, duration, amplitude))
        t += duration
        state = ChannelState.H if bit else ChannelState.L
    pulses = [s.pulse for s in symbols if s.pulse is not None]
    return symbols, EmissionSchedule(tuple(pulses))


def _local_times(duration: float, n: int) -> list[float]:
    # Last sample sits exactly on the boundary.
    return [duration * j / n for j in range(1, n)] + [duration]


def trace_markov(
    symbols: Sequence[Symbol],
    d: SymbolDurations,
    f_tilde: float,
    samples_per_symbol: int = DEFAULT_SAMPLES_PER_SYMBOL,
    memory: str = "canonical",
) -> Trace:
    """Concentration with one symbol of memory.

    Args:
        memory: ``"canonical"`` represents the H-state residue by a
            full-rate pulse of length ``d.t01`` ending at the symbol start,
            which is what the threshold equations assume. ``"previous"``
            uses the actual pulse of the previous symbol instead; the two
            differ only after an 11 symbol.
    """
    if samples_per_symbol < 1:
        raise ValueError("samples_per_symbol must be >= 1")
    if memory not in ("canonical", "previous"):
        raise ValueError(f"unknown memory model {memory!r}")
    canonical = Pulse(-d.t01, d.t01, f_tilde)

    times = [0.0]
    values = [0.0]
    boundary = [False]
    prev = None
    for sym in symbols:
        own = Pulse(0.0, sym.duration, sym.amplitude) if sym.pulse else None
        mem = None
        if prev is not None and prev.pulse is not None:
            if memory == "canonical":
                mem = canonical
            else:
                mem = Pulse(-prev.duration, prev.duration, prev.amplitude)
        for tau in _local_times(sym.duration, samples_per_symbol):
            c = 0.0
            if mem is not None:
                c += pulse_response(tau, mem)
            if own is not None:
                c += pulse_response(tau, own)
            times.append(sym.start + tau)
            values.append(c)
            boundary.append(False)
        boundary[-1] = True
        times[-1] = sym.end
        prev = sym
    return Trace(np.array(times), np.array(values), np.array(boundary))


def trace_full(
    schedule: EmissionSchedule,
    samples: Sequence[float],
    is_boundary: Sequence[bool] | None = None,
) -> Trace:
    """Exact superposition of every pulse at the given sample times."""
    t = np.asarray(samples, dtype=float)
    c = np.array([schedule_response(ti, schedule) for ti in t])
    flags = np.zeros(len(t), dtype=bool) if is_boundary is None else np.asarray(is_boundary, bool)
    return Trace(t, c, flags)


def decode(boundary_concentrations: Sequence[float], threshold: float = DEFAULT_THRESHOLD) -> str:
    """One bit per boundary: 1 iff the concentration is at least ``threshold``."""
    return "".join("1" if c >= threshold else "0" for c in boundary_concentrations)


def effective_alpha(f_tilde: float, d: SymbolDurations) -> tuple[float, float]:
    """Decode-safe alpha for 11 symbols of length ``d.t11``.

    Returns ``(alpha, overshoot)``. When the exact alpha lies in [0, 1] the
    boundary lands on 2S and the overshoot is 0. When the residue alone
    already exceeds 2S, alpha is clamped to 0 and the overshoot is the
    excess above 2S (units of S).

    Raises:
        InfeasibleAlphaError: if even alpha = 1 stays below 2S. Cannot
            happen when ``d.t01`` solves the 01 condition at ``f_tilde``.
    """
    alpha = raw_alpha(f_tilde, d.t01, d.t11)
    if 1.0 < alpha <= 1.0 + 1e-9:
        # With t01 from solve_t01 alpha < 1 exactly; this is rounding.
        alpha = 1.0
    if alpha > 1.0:
        raise InfeasibleAlphaError(
            f"alpha={alpha:.6g} > 1: an 11 symbol of length {d.t11} cannot reach 2S "
            f"at f_tilde={f_tilde}"
        )
    if alpha >= 0.0:
        return alpha, 0.0
    residue = pulse_response(d.t01 + d.t11, Pulse(0.0, d.t01, f_tilde))
    return 0.0, max(residue - 2.0, 0.0)


def boundary_targets(symbols: Sequence[Symbol]) -> list[float]:
    """Levels the threshold equations prescribe at each symbol end.

    2 for 01 and 11, 1 for 10 and ``nan`` for 00 (no level is prescribed;
    the concentration only has to stay under the threshold).
    """
    levels = {SymbolKind.S00: math.nan, SymbolKind.S01: 2.0, SymbolKind.S10: 1.0, SymbolKind.S11: 2.0}
    return [levels[s.kind] for s in symbols]


@dataclass(frozen=True)
class SimulationResult:
    bits: str
    symbols: list[Symbol]
    schedule: EmissionSchedule
    alpha: float
    markov: Trace
    full: Trace | None
    decoded: str

    @property
    def mismatches(self) -> int:
        return sum(a != b for a, b in zip(self.bits, self.decoded))

    @property
    def max_boundary_deviation(self) -> float:
        """Largest |full - markov| over symbol boundaries (0 without a full trace)."""
        if self.full is None:
            return 0.0
        diff = self.full.boundary_values - self.markov.boundary_values
        return float(np.max(np.abs(diff))) if diff.size else 0.0


def simulate(
    bits,
    d: SymbolDurations,
    f_tilde: float,
    alpha: float | None = None,
    mode: str = "markov",
    samples_per_symbol: int = DEFAULT_SAMPLES_PER_SYMBOL,
    threshold: float = DEFAULT_THRESHOLD,
) -> SimulationResult:
    """Encode, propagate and decode ``bits``.

    ``alpha=None`` picks :func:`effective_alpha`. In ``"full"`` mode the
    decoder reads the full-superposition trace.
    """
    if mode not in ("markov", "full"):
        raise ValueError(f"mode must be 'markov' or 'full', got {mode!r}")
    bit_list = _as_bits(bits)
    if alpha is None:
        alpha, _ = effective_alpha(f_tilde, d)
    symbols, schedule = encode(bit_list, d, f_tilde, alpha)
    markov = trace_markov(symbols, d, f_tilde, samples_per_symbol)
    full = None
    if mode == "full":
        full = trace_full(schedule, markov.t, markov.is_boundary)
    readout = full if full is not None else markov
    return SimulationResult(
        bits="".join(map(str, bit_list)),
        symbols=symbols,
        schedule=schedule,
        alpha=alpha,
        markov=markov,
        full=full,
        decoded=decode(readout.boundary_values, threshold),
    )
