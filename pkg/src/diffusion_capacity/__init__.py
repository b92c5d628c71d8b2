"""Capacity of a noiseless diffusion-based molecular channel with memory."""

from .capacity import BlockCounts, CapacityResult, count_blocks, solve_w, solve_w_special
from .diffusion import (
    EmissionSchedule,
    NormalizedParams,
    PhysicalParams,
    Pulse,
    impulse_peak,
    impulse_response,
    normalize,
    pulse_response,
    schedule_response,
)
from .numerics import Tolerance, e1, find_root, log_e1
from .simulator import (
    ChannelState,
    Symbol,
    SymbolKind,
    Trace,
    decode,
    effective_alpha,
    encode,
    simulate,
    trace_full,
    trace_markov,
)
from .sweep import SweepRow, sweep, sweep_point
from .timing import (
    SymbolDurations,
    solve_alpha,
    solve_durations,
    solve_t01,
    solve_t10,
    solve_t11,
)

__version__ = "0.1.0"
