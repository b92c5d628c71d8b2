"""Command-line entry point.

Every subcommand writes CSV (``--output`` or standard output) with a single
header row; summary lines are ``#`` comments so the CSV stays loadable with
``comment="#"``. ``--config FILE`` reads ``key=value`` lines whose keys are
flag names; explicit flags win over the file.
"""

from __future__ import annotations

import argparse
import io
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import capacity as cap
from .diffusion import NormalizedParams, PhysicalParams, impulse_peak, impulse_response, normalize
from .numerics import BracketError, ConvergenceError
from .simulator import DEFAULT_SAMPLES_PER_SYMBOL, DEFAULT_THRESHOLD, InfeasibleAlphaError, effective_alpha, simulate
from .sweep import ALPHA_POLICIES, SweepRow, best_row, f_grid, sweep
from .timing import F_TILDE_MAX, F_TILDE_MIN, NoSolutionError, SymbolDurations, solve_durations, solve_t11

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SOLVER = 3


class SolverFailure(Exception):
    """No usable result; the partial CSV is still written."""


def fmt(x: float) -> str:
    return f"{float(x):.12g}"


def write_csv(out, header: list[str], rows) -> None:
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(fmt(v) for v in row) + "\n")


def read_config(path: str) -> dict[str, str]:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key.lstrip("-").replace("-", "_")] = value
    return values


def _positive(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _count(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file with default flag values")
    common.add_argument("--output", "-o", help="CSV destination (default: stdout)")

    parser = argparse.ArgumentParser(
        prog="diffusion-capacity",
        description="Capacity of a noiseless diffusion channel with memory.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("impulse", parents=[common], help="sample the 2-D impulse response")
    p.add_argument("--dist", type=float, default=2.0)
    p.add_argument("--diff-coeff", type=_positive, default=1.0)
    p.add_argument("--t-max", type=float, default=10.0)
    p.add_argument("--n-points", type=_count, default=200)
    p.add_argument("--spacing", choices=("linear", "log"), default="linear")
    p.set_defaults(func=cmd_impulse)

    p = sub.add_parser("sweep", parents=[common], help="capacity versus normalized rate")
    p.add_argument("f_min", nargs="?", type=float, default=0.5)
    p.add_argument("f_max", nargs="?", type=float, default=20.0)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--t00", type=_positive, default=1.0)
    p.add_argument("--alpha-policy", choices=ALPHA_POLICIES, default="clamp")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("capacity", parents=[common], help="capacity for given durations")
    for name in ("t00", "t01", "t10", "t11"):
        p.add_argument(name, type=float)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("timing", parents=[common], help="solve symbol durations at one rate")
    p.add_argument("--f-tilde", type=_positive)
    p.add_argument("--t00", type=_positive, default=1.0)
    p.add_argument("--diff-coeff", type=_positive, help="physical D (with --max-rate)")
    p.add_argument("--distance", type=_positive, default=1.0)
    p.add_argument("--sensitivity", type=_positive, default=1.0)
    p.add_argument("--max-rate", type=_positive, help="physical F; overrides --f-tilde")
    p.add_argument("--k", type=_positive, help="T00 = k r^2 / D; overrides --t00")
    p.set_defaults(func=cmd_timing)

    p = sub.add_parser("simulate", parents=[common], help="encode, propagate and decode bits")
    p.add_argument("bits", nargs="?")
    p.add_argument("--random", type=_count, metavar="N", help="use N random bits instead")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--f-tilde", type=_positive, default=3.9)
    p.add_argument("--t00", type=_positive, default=1.0)
    p.add_argument("--mode", choices=("markov", "full"), default="markov")
    p.add_argument("--alpha", type=float, help="emission fraction for 11 (default: decode-safe)")
    p.add_argument("--samples-per-symbol", type=_count, default=DEFAULT_SAMPLES_PER_SYMBOL)
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.set_defaults(func=cmd_simulate)

    return parser


def cmd_impulse(args, out, parser) -> list[str]:
    if not args.t_max > 0:
        parser.error("--t-max must be positive")
    if args.dist < 0:
        parser.error("--dist must be non-negative")
    n = args.n_points
    if args.spacing == "log":
        t = np.logspace(math.log10(args.t_max) - 3.0, math.log10(args.t_max), n)
    else:
        t = np.linspace(args.t_max / n, args.t_max, n)
    t[-1] = args.t_max
    if args.dist > 0:
        t_peak, g_peak = impulse_peak(args.dist, args.diff_coeff)
        out.write(f"# peak t={fmt(t_peak)} g={fmt(g_peak)}\n")
    write_csv(out, ["t", "g"], ((ti, impulse_response(args.dist, ti, args.diff_coeff)) for ti in t))
    return []


def cmd_sweep(args, out, parser) -> list[str]:
    if not (F_TILDE_MIN <= args.f_min < args.f_max <= F_TILDE_MAX):
        parser.error(f"need {F_TILDE_MIN:g} <= f_min < f_max <= {F_TILDE_MAX:g}")
    if not args.step > 0:
        parser.error("--step must be positive")
    rows = sweep(f_grid(args.f_min, args.f_max, args.step), args.t00, args.alpha_policy)
    write_csv(out, SweepRow.column_names(), (r.values() for r in rows))
    best = best_row(rows)
    if best is None:
        raise SolverFailure("every grid point failed")
    return [
        f"# best: f_tilde={fmt(best.f_tilde)} t01+t10={fmt(best.t01 + best.t10)} "
        f"w={fmt(best.w)} capacity_per_t00={fmt(best.capacity_per_t00)}"
    ]


def cmd_capacity(args, out, parser) -> list[str]:
    try:
        d = SymbolDurations(args.t00, args.t01, args.t10, args.t11)
    except ValueError as exc:
        parser.error(str(exc))
    res = cap.solve_w(d)
    out.write(
        f"w={fmt(res.w)} capacity={fmt(res.capacity)} bits/tau0 "
        f"capacity_per_t00={fmt(res.capacity_per_t00)} bits/T00\n"
    )
    return []


def cmd_timing(args, out, parser) -> list[str]:
    if args.max_rate is not None:
        if args.diff_coeff is None:
            parser.error("--max-rate needs --diff-coeff")
        params = normalize(
            PhysicalParams(
                diff_coeff=args.diff_coeff,
                distance=args.distance,
                sensitivity=args.sensitivity,
                max_rate=args.max_rate,
                k_t00=args.k if args.k is not None else args.t00 / 4.0,
            )
        )
    elif args.f_tilde is not None:
        t00 = 4.0 * args.k if args.k is not None else args.t00
        params = NormalizedParams(f_tilde=args.f_tilde, t00=t00)
    else:
        parser.error("give --f-tilde or physical parameters (--max-rate, --diff-coeff)")
    if not F_TILDE_MIN <= params.f_tilde <= F_TILDE_MAX:
        parser.error(f"f_tilde={params.f_tilde:g} outside [{F_TILDE_MIN:g}, {F_TILDE_MAX:g}]")
    d = solve_durations(params)
    try:
        alpha, overshoot = effective_alpha(params.f_tilde, d)
    except InfeasibleAlphaError:
        alpha, overshoot = math.nan, math.nan
    t11_zero = solve_t11(params.f_tilde, d.t01, 0.0)
    write_csv(
        out,
        ["f_tilde", "t00", "t01", "t10", "t11", "alpha_used", "overshoot", "t11_alpha0"],
        [(params.f_tilde, d.t00, d.t01, d.t10, d.t11, alpha, overshoot,
          math.nan if t11_zero is None else t11_zero)],
    )
    return []


def cmd_simulate(args, out, parser) -> list[str]:
    if args.random is not None:
        if args.bits is not None:
            parser.error("give either a bit string or --random N, not both")
        rng = np.random.default_rng(args.seed)
        bits = "".join(str(b) for b in rng.integers(0, 2, args.random))
    elif args.bits:
        bits = args.bits
        if set(bits) - {"0", "1"}:
            parser.error(f"bit string may only contain 0 and 1, got {bits!r}")
    else:
        parser.error("give a bit string or --random N")
    if args.alpha is not None and not 0.0 <= args.alpha <= 1.0:
        parser.error("--alpha must lie in [0, 1]")
    if not F_TILDE_MIN <= args.f_tilde <= F_TILDE_MAX:
        parser.error(f"--f-tilde outside [{F_TILDE_MIN:g}, {F_TILDE_MAX:g}]")

    d = solve_durations(NormalizedParams(f_tilde=args.f_tilde, t00=args.t00))
    result = simulate(
        bits, d, args.f_tilde, alpha=args.alpha, mode=args.mode,
        samples_per_symbol=args.samples_per_symbol, threshold=args.threshold,
    )
    m = result.markov
    if result.full is None:
        write_csv(out, ["t", "concentration", "boundary"],
                  zip(m.t, m.concentration, m.is_boundary.astype(int)))
    else:
        write_csv(out, ["t", "concentration", "markov_concentration", "boundary"],
                  zip(m.t, result.full.concentration, m.concentration, m.is_boundary.astype(int)))
    summary = (
        f"# decoded={result.decoded} mismatches={result.mismatches} "
        f"alpha={fmt(result.alpha)}"
    )
    if result.full is not None:
        summary += f" max_boundary_deviation={fmt(result.max_boundary_deviation)}"
    return [summary]


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("command", nargs="?")
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    try:
        values = read_config(known.config)
    except (OSError, ValueError) as exc:
        parser.error(f"cannot read config: {exc}")
    subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    sub = subparsers.choices.get(known.command)
    if sub is None:
        return
    dests = {a.dest for a in sub._actions}
    unknown = set(values) - dests
    if unknown:
        parser.error(f"unknown config keys for {known.command}: {', '.join(sorted(unknown))}")
    # String defaults are run through each action's type= by argparse.
    sub.set_defaults(**values)


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    _apply_config(parser, argv)
    args = parser.parse_args(argv)

    buffer = io.StringIO()
    code = EXIT_OK
    try:
        notes = args.func(args, buffer, parser)
    except SolverFailure as exc:
        sys.stderr.write(f"error: {exc}\n")
        notes, code = [], EXIT_SOLVER
    except (BracketError, ConvergenceError, NoSolutionError, ArithmeticError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SOLVER

    if args.output:
        Path(args.output).write_text(buffer.getvalue())
    else:
        sys.stdout.write(buffer.getvalue())
    for line in notes:
        print(line)
    return code

if __name__ == "__main__":
    sys.exit(main())
